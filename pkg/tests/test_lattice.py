import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from medianswf.lattice import (
    OrderedBipartition,
    SumElement,
    between,
    distance,
    join,
    meet,
    meet_irreducibles,
    median,
    powerset_lattice,
    ra_semilattice,
    rank,
    sum_semilattice,
    validate_median_semilattice,
    validate_ra,
)
from medianswf.relations import GroundSet, TotalPreorder, enumerate_preorders, parse_preorder
from medianswf.report import FAILS, HOLDS, INCONCLUSIVE

G3 = GroundSet.parse("a,b,c")
G4 = GroundSet.parse("a,b,c,d")
R3 = enumerate_preorders(G3)
UNIVERSE = [r.pairs() for r in R3]
DIST = oracles.hasse_distances(UNIVERSE)


def P(text, g=G3):
    return parse_preorder(text, g)


def test_join_examples():
    assert str(join(P("a|b|c"), P("c|b|a"))) == "a b c"
    assert str(join(P("a|b|c"), P("a|c|b"))) == "a|b c"


def test_meet_examples():
    assert str(meet([P("a|b c"), P("a b|c")])) == "a|b|c"
    assert meet([P("a|b|c"), P("c|b|a")]) is None
    assert str(meet([], G3)) == "a b c"


def test_join_and_meet_match_oracle():
    for r1, r2 in itertools.product(R3, repeat=2):
        assert join(r1, r2).pairs() == oracles.join(r1.pairs(), r2.pairs(), "abc")
        got = meet([r1, r2])
        want = oracles.meet([r1.pairs(), r2.pairs()], "abc", UNIVERSE)
        assert (got.pairs() if got else None) == want


@pytest.mark.parametrize("g,count", [(G3, 6), (G4, 14)])
def test_bipartition_count(g, count):
    bips = meet_irreducibles(g)
    assert len(bips) == count
    assert all(len(b.preorder().blocks()) == 2 for b in bips)


def test_bipartition_order_and_render():
    assert [str(b) for b in meet_irreducibles(G3)] == ["a|b c", "b|a c", "c|a b", "a b|c", "a c|b", "b c|a"]
    with pytest.raises(ValueError):
        OrderedBipartition(G3, frozenset("abc"))


@pytest.mark.parametrize("r", R3, ids=str)
def test_every_preorder_is_meet_of_bipartitions_above_it(r):
    above = [b.preorder() for b in meet_irreducibles(G3) if r <= b.preorder()]
    assert meet(above, G3) == r


def test_distance_examples():
    assert distance(P("a|b|c"), P("c|b|a")) == 4
    assert distance(P("a|b|c"), P("a|c|b")) == 2


def test_rank_distance_equals_bfs_on_all_pairs():
    for r1, r2 in itertools.product(R3, repeat=2):
        assert distance(r1, r2) == DIST[r1.pairs(), r2.pairs()]


def test_rank_values():
    assert rank(P("a|b|c")) == 0 and rank(P("a b c")) == 2 and rank(P("a|b c")) == 1


def test_median_examples():
    assert str(median(P("a|b|c"), P("b|c|a"), P("c|a|b"))) == "a b c"
    assert str(median(P("a|b|c"), P("a|c|b"), P("a|b c"))) == "a|b c"


def test_between_examples():
    assert between(P("a|b|c"), P("a|b c"), P("a|c|b"))
    assert not between(P("a|b|c"), P("c|b|a"), P("a|b c"))


def test_median_betweenness_equals_metric_betweenness():
    for x, z, y in itertools.product(R3, repeat=3):
        metric = DIST[x.pairs(), z.pairs()] + DIST[z.pairs(), y.pairs()] == DIST[x.pairs(), y.pairs()]
        assert between(x, z, y) == metric


st_pre = st.sampled_from(R3)


@given(st_pre, st_pre, st_pre)
def test_median_is_symmetric(x, y, z):
    m = median(x, y, z)
    for perm in itertools.permutations((x, y, z)):
        assert median(*perm) == m


@given(st_pre, st_pre)
def test_mu1(x, y):
    assert median(x, x, y) == x


@settings(max_examples=300)
@given(st_pre, st_pre, st_pre, st_pre, st_pre)
def test_mu2(x, y, v, w, z):
    assert median(median(x, y, v), median(x, y, w), z) == median(median(v, w, z), x, y)


@given(st_pre, st_pre)
def test_join_is_least_upper_bound(x, y):
    j = join(x, y)
    assert x <= j and y <= j
    assert all(j <= u for u in R3 if x <= u and y <= u)


def test_validate_ra_m3_exhaustive():
    rep = validate_ra(G3)
    assert rep.verdict == HOLDS
    d = rep.details
    assert d["mu1"]["domain"] == 13**2
    assert d["mu2"]["domain"] == 13**5
    assert d["helly"]["domain"] == 13**3
    assert d["rank_distance"]["domain"] == 13**2
    assert d["coatomistic"]["coatoms"] == 6


def test_validate_ra_m4_sampled():
    rep = validate_ra(G4, samples=2000, seed=3)
    assert rep.verdict == INCONCLUSIVE
    assert all(v["passed"] for v in rep.details.values())
    assert rep.details["coatomistic"]["coatoms"] == 14


def test_sum_semilattice_shape_and_failure():
    poset = sum_semilattice(G3)
    assert poset.size == 3 * 1 + 3 * 3 + 13
    rep = validate_median_semilattice(poset, m=3)
    assert rep.verdict == FAILS
    assert rep.witness["check"] == "joins_exist"


def test_sum_join_of_disjoint_singletons_undefined():
    sa = SumElement.of(G3, TotalPreorder(GroundSet.agenda("a"), 1))
    sb = SumElement.of(G3, TotalPreorder(GroundSet.agenda("b"), 1))
    assert join(sa, sb) is None
    ab = SumElement.of(G3, parse_preorder("a b", GroundSet.agenda("ab")))
    assert join(sa, ab).render() == "a b"


def test_powerset_is_a_median_lattice():
    assert validate_median_semilattice(powerset_lattice(G3), m=3).verdict == HOLDS


def test_dot_output():
    dot = ra_semilattice(G3).to_dot()
    assert dot.count("--") == sum(len(c) for c in ra_semilattice(G3).covers_up)
    assert '"a b c"' in dot and dot.startswith("graph")
