import pytest

import oracles
from medianswf.lattice import ra_semilattice, sum_semilattice
from medianswf.meta import (
    MetaPreference,
    ambient,
    induced_meta,
    is_single_peaked,
    is_transitive,
    median_betweenness,
    metric_betweenness,
    metric_meta,
    richness_report,
)
from medianswf.relations import GroundSet, enumerate_preorders, parse_preorder

G3 = GroundSet.parse("a,b,c")
R3 = enumerate_preorders(G3)


def P(text):
    return parse_preorder(text, G3)


@pytest.mark.parametrize("space", ["ra", "sum"])
def test_geodesic_examples(space):
    pref = induced_meta(P("a|b|c"), space)
    assert pref.weak(P("a|b c"), P("a|c|b"))
    assert not pref.weak(P("c|b|a"), P("a|b c"))
    assert pref.strict(P("a|b|c"), P("c|b|a"))


def test_metric_example():
    pref = metric_meta(P("a|b|c"), "ra")
    assert pref.strict(P("a|b c"), P("c|b|a"))


def test_geodesic_matches_oracle_distances():
    universe = [r.pairs() for r in R3]
    dist = oracles.hasse_distances(universe)
    for peak in R3:
        pref = induced_meta(peak, "ra")
        for r1 in R3:
            for r2 in R3:
                d = lambda a, b: dist[a.pairs(), b.pairs()]  # noqa: E731
                assert pref.weak(r1, r2) == (d(peak, r1) + d(r1, r2) == d(peak, r2))


def test_induced_is_single_peaked_on_ra_for_every_peak():
    poset = ra_semilattice(G3)
    for i in range(poset.size):
        pref = MetaPreference(poset, i)
        assert is_single_peaked(pref.weak_idx, poset, median_betweenness(poset))
        assert pref.weak_idx(i, i) and all(pref.weak_idx(i, j) for j in range(poset.size))


def test_metric_is_transitive_and_single_peaked():
    poset = ra_semilattice(G3)
    for i in range(poset.size):
        pref = MetaPreference(poset, i, "metric")
        assert is_transitive(pref.weak_idx, poset.size)
        assert is_single_peaked(pref.weak_idx, poset, metric_betweenness(poset))


def test_ra_induced_domain_is_rich():
    assert richness_report(ra_semilattice(G3))["mismatches"] == 0


def test_sum_space_has_25_elements_and_peaks_are_unique_tops():
    poset = sum_semilattice(G3)
    assert poset.size == 25
    for i in range(poset.size):
        pref = MetaPreference(poset, i)
        assert [j for j in range(poset.size) if all(pref.weak_idx(j, k) for k in range(poset.size))] == [i]


def test_unknown_space():
    with pytest.raises(ValueError):
        ambient(G3, "lattice")
