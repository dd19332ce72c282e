import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from medianswf.errors import EmptyAgenda, GroundTooLarge, ParseError
from medianswf.relations import (
    GroundSet,
    Profile,
    TotalPreorder,
    enumerate_preorders,
    parse_preorder,
    preorder_space,
    read_profile,
    render_preorder,
    write_profile,
)

G3 = GroundSet.parse("a,b,c")
PREORDERS3 = enumerate_preorders(G3)


@pytest.mark.parametrize("labels,count", [("ab", 3), ("abc", 13), ("abcd", 75)])
def test_enumeration_matches_filter_all_relations(labels, count):
    ground = GroundSet.agenda(labels)
    ours = {r.pairs() for r in enumerate_preorders(ground)}
    assert len(ours) == count
    assert ours == set(oracles.all_total_preorders(labels))


def test_m5_count():
    assert len(enumerate_preorders(GroundSet.parse("a,b,c,d,e"))) == 541


def test_m6_refused():
    with pytest.raises(GroundTooLarge):
        enumerate_preorders(GroundSet.parse("a,b,c,d,e,f"))


def test_six_linear_orders():
    assert sum(r.is_linear() for r in PREORDERS3) == 6


def test_enumeration_is_deterministic_and_distinct():
    again = [render_preorder(r) for r in enumerate_preorders(G3)]
    assert again == [render_preorder(r) for r in PREORDERS3]
    assert len(set(again)) == 13


@pytest.mark.parametrize("r", PREORDERS3, ids=str)
def test_render_parse_roundtrip(r):
    assert parse_preorder(render_preorder(r), G3) == r


def test_parse_semantics():
    r = parse_preorder("b|a c", G3)
    assert r.strictly("b", "a") and r.strictly("b", "c")
    assert r.holds("a", "c") and r.holds("c", "a")
    assert r.blocks() == [("b",), ("a", "c")]


@pytest.mark.parametrize("bad", ["a|b", "a|b|c|a", "a||b c", "a|b|d", ""])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_preorder(bad, G3)


def test_ground_set_validation():
    with pytest.raises(ParseError):
        GroundSet.parse("a,b")
    with pytest.raises(ParseError):
        GroundSet.parse("a,a,b")
    with pytest.raises(EmptyAgenda):
        GroundSet.agenda([])
    assert GroundSet.agenda(["c"]).labels == ("c",)


def test_universal_and_restrict():
    u = TotalPreorder.universal(G3)
    assert render_preorder(u) == "a b c" and u.is_universal()
    r = parse_preorder("c|a|b", G3)
    assert render_preorder(r.restrict(["a", "c"])) == "c|a"
    assert r.restrict(["b", "a"]).ground.labels == ("a", "b")


def test_profile_file_roundtrip(tmp_path):
    p = Profile.parse(["a|b|c", "b c|a", "a b c"], G3)
    path = tmp_path / "x.prof"
    write_profile(p, path)
    path.write_text("# comment\n\n" + path.read_text())
    assert read_profile(path, G3) == p


def test_profile_needs_three_agents():
    with pytest.raises(ParseError):
        Profile.parse(["a|b|c", "a|b|c"], G3)


def test_profile_restrict():
    p = Profile.parse(["a|b|c", "c|b|a", "b|a c"], G3)
    assert p.restrict(["a", "c"]).render() == ["a|c", "c|a", "a c"]


def test_space_index_consistent():
    space = preorder_space(G3)
    assert len(space) == 13
    for b in space.bits:
        assert space.of_bits(b).bits == b


@given(st.sampled_from(PREORDERS3), st.lists(st.sampled_from("abc"), min_size=1, unique=True))
def test_restriction_is_a_total_preorder_and_agrees(r, agenda):
    sub = r.restrict(agenda)
    for x, y in itertools.product(agenda, repeat=2):
        assert sub.holds(x, y) == r.holds(x, y)
