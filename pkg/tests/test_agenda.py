import pytest

from medianswf.agenda import (
    AmbientFamily,
    SchemeFamily,
    agenda_labels,
    agenda_mask,
    check_AMP_P,
    check_AMP_S,
    decomposable_pafe,
    entangled_pafe,
    family_for,
    implication_suite_prop2,
    make_safe_uniform,
    nonempty_agendas,
    proposal_profiles,
    amp_s_iiap_tension,
    replay_AMP,
    sovereignty_report,
    union_agenda_rule,
)
from medianswf.axioms import make_domain
from medianswf.errors import FamilyUndefined
from medianswf.relations import GroundSet, parse_preorder
from medianswf.report import FAILS, HOLDS
from medianswf.rules import catalog, comajority, dictator, global_stalemate, quota_rule, remark3_rule

G3 = GroundSet.parse("a,b,c")
DOMAIN = make_domain(G3, 3)
UNION = union_agenda_rule(G3, 3)


def r3rule():
    return remark3_rule(G3, 3, 1, parse_preorder("a|b|c", G3), ["c"])


def test_agendas():
    ags = nonempty_agendas(G3)
    assert len(ags) == 7
    assert agenda_labels(G3, agenda_mask(G3, ["c", "a"])) == ["a", "c"]


def test_union_rule_is_sovereign():
    rep = sovereignty_report(UNION)
    assert rep["sovereign"] and rep["missing"] == []
    assert set(rep["witnesses"]) == {"a", "b", "c", "a,b", "a,c", "b,c", "a,b,c"}


def test_proposal_profiles_are_seeded():
    a = proposal_profiles(G3, 3, samples=8, seed=1)
    assert a == proposal_profiles(G3, 3, samples=8, seed=1)


@pytest.mark.parametrize("rule", [r for r in catalog(G3, 3) if not r.relation_valued], ids=lambda r: r.name)
def test_decomposable_pafes_are_amp_p(rule):
    rep = check_AMP_P(decomposable_pafe(UNION, rule), DOMAIN)
    assert rep.verdict == HOLDS
    assert rep.details["decomposable"]


def test_entangled_pafe_fails_with_replayable_witness():
    pafe = entangled_pafe(UNION)
    rep = check_AMP_P(pafe, DOMAIN)
    assert rep.verdict == FAILS
    assert rep.witness["restrictions"][0] != rep.witness["restrictions"][1]
    assert replay_AMP(pafe, rep)


def test_amp_s_examples():
    assert check_AMP_S(global_stalemate(G3, 3), scheme="stalemate", domain=DOMAIN).verdict == HOLDS
    assert check_AMP_S(dictator(G3, 3, 1), domain=DOMAIN).verdict == HOLDS
    rep = check_AMP_S(comajority(G3, 3), scheme="comajority", domain=DOMAIN)
    assert rep.verdict == FAILS
    assert replay_AMP(comajority(G3, 3), rep, scheme="comajority")


def test_safe_uniform_matches_scheme_family():
    safe = make_safe_uniform(G3, 3, "dictator:i=2")
    assert check_AMP_S(safe, domain=DOMAIN).verdict == HOLDS


def test_restriction_family_requires_iia():
    with pytest.raises(FamilyUndefined):
        family_for(quota_rule(G3, 3, 2), None, DOMAIN)
    assert isinstance(family_for(quota_rule(G3, 3, 2), "restrict", DOMAIN), AmbientFamily)
    assert isinstance(family_for(quota_rule(G3, 3, 2), "quota:q=2", DOMAIN), SchemeFamily)


def test_ambient_reading_is_always_amp_s():
    for rule in catalog(G3, 3):
        if rule.relation_valued:
            continue
        assert check_AMP_S(rule, scheme="restrict", domain=DOMAIN).verdict == HOLDS, rule.name


def test_iia_implies_amp_s_on_catalog():
    rep = implication_suite_prop2(G3, 3)
    rows = [r for r in rep.details["rules"] if "IIA" in r]
    for row in rows:
        if row["IIA"] == HOLDS:
            assert row["AMP_S"] == HOLDS, row["rule"]


def test_amp_s_iiap_tension_is_reported_not_assumed():
    t = amp_s_iiap_tension(r3rule(), DOMAIN)
    assert t["AMP_S_ambient"] in (HOLDS, FAILS) and t["IIAP"] in (HOLDS, FAILS)
    assert t["status"] in ("agreement", "contradiction")
    expected = "contradiction" if t["AMP_S_ambient"] == HOLDS and t["IIAP"] == FAILS else "agreement"
    assert t["status"] == expected
    # recorded outcome at m=3, n=3
    assert (t["AMP_S_ambient"], t["IIAP"], t["status"]) == (HOLDS, FAILS, "contradiction")
