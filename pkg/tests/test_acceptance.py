"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are
collected in the "acceptance criteria" section of the terminal summary.
"""

import itertools
import subprocess
import sys
import time

import oracles
from medianswf import axioms as ax
from medianswf.agenda import check_AMP_P, decomposable_pafe, implication_suite_prop2, amp_s_iiap_tension, union_agenda_rule
from medianswf.lattice import distance, median, validate_ra
from medianswf.relations import GroundSet, Profile, enumerate_preorders, parse_preorder
from medianswf.report import FAILS, HOLDS
from medianswf.rules import (
    borda_projective,
    catalog,
    comajority,
    filter_rule,
    fstar_rule,
    lex_top_rule,
    majority_family,
    quota_rule,
    remark3_rule,
    un_rule,
)

G3 = GroundSet.parse("a,b,c")
G4 = GroundSet.parse("a,b,c,d")
N = 3


def test_criterion_01_structure(criterion):
    t0 = time.perf_counter()
    counts = {}
    for g, labels in ((G3, "abc"), (G4, "abcd")):
        ours = {r.pairs() for r in enumerate_preorders(g)}
        counts[g.size] = (len(ours), ours == set(oracles.all_total_preorders(labels)))
    r3 = enumerate_preorders(G3)
    mu1 = all(
        median(x, x, y) == x and median(x, y, y) == y and median(z, x, z) == z
        for x, y, z in itertools.product(r3, repeat=3)
    )
    rep = validate_ra(G3)
    d = rep.details
    universe = [r.pairs() for r in r3]
    bfs = oracles.hasse_distances(universe)
    dist_ok = all(distance(x, y) == bfs[x.pairs(), y.pairs()] for x, y in itertools.product(r3, repeat=2))
    elapsed = time.perf_counter() - t0
    ok = (
        counts == {3: (13, True), 4: (75, True)}
        and mu1
        and d["mu2"]["passed"]
        and d["mu2"]["domain"] == 13**5
        and d["helly"]["passed"]
        and d["helly"]["domain"] == 13**3
        and dist_ok
        and elapsed < 10
    )
    criterion(1, ok, f"13/75 preorders match oracle, mu1 over 13^3, mu2 over 13^5, Helly over 13^3, rank distance = BFS on 169 pairs ({elapsed:.1f}s)")
    assert ok


def test_criterion_02_representation(criterion):
    t0 = time.perf_counter()
    filt = filter_rule(majority_family(G3, N), G3, N, eager=False)
    com = comajority(G3, N)
    bits = [r.bits for r in enumerate_preorders(G3)]
    profiles = list(itertools.product(bits, repeat=N))
    mismatches = sum(filt.eval_bits(p) != com.eval_bits(p) for p in profiles)
    elapsed = time.perf_counter() - t0
    ok = len(profiles) == 2197 and mismatches == 0 and elapsed < 5
    criterion(2, ok, f"majority filter rule vs comajority: {mismatches} mismatches on {len(profiles)} profiles ({elapsed:.1f}s)")
    assert ok


def test_criterion_03_sp_matches_monotone_independence(criterion):
    t0 = time.perf_counter()
    rows = []
    for rule in catalog(G3, N):
        mmi = ax.check_monotone_M_independence(rule).verdict
        if rule.relation_valued:
            rows.append((rule.name, "n/a", mmi))
            continue
        rows.append((rule.name, ax.check_SP(rule).verdict, mmi))
    elapsed = time.perf_counter() - t0
    mismatched = [f"{name} (SP {sp}, mmi {mmi})" for name, sp, mmi in rows if sp != "n/a" and sp != mmi]
    skipped = [name for name, sp, _ in rows if sp == "n/a"]
    ok = not mismatched and elapsed < 600
    detail = f"mismatches: {', '.join(mismatched)}" if mismatched else "all verdicts agree"
    criterion(3, ok, f"SP (induced domain) vs monotone M-independence on {len(rows) - len(skipped)} rules; {detail}; not applicable: {', '.join(skipped)} ({elapsed:.1f}s)")
    assert ok, mismatched


def test_criterion_04_quota_rule_properties(criterion):
    t0 = time.perf_counter()
    union = union_agenda_rule(G3, N)
    results = {}
    for q in (2, 3):
        rule = quota_rule(G3, N, q)
        verdicts = {
            "AMP_P": check_AMP_P(decomposable_pafe(union, rule)).verdict,
            "AN": ax.check_AN(rule).verdict,
            "ID": ax.check_ID(rule).verdict,
            "WNT": ax.check_WNT(rule).verdict,
            "BP": ax.check_BP(rule).verdict,
            "SP": ax.check_SP(rule).verdict,
        }
        results[q] = verdicts
    elapsed = time.perf_counter() - t0
    bad = [f"q={q} {k}={v}" for q, vs in results.items() for k, v in vs.items() if v != HOLDS]
    ok = not bad and elapsed < 900
    criterion(4, ok, f"quota q=2,3 pass AMP_P, AN, ID, WNT, BP, SP{'; failing: ' + ', '.join(bad) if bad else ''} ({elapsed:.1f}s)")
    assert ok, bad


def test_criterion_05_proper_filters_and_stalemate(criterion):
    proper = [
        r for r in catalog(G3, N)
        if hasattr(r, "family") and all(f.is_proper() for f in r.family.values())
    ]
    bp = {r.name: ax.check_BP(r).verdict for r in proper}
    t0 = time.perf_counter()
    q3 = quota_rule(G3, N, 3)
    profile = Profile.parse(["a|b|c", "c|a|b", "a|c|b"], G3)
    out = q3(profile)
    unanimous = all(profile[i].strictly("a", "b") for i in profile.agents)
    inside = out.holds("a", "b") and out.holds("b", "a")
    replay = time.perf_counter() - t0
    ok = len(proper) >= 3 and all(v == HOLDS for v in bp.values()) and out.is_universal() and unanimous and inside and replay < 1
    criterion(5, ok, f"BP holds for {sorted(bp)}; q=3 on (a|b|c, c|a|b, a|c|b) -> {out} with unanimous a>b indifferent ({replay * 1000:.1f}ms)")
    assert ok


def test_criterion_06_condorcet(criterion):
    t0 = time.perf_counter()
    out = comajority(G3, N)(Profile.parse(["a|b|c", "b|c|a", "c|a|b"], G3))
    elapsed = time.perf_counter() - t0
    ok = out.is_universal() and str(out) == "a b c" and elapsed < 1
    criterion(6, ok, f"comajority on the Condorcet cycle -> {out} ({elapsed * 1000:.1f}ms)")
    assert ok


def test_criterion_07_agenda_implications(criterion):
    t0 = time.perf_counter()
    rep = implication_suite_prop2(G3, N)
    rows = [r for r in rep.details["rules"] if "IIA" in r]
    iia_rules = [r["rule"] for r in rows if r["IIA"] == HOLDS]
    broken = [r["rule"] for r in rows if r["IIA"] == HOLDS and r["AMP_S"] != HOLDS]
    tension = amp_s_iiap_tension(remark3_rule(G3, N, 1, parse_preorder("a|b|c", G3), ["c"]), ax.make_domain(G3, N))
    elapsed = time.perf_counter() - t0
    computed = tension["AMP_S_ambient"] in (HOLDS, FAILS) and tension["IIAP"] in (HOLDS, FAILS)
    flagged = tension["status"] in ("agreement", "contradiction")
    ok = bool(iia_rules) and not broken and computed and flagged and elapsed < 600
    criterion(
        7,
        ok,
        f"IIA => AMP_S on {len(iia_rules)} IIA rules; remark3 rule AMP_S={tension['AMP_S_ambient']}, "
        f"IIAP={tension['IIAP']}, flagged {tension['status']} ({elapsed:.1f}s)",
    )
    assert ok, broken


def test_criterion_08_impossibility_consistency(criterion):
    t0 = time.perf_counter()
    problems = []
    rules = [r for r in catalog(G3, N) if not r.relation_valued]
    for rule in rules:
        v = {name: ax.checker(name)(rule).verdict for name in ("IIA", "WP", "WS", "S", "MDR")}
        dictatorial = ax.detect_dictator(rule).verdict == HOLDS
        inverse = ax.detect_inverse_dictator(rule).verdict == HOLDS
        constant_u = all(rule.eval_bits(p) == (1 << 9) - 1 for p in ax.make_domain(G3, N).profiles)
        if v["IIA"] == HOLDS and v["WP"] == HOLDS and not dictatorial:
            problems.append(f"{rule.name}: IIA+WP without dictator")
        if v["IIA"] == HOLDS and v["WS"] == HOLDS and not (dictatorial or inverse or constant_u):
            problems.append(f"{rule.name}: IIA+WS outside the three cases")
        if v["IIA"] == HOLDS and v["S"] == HOLDS and v["MDR"] == HOLDS:
            problems.append(f"{rule.name}: passes IIA+S+MDR")
        if rule.name == "stalemate" and not (v["IIA"] == v["WS"] == v["MDR"] == HOLDS):
            problems.append("stalemate does not pass IIA+WS+MDR")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 1800
    criterion(8, ok, f"{len(rules)} transitive-valued catalog rules consistent with the impossibility results{'; ' + '; '.join(problems) if problems else ''} (fstar excluded: not transitive) ({elapsed:.1f}s)")
    assert ok, problems


def test_criterion_09_counterexample_rules(criterion):
    t0 = time.perf_counter()
    bp = borda_projective(G3, N, 1)
    iiap = ax.check_IIAP(bp).verdict
    iia = ax.check_IIA(bp)
    replayed = iia.verdict == FAILS and ax.replay(bp, iia)
    un = un_rule(G3, N)
    lt = lex_top_rule(G3, N, "a")
    fs = fstar_rule(G3, N)
    got = {
        "bp": (iiap, iia.verdict, replayed),
        "un": (ax.check_BP(un).verdict, ax.check_WP(un).verdict),
        "lextop": (ax.check_WP(lt).verdict, ax.check_BP(lt).verdict),
        "fstar": (ax.check_WS(fs).verdict, ax.check_MDR(fs).verdict, ax.check_AN(fs).verdict, ax.check_NT(fs).verdict),
    }
    elapsed = time.perf_counter() - t0
    ok = (
        got["bp"] == (HOLDS, FAILS, True)
        and got["un"] == (HOLDS, FAILS)
        and got["lextop"] == (HOLDS, FAILS)
        and got["fstar"][:2] == (HOLDS, HOLDS)
        and FAILS in got["fstar"][2:]
        and elapsed < 600
    )
    criterion(
        9,
        ok,
        f"borda_projective IIAP={iiap} IIA={iia.verdict} (witness replays: {replayed}); un BP/WP={got['un']}; "
        f"lextop WP/BP={got['lextop']}; fstar WS/MDR/AN/NT={got['fstar']} ({elapsed:.1f}s)",
    )
    assert ok, got


def test_criterion_10_determinism(criterion, tmp_path):
    argv = [sys.executable, "-m", "medianswf", "verify", "--suite", "all", "--seed", "42"]
    t0 = time.perf_counter()
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    elapsed = time.perf_counter() - t0
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    ok = same and all(r.returncode in (0, 1) for r in runs)
    criterion(10, ok, f"two 'verify --suite all --seed 42' runs byte-identical: {same} ({len(runs[0].stdout)} bytes, {elapsed:.1f}s)")
    assert ok
