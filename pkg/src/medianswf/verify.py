"""Bundled verification suites.

Each suite returns a :class:`SuiteReport` of claims.  A claim has a
``kind``: ``claim`` (a stated result reproduced at desk scale),
``open-question`` (reading-dependent; verdict recorded, never assumed) or
``diagnostic`` (extra evidence).  Only failing ``claim`` entries make the
suite fail.  Results quantifying over "all social welfare functions" are
checked only on the shipped catalog and labelled catalog-consistency.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from . import axioms as ax
from .agenda import (
    check_AMP_P,
    decomposable_pafe,
    entangled_pafe,
    implication_suite_prop2,
    amp_s_iiap_tension,
    sovereignty_report,
    union_agenda_rule,
)
from .axioms import DEFAULT_SEED, make_domain
from .lattice import (
    bipartition_bits,
    meet_bits,
    meet_irreducibles,
    powerset_lattice,
    ra_semilattice,
    sum_median_bits,
    sum_semilattice,
    validate_median_semilattice,
)
from .meta import (
    MetaPreference,
    ambient,
    is_single_peaked,
    is_transitive,
    metric_betweenness,
    richness_report,
)
from .relations import GroundSet, Profile, enumerate_preorders, full_mask, preorder_space
from .report import FAILS, HOLDS, INCONCLUSIVE, SCHEMA_VERSION, CheckReport
from .rules import (
    OrderFilter,
    Rule,
    audit_family,
    catalog,
    comajority,
    filter_rule,
    global_stalemate,
    majority_family,
    quota_rule,
    stalemate_as_filter_rule,
)

CLAIM = "claim"
OPEN = "open-question"
DIAGNOSTIC = "diagnostic"


@dataclass
class Claim:
    id: str
    anchor: str
    verdict: str
    kind: str = CLAIM
    evidence: list[Any] = field(default_factory=list)
    note: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {"id": self.id, "anchor": self.anchor, "kind": self.kind, "verdict": self.verdict}
        if self.note:
            out["note"] = self.note
        out["evidence"] = [e.to_dict() if isinstance(e, CheckReport) else e for e in self.evidence]
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    claims: list[Claim]

    @property
    def failed(self) -> list[Claim]:
        return [c for c in self.claims if c.kind == CLAIM and c.verdict == FAILS]

    @property
    def ok(self) -> bool:
        return not self.failed

    def summary(self) -> dict[str, Any]:
        counts: dict[str, int] = {}
        for c in self.claims:
            key = f"{c.kind}:{c.verdict}"
            counts[key] = counts.get(key, 0) + 1
        return {
            "claims": len(self.claims),
            "by_kind_and_verdict": dict(sorted(counts.items())),
            "failed_claims": [c.id for c in self.failed],
            "ok": self.ok,
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "claims": [c.to_dict() for c in self.claims],
            "summary": self.summary(),
        }


def _all(verdicts: list[str]) -> str:
    if any(v == FAILS for v in verdicts):
        return FAILS
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return HOLDS


def _holds_if(ok: bool) -> str:
    return HOLDS if ok else FAILS


def _ground() -> GroundSet:
    return GroundSet.parse("a,b,c")


# ---------------------------------------------------------------------------
# structure


def _sum_mu_join_fn(poset):
    """Median on the sum by intersecting pairwise closures, None off the poset."""
    m = 3

    def mu(x: int, y: int, z: int) -> int | None:
        bits = sum_median_bits(poset.keys[x], poset.keys[y], poset.keys[z], m)
        return None if bits is None else poset.index.get(bits)

    return mu


def suite_structure(seed: int = DEFAULT_SEED) -> SuiteReport:
    g3 = _ground()
    g4 = GroundSet.parse("a,b,c,d")
    claims = []

    counts = {m: len(enumerate_preorders(GroundSet.parse(",".join("abcde"[:m])))) for m in (3, 4, 5)}
    claims.append(
        Claim(
            "preorder-count",
            "number of total preorders on 3, 4, 5 alternatives (ordered Bell numbers)",
            _holds_if(counts == {3: 13, 4: 75, 5: 541}),
            evidence=[{"counts": {str(k): v for k, v in counts.items()}}],
        )
    )

    r3 = validate_median_semilattice(ra_semilattice(g3), m=3)
    r4 = validate_median_semilattice(ra_semilattice(g4), exhaustive=False, seed=seed, samples=20000, m=4)
    claims.append(
        Claim("ra-median-semilattice-m3", "total preorders under inclusion form a median join-semilattice", r3.verdict, evidence=[r3])
    )
    claims.append(
        Claim("ra-median-semilattice-m4", "same, four alternatives, seeded sample", r4.verdict, evidence=[r4])
    )

    agenda_reports = []
    for k in (1, 2):
        for labels in itertools.combinations(g3.labels, k):
            sub = GroundSet.agenda(labels)
            agenda_reports.append(validate_median_semilattice(ra_semilattice(sub), m=k))
    claims.append(
        Claim(
            "agenda-median-semilattices",
            "total preorders on every proper agenda form a median join-semilattice",
            _all([r.verdict for r in agenda_reports]),
            evidence=[{"agendas": len(agenda_reports), "verdicts": [r.verdict for r in agenda_reports]}],
        )
    )

    pa = validate_median_semilattice(powerset_lattice(g3), m=3)
    claims.append(Claim("powerset-median", "agendas under inclusion form a median semilattice", pa.verdict, evidence=[pa]))

    sum_poset = sum_semilattice(g3)
    s_lub = validate_median_semilattice(sum_poset, m=3)
    s_mu = validate_median_semilattice(sum_poset, m=3, median_fn=_sum_mu_join_fn(sum_poset))
    claims.append(
        Claim(
            "sum-median-semilattice",
            "the union over agendas of agenda preorders, ordered by inclusion, is a median join-semilattice",
            _all([s_lub.verdict]),
            evidence=[s_lub, {"median_by_pairwise_closure_intersection": s_mu.to_dict()}],
            note="joins across agendas need not exist: two preorders on disjoint singletons have two minimal upper bounds",
        )
    )

    coat = []
    for g in (g3, g4):
        P = ra_semilattice(g)
        ca = sorted(P.keys[i] for i in P.coatoms())
        mi = sorted(P.keys[i] for i in P.meet_irreducibles())
        bp = sorted(bipartition_bits(g))
        coat.append({"m": g.size, "coatoms": len(ca), "meet_irreducibles": len(mi), "bipartitions": len(bp), "equal": ca == mi == bp})
    claims.append(
        Claim(
            "meet-irreducibles-are-bipartitions",
            "meet-irreducibles of the preorder semilattice are exactly its two-class preorders, which are its co-atoms",
            _holds_if(all(c["equal"] for c in coat)),
            evidence=coat,
        )
    )

    for space in ("ra", "sum"):
        P = ambient(g3, space)
        sp_median = sum(is_single_peaked(MetaPreference(P, p).weak_idx, P) for p in range(P.size))
        sp_metric = sum(
            is_single_peaked(MetaPreference(P, p).weak_idx, P, metric_betweenness(P)) for p in range(P.size)
        )
        trans = sum(is_transitive(MetaPreference(P, p).weak_idx, P.size) for p in range(P.size))
        ev = {
            "space": space,
            "peaks": P.size,
            "single_peaked_median_betweenness": sp_median,
            "single_peaked_metric_betweenness": sp_metric,
            "transitive": trans,
        }
        if space == "ra":
            claims.append(
                Claim(
                    "induced-meta-single-peaked",
                    "geodesic meta-preferences are transitive and single-peaked with the given peak",
                    _holds_if(sp_median == trans == P.size),
                    evidence=[ev],
                )
            )
        else:
            claims.append(
                Claim(
                    "induced-meta-on-sum",
                    "geodesic meta-preferences on the union of agenda semilattices",
                    _holds_if(sp_metric == trans == P.size),
                    kind=DIAGNOSTIC,
                    evidence=[ev],
                    note="single-peakedness measured with metric betweenness; median betweenness is partial here",
                )
            )

    P = ra_semilattice(g3)
    bad = None
    for p in range(P.size):
        geo, met = MetaPreference(P, p), MetaPreference(P, p, "metric")
        for a, b in itertools.product(range(P.size), repeat=2):
            if geo.strict_idx(a, b) and met.strict_idx(b, a):
                bad = [P.render_key(P.keys[i]) for i in (p, a, b)]
                break
        if bad:
            break
    claims.append(
        Claim(
            "metric-meta-compatible",
            "distance-based meta-preferences never reverse a strict geodesic comparison",
            _holds_if(bad is None),
            kind=DIAGNOSTIC,
            evidence=[{"counterexample": bad}],
        )
    )
    claims.append(
        Claim(
            "richness-of-induced-domain",
            "upper contour sets of induced meta-preferences equal betweenness intervals",
            HOLDS if richness_report(P)["mismatches"] == 0 else FAILS,
            kind=OPEN,
            evidence=[{"ra": richness_report(P), "sum": richness_report(sum_semilattice(g3), metric_betweenness(sum_semilattice(g3)))}],
        )
    )
    return SuiteReport("structure", seed, claims)


# ---------------------------------------------------------------------------
# strategy-proofness and filter representation


def derived_filters(rule: Rule, domain: ax.Domain) -> dict[int, OrderFilter]:
    """Per bipartition, the upward closure of refining coalitions at which the outcome lies below it."""
    out = {}
    for mbits in bipartition_bits(rule.ground):
        coalitions = set()
        for prefs in domain.profiles:
            if rule.eval_bits(prefs) & ~mbits == 0:
                coalitions.add(_refining(prefs, mbits))
        out[mbits] = OrderFilter(frozenset(coalitions))
    return out


def _refining(prefs: tuple[int, ...], mbits: int) -> int:
    return sum(1 << i for i, r in enumerate(prefs) if r & ~mbits == 0)


def representation_mismatch(rule: Rule, filters: dict[int, OrderFilter], domain: ax.Domain) -> dict | None:
    """First profile where ``rule`` differs from the meet of bipartitions selected by ``filters``."""
    g = rule.ground
    top = full_mask(g.size)
    space = preorder_space(g)
    for prefs in domain.profiles:
        chosen = [mb for mb, filt in filters.items() if _refining(prefs, mb) in filt]
        formula = meet_bits(chosen, g) if chosen else top
        if formula != rule.eval_bits(prefs):
            return {
                "profile": [space.render_bits(r) for r in prefs],
                "rule": space.render_bits(rule.eval_bits(prefs)),
                "formula": None if formula is None else space.render_bits(formula),
            }
    return None


def _pointwise(rule_a: Rule, rule_b: Rule, domain: ax.Domain) -> dict:
    space = preorder_space(rule_a.ground)
    mismatches = 0
    first = None
    for prefs in domain.profiles:
        a, b = rule_a.eval_bits(prefs), rule_b.eval_bits(prefs)
        if a != b:
            mismatches += 1
            if first is None:
                first = {"profile": [space.render_bits(r) for r in prefs], "outputs": [space.render_bits(a), space.render_bits(b)]}
    return {"rules": [rule_a.name, rule_b.name], "profiles": len(domain.profiles), "mismatches": mismatches, "first": first}


def sp_independence_rows(ground: GroundSet, n: int = 3) -> list[dict]:
    dom = make_domain(ground, n)
    rows = []
    for rule in catalog(ground, n):
        mmi = ax.check_monotone_M_independence(rule, dom)
        row: dict[str, Any] = {"rule": rule.name, "monotone_M_independence": mmi.verdict}
        if rule.relation_valued:
            row["SP"] = "not-applicable"
            row["note"] = "outcomes are not always total preorders, so meta-preferences cannot rank them"
        else:
            row["SP"] = ax.check_SP(rule, dom).verdict
            row["SP_induced_and_metric"] = ax.check_SP(rule, dom, meta="both").verdict
        rows.append(row)
    return rows


def suite_sp_characterization(seed: int = DEFAULT_SEED) -> SuiteReport:
    g = _ground()
    n = 3
    dom = make_domain(g, n)
    rows = sp_independence_rows(g, n)
    applicable = [r for r in rows if r["SP"] != "not-applicable"]
    disagree = [r["rule"] for r in applicable if r["SP"] != r["monotone_M_independence"]]
    necessity = [r["rule"] for r in applicable if r["monotone_M_independence"] == HOLDS and r["SP"] != HOLDS]
    disagree_both = [r["rule"] for r in applicable if r["SP_induced_and_metric"] != r["monotone_M_independence"]]
    claims = [
        Claim(
            "sp-iff-monotone-independence",
            "strategy-proofness on the induced single-peaked domain matches monotonic independence, rule by rule",
            _holds_if(not disagree),
            evidence=[{"rows": rows, "disagreements": disagree}],
            note="the characterization quantifies over every rich single-peaked domain; the induced domain alone is one such domain",
        ),
        Claim(
            "monotone-independence-implies-sp",
            "monotonically independent rules are strategy-proof on the induced domain",
            _holds_if(not necessity),
            evidence=[{"violations": necessity}],
        ),
        Claim(
            "sp-iff-monotone-independence-two-domains",
            "strategy-proofness on induced plus distance-based meta-preferences matches monotonic independence",
            _holds_if(not disagree_both),
            kind=DIAGNOSTIC,
            evidence=[{"disagreements": disagree_both}],
        ),
    ]

    reps = []
    for rule in catalog(g, n):
        row = next(r for r in rows if r["rule"] == rule.name)
        if row["monotone_M_independence"] != HOLDS:
            reps.append({"rule": rule.name, "representable": False, "reason": "monotonic independence fails"})
            continue
        filters = derived_filters(rule, dom)
        bad = representation_mismatch(rule, filters, dom)
        reps.append({"rule": rule.name, "representable": bad is None, "mismatch": bad})
    claims.append(
        Claim(
            "filter-representation",
            "monotonically independent rules are meets of two-class preorders selected by order filters",
            _holds_if(all(r["representable"] for r in reps if "reason" not in r)),
            evidence=reps,
        )
    )

    maj = filter_rule(majority_family(g, n), g, n, name="filter:majority")
    comaj = _pointwise(maj, comajority(g, n), dom)
    stal = _pointwise(stalemate_as_filter_rule(g, n), global_stalemate(g, n), dom)
    claims.append(
        Claim(
            "comajority-is-majority-filter-rule",
            "co-majority equals the filter rule with majority filters on every bipartition",
            _holds_if(comaj["mismatches"] == 0),
            evidence=[comaj],
        )
    )
    claims.append(
        Claim(
            "stalemate-is-empty-filter-rule",
            "the global stalemate is the filter rule with all filters empty",
            _holds_if(stal["mismatches"] == 0),
            evidence=[stal],
        )
    )

    shipped = {
        "quota:q=1": {m: OrderFilter.threshold(n, 1) for m in bipartition_bits(g)},
        "quota:q=2": {m: OrderFilter.threshold(n, 2) for m in bipartition_bits(g)},
        "quota:q=3": {m: OrderFilter.threshold(n, 3) for m in bipartition_bits(g)},
        "collegial:S=1,2": {m: OrderFilter.from_coalitions([[1, 2]]) for m in bipartition_bits(g)},
        "stalemate": {m: OrderFilter.empty() for m in bipartition_bits(g)},
    }
    audits = {}
    for name, fam in shipped.items():
        audits[name] = audit_family(_family_of(g, fam), g, n)
    claims.append(
        Claim(
            "filter-family-well-defined",
            "whether the selected bipartitions always have a meet, per shipped filter family",
            HOLDS if all(a["well_defined"] for k, a in audits.items() if k != "quota:q=1") else FAILS,
            kind=OPEN,
            evidence=[audits],
            note="quota q=1 is audited to show that some filter families are not well defined",
        )
    )

    classes = []
    for name, fam in shipped.items():
        filters = list(fam.values())
        classes.append(
            {
                "rule": name,
                "transversal": all(f.is_transversal() for f in filters),
                "inclusive": all(f.is_transversal() for f in filters)
                and _union_of_minimal(filters) == (1 << n) - 1,
                "outcome_biased": any(f.is_empty() for f in filters),
                "positive_quota": name.startswith("quota") and all(f.is_proper() for f in filters),
            }
        )
    claims.append(
        Claim(
            "filter-subclasses",
            "classification of shipped filter families into the named subclasses",
            HOLDS,
            kind=DIAGNOSTIC,
            evidence=classes,
        )
    )
    return SuiteReport("theorem1", seed, claims)


def _union_of_minimal(filters: list[OrderFilter]) -> int:
    out = 0
    for f in filters:
        for b in f.basis:
            out |= b
    return out


def _family_of(ground: GroundSet, by_bits: dict[int, OrderFilter]):
    return {b: by_bits[b.bits] for b in meet_irreducibles(ground)}


# ---------------------------------------------------------------------------
# quota rules and agenda manipulation


def suite_quota_properties(seed: int = DEFAULT_SEED) -> SuiteReport:
    g = _ground()
    n = 3
    dom = make_domain(g, n)
    union = union_agenda_rule(g, n)
    claims = []

    sov = sovereignty_report(union)
    claims.append(
        Claim("union-agenda-sovereign", "the union agenda rule reaches every nonempty agenda", _holds_if(sov["sovereign"]), kind=DIAGNOSTIC, evidence=[sov])
    )

    amp = []
    for rule in catalog(g, n):
        if rule.relation_valued:
            continue
        amp.append(check_AMP_P(decomposable_pafe(union, rule), dom, seed=seed))
    claims.append(
        Claim(
            "decomposable-pafe-amp-p",
            "a parallel coupling whose preference part ignores proposals is agenda manipulation-proof",
            _all([r.verdict for r in amp]),
            evidence=[{"rule": r.rule, "verdict": r.verdict, "restrictions_equal": r.details["restrictions_equal"], "comparisons": r.details["comparisons"]} for r in amp],
        )
    )
    ent = check_AMP_P(entangled_pafe(union), dom, seed=seed)
    claims.append(
        Claim(
            "entangled-pafe-detected",
            "a coupling whose preference part reads the proposals is caught by the checker",
            _holds_if(ent.verdict == FAILS),
            kind=DIAGNOSTIC,
            evidence=[ent],
        )
    )

    for q in (2, 3):
        rule = quota_rule(g, n, q)
        reports = [
            check_AMP_P(decomposable_pafe(union, rule), dom, seed=seed),
            ax.check_AN(rule, dom),
            ax.check_ID(rule, dom),
            ax.check_WNT(rule, dom),
            ax.check_BP(rule, dom),
            ax.check_SP(rule, dom),
        ]
        claims.append(
            Claim(
                f"quota-q{q}-properties",
                "positive weakly-neutral quota rules are agenda manipulation-proof, anonymous, idempotent, weakly neutral, basic Paretian and strategy-proof",
                _all([r.verdict for r in reports]),
                evidence=[{"axiom": r.axiom, "verdict": r.verdict, "witness": r.witness} for r in reports]
                + [{"positive": rule.params.get("positive"), "weakly_neutral": rule.params.get("weakly_neutral")}],
            )
        )

    bp = []
    for rule in catalog(g, n):
        fam = getattr(rule, "family", None)
        if fam is None:
            continue
        if all(f.is_proper() for f in fam.values()):
            bp.append(ax.check_BP(rule, dom))
    claims.append(
        Claim(
            "proper-filters-imply-bp",
            "filter rules whose filters are all nontrivial and proper satisfy basic Pareto",
            _all([r.verdict for r in bp]),
            evidence=[{"rule": r.rule, "verdict": r.verdict} for r in bp],
        )
    )

    q3 = quota_rule(g, n, 3)
    stale = ax.detect_stalemate(q3, dom)
    wit = Profile.parse(["a|b|c", "c|a|b", "a|c|b"], g)
    out = q3(wit)
    claims.append(
        Claim(
            "quota-stalemate",
            "quota rules admit stalemates: a unanimously ranked pair ends up socially indifferent",
            _holds_if(stale.verdict == FAILS and out.is_universal() and ax.replay(q3, stale)),
            evidence=[stale, {"profile": wit.render(), "output": out.render(), "pair": ["a", "b"]}],
        )
    )

    cyc = Profile.parse(["a|b|c", "b|c|a", "c|a|b"], g)
    cm = comajority(g, n)(cyc)
    claims.append(
        Claim(
            "condorcet-stalemate",
            "co-majority returns universal indifference on the three-voter cycle",
            _holds_if(cm.is_universal()),
            evidence=[{"profile": cyc.render(), "output": cm.render()}],
        )
    )
    cs = ax.detect_stalemate(comajority(g, n), dom)
    claims.append(
        Claim(
            "comajority-stalemate",
            "does co-majority produce a stalemate on three alternatives and three agents",
            cs.verdict,
            kind=OPEN,
            evidence=[cs],
            note="fails means a stalemate exists; holds means none exists at this size",
        )
    )

    P = ra_semilattice(g)
    idx = P.index
    wp_rows = []
    for q in (2, 3):
        rule = quota_rule(g, n, q)
        row: dict[str, Any] = {"rule": rule.name, "basic_profiles": ax.check_WP(rule, dom).verdict}
        for kind in ("geodesic", "metric"):
            bad = None
            for prefs in dom.profiles:
                o = idx[rule.eval_bits(prefs)]
                prefs_meta = [MetaPreference(P, idx[r], kind) for r in prefs]
                for alt in range(P.size):
                    if all(mp.strict_idx(alt, o) for mp in prefs_meta):
                        bad = {"profile": [P.render_key(r) for r in prefs], "dominating": P.render_key(P.keys[alt])}
                        break
                if bad:
                    break
            row[kind] = {"verdict": FAILS if bad else HOLDS, "witness": bad}
        wp_rows.append(row)
    claims.append(
        Claim(
            "quota-wp-by-domain",
            "weak Pareto of quota rules judged on basic profiles, geodesic meta-profiles and distance meta-profiles",
            HOLDS,
            kind=DIAGNOSTIC,
            evidence=wp_rows,
        )
    )
    return SuiteReport("prop3", seed, claims)


# ---------------------------------------------------------------------------
# impossibility results on the catalog


def axiom_table(rules: list[Rule], domain: ax.Domain) -> list[dict]:
    names = ["IIA", "WP", "WS", "LS", "S", "MDR", "AN", "NT", "ID"]
    rows = []
    for rule in rules:
        row = {"rule": rule.name, "preorder_valued": not rule.relation_valued}
        for a in names:
            row[a] = ax.checker(a)(rule, domain).verdict == HOLDS
        row["dictatorial"] = bool(ax.detect_dictator(rule, domain).details["dictators"])
        row["inversely_dictatorial"] = bool(ax.detect_inverse_dictator(rule, domain).details["dictators"])
        top = full_mask(rule.m)
        row["global_stalemate"] = all(rule.eval_bits(p) == top for p in domain.profiles)
        rows.append(row)
    return rows


def suite_impossibility(seed: int = DEFAULT_SEED) -> SuiteReport:
    g = _ground()
    n = 3
    dom = make_domain(g, n)
    rules = catalog(g, n)
    table = axiom_table(rules, dom)
    swf = [r for r in table if r["preorder_valued"]]
    outside = [{"rule": r["rule"], **ax.is_preorder_valued_on(rule, dom)} for r, rule in zip(table, rules) if not r["preorder_valued"]]

    def check(pred: Callable[[dict], bool]) -> tuple[str, list[str]]:
        bad = [r["rule"] for r in swf if not pred(r)]
        return _holds_if(not bad), bad

    claims = []
    specs = [
        ("arrow", "IIA and weak Pareto together hold exactly for dictatorships (catalog-consistency)",
         lambda r: (r["IIA"] and r["WP"]) == r["dictatorial"]),
        ("non-constancy", "IIA, local separation and not inversely dictatorial hold exactly for dictatorships (catalog-consistency)",
         lambda r: (r["IIA"] and r["LS"] and not r["inversely_dictatorial"]) == r["dictatorial"]),
        ("wilson", "IIA with weak sovereignty forces a dictator, an inverse dictator or the global stalemate (catalog-consistency)",
         lambda r: not (r["IIA"] and r["WS"]) or r["dictatorial"] or r["inversely_dictatorial"] or r["global_stalemate"]),
        ("iia-an-nt-stalemate", "IIA, anonymity and neutrality force the global stalemate (catalog-consistency)",
         lambda r: not (r["IIA"] and r["AN"] and r["NT"]) or r["global_stalemate"]),
        ("iia-ws-mdr-stalemate", "IIA, weak sovereignty and minimally distributed responsiveness hold exactly for the global stalemate (catalog-consistency)",
         lambda r: (r["IIA"] and r["WS"] and r["MDR"]) == r["global_stalemate"]),
        ("no-iia-s-mdr", "no rule satisfies IIA, sovereignty and minimally distributed responsiveness (catalog-consistency)",
         lambda r: not (r["IIA"] and r["S"] and r["MDR"])),
        ("no-iia-id-mdr", "no idempotent rule satisfies IIA and minimally distributed responsiveness (catalog-consistency)",
         lambda r: not (r["IIA"] and r["ID"] and r["MDR"])),
    ]
    for cid, anchor, pred in specs:
        verdict, bad = check(pred)
        claims.append(Claim(cid, anchor, verdict, evidence=[{"violations": bad}]))

    stal = global_stalemate(g, n)
    F = ax.responsiveness(stal, dom)
    all_coalitions = all(len(F[xy]) == 1 << n for xy in F)
    claims.append(
        Claim(
            "stalemate-full-responsiveness",
            "every coalition is responsive on every pair under the global stalemate",
            _holds_if(all_coalitions),
            evidence=[{"pairs": len(F), "coalitions_per_pair": sorted({len(v) for v in F.values()})}],
        )
    )

    uf = []
    for rule, row in zip(rules, table):
        if row["preorder_valued"] and row["IIA"] and (row["WP"] or row["ID"]):
            rep = ax.decisive_coalitions(rule, dom)
            uf.append({"rule": rule.name, "ultrafilter": rep.details["ultrafilter"], "principal_agent": rep.details["principal_agent"]})
    claims.append(
        Claim(
            "decisive-ultrafilter",
            "under IIA with weak Pareto or idempotence the decisive coalitions form a principal ultrafilter (catalog-consistency)",
            _holds_if(all(u["ultrafilter"] and u["principal_agent"] for u in uf)),
            evidence=uf,
        )
    )

    impl = [
        ("S", "WS"),
        ("LS", "WS"),
        ("ID", "S"),
    ]
    bad = [f"{r['rule']}: {a} without {b}" for r in swf for a, b in impl if r[a] and not r[b]]
    claims.append(
        Claim(
            "axiom-implications",
            "sovereignty and local separation imply weak sovereignty; idempotence implies sovereignty (catalog-consistency)",
            _holds_if(not bad),
            evidence=[{"violations": bad}],
        )
    )
    claims.append(
        Claim(
            "catalog-axiom-table",
            "axiom verdicts behind the catalog-consistency checks",
            HOLDS,
            kind=DIAGNOSTIC,
            evidence=[{"table": table, "outside_hypothesis": outside}],
            note="rules whose outcomes are not total preorders are outside the hypothesis of these results and excluded",
        )
    )
    return SuiteReport("impossibility", seed, claims)


# ---------------------------------------------------------------------------
# counterexamples and agenda manipulation under sequential coupling


def suite_counterexamples(seed: int = DEFAULT_SEED) -> SuiteReport:
    g = _ground()
    n = 3
    dom = make_domain(g, n)
    by_name = {r.name: r for r in catalog(g, n)}
    claims = []

    bp = by_name["borda_projective:i=1"]
    iiap, iia = ax.check_IIAP(bp, dom), ax.check_IIA(bp, dom)
    claims.append(
        Claim(
            "iiap-weaker-than-iia",
            "Borda made projective satisfies IIA at projective profiles but not IIA",
            _holds_if(iiap.verdict == HOLDS and iia.verdict == FAILS and ax.replay(bp, iia)),
            evidence=[iiap, iia],
        )
    )

    un, lx = by_name["un"], by_name["lextop:x=a"]
    reps = [ax.check_BP(un, dom), ax.check_WP(un, dom), ax.check_WP(lx, dom), ax.check_BP(lx, dom)]
    claims.append(
        Claim(
            "bp-wp-independent",
            "unanimity-or-indifference satisfies basic but not weak Pareto; the lexicographic top rule the reverse",
            _holds_if([r.verdict for r in reps] == [HOLDS, FAILS, HOLDS, FAILS]),
            evidence=reps,
        )
    )

    fs = by_name["fstar"]
    fr = [ax.check_WS(fs, dom), ax.check_MDR(fs, dom), ax.check_AN(fs, dom), ax.check_NT(fs, dom)]
    v = [r.verdict for r in fr]
    claims.append(
        Claim(
            "ws-mdr-without-an-nt",
            "a rule led by a two-agent consensus with a third-agent fallback has weak sovereignty and distributed responsiveness but lacks anonymity or neutrality",
            _holds_if(v[0] == HOLDS and v[1] == HOLDS and FAILS in v[2:]),
            evidence=fr,
        )
    )
    claims.append(
        Claim(
            "fstar-transitivity",
            "are the outcomes of that rule total preorders",
            HOLDS if ax.is_preorder_valued_on(fs, dom)["preorder_valued"] else FAILS,
            kind=OPEN,
            evidence=[ax.is_preorder_valued_on(fs, dom)],
            note="reading adopted: both of agents 1 and 2 weakly prefer x to y",
        )
    )

    an_nt = []
    for rule in catalog(g, n):
        if ax.check_AN(rule, dom).holds and ax.check_NT(rule, dom).holds:
            an_nt.append(
                {"rule": rule.name, "WS": ax.check_WS(rule, dom).verdict, "MDR": ax.check_MDR(rule, dom).verdict}
            )
    claims.append(
        Claim(
            "an-nt-imply-ws-mdr",
            "anonymity with neutrality implies weak sovereignty and distributed responsiveness (catalog-consistency)",
            _holds_if(all(r["WS"] == HOLDS and r["MDR"] == HOLDS for r in an_nt)),
            evidence=an_nt,
        )
    )

    chain = implication_suite_prop2(g, n)
    claims.append(
        Claim(
            "iia-amp-s-iiap",
            "IIA implies sequential agenda manipulation-proofness, which implies IIA at projective profiles (catalog-consistency)",
            chain.verdict,
            evidence=[chain],
        )
    )
    r3 = by_name["remark3:i=1,Rstar=a|b|c,Bstar=a"]
    tension = amp_s_iiap_tension(r3, dom)
    reproduced = tension["AMP_S_ambient"] == HOLDS and tension["IIAP"] == FAILS
    claims.append(
        Claim(
            "amp-s-without-iia",
            "a rule copying a fixed preorder or agent 1 is sequentially manipulation-proof yet violates IIA at projective profiles",
            _holds_if(reproduced),
            kind=OPEN,
            evidence=[tension],
            note=f"{tension['status']} with 'sequential manipulation-proofness implies IIA at projective profiles'; "
            "AMP_S is computed under the ambient-restriction reading, the only one available for a rule without IIA",
        )
    )
    return SuiteReport("counterexamples", seed, claims)


SUITES: dict[str, Callable[[int], SuiteReport]] = {
    "structure": suite_structure,
    "theorem1": suite_sp_characterization,
    "prop3": suite_quota_properties,
    "impossibility": suite_impossibility,
    "counterexamples": suite_counterexamples,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteReport:
    if name == "all":
        claims: list[Claim] = []
        for sub in SUITES:
            for c in SUITES[sub](seed).claims:
                c.id = f"{sub}/{c.id}"
                claims.append(c)
        return SuiteReport("all", seed, claims)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {['all', *SUITES]}")
    return SUITES[name](seed)
