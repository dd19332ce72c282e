"""Agenda formation, parallel/sequential enriched rules and agenda manipulation-proofness.

Agendas are bit masks over the ground set (bit ``i`` for the i-th label).
Restricted social preferences are kept in A x A pair coordinates so they are
directly elements of the sum semilattice, where the meta-preferences live.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .axioms import DEFAULT_SEED, Domain, check_IIA, check_IIAP, make_domain
from .errors import FamilyUndefined, ParameterError
from .meta import ambient
from .relations import GroundSet, parse_preorder, preorder_space, restrict_bits
from .report import FAILS, HOLDS, CheckReport, Scope, Timer, verdict_for
from .rules import Rule, catalog, dictator, scheme_from_spec

Proposals = tuple[int, ...]


def agenda_labels(ground: GroundSet, mask: int) -> list[str]:
    return [lab for i, lab in enumerate(ground.labels) if mask >> i & 1]


def agenda_mask(ground: GroundSet, labels: Sequence[str]) -> int:
    mask = 0
    for lab in labels:
        mask |= 1 << ground.index(lab)
    return mask


def nonempty_agendas(ground: GroundSet) -> list[int]:
    """Nonempty agenda masks, by size then lexicographically."""
    m = ground.size
    out = []
    for k in range(1, m + 1):
        for c in itertools.combinations(range(m), k):
            out.append(sum(1 << i for i in c))
    return out


def pair_mask(agenda: int, m: int) -> int:
    """All pair bits ``(x, y)`` with both ends in ``agenda``."""
    bits = 0
    for x in range(m):
        if agenda >> x & 1:
            for y in range(m):
                if agenda >> y & 1:
                    bits |= 1 << (x * m + y)
    return bits


def _members(agenda: int, m: int) -> tuple[int, ...]:
    return tuple(i for i in range(m) if agenda >> i & 1)


def _embed(sub_bits: int, idx: Sequence[int], m: int) -> int:
    """Sub-ground relation bits to A x A coordinates."""
    k = len(idx)
    out = 0
    for a in range(k):
        for b in range(k):
            if sub_bits >> (a * k + b) & 1:
                out |= 1 << (idx[a] * m + idx[b])
    return out


def _render_sum(ground: GroundSet, bits: int) -> str:
    return ambient(ground, "sum").render_key(bits)


# ---------------------------------------------------------------------------
# agenda formation


@dataclass(frozen=True)
class AgendaRule:
    """Maps a profile of nonempty agenda proposals to a nonempty agenda."""

    name: str
    ground: GroundSet
    n: int
    fn: Callable[[Proposals], int]

    def __call__(self, proposals: Proposals) -> int:
        if len(proposals) != self.n or any(p == 0 for p in proposals):
            raise ParameterError("expected one nonempty proposal per agent")
        return self.fn(proposals)


def union_agenda_rule(ground: GroundSet, n: int) -> AgendaRule:
    def fn(proposals: Proposals) -> int:
        out = 0
        for p in proposals:
            out |= p
        return out

    return AgendaRule("union", ground, n, fn)


def sovereignty_report(rule: AgendaRule) -> dict:
    """Find proposals producing each nonempty agenda (identical proposals first)."""
    agendas = nonempty_agendas(rule.ground)
    witnesses: dict[str, list[list[str]]] = {}
    missing = []
    for c in agendas:
        hit = None
        if rule((c,) * rule.n) == c:
            hit = (c,) * rule.n
        else:
            for props in itertools.product(agendas, repeat=rule.n):
                if rule(props) == c:
                    hit = props
                    break
        label = ",".join(agenda_labels(rule.ground, c))
        if hit is None:
            missing.append(label)
        else:
            witnesses[label] = [agenda_labels(rule.ground, p) for p in hit]
    return {"sovereign": not missing, "missing": missing, "witnesses": witnesses}


# ---------------------------------------------------------------------------
# parallel coupling


@dataclass(frozen=True)
class PafeRule:
    """Agenda and social preference chosen in parallel from (proposals, preferences).

    ``preference`` receives both inputs; the decomposable case ignores the
    proposals.
    """

    name: str
    agenda_part: AgendaRule
    preference: Callable[[Proposals, tuple[int, ...]], int]
    decomposable: bool

    @property
    def ground(self) -> GroundSet:
        return self.agenda_part.ground

    @property
    def n(self) -> int:
        return self.agenda_part.n

    def __call__(self, proposals: Proposals, prefs: tuple[int, ...]) -> tuple[int, int]:
        return self.agenda_part(proposals), self.preference(proposals, prefs)


def decomposable_pafe(agenda_part: AgendaRule, rule: Rule) -> PafeRule:
    if rule.ground != agenda_part.ground or rule.n != agenda_part.n:
        raise ParameterError("agenda rule and social welfare function disagree on (A, N)")
    return PafeRule(f"pafe({agenda_part.name},{rule.name})", agenda_part, lambda _b, r: rule.eval_bits(r), True)


def entangled_pafe(agenda_part: AgendaRule, even: Rule | None = None, odd: Rule | None = None) -> PafeRule:
    """Test double whose preference output switches rules on the parity of total proposal size."""
    g, n = agenda_part.ground, agenda_part.n
    even = even or dictator(g, n, 1)
    odd = odd or dictator(g, n, 2)

    def pref(proposals: Proposals, prefs: tuple[int, ...]) -> int:
        size = sum(bin(p).count("1") for p in proposals)
        return (even if size % 2 == 0 else odd).eval_bits(prefs)

    return PafeRule(f"entangled({even.name}/{odd.name})", agenda_part, pref, False)


def proposal_profiles(ground: GroundSet, n: int, samples: int = 8, seed: int = DEFAULT_SEED) -> list[Proposals]:
    """Identical proposals for every nonempty agenda, then seeded random ones."""
    agendas = nonempty_agendas(ground)
    out: dict[Proposals, None] = {(c,) * n: None for c in agendas}
    rng = random.Random(seed)
    target = len(out) + samples
    while len(out) < target:
        out[tuple(rng.choice(agendas) for _ in range(n))] = None
    return list(out)


def _symmetric(dist: list[list[int]], p: int, x: int, y: int) -> bool:
    """Geodesic meta-preference with peak p ranks x and y symmetrically."""
    xy = dist[p][x] + dist[x][y] == dist[p][y]
    yx = dist[p][y] + dist[y][x] == dist[p][x]
    return xy == yx


def check_AMP_P(
    pafe: PafeRule,
    domain: Domain | None = None,
    proposal_samples: int = 8,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Parallel agenda manipulation-proofness.

    For every preference profile and proposal pair with ``C = f1(B) <= f1(B') = D``,
    each agent ranks ``f2(B, R)|C`` and ``f2(B', R)|C`` symmetrically.  Preference
    profiles are enumerated by ``domain``; proposal profiles are all identical
    proposals plus a seeded sample.
    """
    g, n, m = pafe.ground, pafe.n, pafe.ground.size
    dom = domain or make_domain(g, n)
    poset = ambient(g, "sum")
    idx, dist = poset.index, poset.dist
    props = proposal_profiles(g, n, proposal_samples, seed)
    agendas = {b: pafe.agenda_part(b) for b in props}
    pairs = [(b1, b2) for b1 in props for b2 in props if agendas[b1] & ~agendas[b2] == 0]
    witness = None
    compared = equal = 0
    with Timer() as t:
        for prefs in dom.profiles:
            peaks = [idx[r] for r in prefs]
            outs = {b: pafe.preference(b, prefs) for b in props}
            for b1, b2 in pairs:
                cmask = pair_mask(agendas[b1], m)
                x = outs[b1] & cmask
                y = outs[b2] & cmask
                compared += 1
                if x == y:
                    equal += 1
                    continue
                for i, p in enumerate(peaks):
                    if not _symmetric(dist, p, idx[x], idx[y]):
                        witness = {
                            "profile": [preorder_space(g).render_bits(r) for r in prefs],
                            "proposals": [agenda_labels(g, b) for b in b1],
                            "proposals2": [agenda_labels(g, b) for b in b2],
                            "agenda": agenda_labels(g, agendas[b1]),
                            "agent": i + 1,
                            "restrictions": [_render_sum(g, x), _render_sum(g, y)],
                        }
                        break
                if witness:
                    break
            if witness:
                break
    # proposals are sampled, so a clean run is only exhaustive over preferences
    exhaustive = dom.exhaustive
    return CheckReport(
        axiom="AMP_P",
        rule=pafe.name,
        scope=Scope(
            mode="exhaustive" if exhaustive else "sampled",
            m=m,
            n=n,
            domain_size=len(dom.profiles) * len(pairs),
            seed=seed,
            samples=proposal_samples,
        ),
        verdict=verdict_for(witness is not None, exhaustive),
        witness=witness,
        details={
            "proposal_profiles": len(props),
            "proposal_pairs": len(pairs),
            "comparisons": compared,
            "restrictions_equal": equal,
            "decomposable": pafe.decomposable,
        },
        elapsed=t.elapsed,
    )


# ---------------------------------------------------------------------------
# sequential coupling


class AgendaFamily:
    """Social preference on each nonempty agenda, in A x A coordinates."""

    name: str
    genuine: bool  # depends on the profile only through its restriction

    def outcome(self, prefs: tuple[int, ...], agenda: int) -> int:
        raise NotImplementedError


class SchemeFamily(AgendaFamily):
    """A rule recomputed on each restricted profile."""

    genuine = True

    def __init__(self, ground: GroundSet, scheme: Callable[[GroundSet], Rule], name: str):
        self.ground = ground
        self.scheme = scheme
        self.name = name
        self._rules: dict[int, tuple[Rule, tuple[int, ...]]] = {}

    def outcome(self, prefs: tuple[int, ...], agenda: int) -> int:
        m = self.ground.size
        if agenda not in self._rules:
            members = _members(agenda, m)
            sub = GroundSet.agenda(self.ground.labels[i] for i in members)
            self._rules[agenda] = (self.scheme(sub), members)
        rule, members = self._rules[agenda]
        sub_prefs = tuple(restrict_bits(r, m, members) for r in prefs)
        return _embed(rule.eval_bits(sub_prefs), members, m)


class RestrictionFamily(AgendaFamily):
    """``B -> (Q_N -> f(R_N)|B)`` for any ``R_N`` restricting to ``Q_N``.

    A function of the restricted profile only when ``f`` satisfies IIA; the
    table is built from every profile and rejected on the first conflict.
    """

    genuine = True

    def __init__(self, rule: Rule, domain: Domain | None = None):
        if rule.relation_valued:
            raise ParameterError("agenda families need total-preorder outputs")
        self.rule = rule
        self.name = f"restriction({rule.name})"
        dom = domain or make_domain(rule.ground, rule.n)
        if not dom.exhaustive:
            raise FamilyUndefined("the restriction family needs an exhaustive domain to be well defined")
        rep = check_IIA(rule, dom)
        if rep.verdict != HOLDS:
            raise FamilyUndefined(
                f"{rule.name} violates IIA, so its restrictions do not define a family; supply a scheme"
            )
        m = rule.m
        self.table: dict[tuple[int, tuple[int, ...]], int] = {}
        for agenda in nonempty_agendas(rule.ground):
            cmask = pair_mask(agenda, m)
            for prefs in dom.profiles:
                key = (agenda, tuple(r & cmask for r in prefs))
                val = rule.eval_bits(prefs) & cmask
                old = self.table.setdefault(key, val)
                if old != val:
                    raise FamilyUndefined(f"restriction of {rule.name} to an agenda is not well defined")

    def outcome(self, prefs: tuple[int, ...], agenda: int) -> int:
        cmask = pair_mask(agenda, self.rule.m)
        return self.table[(agenda, tuple(r & cmask for r in prefs))]


class AmbientFamily(AgendaFamily):
    """``f(R_N)|B`` read off the full profile.

    Not a family in the sequential sense (it sees preferences outside B);
    provided to reproduce arguments that restrict the ambient outcome.
    """

    genuine = False

    def __init__(self, rule: Rule):
        if rule.relation_valued:
            raise ParameterError("agenda families need total-preorder outputs")
        self.rule = rule
        self.name = f"ambient({rule.name})"

    def outcome(self, prefs: tuple[int, ...], agenda: int) -> int:
        return self.rule.eval_bits(prefs) & pair_mask(agenda, self.rule.m)


@dataclass(frozen=True)
class SafeRule:
    agenda_part: AgendaRule
    family: AgendaFamily

    @property
    def name(self) -> str:
        return f"safe({self.agenda_part.name},{self.family.name})"

    def __call__(self, proposals: Proposals, prefs: tuple[int, ...]) -> tuple[int, int]:
        agenda = self.agenda_part(proposals)
        return agenda, self.family.outcome(prefs, agenda)


def make_safe_uniform(
    ground: GroundSet, n: int, scheme: Callable[[GroundSet], Rule] | str, agenda_part: AgendaRule | None = None
) -> SafeRule:
    if isinstance(scheme, str):
        name = scheme
        scheme = scheme_from_spec(scheme, n)
    else:
        name = getattr(scheme, "spec", "scheme")
    return SafeRule(agenda_part or union_agenda_rule(ground, n), SchemeFamily(ground, scheme, f"scheme({name})"))


AMBIENT_SCHEMES = ("restrict", "ambient")


def family_for(rule: Rule, scheme: str | None = None, domain: Domain | None = None) -> AgendaFamily:
    """Pick the agenda family used to judge a bare rule.

    No scheme: the restriction family, defined only under IIA (otherwise
    :class:`FamilyUndefined`).  ``"restrict"``: the ambient reading.  Anything
    else is a rule spec recomputed on every agenda.
    """
    if scheme is None:
        return RestrictionFamily(rule, domain)
    if scheme in AMBIENT_SCHEMES:
        return AmbientFamily(rule)
    return SchemeFamily(rule.ground, scheme_from_spec(scheme, rule.n), f"scheme({scheme})")


def check_AMP_S(
    target: SafeRule | Rule,
    scheme: str | None = None,
    domain: Domain | None = None,
) -> CheckReport:
    """Sequential agenda manipulation-proofness.

    For every profile and nonempty ``C <= D``, each agent ranks
    ``f_C(R|C)`` and ``f_D(R|D)|C`` symmetrically.  Quantifying over agenda
    pairs stands in for quantifying over sovereign agenda rules: sovereignty
    makes every pair reachable and the condition reads agendas only through
    ``C`` and ``D``.
    """
    if isinstance(target, SafeRule):
        family = target.family
        g, n, name = target.agenda_part.ground, target.agenda_part.n, target.name
    else:
        family = family_for(target, scheme, domain)
        g, n, name = target.ground, target.n, target.name
    m = g.size
    dom = domain or make_domain(g, n)
    poset = ambient(g, "sum")
    idx, dist = poset.index, poset.dist
    agendas = nonempty_agendas(g)
    pairs = [(c, d) for c in agendas for d in agendas if c != d and c & ~d == 0]
    witness = None
    with Timer() as t:
        for prefs in dom.profiles:
            peaks = [idx[r] for r in prefs]
            for c, d in pairs:
                x = family.outcome(prefs, c)
                y = family.outcome(prefs, d) & pair_mask(c, m)
                if x == y:
                    continue
                for i, p in enumerate(peaks):
                    if not _symmetric(dist, p, idx[x], idx[y]):
                        witness = {
                            "profile": [preorder_space(g).render_bits(r) for r in prefs],
                            "agenda": agenda_labels(g, c),
                            "agenda2": agenda_labels(g, d),
                            "agent": i + 1,
                            "restrictions": [_render_sum(g, x), _render_sum(g, y)],
                        }
                        break
                if witness:
                    break
            if witness:
                break
    return CheckReport(
        axiom="AMP_S",
        rule=name,
        scope=dom.scope(len(dom.profiles) * len(pairs)),
        verdict=verdict_for(witness is not None, dom.exhaustive),
        witness=witness,
        details={"family": family.name, "genuine_family": family.genuine, "agenda_pairs": len(pairs)},
        elapsed=t.elapsed,
    )


def replay_AMP(target: PafeRule | SafeRule | Rule, report: CheckReport, scheme: str | None = None) -> bool:
    """Re-derive an AMP failure from its witness."""
    if report.verdict != FAILS or not report.witness:
        raise ValueError("only failing reports carry a witness")
    w = report.witness
    if isinstance(target, PafeRule):
        g = target.ground
    elif isinstance(target, SafeRule):
        g = target.agenda_part.ground
    else:
        g = target.ground
    m = g.size
    prefs = tuple(parse_preorder(s, g).bits for s in w["profile"])
    poset = ambient(g, "sum")
    p = poset.index[prefs[w["agent"] - 1]]
    if isinstance(target, PafeRule):
        b1 = tuple(agenda_mask(g, b) for b in w["proposals"])
        b2 = tuple(agenda_mask(g, b) for b in w["proposals2"])
        c1, o1 = target(b1, prefs)
        c2, o2 = target(b2, prefs)
        if c1 & ~c2:
            return False
        cm = pair_mask(c1, m)
        x, y = o1 & cm, o2 & cm
    else:
        family = target.family if isinstance(target, SafeRule) else family_for(target, scheme)
        c = agenda_mask(g, w["agenda"])
        d = agenda_mask(g, w["agenda2"])
        if c & ~d:
            return False
        x = family.outcome(prefs, c)
        y = family.outcome(prefs, d) & pair_mask(c, m)
    return not _symmetric(poset.dist, p, poset.index[x], poset.index[y])


# ---------------------------------------------------------------------------
# the IIA -> AMP_S -> IIAP chain


def implication_suite_prop2(ground: GroundSet, n: int = 3, rules: list[Rule] | None = None) -> CheckReport:
    """IIA implies AMP_S (restriction family), and AMP_S implies IIAP, over the catalog.

    Rules that are not IIA have no restriction family; for them the ambient
    reading is reported alongside IIAP so disagreements are visible.
    """
    rules = rules if rules is not None else catalog(ground, n)
    dom = make_domain(ground, n)
    rows = []
    anomalies = []
    with Timer() as t:
        for rule in rules:
            row: dict = {"rule": rule.name}
            if rule.relation_valued:
                row["note"] = "outputs are not always total preorders; AMP checks not applicable"
                rows.append(row)
                continue
            iia = check_IIA(rule, dom).verdict
            iiap = check_IIAP(rule, dom).verdict
            row.update(IIA=iia, IIAP=iiap)
            if iia == HOLDS:
                amp = check_AMP_S(rule, domain=dom).verdict
                row["AMP_S"] = amp
                if amp != HOLDS:
                    anomalies.append({"rule": rule.name, "implication": "IIA => AMP_S", "AMP_S": amp})
                if amp == HOLDS and iiap != HOLDS:
                    anomalies.append({"rule": rule.name, "implication": "AMP_S => IIAP", "IIAP": iiap})
            else:
                row["AMP_S"] = "family-undefined"
            row["AMP_S_ambient"] = check_AMP_S(rule, scheme="restrict", domain=dom).verdict
            rows.append(row)
    ambient_gaps = [r["rule"] for r in rows if r.get("AMP_S_ambient") == HOLDS and r.get("IIAP") == FAILS]
    return CheckReport(
        axiom="IIA=>AMP_S=>IIAP",
        rule="catalog",
        scope=dom.scope(len(rules)),
        verdict=verdict_for(bool(anomalies), dom.exhaustive),
        witness={"anomalies": anomalies} if anomalies else None,
        details={"rules": rows, "ambient_reading_holds_but_IIAP_fails": ambient_gaps},
        elapsed=t.elapsed,
    )


def amp_s_iiap_tension(rule: Rule, domain: Domain | None = None) -> dict:
    """AMP_S (ambient reading) and IIAP verdicts for one rule, and whether they fit together.

    "The rule is AMP_S" and "AMP_S implies IIAP" can both stand only if the
    rule passes IIAP; ``status`` says whether they do.
    """
    dom = domain or make_domain(rule.ground, rule.n)
    amp = check_AMP_S(rule, scheme="restrict", domain=dom)
    iiap = check_IIAP(rule, dom)
    iia = check_IIA(rule, dom)
    consistent = not (amp.verdict == HOLDS and iiap.verdict == FAILS)
    return {
        "rule": rule.name,
        "AMP_S_ambient": amp.verdict,
        "IIAP": iiap.verdict,
        "IIA": iia.verdict,
        "IIAP_witness": iiap.witness,
        "status": "agreement" if consistent else "contradiction",
        "explanation": (
            "both statements are compatible on this rule"
            if consistent
            else "the ambient-restriction reading makes the rule AMP_S while IIAP fails, "
            "so 'AMP_S implies IIAP' and 'this rule is AMP_S' cannot both hold under one reading"
        ),
    }
