"""Decision procedures for the axioms on social welfare functions.

Each ``check_*`` function quantifies over a :class:`Domain` of profiles
(every profile when exhaustive, a seeded sample otherwise) and returns a
:class:`~medianswf.report.CheckReport`.  Pair quantifiers ("for all profiles
R, R' such that ...") are decided by grouping profiles on the linking key
rather than by scanning all pairs; the test-suite re-checks them with
literal pair loops.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .errors import GroundTooLarge, ParameterError
from .lattice import bipartition_bits
from .meta import MetaPreference, ambient
from .relations import (
    GroundSet,
    converse_bits,
    full_mask,
    holds_bits,
    is_total_preorder_bits,
    parse_preorder,
    preorder_space,
    restrict_bits,
)
from .report import FAILS, CheckReport, Scope, Timer, verdict_for
from .rules import Rule, coalition_members

DEFAULT_SEED = int(os.environ.get("MEDIANSWF_SEED", "42"))
DEFAULT_SAMPLES = 3000


# ---------------------------------------------------------------------------
# quantification domains


@dataclass
class Domain:
    """The profiles a checker quantifies over."""

    ground: GroundSet
    n: int
    exhaustive: bool
    profiles: list[tuple[int, ...]]
    seed: int | None = None
    samples: int | None = None

    @property
    def m(self) -> int:
        return self.ground.size

    def scope(self, domain_size: int | None = None) -> Scope:
        return Scope(
            mode="exhaustive" if self.exhaustive else "sampled",
            m=self.m,
            n=self.n,
            domain_size=domain_size if domain_size is not None else len(self.profiles),
            seed=self.seed,
            samples=self.samples,
        )


_DOMAINS: dict[tuple, Domain] = {}


def make_domain(
    ground: GroundSet,
    n: int,
    exhaustive: bool | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int | None = None,
) -> Domain:
    """Exhaustive for m = 3 by default; seeded sample for m = 4."""
    if ground.size > 4:
        raise GroundTooLarge("axiom checkers support at most 4 alternatives")
    if exhaustive is None:
        exhaustive = ground.size <= 3
    seed = DEFAULT_SEED if seed is None else seed
    key = (ground, n, exhaustive, samples if not exhaustive else None, seed if not exhaustive else None)
    if key in _DOMAINS:
        return _DOMAINS[key]
    bits = preorder_space(ground).bits
    if exhaustive:
        dom = Domain(ground, n, True, list(itertools.product(bits, repeat=n)))
    else:
        rng = random.Random(seed)
        seen: dict[tuple[int, ...], None] = {}
        while len(seen) < samples:
            seen[tuple(rng.choice(bits) for _ in range(n))] = None
        dom = Domain(ground, n, False, list(seen), seed=seed, samples=samples)
    _DOMAINS[key] = dom
    return dom


def _domain_for(rule: Rule, domain: Domain | None, **kw) -> Domain:
    if domain is None:
        return make_domain(rule.ground, rule.n, **kw)
    if domain.ground != rule.ground or domain.n != rule.n:
        raise ParameterError("domain does not match the rule")
    return domain


def _render_profile(ground: GroundSet, prefs: Sequence[int]) -> list[str]:
    space = preorder_space(ground)
    return [space.render_bits(p) for p in prefs]


def _render(ground: GroundSet, bits: int) -> str:
    return preorder_space(ground).render_bits(bits)


def _labels(ground: GroundSet, *idx: int) -> list[str]:
    return [ground.labels[i] for i in idx]


def _report(
    axiom: str,
    rule: Rule,
    domain: Domain,
    witness: dict | None,
    t: Timer,
    domain_size: int | None = None,
    details: dict | None = None,
) -> CheckReport:
    return CheckReport(
        axiom=axiom,
        rule=rule.name,
        scope=domain.scope(domain_size),
        verdict=verdict_for(witness is not None, domain.exhaustive),
        witness=witness,
        details=details or {},
        elapsed=t.elapsed,
    )


def _distinct_pairs(m: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(m) for y in range(m) if x != y]


def _strict(bits: int, m: int) -> int:
    return bits & ~converse_bits(bits, m)


# ---------------------------------------------------------------------------
# single-profile axioms


def check_AN(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Anonymity: permuting the agents never changes the outcome."""
    dom = _domain_for(rule, domain, **kw)
    witness = None
    count = 0
    with Timer() as t:
        for prefs in dom.profiles:
            out = rule.eval_bits(prefs)
            for perm in itertools.permutations(range(dom.n)):
                count += 1
                permuted = tuple(prefs[j] for j in perm)
                out2 = rule.eval_bits(permuted)
                if out2 != out:
                    witness = {
                        "profile": _render_profile(dom.ground, prefs),
                        "permuted": _render_profile(dom.ground, permuted),
                        "outputs": [_render(dom.ground, out), _render(dom.ground, out2)],
                    }
                    break
            if witness:
                break
    return _report("AN", rule, dom, witness, t, count)


def check_ID(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Idempotence: a unanimous profile returns the common preorder."""
    dom = _domain_for(rule, domain, **kw)
    witness = None
    bits = preorder_space(dom.ground).bits
    with Timer() as t:
        for r in bits:
            prefs = (r,) * dom.n
            out = rule.eval_bits(prefs)
            if out != r:
                witness = {"profile": _render_profile(dom.ground, prefs), "output": _render(dom.ground, out)}
                break
    # unanimous profiles are always enumerated in full
    dom_full = Domain(dom.ground, dom.n, True, [])
    return _report("ID", rule, dom_full, witness, t, len(bits))


def check_WP(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Weak Pareto: a unanimous strict preference is strict in the outcome."""
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    with Timer() as t:
        for prefs in dom.profiles:
            common = full_mask(m)
            for r in prefs:
                common &= _strict(r, m)
            if not common:
                continue
            out = rule.eval_bits(prefs)
            bad = common & ~_strict(out, m)
            if bad:
                x, y = _first_pair(bad, m)
                witness = {
                    "profile": _render_profile(dom.ground, prefs),
                    "pair": _labels(dom.ground, x, y),
                    "output": _render(dom.ground, out),
                }
                break
    return _report("WP", rule, dom, witness, t)


def check_BP(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Basic Pareto: a unanimous weak preference holds in the outcome."""
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    with Timer() as t:
        for prefs in dom.profiles:
            common = full_mask(m)
            for r in prefs:
                common &= r
            out = rule.eval_bits(prefs)
            bad = common & ~out
            if bad:
                x, y = _first_pair(bad, m)
                witness = {
                    "profile": _render_profile(dom.ground, prefs),
                    "pair": _labels(dom.ground, x, y),
                    "output": _render(dom.ground, out),
                }
                break
    return _report("BP", rule, dom, witness, t)


def _first_pair(bits: int, m: int) -> tuple[int, int]:
    pos = (bits & -bits).bit_length() - 1
    return divmod(pos, m)


def check_WS(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Weak sovereignty: each ordered pair is weakly ranked in some outcome."""
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    with Timer() as t:
        seen = 0
        for prefs in dom.profiles:
            seen |= rule.eval_bits(prefs)
        for x, y in _distinct_pairs(m):
            if not holds_bits(seen, m, x, y):
                witness = {"pair": _labels(dom.ground, x, y), "note": "no profile has x weakly above y"}
                break
    return _report("WS", rule, dom, witness, t)


def check_LS(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Local separation: each pair's social restriction varies across profiles."""
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    with Timer() as t:
        outs = {rule.eval_bits(p) for p in dom.profiles}
        for x, y in _distinct_pairs(m):
            if x > y:
                continue
            seen = {restrict_bits(o, m, (x, y)) for o in outs}
            if len(seen) < 2:
                witness = {"pair": _labels(dom.ground, x, y), "note": "restriction to the pair is constant"}
                break
    return _report("LS", rule, dom, witness, t)


def check_S(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Sovereignty: every total preorder is an outcome."""
    dom = _domain_for(rule, domain, **kw)
    witness = None
    with Timer() as t:
        outs = {rule.eval_bits(p) for p in dom.profiles}
        for r in preorder_space(dom.ground).bits:
            if r not in outs:
                witness = {"missing": _render(dom.ground, r)}
                break
    return _report("S", rule, dom, witness, t)


# ---------------------------------------------------------------------------
# neutrality


def _pattern(prefs: Sequence[int], m: int, x: int, y: int) -> tuple[bool, ...]:
    pos = x * m + y
    return tuple(bool(r >> pos & 1) for r in prefs)


def check_NT(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Neutrality: ``x f(R) y`` iff ``y f(R') x`` whenever each agent's x-y
    comparison in R mirrors its y-x comparison in R'.

    For each ordered pair and each agent pattern b, every R with pattern b on
    (x, y) and every R' with pattern b on (y, x) must agree; the checker keeps
    one representative profile per (pattern, value).
    """
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    pairs_checked = 0
    with Timer() as t:
        for x, y in _distinct_pairs(m):
            left: dict[tuple, dict[bool, tuple]] = defaultdict(dict)
            right: dict[tuple, dict[bool, tuple]] = defaultdict(dict)
            for prefs in dom.profiles:
                out = rule.eval_bits(prefs)
                left[_pattern(prefs, m, x, y)].setdefault(holds_bits(out, m, x, y), prefs)
                right[_pattern(prefs, m, y, x)].setdefault(holds_bits(out, m, y, x), prefs)
            for b in sorted(left):
                if b not in right:
                    continue
                pairs_checked += sum(1 for _ in left[b]) * sum(1 for _ in right[b])
                for v1, p1 in sorted(left[b].items()):
                    for v2, p2 in sorted(right[b].items()):
                        if v1 != v2 and witness is None:
                            witness = {
                                "pair": _labels(dom.ground, x, y),
                                "profile": _render_profile(dom.ground, p1),
                                "profile2": _render_profile(dom.ground, p2),
                                "outputs": [_render(dom.ground, rule.eval_bits(p1)), _render(dom.ground, rule.eval_bits(p2))],
                            }
                if witness:
                    break
            if witness:
                break
    return _report("NT", rule, dom, witness, t)


def check_WNT(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Weak neutrality over two-class preorders R, R' with identical refining coalitions."""
    dom = _domain_for(rule, domain, **kw)
    bips = bipartition_bits(dom.ground)
    witness = None
    count = 0
    with Timer() as t:
        for prefs in dom.profiles:
            out = rule.eval_bits(prefs)
            groups: dict[int, list[int]] = defaultdict(list)
            for b in bips:
                coal = sum(1 << i for i, r in enumerate(prefs) if r & ~b == 0)
                groups[coal].append(b)
            for members in groups.values():
                count += len(members) ** 2
                inside = [out & ~b == 0 for b in members]
                if any(inside) and not all(inside):
                    b1 = members[inside.index(True)]
                    b2 = members[inside.index(False)]
                    witness = {
                        "profile": _render_profile(dom.ground, prefs),
                        "bipartitions": [_render(dom.ground, b1), _render(dom.ground, b2)],
                        "output": _render(dom.ground, out),
                    }
                    break
            if witness:
                break
    return _report("WNT", rule, dom, witness, t, count)


# ---------------------------------------------------------------------------
# independence


def _agendas(ground: GroundSet) -> list[tuple[int, ...]]:
    m = ground.size
    return [c for k in range(1, m) for c in itertools.combinations(range(m), k)]


def _independence(
    axiom: str, rule: Rule, dom: Domain, profiles: Iterable[tuple[int, ...]], t: Timer
) -> tuple[dict | None, int]:
    m = dom.m
    profiles = list(profiles)
    witness = None
    count = 0
    for agenda in _agendas(dom.ground):
        groups: dict[tuple, dict[int, tuple]] = defaultdict(dict)
        for prefs in profiles:
            key = tuple(restrict_bits(r, m, agenda) for r in prefs)
            val = restrict_bits(rule.eval_bits(prefs), m, agenda)
            groups[key].setdefault(val, prefs)
        for key in groups:
            vals = groups[key]
            count += 1
            if len(vals) > 1 and witness is None:
                (v1, p1), (v2, p2) = sorted(vals.items())[:2]
                witness = {
                    "agenda": _labels(dom.ground, *agenda),
                    "profile": _render_profile(dom.ground, p1),
                    "profile2": _render_profile(dom.ground, p2),
                    "outputs": [_render(dom.ground, rule.eval_bits(p1)), _render(dom.ground, rule.eval_bits(p2))],
                }
        if witness:
            break
    return witness, count


def check_IIA(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Independence of irrelevant alternatives over every proper nonempty agenda."""
    dom = _domain_for(rule, domain, **kw)
    with Timer() as t:
        witness, groups = _independence("IIA", rule, dom, dom.profiles, t)
    return _report("IIA", rule, dom, witness, t, details={"restriction_classes": groups})


def is_projective(rule: Rule, prefs: tuple[int, ...]) -> bool:
    return rule.eval_bits(prefs) in prefs


def check_IIAP(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """IIA restricted to projective profiles (outcome equal to some agent's preorder)."""
    dom = _domain_for(rule, domain, **kw)
    with Timer() as t:
        projective = [p for p in dom.profiles if is_projective(rule, p)]
        witness, groups = _independence("IIAP", rule, dom, projective, t)
    return _report(
        "IIAP",
        rule,
        dom,
        witness,
        t,
        len(projective),
        details={"projective_profiles": len(projective), "restriction_classes": groups},
    )


# ---------------------------------------------------------------------------
# responsiveness and MDR


def responsiveness(rule: Rule, domain: Domain | None = None, **kw) -> dict[tuple[int, int], dict[int, tuple]]:
    """``F_f(x, y)`` for every ordered pair of distinct alternatives.

    Maps ``(x, y)`` to ``{coalition_mask: pattern}`` where ``pattern`` gives,
    for each member (ascending), whether it weakly prefers x to y.  Only the
    predicate ``x R_i y`` enters the definition, so a coalition is responsive
    iff some boolean pattern on its members forces ``x f y`` on every profile.
    """
    dom = _domain_for(rule, domain, **kw)
    m, n = dom.m, dom.n
    coalitions = list(range(1 << n))
    out: dict[tuple[int, int], dict[int, tuple]] = {}
    for x, y in _distinct_pairs(m):
        # patterns (per coalition) seen with a profile where x f y fails
        spoiled: dict[int, set[tuple]] = {c: set() for c in coalitions}
        seen: dict[int, set[tuple]] = {c: set() for c in coalitions}
        for prefs in dom.profiles:
            pat = _pattern(prefs, m, x, y)
            ok = holds_bits(rule.eval_bits(prefs), m, x, y)
            for c in coalitions:
                sub = tuple(pat[i] for i in range(n) if c >> i & 1)
                seen[c].add(sub)
                if not ok:
                    spoiled[c].add(sub)
        resp: dict[int, tuple] = {}
        for c in coalitions:
            k = bin(c).count("1")
            for sub in itertools.product((True, False), repeat=k):
                if sub in seen[c] and sub not in spoiled[c]:
                    resp[c] = sub
                    break
        out[(x, y)] = resp
    return out


def check_MDR(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Minimally distributed responsiveness.

    Whenever ``{i}`` is responsive on some distinct pair, some coalition not
    containing ``i`` must be responsive on some distinct pair.
    """
    dom = _domain_for(rule, domain, **kw)
    n = dom.n
    witness = None
    with Timer() as t:
        F = responsiveness(rule, dom)
        for i in range(n):
            single = 1 << i
            trig = [(xy, F[xy][single]) for xy in sorted(F) if single in F[xy]]
            if not trig:
                continue
            ok = any(c & single == 0 for xy in F for c in F[xy])
            if not ok:
                (x, y), pat = trig[0]
                witness = {
                    "agent": i + 1,
                    "pair": _labels(dom.ground, x, y),
                    "pattern": list(pat),
                    "note": "no coalition without this agent is responsive on any pair",
                }
                break
    details = {
        "responsiveness": {
            f"{dom.ground.labels[x]}>={dom.ground.labels[y]}": [coalition_members(c) for c in sorted(F[(x, y)])]
            for (x, y) in sorted(F)
        }
    }
    return _report("MDR", rule, dom, witness, t, details=details)


# ---------------------------------------------------------------------------
# strategy-proofness and monotonic independence


def _require_preorder_valued(rule: Rule, axiom: str) -> None:
    if rule.relation_valued:
        raise ParameterError(f"{axiom} needs a rule whose outputs are total preorders")


SP_DOMAINS = ("induced", "metric", "both")


def check_SP(
    rule: Rule, domain: Domain | None = None, space: str = "ra", meta: str = "induced", **kw
) -> CheckReport:
    """Strategy-proofness on a single-peaked meta-preference domain.

    Agent ``i`` with peak ``R_i`` must never strictly prefer the outcome of a
    unilateral deviation to the truthful one.  ``meta="induced"`` uses the
    geodesic preferences (one per peak), ``"metric"`` ranks by distance from
    the peak, and ``"both"`` quantifies over the union of the two domains.
    """
    _require_preorder_valued(rule, "SP")
    if meta not in SP_DOMAINS:
        raise ParameterError(f"unknown meta-preference domain {meta!r}")
    dom = _domain_for(rule, domain, **kw)
    poset = ambient(dom.ground, space)
    idx = poset.index
    dist = poset.dist
    alternatives = preorder_space(dom.ground).bits
    kinds = ("geodesic", "metric") if meta == "both" else ("metric",) if meta == "metric" else ("geodesic",)

    def prefers(dp: list[int], o: int, t: int, kind: str) -> bool:
        if kind == "metric":
            return dp[o] < dp[t]
        # geodesic: o on a geodesic from the peak to t, and not conversely
        return dp[o] + dist[o][t] == dp[t] and dp[t] + dist[t][o] != dp[o]

    witness = None
    count = 0
    with Timer() as t:
        for prefs in dom.profiles:
            truthful = idx[rule.eval_bits(prefs)]
            for i in range(dom.n):
                dp = dist[idx[prefs[i]]]
                for dev in alternatives:
                    if dev == prefs[i]:
                        continue
                    count += 1
                    dev_prefs = prefs[:i] + (dev,) + prefs[i + 1 :]
                    o = idx[rule.eval_bits(dev_prefs)]
                    if o == truthful:
                        continue
                    kind = next((k for k in kinds if prefers(dp, o, truthful, k)), None)
                    if kind is not None:
                        witness = {
                            "profile": _render_profile(dom.ground, prefs),
                            "agent": i + 1,
                            "deviation": _render(dom.ground, dev),
                            "truthful_outcome": _render(dom.ground, rule.eval_bits(prefs)),
                            "manipulated_outcome": _render(dom.ground, rule.eval_bits(dev_prefs)),
                            "meta": kind,
                        }
                        break
                if witness:
                    break
            if witness:
                break
    return _report("SP", rule, dom, witness, t, count, details={"space": space, "meta": meta})


def _coalition(prefs: Sequence[int], mbits: int) -> int:
    return sum(1 << i for i, r in enumerate(prefs) if r & ~mbits == 0)


def check_monotone_M_independence(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """``N_m(x) <= N_m(y)`` and ``f(x) <= m`` imply ``f(y) <= m``, for every bipartition m.

    Per bipartition, profiles are bucketed by refining coalition; a violation
    exists iff some coalition T has an inside profile and some superset T'
    has an outside one.
    """
    dom = _domain_for(rule, domain, **kw)
    n = dom.n
    witness = None
    count = 0
    with Timer() as t:
        for mbits in bipartition_bits(dom.ground):
            inside: dict[int, tuple] = {}
            outside: dict[int, tuple] = {}
            sizes: dict[int, int] = defaultdict(int)
            for prefs in dom.profiles:
                c = _coalition(prefs, mbits)
                sizes[c] += 1
                if rule.eval_bits(prefs) & ~mbits == 0:
                    inside.setdefault(c, prefs)
                else:
                    outside.setdefault(c, prefs)
            for c1 in range(1 << n):
                for c2 in range(1 << n):
                    if c1 & ~c2 == 0:
                        count += sizes[c1] * sizes[c2]
            for c1 in sorted(inside):
                for c2 in sorted(outside):
                    if c1 & ~c2 == 0 and witness is None:
                        witness = {
                            "bipartition": _render(dom.ground, mbits),
                            "profile": _render_profile(dom.ground, inside[c1]),
                            "profile2": _render_profile(dom.ground, outside[c2]),
                            "coalitions": [coalition_members(c1), coalition_members(c2)],
                            "outputs": [
                                _render(dom.ground, rule.eval_bits(inside[c1])),
                                _render(dom.ground, rule.eval_bits(outside[c2])),
                            ],
                        }
            if witness:
                break
    return _report("monotone-M-independence", rule, dom, witness, t, count)


def check_M_independence(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Equal refining coalitions give equal membership ``f(.) <= m``."""
    dom = _domain_for(rule, domain, **kw)
    witness = None
    with Timer() as t:
        for mbits in bipartition_bits(dom.ground):
            seen: dict[int, dict[bool, tuple]] = defaultdict(dict)
            for prefs in dom.profiles:
                c = _coalition(prefs, mbits)
                seen[c].setdefault(rule.eval_bits(prefs) & ~mbits == 0, prefs)
            for c, vals in sorted(seen.items()):
                if len(vals) > 1:
                    witness = {
                        "bipartition": _render(dom.ground, mbits),
                        "profile": _render_profile(dom.ground, vals[True]),
                        "profile2": _render_profile(dom.ground, vals[False]),
                    }
                    break
            if witness:
                break
    return _report("M-independence", rule, dom, witness, t)


# ---------------------------------------------------------------------------
# dictators, stalemates, decisive coalitions


def _detect(rule: Rule, dom: Domain, inverse: bool) -> tuple[list[int], dict[int, dict]]:
    m = dom.m
    dictators = []
    counter: dict[int, dict] = {}
    for i in range(dom.n):
        bad = None
        for prefs in dom.profiles:
            ri = converse_bits(prefs[i], m) if inverse else prefs[i]
            if rule.eval_bits(prefs) & ~ri:
                bad = prefs
                break
        if bad is None:
            dictators.append(i + 1)
        else:
            counter[i + 1] = {
                "profile": _render_profile(dom.ground, bad),
                "output": _render(dom.ground, rule.eval_bits(bad)),
            }
    return dictators, counter


def detect_dictator(rule: Rule, domain: Domain | None = None, inverse: bool = False, **kw) -> CheckReport:
    """Is some agent a (inverse) dictator: ``x f y`` only if ``x R_i y`` (``y R_i x``)?

    Verdict ``holds`` means the rule is (inversely) dictatorial; otherwise the
    witness holds one refuting profile per agent.
    """
    dom = _domain_for(rule, domain, **kw)
    with Timer() as t:
        dictators, counter = _detect(rule, dom, inverse)
    witness = None if dictators else {"per_agent": {str(k): v for k, v in counter.items()}}
    axiom = "inversely-dictatorial" if inverse else "dictatorial"
    rep = _report(axiom, rule, dom, witness, t, details={"dictators": dictators})
    if dictators and not dom.exhaustive:
        rep.verdict = "inconclusive-sampled"
    return rep


def detect_inverse_dictator(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    return detect_dictator(rule, domain, inverse=True, **kw)


def detect_stalemate(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Search for a social indifference between a unanimously strictly ranked pair.

    Reported under the axiom name ``no-stalemate``: ``fails`` carries the
    stalemate profile, ``holds`` certifies exhaustive absence.
    """
    dom = _domain_for(rule, domain, **kw)
    m = dom.m
    witness = None
    count = 0
    with Timer() as t:
        for prefs in dom.profiles:
            common = full_mask(m)
            for r in prefs:
                common &= _strict(r, m)
            if not common:
                continue
            out = rule.eval_bits(prefs)
            indiff = out & converse_bits(out, m)
            hit = common & indiff
            if hit:
                count += 1
                if witness is None:
                    x, y = _first_pair(hit, m)
                    witness = {
                        "profile": _render_profile(dom.ground, prefs),
                        "pair": _labels(dom.ground, x, y),
                        "output": _render(dom.ground, out),
                    }
    return _report("no-stalemate", rule, dom, witness, t, details={"stalemate_profiles": count})


def decisive_coalitions(rule: Rule, domain: Domain | None = None, **kw) -> CheckReport:
    """Coalitions whose unanimous strict preference on any pair is always socially strict,
    and whether they form an ultrafilter (then principal: a dictator).

    Verdict ``holds`` means the decisive family is an ultrafilter.
    """
    dom = _domain_for(rule, domain, **kw)
    m, n = dom.m, dom.n
    full = (1 << n) - 1
    with Timer() as t:
        decisive = {c: True for c in range(1, full + 1)}
        for prefs in dom.profiles:
            sp = [_strict(r, m) for r in prefs]
            out_strict = _strict(rule.eval_bits(prefs), m)
            for c in decisive:
                if not decisive[c]:
                    continue
                common = full_mask(m)
                for i in range(n):
                    if c >> i & 1:
                        common &= sp[i]
                if common & ~out_strict:
                    decisive[c] = False
        fam = sorted(c for c, ok in decisive.items() if ok)
        famset = set(fam)
        problems = []
        if not fam:
            problems.append("no decisive coalition")
        for a, b in itertools.combinations(fam, 2):
            if a & b not in famset:
                problems.append(f"not closed under intersection: {coalition_members(a)} & {coalition_members(b)}")
                break
        for c in range(full + 1):
            if c not in famset and (full & ~c) not in famset:
                problems.append(f"neither {coalition_members(c)} nor its complement is decisive")
                break
        principal = None
        if not problems:
            for i in range(n):
                if famset == {c for c in range(1, full + 1) if c >> i & 1}:
                    principal = i + 1
    witness = {"problems": problems} if problems else None
    details = {
        "decisive": [coalition_members(c) for c in fam],
        "ultrafilter": not problems,
        "principal_agent": principal,
    }
    rep = _report("ultrafilter", rule, dom, witness, t, details=details)
    return rep


# ---------------------------------------------------------------------------
# registry and replay


CHECKERS: dict[str, Callable[..., CheckReport]] = {
    "AN": check_AN,
    "ID": check_ID,
    "NT": check_NT,
    "WNT": check_WNT,
    "WP": check_WP,
    "BP": check_BP,
    "LS": check_LS,
    "WS": check_WS,
    "S": check_S,
    "IIA": check_IIA,
    "IIAP": check_IIAP,
    "MDR": check_MDR,
    "SP": check_SP,
    "monotone-M-independence": check_monotone_M_independence,
    "M-independence": check_M_independence,
    "dictatorial": detect_dictator,
    "inversely-dictatorial": detect_inverse_dictator,
    "no-stalemate": detect_stalemate,
    "ultrafilter": decisive_coalitions,
}

ALIASES = {
    "mmi": "monotone-M-independence",
    "dictator": "dictatorial",
    "inverse-dictator": "inversely-dictatorial",
    "stalemate": "no-stalemate",
    "decisive": "ultrafilter",
}


def checker(name: str) -> Callable[..., CheckReport]:
    key = ALIASES.get(name, name)
    for k in CHECKERS:
        if k.lower() == key.lower():
            return CHECKERS[k]
    raise ParameterError(f"unknown axiom {name!r}")


def _parse_prefs(ground: GroundSet, texts: Sequence[str]) -> tuple[int, ...]:
    return tuple(parse_preorder(s, ground).bits for s in texts)


def replay(rule: Rule, report: CheckReport) -> bool:
    """Re-derive a ``fails`` verdict from its witness alone.

    Returns True iff the witness still demonstrates the violation.  Universal
    witnesses (WS, LS, S, MDR, detector reports) are replayed by recomputing
    the quantity they summarize.
    """
    if report.verdict != FAILS or report.witness is None:
        raise ValueError("only failing reports carry a witness")
    w = report.witness
    g = rule.ground
    m = g.size
    ev = rule.eval_bits
    ax = report.axiom
    if ax == "AN":
        p, q = _parse_prefs(g, w["profile"]), _parse_prefs(g, w["permuted"])
        return sorted(p) == sorted(q) and ev(p) != ev(q)
    if ax == "ID":
        p = _parse_prefs(g, w["profile"])
        return len(set(p)) == 1 and ev(p) != p[0]
    if ax in ("WP", "BP"):
        p = _parse_prefs(g, w["profile"])
        x, y = g.index(w["pair"][0]), g.index(w["pair"][1])
        out = ev(p)
        if ax == "WP":
            unanimous = all(holds_bits(r, m, x, y) and not holds_bits(r, m, y, x) for r in p)
            return unanimous and not (holds_bits(out, m, x, y) and not holds_bits(out, m, y, x))
        return all(holds_bits(r, m, x, y) for r in p) and not holds_bits(out, m, x, y)
    if ax == "NT":
        x, y = g.index(w["pair"][0]), g.index(w["pair"][1])
        p, q = _parse_prefs(g, w["profile"]), _parse_prefs(g, w["profile2"])
        linked = all(holds_bits(a, m, x, y) == holds_bits(b, m, y, x) for a, b in zip(p, q))
        return linked and holds_bits(ev(p), m, x, y) != holds_bits(ev(q), m, y, x)
    if ax == "WNT":
        p = _parse_prefs(g, w["profile"])
        b1, b2 = (parse_preorder(s, g).bits for s in w["bipartitions"])
        linked = all((r & ~b1 == 0) == (r & ~b2 == 0) for r in p)
        out = ev(p)
        return linked and (out & ~b1 == 0) != (out & ~b2 == 0)
    if ax in ("IIA", "IIAP"):
        agenda = [g.index(x) for x in w["agenda"]]
        p, q = _parse_prefs(g, w["profile"]), _parse_prefs(g, w["profile2"])
        same = all(restrict_bits(a, m, agenda) == restrict_bits(b, m, agenda) for a, b in zip(p, q))
        differ = restrict_bits(ev(p), m, agenda) != restrict_bits(ev(q), m, agenda)
        proj = ax == "IIA" or (ev(p) in p and ev(q) in q)
        return same and differ and proj
    if ax == "SP":
        p = _parse_prefs(g, w["profile"])
        i = w["agent"] - 1
        dev = parse_preorder(w["deviation"], g).bits
        q = p[:i] + (dev,) + p[i + 1 :]
        poset = ambient(g, report.details.get("space", "ra"))
        pref = MetaPreference(poset, poset.index[p[i]], w["meta"])
        return pref.strict(ev(q), ev(p))
    if ax == "monotone-M-independence":
        mb = parse_preorder(w["bipartition"], g).bits
        p, q = _parse_prefs(g, w["profile"]), _parse_prefs(g, w["profile2"])
        sub = _coalition(p, mb) & ~_coalition(q, mb) == 0
        return sub and ev(p) & ~mb == 0 and ev(q) & ~mb != 0
    if ax == "M-independence":
        mb = parse_preorder(w["bipartition"], g).bits
        p, q = _parse_prefs(g, w["profile"]), _parse_prefs(g, w["profile2"])
        return _coalition(p, mb) == _coalition(q, mb) and (ev(p) & ~mb == 0) != (ev(q) & ~mb == 0)
    if ax == "no-stalemate":
        p = _parse_prefs(g, w["profile"])
        x, y = g.index(w["pair"][0]), g.index(w["pair"][1])
        out = ev(p)
        unanimous = all(holds_bits(r, m, x, y) and not holds_bits(r, m, y, x) for r in p)
        return unanimous and holds_bits(out, m, x, y) and holds_bits(out, m, y, x)
    # universal witnesses: recompute on the same scope
    dom = make_domain(
        g,
        rule.n,
        exhaustive=report.scope.mode == "exhaustive",
        samples=report.scope.samples or DEFAULT_SAMPLES,
        seed=report.scope.seed,
    )
    again = checker(ax)(rule, dom)
    return again.verdict == FAILS and again.witness == w


def is_preorder_valued_on(rule: Rule, domain: Domain) -> dict[str, Any]:
    """Scan outputs for relations that are not total preorders."""
    for prefs in domain.profiles:
        out = rule.eval_bits(prefs)
        if not is_total_preorder_bits(out, domain.m):
            return {
                "preorder_valued": False,
                "profile": _render_profile(domain.ground, prefs),
                "output": _render(domain.ground, out),
            }
    return {"preorder_valued": True}


def run_all(rule: Rule, axioms: Iterable[str], domain: Domain | None = None) -> dict[str, CheckReport]:
    return {a: checker(a)(rule, domain) for a in axioms}

