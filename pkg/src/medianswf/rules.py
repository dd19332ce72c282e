"""Aggregation rules: order-filter (quota, co-majority) rules and the named
rules used as examples and counterexamples.

Every rule evaluates on bit tuples internally and memoizes per profile; the
public entry point is :meth:`Rule.evaluate` on a :class:`Profile`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import IllFormedFamily, ParameterError, ParseError
from .lattice import OrderedBipartition, meet_bits, meet_irreducibles
from .relations import (
    GroundSet,
    Profile,
    TotalPreorder,
    bits_of_blocks,
    closure_bits,
    converse_bits,
    full_mask,
    is_total_preorder_bits,
    parse_preorder,
    preorder_space,
    restrict_bits,
    strict_bits,
)

BitsFn = Callable[[tuple[int, ...]], int]


class Rule:
    """A named social welfare function for ``n`` agents over ``ground``.

    ``relation_valued`` marks rules whose outputs are complete relations but
    not necessarily transitive; they are accepted only by the checkers that
    read pairwise relations.
    """

    def __init__(
        self,
        name: str,
        ground: GroundSet,
        n: int,
        fn: BitsFn,
        params: Mapping | None = None,
        relation_valued: bool = False,
    ):
        if n < 3:
            raise ParameterError("rules need at least 3 agents")
        self.name = name
        self.ground = ground
        self.n = n
        self.m = ground.size
        self.params = dict(params or {})
        self.relation_valued = relation_valued
        self._fn = fn
        self._memo: dict[tuple[int, ...], int] = {}

    def __repr__(self) -> str:
        return f"Rule({self.name!r}, m={self.m}, n={self.n})"

    def eval_bits(self, prefs: tuple[int, ...]) -> int:
        out = self._memo.get(prefs)
        if out is None:
            out = self._fn(prefs)
            self._memo[prefs] = out
        return out

    def evaluate(self, profile: Profile) -> TotalPreorder:
        if profile.ground != self.ground or profile.n != self.n:
            raise ParameterError("profile does not match the rule's ground set and agent count")
        bits = self.eval_bits(profile.bits())
        if self.relation_valued and not is_total_preorder_bits(bits, self.m):
            raise ValueError(f"{self.name} produced a relation that is not a total preorder")
        return TotalPreorder(self.ground, bits)

    def relation(self, profile: Profile) -> int:
        """Raw output relation bits (works for relation-valued rules too)."""
        return self.eval_bits(profile.bits())

    __call__ = evaluate


# ---------------------------------------------------------------------------
# order filters


def coalition_mask(agents: Iterable[int]) -> int:
    """Agents are 1-based; bit ``i-1`` stands for agent ``i``."""
    mask = 0
    for i in agents:
        mask |= 1 << (i - 1)
    return mask


def coalition_members(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class OrderFilter:
    """Upward-closed family of coalitions, stored by its minimal coalitions."""

    basis: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        minimal = frozenset(
            b for b in self.basis if not any(o != b and o & ~b == 0 for o in self.basis)
        )
        object.__setattr__(self, "basis", minimal)

    @classmethod
    def from_coalitions(cls, coalitions: Iterable[Iterable[int]]) -> "OrderFilter":
        return cls(frozenset(coalition_mask(c) for c in coalitions))

    @classmethod
    def threshold(cls, n: int, q: int) -> "OrderFilter":
        if not 0 <= q <= n:
            raise ParameterError(f"quota {q} outside 0..{n}")
        return cls(frozenset(coalition_mask(c) for c in itertools.combinations(range(1, n + 1), q)))

    @classmethod
    def empty(cls) -> "OrderFilter":
        return cls(frozenset())

    def __contains__(self, coalition: int) -> bool:
        return any(b & ~coalition == 0 for b in self.basis)

    def is_empty(self) -> bool:
        return not self.basis

    def is_proper(self) -> bool:
        """Nontrivial proper: nonempty and without the empty coalition."""
        return bool(self.basis) and 0 not in self.basis

    def is_transversal(self) -> bool:
        return all(a & b for a in self.basis for b in self.basis)

    def describe(self) -> list[list[int]]:
        return sorted(coalition_members(b) for b in self.basis)


FilterFamily = dict[OrderedBipartition, OrderFilter]


def uniform_family(ground: GroundSet, filt: OrderFilter) -> FilterFamily:
    return {b: filt for b in meet_irreducibles(ground)}


def _selected(family: FilterFamily, ground: GroundSet, n: int) -> Callable[[tuple[int, ...]], list[int]]:
    items = [(b.bits, family[b]) for b in meet_irreducibles(ground)]
    if len(family) != len(items):
        raise ParameterError("filter family must cover every ordered bipartition")

    def select(prefs: tuple[int, ...]) -> list[int]:
        chosen = []
        for mbits, filt in items:
            coal = 0
            for i, r in enumerate(prefs):
                if r & ~mbits == 0:
                    coal |= 1 << i
            if coal in filt:
                chosen.append(mbits)
        return chosen

    return select


def filter_rule(
    family: FilterFamily,
    ground: GroundSet,
    n: int,
    name: str = "filter",
    params: Mapping | None = None,
    eager: bool | None = None,
) -> Rule:
    """Meet of the bipartitions whose refining coalition lies in their filter.

    With ``eager`` (default for m <= 3, n <= 3) every profile is evaluated at
    construction and :class:`IllFormedFamily` raised on the first undefined meet.
    """
    select = _selected(family, ground, n)

    def fn(prefs: tuple[int, ...]) -> int:
        out = meet_bits(select(prefs), ground)
        if out is None:
            raise IllFormedFamily(
                f"{name}: selected bipartitions have no meet at profile "
                f"{[preorder_space(ground).render_bits(p) for p in prefs]}"
            )
        return out

    meta = {"family": {b.render(): family[b].describe() for b in meet_irreducibles(ground)}}
    meta.update(params or {})
    rule = Rule(name, ground, n, fn, meta)
    rule.family = family  # type: ignore[attr-defined]
    if eager is None:
        eager = ground.size <= 3 and n <= 3
    if eager:
        for prefs in itertools.product(preorder_space(ground).bits, repeat=n):
            rule.eval_bits(prefs)
    return rule


def audit_family(family: FilterFamily, ground: GroundSet, n: int) -> dict:
    """Count profiles where the filter-rule meet is undefined (exhaustive)."""
    select = _selected(family, ground, n)
    space = preorder_space(ground)
    bad = 0
    first = None
    total = 0
    for prefs in itertools.product(space.bits, repeat=n):
        total += 1
        if meet_bits(select(prefs), ground) is None:
            bad += 1
            if first is None:
                first = [space.render_bits(p) for p in prefs]
    return {"profiles": total, "undefined": bad, "first_undefined": first, "well_defined": bad == 0}


def quota_rule(
    ground: GroundSet,
    n: int,
    q: int | Mapping[OrderedBipartition, int],
    eager: bool | None = None,
) -> Rule:
    """Threshold filters ``{T : |T| >= q_m}``; ``q`` uniform or per bipartition."""
    bips = meet_irreducibles(ground)
    quotas = {b: q for b in bips} if isinstance(q, int) else dict(q)
    if set(quotas) != set(bips):
        raise ParameterError("quotas must be given for every ordered bipartition")
    family = {b: OrderFilter.threshold(n, quotas[b]) for b in bips}
    uniform = len(set(quotas.values())) == 1
    name = f"quota:q={next(iter(quotas.values()))}" if uniform else "quota:custom"
    rule = filter_rule(family, ground, n, name=name, eager=eager)
    rule.params["quotas"] = {b.render(): quotas[b] for b in bips}
    rule.params["positive"] = all(v > 0 for v in quotas.values())
    rule.params["weakly_neutral"] = is_weakly_neutral(family, ground)
    return rule


def is_weakly_neutral(family: FilterFamily, ground: GroundSet) -> bool:
    """Equal filters on any two bipartitions whose meet exists."""
    bips = meet_irreducibles(ground)
    for b1, b2 in itertools.combinations(bips, 2):
        if meet_bits((b1.bits, b2.bits), ground) is not None and family[b1] != family[b2]:
            return False
    return True


def majority_family(ground: GroundSet, n: int) -> FilterFamily:
    return uniform_family(ground, OrderFilter.threshold(n, math.ceil((n + 1) / 2)))


def collegial_rule(ground: GroundSet, n: int, coalition: Sequence[int]) -> Rule:
    """Every filter generated by one fixed coalition (an inclusive quorum system)."""
    for i in coalition:
        _check_agent(i, n)
    filt = OrderFilter.from_coalitions([coalition])
    name = "collegial:S=" + ",".join(str(i) for i in sorted(coalition))
    return filter_rule(uniform_family(ground, filt), ground, n, name=name)


def global_stalemate(ground: GroundSet, n: int) -> Rule:
    top = full_mask(ground.size)
    return Rule("stalemate", ground, n, lambda prefs: top)


def stalemate_as_filter_rule(ground: GroundSet, n: int) -> Rule:
    return filter_rule(uniform_family(ground, OrderFilter.empty()), ground, n, name="filter:empty")


# ---------------------------------------------------------------------------
# co-majority


def majority_coalitions(n: int) -> list[tuple[int, ...]]:
    return [
        c
        for k in range(math.ceil((n + 1) / 2), n + 1)
        for c in itertools.combinations(range(n), k)
    ]


def comajority(ground: GroundSet, n: int) -> Rule:
    """Meet over majority coalitions of the join of their members' preorders."""
    m = ground.size
    coalitions = majority_coalitions(n)

    def fn(prefs: tuple[int, ...]) -> int:
        joins = []
        for c in coalitions:
            acc = 0
            for i in c:
                acc |= prefs[i]
            joins.append(closure_bits(acc, m))
        out = meet_bits(joins, ground)
        if out is None:
            raise IllFormedFamily("co-majority meet undefined")
        return out

    return Rule("comajority", ground, n, fn)


# ---------------------------------------------------------------------------
# named rules


def _check_agent(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise ParameterError(f"agent {i} outside 1..{n}")


def dictator(ground: GroundSet, n: int, i: int) -> Rule:
    _check_agent(i, n)
    return Rule(f"dictator:i={i}", ground, n, lambda prefs: prefs[i - 1], {"i": i})


def inverse_dictator(ground: GroundSet, n: int, i: int) -> Rule:
    _check_agent(i, n)
    m = ground.size
    return Rule(
        f"inverse:i={i}", ground, n, lambda prefs: converse_bits(prefs[i - 1], m), {"i": i}
    )


def constant(ground: GroundSet, n: int, r: TotalPreorder) -> Rule:
    if r.ground != ground:
        raise ParameterError("constant preorder on a different ground set")
    return Rule(f"constant:R={r.render()}", ground, n, lambda prefs: r.bits, {"R": r.render()})


def borda_bits(prefs: Sequence[int], m: int) -> int:
    """Borda over preorders: a point per alternative strictly below; ties stay ties."""
    scores = [0] * m
    for r in prefs:
        p = strict_bits(r, m)
        for x in range(m):
            scores[x] += bin((p >> (x * m)) & ((1 << m) - 1)).count("1")
    levels = sorted(set(scores), reverse=True)
    blocks = [[x for x in range(m) if scores[x] == s] for s in levels]
    return bits_of_blocks(blocks, m)


def borda_scores(profile: Profile) -> dict[str, int]:
    m = profile.ground.size
    scores = dict.fromkeys(profile.ground.labels, 0)
    for r in profile.prefs:
        for x in profile.ground.labels:
            scores[x] += sum(r.strictly(x, y) for y in profile.ground.labels)
    return scores if m else {}


def borda(ground: GroundSet, n: int) -> Rule:
    m = ground.size
    return Rule("borda", ground, n, lambda prefs: borda_bits(prefs, m))


def borda_projective(ground: GroundSet, n: int, i_star: int) -> Rule:
    """Borda unless some agent's preference equals the Borda outcome; then agent ``i_star``."""
    _check_agent(i_star, n)
    m = ground.size

    def fn(prefs: tuple[int, ...]) -> int:
        b = borda_bits(prefs, m)
        return prefs[i_star - 1] if b in prefs else b

    return Rule(f"borda_projective:i={i_star}", ground, n, fn, {"i": i_star})


def remark3_rule(
    ground: GroundSet, n: int, i: int, r_star: TotalPreorder, b_star: Iterable[str]
) -> Rule:
    """``R*`` if some other agent agrees with ``R*`` off ``B*``, else agent ``i``'s preference."""
    _check_agent(i, n)
    b_star = frozenset(b_star)
    if not b_star or b_star >= set(ground.labels):
        raise ParameterError("B* must be a nonempty proper subset of the ground set")
    for lab in b_star:
        if lab not in ground:
            raise ParameterError(f"unknown label {lab!r} in B*")
    if r_star.ground != ground:
        raise ParameterError("R* must be a preorder on the ground set")
    m = ground.size
    rest = [ground.index(x) for x in ground.labels if x not in b_star]
    target = restrict_bits(r_star.bits, m, rest)
    others = [j for j in range(n) if j != i - 1]

    def fn(prefs: tuple[int, ...]) -> int:
        for j in others:
            if restrict_bits(prefs[j], m, rest) == target:
                return r_star.bits
        return prefs[i - 1]

    bs = ",".join(x for x in ground.labels if x in b_star)
    return Rule(
        f"remark3:i={i},Rstar={r_star.render()},Bstar={bs}",
        ground,
        n,
        fn,
        {"i": i, "Rstar": r_star.render(), "Bstar": sorted(b_star)},
    )


def un_rule(ground: GroundSet, n: int) -> Rule:
    """Unanimous profile -> the common preference; anything else -> universal indifference."""
    top = full_mask(ground.size)

    def fn(prefs: tuple[int, ...]) -> int:
        return prefs[0] if all(p == prefs[0] for p in prefs) else top

    return Rule("un", ground, n, fn)


def linear_orders_lex(ground: GroundSet) -> list[int]:
    """Linear orders of the ground set, ordered by their rendered encodings."""
    space = preorder_space(ground)
    return [b for b, p in zip(space.bits, space.preorders) if p.is_linear()]


def lex_top_rule(ground: GroundSet, n: int, x_star: str) -> Rule:
    """Lexicographically first linear extension of the unanimous strict preference,
    with ``x_star`` on top whenever nothing is unanimously preferred to it."""
    if x_star not in ground:
        raise ParameterError(f"unknown alternative {x_star!r}")
    m = ground.size
    xs = ground.index(x_star)
    linear = linear_orders_lex(ground)
    tops = {b: preorder_space(ground).of_bits(b).blocks()[0][0] for b in linear}

    def fn(prefs: tuple[int, ...]) -> int:
        common = full_mask(m)
        for r in prefs:
            common &= strict_bits(r, m)
        dominated = any(common >> (y * m + xs) & 1 for y in range(m))
        for lin in linear:
            if common & ~lin:
                continue
            if not dominated and tops[lin] != x_star:
                continue
            return lin
        raise AssertionError("a strict partial order always has a linear extension")

    return Rule(f"lextop:x={x_star}", ground, n, fn, {"x": x_star, "L": "lexicographic"})


def fstar_rule(ground: GroundSet, n: int) -> Rule:
    """``x f y`` iff agents 1 and 2 both weakly prefer x, or agent 3 does.

    The output is complete but can fail transitivity; the rule is therefore
    relation-valued.
    """

    def fn(prefs: tuple[int, ...]) -> int:
        return (prefs[0] & prefs[1]) | prefs[2]

    return Rule("fstar", ground, n, fn, relation_valued=True)


# ---------------------------------------------------------------------------
# rule-spec mini-language


def _parse_params(text: str) -> dict[str, str]:
    params: dict[str, str] = {}
    last = None
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "=" in tok:
            k, v = tok.split("=", 1)
            last = k.strip()
            params[last] = v.strip()
        elif last is not None:
            params[last] += "," + tok
        else:
            raise ParseError(f"bad rule parameter {tok!r}")
    return params


def _int(params: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise ParseError(f"missing parameter {key!r}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ParseError(f"parameter {key!r} must be an integer") from None


RULE_NAMES = (
    "comajority",
    "quota",
    "dictator",
    "inverse",
    "stalemate",
    "constant",
    "borda",
    "borda_projective",
    "remark3",
    "un",
    "lextop",
    "collegial",
    "fstar",
)


def parse_rule(spec: str, ground: GroundSet, n: int) -> Rule:
    """Build a rule from ``name[:k=v,...]``, e.g. ``quota:q=2`` or ``dictator:i=1``."""
    name, _, rest = spec.strip().partition(":")
    params = _parse_params(rest)
    known = {
        "comajority": set(),
        "quota": {"q"},
        "dictator": {"i"},
        "inverse": {"i"},
        "stalemate": set(),
        "constant": {"R"},
        "borda": set(),
        "borda_projective": {"i"},
        "remark3": {"i", "Rstar", "Bstar"},
        "un": set(),
        "lextop": {"x"},
        "collegial": {"S"},
        "fstar": set(),
    }
    if name not in known:
        raise ParseError(f"unknown rule {name!r}; expected one of {', '.join(RULE_NAMES)}")
    extra = set(params) - known[name]
    if extra:
        raise ParseError(f"unexpected parameters for {name}: {sorted(extra)}")
    if name == "comajority":
        return comajority(ground, n)
    if name == "quota":
        return quota_rule(ground, n, _int(params, "q"))
    if name == "dictator":
        return dictator(ground, n, _int(params, "i"))
    if name == "inverse":
        return inverse_dictator(ground, n, _int(params, "i"))
    if name == "stalemate":
        return global_stalemate(ground, n)
    if name == "constant":
        return constant(ground, n, parse_preorder(params.get("R", ""), ground))
    if name == "borda":
        return borda(ground, n)
    if name == "borda_projective":
        return borda_projective(ground, n, _int(params, "i", 1))
    if name == "remark3":
        r_star = parse_preorder(params.get("Rstar", ""), ground)
        b_star = [s.strip() for s in params.get("Bstar", "").split(",") if s.strip()]
        return remark3_rule(ground, n, _int(params, "i", 1), r_star, b_star)
    if name == "un":
        return un_rule(ground, n)
    if name == "lextop":
        return lex_top_rule(ground, n, params.get("x", ground.labels[0]))
    if name == "collegial":
        members = [int(s) for s in params.get("S", "").split(",") if s.strip()]
        if not members:
            raise ParseError("collegial needs S=<agents>")
        return collegial_rule(ground, n, members)
    return fstar_rule(ground, n)


def scheme_from_spec(spec: str, n: int) -> Callable[[GroundSet], Rule]:
    """Agenda -> rule on that agenda, for rule specs that make sense on any agenda."""
    name = spec.split(":", 1)[0]
    if name in ("remark3", "constant", "lextop", "fstar"):
        raise ParseError(f"rule {name!r} is tied to one ground set and cannot form a scheme")

    cache: dict[GroundSet, Rule] = {}

    def scheme(agenda: GroundSet) -> Rule:
        if agenda not in cache:
            cache[agenda] = parse_rule(spec, agenda, n)
        return cache[agenda]

    scheme.spec = spec  # type: ignore[attr-defined]
    return scheme


def catalog(ground: GroundSet, n: int = 3) -> list[Rule]:
    """The shipped rules the verification suites quantify over."""
    labels = ground.labels
    chain = parse_preorder("|".join(labels), ground)
    return [
        global_stalemate(ground, n),
        constant(ground, n, chain),
        dictator(ground, n, 1),
        inverse_dictator(ground, n, 1),
        comajority(ground, n),
        quota_rule(ground, n, 2),
        quota_rule(ground, n, 3),
        collegial_rule(ground, n, [1, 2]),
        borda(ground, n),
        borda_projective(ground, n, 1),
        remark3_rule(ground, n, 1, chain, [labels[0]]),
        un_rule(ground, n),
        lex_top_rule(ground, n, labels[0]),
        fstar_rule(ground, n),
    ]


def render_bits(rule: Rule, bits: int) -> str:
    return preorder_space(rule.ground).render_bits(bits)


def render_profile_bits(ground: GroundSet, prefs: Sequence[int]) -> list[str]:
    space = preorder_space(ground)
    return [space.render_bits(p) for p in prefs]

