"""Join, partial meet, median and metric on total preorders and on the sum
of the agenda-indexed preorder semilattices.

Two routes are kept apart on purpose: the direct operations (``join``,
``meet``, ``rank``, ``distance``, ``median``) compute on relations, while
:class:`FinitePoset` materializes a poset and answers the same questions
from its order matrix and Hasse diagram.  The validators compare the two.
"""

from __future__ import annotations

import functools
import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, Union

from .errors import GroundTooLarge, InternalError
from .relations import (
    MAX_ENUM_SIZE,
    GroundSet,
    TotalPreorder,
    bits_of_blocks,
    closure_bits,
    diagonal_bits,
    full_mask,
    is_total_bits,
    n_classes_bits,
    preorder_space,
    render_preorder,
    restrict_bits,
)
from .report import CheckReport, Scope, Timer, verdict_for

# ---------------------------------------------------------------------------
# ordered bipartitions (the meet-irreducibles of R_A)


@dataclass(frozen=True)
class OrderedBipartition:
    """Two-class total preorder: every label of ``top`` strictly above ``bottom``."""

    ground: GroundSet
    top: frozenset[str]

    def __post_init__(self) -> None:
        top = frozenset(self.top)
        object.__setattr__(self, "top", top)
        if not top or top >= set(self.ground.labels):
            raise ValueError("both classes of a bipartition must be nonempty")
        for lab in top:
            self.ground.index(lab)

    @property
    def bottom(self) -> frozenset[str]:
        return frozenset(self.ground.labels) - self.top

    @functools.cached_property
    def bits(self) -> int:
        g = self.ground
        top = [g.index(x) for x in g.labels if x in self.top]
        bot = [g.index(x) for x in g.labels if x not in self.top]
        return bits_of_blocks([top, bot], g.size)

    def preorder(self) -> TotalPreorder:
        return TotalPreorder(self.ground, self.bits)

    def render(self) -> str:
        return render_preorder(self.preorder())

    def __str__(self) -> str:
        return self.render()


def meet_irreducibles(ground: GroundSet) -> list[OrderedBipartition]:
    """All ``2^m - 2`` ordered bipartitions, by top-class size then label order."""
    out = []
    for k in range(1, ground.size):
        for top in itertools.combinations(ground.labels, k):
            out.append(OrderedBipartition(ground, frozenset(top)))
    return out


@functools.lru_cache(maxsize=None)
def bipartition_bits(ground: GroundSet) -> tuple[int, ...]:
    return tuple(b.bits for b in meet_irreducibles(ground))


# ---------------------------------------------------------------------------
# sum semilattice elements


@dataclass(frozen=True)
class SumElement:
    """A total preorder on a nonempty agenda, embedded in ``ground x ground``.

    ``bits`` uses the coordinates of ``ground``; the order on sum elements is
    plain inclusion of pair sets.
    """

    ground: GroundSet
    agenda: frozenset[str]
    bits: int

    def __post_init__(self) -> None:
        agenda = frozenset(self.agenda)
        object.__setattr__(self, "agenda", agenda)
        if not agenda:
            raise ValueError("the empty agenda is excluded")
        if _support(self.bits, self.ground.size) != _agenda_mask(self.ground, agenda):
            raise ValueError("relation support differs from agenda")
        if not _is_total_on_support(self.bits, self.ground.size):
            raise ValueError("not a total preorder on its agenda")

    @classmethod
    def of(cls, ground: GroundSet, pref: TotalPreorder) -> "SumElement":
        idx = [ground.index(x) for x in pref.ground.labels]
        m = ground.size
        k = pref.ground.size
        bits = 0
        for a in range(k):
            for b in range(k):
                if pref.bits >> (a * k + b) & 1:
                    bits |= 1 << (idx[a] * m + idx[b])
        return cls(ground, frozenset(pref.ground.labels), bits)

    def pref(self) -> TotalPreorder:
        sub = self.ground.subset(self.agenda)
        idx = [self.ground.index(x) for x in sub.labels]
        return TotalPreorder(sub, restrict_bits(self.bits, self.ground.size, idx))

    def __le__(self, other: "SumElement") -> bool:
        return self.bits & ~other.bits == 0

    def render(self) -> str:
        return render_preorder(self.pref())

    def __str__(self) -> str:
        return self.render()


def _agenda_mask(ground: GroundSet, agenda: Iterable[str]) -> int:
    mask = 0
    for lab in agenda:
        mask |= 1 << ground.index(lab)
    return mask


def _support(bits: int, m: int) -> int:
    mask = 0
    for x in range(m):
        if bits >> (x * m + x) & 1:
            mask |= 1 << x
    return mask


def _support_bits(support: int, m: int) -> int:
    """All pairs inside a support mask."""
    out = 0
    for x in range(m):
        if support >> x & 1:
            for y in range(m):
                if support >> y & 1:
                    out |= 1 << (x * m + y)
    return out


def _is_total_on_support(bits: int, m: int) -> bool:
    sup = _support(bits, m)
    if bits & ~_support_bits(sup, m):
        return False
    for x in range(m):
        if not sup >> x & 1:
            continue
        for y in range(m):
            if sup >> y & 1 and not (bits >> (x * m + y) & 1 or bits >> (y * m + x) & 1):
                return False
    if closure_bits(bits, m) & ~(bits | diagonal_bits(m)):
        return False
    return True


def _sum_closure(bits: int, m: int) -> int:
    # closure without adding reflexive pairs outside the support
    sup = _support(bits, m)
    return closure_bits(bits, m) & _support_bits(sup, m)


# ---------------------------------------------------------------------------
# join / meet

Element = Union[TotalPreorder, SumElement]


def join(r1: Element, r2: Element) -> Element | None:
    """Least upper bound under inclusion.

    Always defined on total preorders of one ground set.  For sum elements
    the transitive closure of the union may fail to be total on the union
    agenda; no least upper bound exists then and ``None`` is returned.
    """
    if isinstance(r1, TotalPreorder) and isinstance(r2, TotalPreorder):
        if r1.ground != r2.ground:
            raise ValueError("preorders live on different ground sets")
        return TotalPreorder(r1.ground, closure_bits(r1.bits | r2.bits, r1.m))
    if isinstance(r1, SumElement) and isinstance(r2, SumElement):
        m = r1.ground.size
        bits = _sum_closure(r1.bits | r2.bits, m)
        if not _is_total_on_support(bits, m):
            return None
        return SumElement(r1.ground, r1.agenda | r2.agenda, bits)
    raise TypeError("join needs two elements of the same kind")


def join_bits(b1: int, b2: int, m: int) -> int:
    return closure_bits(b1 | b2, m)


@functools.lru_cache(maxsize=None)
def _glb_cache(ground: GroundSet) -> dict[int, int | None]:
    return {}


def meet_bits(relations: Iterable[int], ground: GroundSet) -> int | None:
    """Greatest total preorder below every input, or ``None`` when none exists.

    The empty meet is the universal indifference (the top of R_A).
    """
    m = ground.size
    inter = full_mask(m)
    for b in relations:
        inter &= b
    # an intersection of preorders is a preorder; it is the meet iff total
    if is_total_bits(inter, m):
        return inter
    cache = _glb_cache(ground)
    if inter in cache:
        return cache[inter]
    if m > MAX_ENUM_SIZE:
        raise GroundTooLarge("partial meet fallback needs enumeration")
    lower = [b for b in preorder_space(ground).bits if b & ~inter == 0]
    result = None
    for cand in lower:
        if all(b & ~cand == 0 for b in lower):
            result = cand
            break
    cache[inter] = result
    return result


def meet(rs: Iterable[TotalPreorder], ground: GroundSet | None = None) -> TotalPreorder | None:
    """Partial meet of a set of total preorders (``None`` = undefined)."""
    rs = list(rs)
    if ground is None:
        if not rs:
            raise ValueError("meet of the empty selection needs the ground set")
        ground = rs[0].ground
    for r in rs:
        if r.ground != ground:
            raise ValueError("preorders live on different ground sets")
    bits = meet_bits((r.bits for r in rs), ground)
    return None if bits is None else TotalPreorder(ground, bits)


# ---------------------------------------------------------------------------
# rank / metric / median on R_A


def rank(r: Element) -> int:
    """Height above the minimal elements (linear orders for R_A)."""
    if isinstance(r, TotalPreorder):
        return r.m - r.n_classes()
    poset = sum_semilattice(r.ground)
    return poset.rank[poset.index[r.bits]]


def rank_bits(bits: int, m: int) -> int:
    return m - n_classes_bits(bits, m)


def distance(r1: Element, r2: Element) -> int:
    """Hasse-diagram distance; ``2 r(x v y) - r(x) - r(y)`` on R_A."""
    if isinstance(r1, TotalPreorder) and isinstance(r2, TotalPreorder):
        j = join(r1, r2)
        return 2 * rank(j) - rank(r1) - rank(r2)
    if isinstance(r1, SumElement) and isinstance(r2, SumElement):
        poset = sum_semilattice(r1.ground)
        return poset.dist[poset.index[r1.bits]][poset.index[r2.bits]]
    raise TypeError("distance needs two elements of the same kind")


def distance_bits(b1: int, b2: int, m: int) -> int:
    j = closure_bits(b1 | b2, m)
    return 2 * rank_bits(j, m) - rank_bits(b1, m) - rank_bits(b2, m)


def median_bits(x: int, y: int, z: int, ground: GroundSet) -> int:
    m = ground.size
    out = meet_bits(
        (closure_bits(x | y, m), closure_bits(y | z, m), closure_bits(x | z, m)), ground
    )
    if out is None:
        raise InternalError("median undefined: meet of pairwise joins does not exist")
    return out


def median(x: Element, y: Element, z: Element) -> Element:
    """``(x v y) ^ (y v z) ^ (x v z)``; on sum elements the intersection form."""
    if all(isinstance(e, TotalPreorder) for e in (x, y, z)):
        if not x.ground == y.ground == z.ground:
            raise ValueError("preorders live on different ground sets")
        return TotalPreorder(x.ground, median_bits(x.bits, y.bits, z.bits, x.ground))
    if all(isinstance(e, SumElement) for e in (x, y, z)):
        bits = sum_median_bits(x.bits, y.bits, z.bits, x.ground.size)
        if bits is None:
            raise InternalError("sum median formula does not yield an element")
        labs = x.ground.labels
        agenda = frozenset(labs[i] for i in range(len(labs)) if _support(bits, len(labs)) >> i & 1)
        return SumElement(x.ground, agenda, bits)
    raise TypeError("median needs three elements of the same kind")


def sum_median_bits(x: int, y: int, z: int, m: int) -> int | None:
    """Intersection of the three pairwise closures; ``None`` if not an element."""
    bits = _sum_closure(x | y, m) & _sum_closure(y | z, m) & _sum_closure(x | z, m)
    if bits == 0 or not _is_total_on_support(bits, m):
        return None
    return bits


def between(x: Element, z: Element, y: Element) -> bool:
    """``z`` lies between ``x`` and ``y``: ``z == median(x, y, z)``."""
    return median(x, y, z) == z


# ---------------------------------------------------------------------------
# materialized finite posets


class FinitePoset:
    """A finite poset given by its elements and an order predicate.

    Joins and meets are computed as least upper / greatest lower bounds from
    the order matrix (``None`` when they do not exist).  Distances come from
    breadth-first search on the Hasse diagram.
    """

    def __init__(
        self,
        keys: Sequence[Hashable],
        leq: Callable[[Hashable, Hashable], bool],
        render: Callable[[Hashable], str] = str,
        name: str = "poset",
    ):
        self.name = name
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.render_key = render
        n = len(self.keys)
        self.size = n
        up = [0] * n
        down = [0] * n
        for i, a in enumerate(self.keys):
            for j, b in enumerate(self.keys):
                if leq(a, b):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self.up = up
        self.down = down
        self.all = (1 << n) - 1
        self.covers_up: list[list[int]] = []
        for i in range(n):
            strict_up = up[i] & ~(1 << i)
            cov = []
            for j in _members(strict_up):
                strict_down_j = down[j] & ~(1 << j)
                if not strict_up & strict_down_j:
                    cov.append(j)
            self.covers_up.append(cov)
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            for j in self.covers_up[i]:
                self.adj[i].append(j)
                self.adj[j].append(i)
        self.dist = [self._bfs(i) for i in range(n)]
        self.rank = self._ranks()
        self._join: dict[tuple[int, int], int | None] = {}

    def _bfs(self, src: int) -> list[int]:
        dist = [-1] * self.size
        dist[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
        return dist

    def _ranks(self) -> list[int]:
        order = sorted(range(self.size), key=lambda i: bin(self.down[i]).count("1"))
        rank = [0] * self.size
        for i in order:
            lower_covers = [j for j in range(self.size) if i in self.covers_up[j]]
            rank[i] = max((rank[j] + 1 for j in lower_covers), default=0)
        return rank

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def join(self, i: int, j: int) -> int | None:
        key = (i, j) if i <= j else (j, i)
        if key not in self._join:
            common = self.up[i] & self.up[j]
            self._join[key] = self._least(common)
        return self._join[key]

    def _least(self, common: int) -> int | None:
        for u in _members(common):
            if common & ~self.up[u] == 0:
                return u
        return None

    def meet(self, items: Iterable[int]) -> int | None:
        common = self.all
        for i in items:
            common &= self.down[i]
        for g in _members(common):
            if common & ~self.down[g] == 0:
                return g
        return None

    def median(self, x: int, y: int, z: int) -> int | None:
        a, b, c = self.join(x, y), self.join(y, z), self.join(x, z)
        if a is None or b is None or c is None:
            return None
        return self.meet((a, b, c))

    def top(self) -> int | None:
        return self.meet(())

    def coatoms(self) -> list[int]:
        t = self.top()
        if t is None:
            return []
        return sorted(i for i in range(self.size) if t in self.covers_up[i])

    def meet_irreducibles(self) -> list[int]:
        """Elements ``x`` with ``x == meet(Y)`` only when ``x`` in ``Y``.

        In a finite poset this is: ``x`` is not the meet of the elements
        strictly above it (the top is the empty meet, hence reducible).
        """
        out = []
        for i in range(self.size):
            above = [j for j in _members(self.up[i]) if j != i]
            if self.meet(above) != i:
                out.append(i)
        return out

    def to_dot(self) -> str:
        lines = [f'graph "{self.name}" {{']
        for i, k in enumerate(self.keys):
            lines.append(f'  n{i} [label="{self.render_key(k)}"];')
        for i in range(self.size):
            for j in self.covers_up[i]:
                lines.append(f"  n{i} -- n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _members(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _check_materializable(ground: GroundSet) -> None:
    if ground.size > 4:
        raise GroundTooLarge("semilattices are materialized only for m <= 4")


@functools.lru_cache(maxsize=None)
def ra_semilattice(ground: GroundSet) -> FinitePoset:
    """The poset (R_A, inclusion)."""
    _check_materializable(ground)
    space = preorder_space(ground)
    return FinitePoset(
        space.bits,
        lambda a, b: a & ~b == 0,
        render=space.render_bits,
        name=f"R_{{{','.join(ground.labels)}}}",
    )


@functools.lru_cache(maxsize=None)
def sum_semilattice(ground: GroundSet) -> FinitePoset:
    """The union over nonempty agendas B of (R_B, inclusion), as pair sets in A x A."""
    _check_materializable(ground)
    keys = []
    for agenda in ground.nonempty_subsets():
        for pref in preorder_space(agenda).preorders if agenda.size >= 1 else ():
            keys.append(SumElement.of(ground, pref).bits)
    m = ground.size
    labs = ground.labels

    def render(bits: int) -> str:
        sup = _support(bits, m)
        idx = [i for i in range(m) if sup >> i & 1]
        sub = GroundSet.agenda(labs[i] for i in idx)
        return render_preorder(TotalPreorder(sub, restrict_bits(bits, m, idx)))

    return FinitePoset(keys, lambda a, b: a & ~b == 0, render=render, name="sum")


@functools.lru_cache(maxsize=None)
def powerset_lattice(ground: GroundSet) -> FinitePoset:
    """(P(A), inclusion) on subset bit masks."""
    m = ground.size
    labs = ground.labels

    def render(mask: int) -> str:
        return "{" + ",".join(labs[i] for i in range(m) if mask >> i & 1) + "}"

    return FinitePoset(
        list(range(1 << m)), lambda a, b: a & ~b == 0, render=render, name="P(A)"
    )


def sum_element_of_bits(ground: GroundSet, bits: int) -> SumElement:
    m = ground.size
    sup = _support(bits, m)
    return SumElement(ground, frozenset(ground.labels[i] for i in range(m) if sup >> i & 1), bits)


# ---------------------------------------------------------------------------
# validation


def validate_median_semilattice(
    poset: FinitePoset,
    *,
    exhaustive: bool = True,
    samples: int = 20000,
    seed: int = 0,
    m: int | None = None,
    median_fn: Callable[[int, int, int], int | None] | None = None,
) -> CheckReport:
    """Check the median join-semilattice conditions on a materialized poset.

    Checks (each reported in ``details`` with its domain size): every pair
    has a join; the median is defined on all triples; (mu1); (mu2); the
    meet-Helly property; upper distributivity; coatomisticity; agreement of
    median and metric betweenness; agreement of the rank-formula distance
    with BFS distance.  The first failing check supplies the witness.
    """
    rng = random.Random(seed)
    K = poset.size
    med = median_fn or poset.median
    render = lambda i: poset.render_key(poset.keys[i])  # noqa: E731
    details: dict[str, dict] = {}
    witness: dict | None = None

    def record(name: str, domain: int, bad: tuple | None, what: str = "") -> None:
        nonlocal witness
        details[name] = {"domain": domain, "passed": bad is None}
        if bad is not None:
            details[name]["counterexample"] = [render(i) for i in bad]
            if witness is None:
                witness = {"check": name, "elements": [render(i) for i in bad], "note": what}

    def tuples(k: int) -> Iterable[tuple[int, ...]]:
        if exhaustive:
            return itertools.product(range(K), repeat=k)
        return (tuple(rng.randrange(K) for _ in range(k)) for _ in range(samples))

    def domain(k: int) -> int:
        return K**k if exhaustive else samples

    with Timer() as t:
        bad = next(((x, y) for x, y in itertools.product(range(K), repeat=2) if poset.join(x, y) is None), None)
        record("joins_exist", K * K, bad, "no least upper bound")

        med_table: dict[tuple[int, int, int], int | None] = {}

        def mu(x: int, y: int, z: int) -> int | None:
            key = (x, y, z)
            if key not in med_table:
                med_table[key] = med(x, y, z)
            return med_table[key]

        bad = next((tr for tr in tuples(3) if mu(*tr) is None), None)
        record("median_defined", domain(3), bad, "median undefined")

        bad = None
        for x, y in itertools.product(range(K), repeat=2):
            if mu(x, x, y) != x or mu(x, y, x) != x or mu(y, x, x) != x:
                bad = (x, y)
                break
        record("mu1", K * K, bad, "median(x,x,y) != x")

        bad = None
        for x, y, v, w, z in tuples(5):
            a, b, c = mu(x, y, v), mu(x, y, w), mu(v, w, z)
            if a is None or b is None or c is None:
                bad = (x, y, v, w, z)
                break
            lhs, rhs = mu(a, b, z), mu(c, x, y)
            if lhs is None or lhs != rhs:
                bad = (x, y, v, w, z)
                break
        record("mu2", domain(5), bad, "mu(mu(x,y,v),mu(x,y,w),z) != mu(mu(v,w,z),x,y)")

        bad = None
        for x, y, z in tuples(3):
            if (
                poset.meet((x, y)) is not None
                and poset.meet((y, z)) is not None
                and poset.meet((x, z)) is not None
                and poset.meet((x, y, z)) is None
            ):
                bad = (x, y, z)
                break
        record("helly", domain(3), bad, "pairwise meets exist, triple meet does not")

        bad = None
        checked = 0
        for x, y, z in tuples(3):
            if not poset.down[x] & poset.down[y] & poset.down[z]:
                continue
            checked += 1
            yz = poset.meet((y, z))
            lhs = None if yz is None else poset.join(x, yz)
            xy, xz = poset.join(x, y), poset.join(x, z)
            rhs = None if xy is None or xz is None else poset.meet((xy, xz))
            if lhs is None or lhs != rhs:
                bad = (x, y, z)
                break
        record("upper_distributivity", checked, bad, "x v (y ^ z) != (x v y) ^ (x v z)")

        mi, ca = poset.meet_irreducibles(), poset.coatoms()
        record(
            "coatomistic",
            K,
            None if mi == ca else tuple(sorted(set(mi) ^ set(ca)))[:1],
            "meet-irreducible and co-atom sets differ",
        )
        details["coatomistic"]["meet_irreducibles"] = len(mi)
        details["coatomistic"]["coatoms"] = len(ca)

        bad = None
        for x, y, z in tuples(3):
            m_ = mu(x, y, z)
            by_median = m_ == z
            d = poset.dist
            by_metric = d[x][z] + d[z][y] == d[x][y]
            if by_median != by_metric:
                bad = (x, z, y)
                break
        record("betweenness_agreement", domain(3), bad, "median and metric betweenness differ")

        bad = None
        for x, y in itertools.product(range(K), repeat=2):
            j = poset.join(x, y)
            if j is None:
                continue
            if 2 * poset.rank[j] - poset.rank[x] - poset.rank[y] != poset.dist[x][y]:
                bad = (x, y)
                break
        record("rank_distance", K * K, bad, "rank formula differs from BFS distance")

    found = witness is not None
    return CheckReport(
        axiom="median-semilattice",
        rule=poset.name,
        scope=Scope(
            mode="exhaustive" if exhaustive else "sampled",
            m=m if m is not None else 0,
            domain_size=K,
            seed=None if exhaustive else seed,
            samples=None if exhaustive else samples,
        ),
        verdict=verdict_for(found, exhaustive),
        witness=witness,
        details=details,
        elapsed=t.elapsed,
    )


def validate_ra(ground: GroundSet, *, exhaustive: bool | None = None, **kw) -> CheckReport:
    if exhaustive is None:
        exhaustive = ground.size <= 3
    return validate_median_semilattice(
        ra_semilattice(ground), exhaustive=exhaustive, m=ground.size, **kw
    )
