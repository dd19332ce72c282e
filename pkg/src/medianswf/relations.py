"""Ground sets, total preorders, profiles and their text encodings.

A total preorder on a ground set of size ``m`` is stored as an ``m*m`` bit
mask: bit ``x*m + y`` is set iff ``x`` is weakly preferred to ``y``.  The
``*_bits`` helpers below work directly on those masks; the checkers use them
in their inner loops and only wrap results in :class:`TotalPreorder` at the
edges.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import EmptyAgenda, GroundTooLarge, ParseError

MAX_ENUM_SIZE = 5
MIN_AGENTS = 3


# ---------------------------------------------------------------------------
# bit-level helpers


def full_mask(m: int) -> int:
    return (1 << (m * m)) - 1


def row_mask(m: int) -> int:
    return (1 << m) - 1


def diagonal_bits(m: int) -> int:
    bits = 0
    for x in range(m):
        bits |= 1 << (x * m + x)
    return bits


def rows_of(bits: int, m: int) -> list[int]:
    rm = row_mask(m)
    return [(bits >> (x * m)) & rm for x in range(m)]


def bits_of_rows(rows: Sequence[int], m: int) -> int:
    bits = 0
    for x, row in enumerate(rows):
        bits |= row << (x * m)
    return bits


def holds_bits(bits: int, m: int, x: int, y: int) -> bool:
    return bool((bits >> (x * m + y)) & 1)


def closure_bits(bits: int, m: int) -> int:
    """Reflexive-transitive closure (Warshall on bit rows)."""
    rows = rows_of(bits | diagonal_bits(m), m)
    for k in range(m):
        kbit = 1 << k
        rk = rows[k]
        for i in range(m):
            if rows[i] & kbit:
                rows[i] |= rk
    return bits_of_rows(rows, m)


def converse_bits(bits: int, m: int) -> int:
    out = 0
    for x in range(m):
        for y in range(m):
            if (bits >> (x * m + y)) & 1:
                out |= 1 << (y * m + x)
    return out


def strict_bits(bits: int, m: int) -> int:
    """Asymmetric part P(R)."""
    return bits & ~converse_bits(bits, m)


def is_reflexive_bits(bits: int, m: int) -> bool:
    d = diagonal_bits(m)
    return bits & d == d


def is_total_bits(bits: int, m: int) -> bool:
    return bits | converse_bits(bits, m) == full_mask(m)


def is_transitive_bits(bits: int, m: int) -> bool:
    rows = rows_of(bits, m)
    for i in range(m):
        for k in range(m):
            if rows[i] >> k & 1 and rows[k] & ~rows[i]:
                return False
    return True


def is_total_preorder_bits(bits: int, m: int) -> bool:
    return is_reflexive_bits(bits, m) and is_total_bits(bits, m) and is_transitive_bits(bits, m)


def restrict_bits(bits: int, m: int, idxs: Sequence[int]) -> int:
    """Restrict a relation to the positions ``idxs`` (kept in that order)."""
    k = len(idxs)
    out = 0
    for a, x in enumerate(idxs):
        base = x * m
        for b, y in enumerate(idxs):
            if (bits >> (base + y)) & 1:
                out |= 1 << (a * k + b)
    return out


def blocks_of_bits(bits: int, m: int) -> list[list[int]]:
    """Indifference classes of a total preorder, best first."""
    rows = rows_of(bits, m)
    # number of elements weakly below x ranks the classes
    order = sorted(range(m), key=lambda x: (-bin(rows[x]).count("1"), x))
    blocks: list[list[int]] = []
    for x in order:
        if blocks and rows[x] >> blocks[-1][0] & 1 and rows[blocks[-1][0]] >> x & 1:
            blocks[-1].append(x)
        else:
            blocks.append([x])
    return blocks


def bits_of_blocks(blocks: Sequence[Iterable[int]], m: int) -> int:
    bits = 0
    above: list[int] = []
    for block in blocks:
        block = list(block)
        for x in block:
            for y in block:
                bits |= 1 << (x * m + y)
            for y in above:
                bits |= 1 << (y * m + x)
        above.extend(block)
    return bits


def n_classes_bits(bits: int, m: int) -> int:
    return len(blocks_of_bits(bits, m))


# ---------------------------------------------------------------------------
# ground sets


@dataclass(frozen=True)
class GroundSet:
    """Ordered set of distinct alternative labels.

    The primary ground set must have at least three alternatives.  Agendas
    obtained by restriction are smaller ground sets built with :meth:`agenda`.
    """

    labels: tuple[str, ...]
    _small_ok: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise EmptyAgenda("ground set must be nonempty")
        if len(set(labels)) != len(labels):
            raise ParseError(f"duplicate labels in ground set {labels}")
        for lab in labels:
            if not lab or any(c.isspace() or c in "|,#" for c in lab):
                raise ParseError(f"invalid label {lab!r}")
        if len(labels) < 3 and not self._small_ok:
            raise ParseError("ground set needs at least 3 alternatives")

    @classmethod
    def parse(cls, text: str) -> "GroundSet":
        return cls(tuple(s.strip() for s in text.split(",") if s.strip()))

    @classmethod
    def agenda(cls, labels: Iterable[str]) -> "GroundSet":
        labels = tuple(labels)
        if not labels:
            raise EmptyAgenda("the empty agenda is excluded")
        return cls(labels, _small_ok=True)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    @functools.cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ParseError(f"unknown label {label!r}") from None

    def subset(self, labels: Iterable[str]) -> "GroundSet":
        """Sub-agenda with labels in this ground set's canonical order."""
        wanted = set(labels)
        for lab in wanted:
            self.index(lab)
        return GroundSet.agenda(lab for lab in self.labels if lab in wanted)

    def nonempty_subsets(self) -> list["GroundSet"]:
        out = []
        for k in range(1, self.size + 1):
            for combo in itertools.combinations(self.labels, k):
                out.append(GroundSet.agenda(combo))
        return out


# ---------------------------------------------------------------------------
# total preorders


@dataclass(frozen=True)
class TotalPreorder:
    """A reflexive, total, transitive relation on ``ground``."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if not is_total_preorder_bits(self.bits, self.ground.size):
            raise ValueError("relation is not a total preorder")

    @classmethod
    def from_blocks(cls, ground: GroundSet, blocks: Sequence[Iterable[str]]) -> "TotalPreorder":
        idx_blocks = [[ground.index(x) for x in b] for b in blocks]
        seen = [x for b in idx_blocks for x in b]
        if sorted(seen) != list(range(ground.size)):
            raise ParseError("blocks must partition the ground set")
        if any(not b for b in idx_blocks):
            raise ParseError("empty block")
        return cls(ground, bits_of_blocks(idx_blocks, ground.size))

    @classmethod
    def universal(cls, ground: GroundSet) -> "TotalPreorder":
        return cls(ground, full_mask(ground.size))

    @property
    def m(self) -> int:
        return self.ground.size

    def holds(self, x: str, y: str) -> bool:
        """``x`` weakly preferred to ``y``."""
        return holds_bits(self.bits, self.m, self.ground.index(x), self.ground.index(y))

    def strictly(self, x: str, y: str) -> bool:
        return self.holds(x, y) and not self.holds(y, x)

    def pairs(self) -> frozenset[tuple[str, str]]:
        labs = self.ground.labels
        return frozenset(
            (labs[x], labs[y])
            for x in range(self.m)
            for y in range(self.m)
            if holds_bits(self.bits, self.m, x, y)
        )

    def blocks(self) -> list[tuple[str, ...]]:
        labs = self.ground.labels
        return [tuple(labs[i] for i in b) for b in blocks_of_bits(self.bits, self.m)]

    def n_classes(self) -> int:
        return n_classes_bits(self.bits, self.m)

    def is_linear(self) -> bool:
        return self.n_classes() == self.m

    def is_universal(self) -> bool:
        return self.bits == full_mask(self.m)

    def __le__(self, other: "TotalPreorder") -> bool:
        _same_ground(self, other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "TotalPreorder") -> bool:
        return self <= other and self.bits != other.bits

    def restrict(self, agenda: Iterable[str]) -> "TotalPreorder":
        return restrict(self, agenda)

    def render(self) -> str:
        return render_preorder(self)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TotalPreorder({self.render()!r})"


def _same_ground(r1: TotalPreorder, r2: TotalPreorder) -> None:
    if r1.ground != r2.ground:
        raise ValueError("preorders live on different ground sets")


OrderedPartition = list[tuple[str, ...]]


def to_partition(r: TotalPreorder) -> OrderedPartition:
    return r.blocks()


def from_partition(ground: GroundSet, blocks: OrderedPartition) -> TotalPreorder:
    return TotalPreorder.from_blocks(ground, blocks)


def render_preorder(r: TotalPreorder) -> str:
    return "|".join(" ".join(block) for block in r.blocks())


def parse_preorder(text: str, ground: GroundSet) -> TotalPreorder:
    """Parse ``"a b|c"`` (a indifferent to b, both above c)."""
    blocks = []
    seen: set[str] = set()
    for raw in text.strip().split("|"):
        labels = raw.split()
        if not labels:
            raise ParseError(f"empty block in {text!r}")
        for lab in labels:
            if lab not in ground:
                raise ParseError(f"unknown label {lab!r} in {text!r}")
            if lab in seen:
                raise ParseError(f"duplicate label {lab!r} in {text!r}")
            seen.add(lab)
        blocks.append(labels)
    missing = [lab for lab in ground.labels if lab not in seen]
    if missing:
        raise ParseError(f"missing labels {missing} in {text!r}")
    return TotalPreorder.from_blocks(ground, blocks)


def restrict(r: TotalPreorder, agenda: Iterable[str]) -> TotalPreorder:
    sub = r.ground.subset(agenda)
    idxs = [r.ground.index(x) for x in sub.labels]
    return TotalPreorder(sub, restrict_bits(r.bits, r.m, idxs))


# ---------------------------------------------------------------------------
# enumeration


def _ordered_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    n = len(items)
    for mask in range(1, 1 << n):
        first = [items[i] for i in range(n) if mask >> i & 1]
        rest = [items[i] for i in range(n) if not mask >> i & 1]
        for tail in _ordered_partitions(rest):
            yield [first] + tail


def enumerate_preorders(ground: GroundSet) -> list[TotalPreorder]:
    """Every total preorder on ``ground``, in canonical (rendered lexicographic) order."""
    return list(preorder_space(ground).preorders)


class PreorderSpace:
    """All total preorders of one ground set plus index lookups.

    Built once per ground set and read-only afterwards.
    """

    def __init__(self, ground: GroundSet):
        if ground.size > MAX_ENUM_SIZE:
            raise GroundTooLarge(f"enumeration capped at {MAX_ENUM_SIZE} alternatives")
        m = ground.size
        self.ground = ground
        self.m = m
        found = {bits_of_blocks(p, m) for p in _ordered_partitions(list(range(m)))}
        prefs = [TotalPreorder(ground, b) for b in found]
        prefs.sort(key=render_preorder)
        self.preorders: tuple[TotalPreorder, ...] = tuple(prefs)
        self.bits: tuple[int, ...] = tuple(p.bits for p in prefs)
        self.index: dict[int, int] = {b: i for i, b in enumerate(self.bits)}
        self.size = len(prefs)
        self.universal = full_mask(m)

    def __len__(self) -> int:
        return self.size

    def of_bits(self, bits: int) -> TotalPreorder:
        return self.preorders[self.index[bits]]

    def render_bits(self, bits: int) -> str:
        i = self.index.get(bits)
        if i is not None:
            return render_preorder(self.preorders[i])
        return render_relation_bits(bits, self.ground)


@functools.lru_cache(maxsize=None)
def preorder_space(ground: GroundSet) -> PreorderSpace:
    return PreorderSpace(ground)


def render_relation_bits(bits: int, ground: GroundSet) -> str:
    """Fallback rendering for relations that are not total preorders."""
    m = ground.size
    labs = ground.labels
    pairs = [
        f"{labs[x]}>={labs[y]}"
        for x in range(m)
        for y in range(m)
        if x != y and holds_bits(bits, m, x, y)
    ]
    return "{" + ", ".join(pairs) + "}"


# ---------------------------------------------------------------------------
# profiles


@dataclass(frozen=True)
class Profile:
    """One total preorder per agent; agents are numbered ``1..n``."""

    ground: GroundSet
    prefs: tuple[TotalPreorder, ...]

    def __post_init__(self) -> None:
        prefs = tuple(self.prefs)
        object.__setattr__(self, "prefs", prefs)
        if len(prefs) < MIN_AGENTS:
            raise ParseError(f"profiles need at least {MIN_AGENTS} agents")
        for p in prefs:
            if p.ground != self.ground:
                raise ParseError("all preferences must share the profile's ground set")

    @classmethod
    def parse(cls, texts: Sequence[str], ground: GroundSet) -> "Profile":
        return cls(ground, tuple(parse_preorder(t, ground) for t in texts))

    @property
    def n(self) -> int:
        return len(self.prefs)

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def __getitem__(self, agent: int) -> TotalPreorder:
        """Preference of agent ``agent`` (1-based)."""
        if not 1 <= agent <= self.n:
            raise IndexError(agent)
        return self.prefs[agent - 1]

    def bits(self) -> tuple[int, ...]:
        return tuple(p.bits for p in self.prefs)

    def restrict(self, agenda: Iterable[str]) -> "Profile":
        agenda = list(agenda)
        sub = self.ground.subset(agenda)
        return Profile(sub, tuple(restrict(p, agenda) for p in self.prefs))

    def render(self) -> list[str]:
        return [render_preorder(p) for p in self.prefs]


def read_profile(path: str | Path, ground: GroundSet) -> Profile:
    """Read a profile file: one preorder per line, ``#`` lines ignored."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lines.append(s)
    return Profile.parse(lines, ground)


def write_profile(profile: Profile, path: str | Path) -> None:
    Path(path).write_text("\n".join(profile.render()) + "\n")
