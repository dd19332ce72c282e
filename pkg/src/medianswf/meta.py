"""Meta-preferences over preorders induced by a peak and the Hasse metric.

``induced_meta(peak)`` ranks ``r1`` weakly above ``r2`` when ``r1`` lies on a
geodesic from the peak to ``r2``.  Two ambient spaces are supported: R_A on
its own (``space="ra"``) and the sum of all agenda semilattices
(``space="sum"``), where outcomes on different agendas are compared.
Preferences are query objects over the poset's cached distance table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .lattice import FinitePoset, SumElement, ra_semilattice, sum_semilattice
from .relations import GroundSet, TotalPreorder

SPACES = ("ra", "sum")


def ambient(ground: GroundSet, space: str) -> FinitePoset:
    if space == "ra":
        return ra_semilattice(ground)
    if space == "sum":
        return sum_semilattice(ground)
    raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")


def _key(elem: TotalPreorder | SumElement | int) -> int:
    # TotalPreorders on A and SumElements share the same A x A bit coordinates
    return elem if isinstance(elem, int) else elem.bits


@dataclass(frozen=True)
class MetaPreference:
    """A preorder on the elements of ``poset`` with ``peak`` on top.

    ``kind`` is ``"geodesic"`` (the induced preference) or ``"metric"``
    (ranking by distance from the peak).
    """

    poset: FinitePoset
    peak: int  # index into poset
    kind: str = "geodesic"

    def weak_idx(self, a: int, b: int) -> bool:
        d = self.poset.dist
        p = self.peak
        if self.kind == "metric":
            return d[p][a] <= d[p][b]
        return d[p][a] + d[a][b] == d[p][b]

    def strict_idx(self, a: int, b: int) -> bool:
        return self.weak_idx(a, b) and not self.weak_idx(b, a)

    def weak(self, r1, r2) -> bool:
        idx = self.poset.index
        return self.weak_idx(idx[_key(r1)], idx[_key(r2)])

    def strict(self, r1, r2) -> bool:
        idx = self.poset.index
        return self.strict_idx(idx[_key(r1)], idx[_key(r2)])

    def indifferent(self, r1, r2) -> bool:
        return self.weak(r1, r2) and self.weak(r2, r1)

    def __call__(self, r1, r2) -> bool:
        return self.weak(r1, r2)


def induced_meta(peak: TotalPreorder | SumElement, space: str = "sum") -> MetaPreference:
    poset = ambient(peak.ground, space)
    return MetaPreference(poset, poset.index[peak.bits], "geodesic")


def metric_meta(peak: TotalPreorder | SumElement, space: str = "sum") -> MetaPreference:
    poset = ambient(peak.ground, space)
    return MetaPreference(poset, poset.index[peak.bits], "metric")


# ---------------------------------------------------------------------------
# single-peakedness


def median_betweenness(poset: FinitePoset) -> Callable[[int, int, int], bool]:
    """``between(x, z, y)`` iff ``z == median(x, y, z)`` (undefined medians: False)."""

    def between(x: int, z: int, y: int) -> bool:
        return poset.median(x, y, z) == z

    return between


def metric_betweenness(poset: FinitePoset) -> Callable[[int, int, int], bool]:
    d = poset.dist

    def between(x: int, z: int, y: int) -> bool:
        return d[x][z] + d[z][y] == d[x][y]

    return between


def top_of(weak: Callable[[int, int], bool], elements: Iterable[int]) -> int | None:
    """The unique maximum of a preorder, or ``None``."""
    elements = list(elements)
    tops = [t for t in elements if all(weak(t, y) for y in elements)]
    return tops[0] if len(tops) == 1 else None


def is_single_peaked(
    weak: Callable[[int, int], bool],
    poset: FinitePoset,
    between: Callable[[int, int, int], bool] | None = None,
) -> bool:
    """Unique maximum, and nothing beyond a between-point is strictly preferred to it."""
    elements = range(poset.size)
    t = top_of(weak, elements)
    if t is None:
        return False
    between = between or median_betweenness(poset)
    for y, z in itertools.product(elements, repeat=2):
        if between(t, z, y) and weak(y, z) and not weak(z, y):
            return False
    return True


def is_transitive(weak: Callable[[int, int], bool], size: int) -> bool:
    rel = [[weak(a, b) for b in range(size)] for a in range(size)]
    for a, b, c in itertools.product(range(size), repeat=3):
        if rel[a][b] and rel[b][c] and not rel[a][c]:
            return False
    return True


def richness_report(poset: FinitePoset, between: Callable[[int, int, int], bool] | None = None) -> dict:
    """Diagnostic: does the induced domain meet the upper-contour richness condition?

    For every pair ``(x, y)`` the induced preference with top ``x`` must have
    ``{z : z >= y}`` equal to the interval ``{z : z between x and y}``.
    The verdict is only reported, never assumed.
    """
    between = between or median_betweenness(poset)
    misses = []
    for x, y in itertools.product(range(poset.size), repeat=2):
        pref = MetaPreference(poset, x)
        upper = {z for z in range(poset.size) if pref.weak_idx(z, y)}
        interval = {z for z in range(poset.size) if between(x, z, y)}
        if upper != interval:
            misses.append((x, y))
    first = None
    if misses:
        x, y = misses[0]
        first = [poset.render_key(poset.keys[x]), poset.render_key(poset.keys[y])]
    return {"pairs": poset.size**2, "mismatches": len(misses), "first_mismatch": first}
