"""Brute-force reference implementations used to cross-check the library.

Everything here works on relations as frozensets of ordered label pairs and
deliberately avoids the package's bit encodings and shortcuts.
"""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np


def all_total_preorders(labels):
    """Filter every relation on ``labels`` by reflexivity, totality, transitivity."""
    pairs = list(itertools.product(labels, repeat=2))
    out = []
    for mask in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        if not all((x, x) in rel for x in labels):
            continue
        if not all((x, y) in rel or (y, x) in rel for x, y in pairs):
            continue
        if any((x, y) in rel and (y, z) in rel and (x, z) not in rel for x, y, z in itertools.product(labels, repeat=3)):
            continue
        out.append(rel)
    return out


def relation(text, labels=None):
    """Parse ``"a b|c"`` into a pair set (top class first)."""
    blocks = [blk.split() for blk in text.split("|")]
    rel = set()
    for i, hi in enumerate(blocks):
        for lo in blocks[i:]:
            rel.update((x, y) for x in hi for y in lo)
    return frozenset(rel)


def closure(rel, labels):
    rel = set(rel)
    changed = True
    while changed:
        changed = False
        for (x, y), (u, v) in itertools.product(list(rel), repeat=2):
            if y == u and (x, v) not in rel:
                rel.add((x, v))
                changed = True
    return frozenset(rel)


def join(r1, r2, labels):
    return closure(r1 | r2, labels)


def meet(rels, labels, universe):
    """Greatest element of ``universe`` below every relation, or None."""
    lower = [r for r in universe if all(r <= s for s in rels)]
    for r in lower:
        if all(o <= r for o in lower):
            return r
    return None


def hasse_distances(universe):
    """All-pairs BFS distance on the covering graph of inclusion."""
    idx = {r: i for i, r in enumerate(universe)}
    adj = {i: set() for i in range(len(universe))}
    for a in universe:
        for b in universe:
            if a < b and not any(a < c < b for c in universe):
                adj[idx[a]].add(idx[b])
                adj[idx[b]].add(idx[a])
    dist = {}
    for s in range(len(universe)):
        d = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if v not in d:
                    d[v] = d[u] + 1
                    q.append(v)
        for t, k in d.items():
            dist[universe[s], universe[t]] = k
    return dist


def restrict(rel, agenda):
    return frozenset((x, y) for x, y in rel if x in agenda and y in agenda)


def iia_violation_count(outputs, profiles, labels):
    """Literal all-pairs IIA test, vectorized: (profile, profile, pair) triples that disagree."""
    total = 0
    for x, y in itertools.combinations(labels, 2):
        ag = {x, y}
        keys = np.array([hash(tuple(restrict(r, ag) for r in p)) for p in profiles])
        outs = np.array([hash(restrict(o, ag)) for o in outputs])
        same_in = keys[:, None] == keys[None, :]
        diff_out = outs[:, None] != outs[None, :]
        total += int(np.count_nonzero(same_in & diff_out))
    return total


def bipartitions(labels):
    out = []
    for k in range(1, len(labels)):
        for top in itertools.combinations(labels, k):
            bot = [x for x in labels if x not in top]
            out.append(frozenset((x, y) for x in labels for y in labels if x in top or y in bot))
    return out


def mmi_violation_count(outputs, profiles, labels):
    """Literal all-pairs monotone independence test for every bipartition."""
    total = 0
    n = len(profiles[0])
    for mrel in bipartitions(labels):
        coal = np.array([sum(1 << i for i, r in enumerate(p) if r <= mrel) for p in profiles])
        inside = np.array([o <= mrel for o in outputs])
        sub = (coal[:, None] & ~coal[None, :] & ((1 << n) - 1)) == 0
        total += int(np.count_nonzero(sub & inside[:, None] & ~inside[None, :]))
    return total


def sp_violation(rule_out, profiles_by_key, universe, dist, geodesic=True):
    """First (profile, agent, deviation) where a misreport is strictly better, or None."""
    for key, prefs in profiles_by_key.items():
        truth = rule_out[key]
        for i, peak in enumerate(prefs):
            for lie in universe:
                if lie == peak:
                    continue
                dev = list(prefs)
                dev[i] = lie
                other = rule_out[tuple(dev)]
                if geodesic:
                    better = dist[peak, other] + dist[other, truth] == dist[peak, truth] and other != truth
                else:
                    better = dist[peak, other] < dist[peak, truth]
                if better:
                    return prefs, i, lie
    return None
