"""Exact homomorphism counts hom(G, H).

Every strategy returns a Python ``int``.  ``hom_brute_force`` enumerates all
maps and is the oracle the other strategies are tested against.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .canon import certificate
from .graphs import (
    SimpleGraph,
    TargetGraph,
    complete_bipartite_sides,
    components,
    complete_simple,
    is_connected,
    iter_bits,
)

DEFAULT_BUDGET = 10**8
_CHUNK = 1 << 18


class BudgetExceeded(RuntimeError):
    """Refusal: the requested enumeration is larger than the work budget."""


class CacheIntegrityError(RuntimeError):
    """Two different counts were recorded for the same key."""


class HomCache:
    """Get-or-insert map from (component certificate, target certificate) to count."""

    def __init__(self) -> None:
        self._data: dict[tuple[bytes, bytes], int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: tuple[bytes, bytes]) -> int | None:
        value = self._data.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: tuple[bytes, bytes], value: int) -> int:
        with self._lock:
            old = self._data.setdefault(key, value)
        if old != value:
            raise CacheIntegrityError(f"cache key {key!r}: {old} != {value}")
        return value

    def items(self):
        return list(self._data.items())

    def __len__(self) -> int:
        return len(self._data)

    def clear(self) -> None:
        self._data.clear()


default_cache = HomCache()
_cert_memo: dict[tuple, bytes] = {}


def _cert(g: SimpleGraph | TargetGraph) -> bytes:
    key = (type(g).__name__, g.n, g.adj)
    c = _cert_memo.get(key)
    if c is None:
        c = _cert_memo.setdefault(key, certificate(g))
    return c


# -- oracle ---------------------------------------------------------------


def hom_brute_force(
    g: SimpleGraph,
    h: TargetGraph,
    budget: int = DEFAULT_BUDGET,
    pinned: dict[int, int] | None = None,
) -> int:
    """Count maps V(G) -> V(H) preserving every edge, by exhaustive listing.

    ``pinned`` fixes the images of some vertices; only the remaining
    vertices are enumerated and charged against ``budget``.
    """
    pinned = dict(pinned or {})
    free = [v for v in range(g.n) if v not in pinned]
    V = h.n
    total = V ** len(free)
    if total > budget:
        raise BudgetExceeded(f"{V}^{len(free)} = {total} maps exceeds budget {budget}")
    if any(not 0 <= c < V for c in pinned.values()):
        return 0
    for u, v in g.edges():
        if u in pinned and v in pinned and not h.has_edge(pinned[u], pinned[v]):
            return 0
    if total == 0:
        return 0
    A = np.zeros((max(V, 1), max(V, 1)), dtype=bool)
    for u in range(V):
        for v in iter_bits(h.adj[u]):
            A[u, v] = True
    col = {v: i for i, v in enumerate(free)}
    checks = [(u, v) for u, v in g.edges() if u in col or v in col]
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        digits = []
        for _ in free:
            idx, d = np.divmod(idx, V)
            digits.append(d)
        ok = np.ones(len(digits[0]) if digits else 1, dtype=bool)
        for u, v in checks:
            cu = digits[col[u]] if u in col else pinned[u]
            cv = digits[col[v]] if v in col else pinned[v]
            ok &= A[cu, cv]
        count += int(np.count_nonzero(ok))
    return count


# -- structured strategies --------------------------------------------------


def _surjections(a: int, j: int) -> int:
    return sum((-1) ** i * comb(j, i) * (j - i) ** a for i in range(j + 1))


def hom_complete_bipartite(a: int, b: int, h: TargetGraph) -> int:
    """hom(K_{a,b}, H) = sum over f in V(H)^a of |common neighbourhood of f|^b.

    Tuples are grouped by their set of distinct values ``U``; there are
    ``surj(a, |U|)`` tuples with value set ``U``.
    """
    if a > b:
        a, b = b, a
    if a == 0:
        return h.n**b
    full = (1 << h.n) - 1
    total = 0

    def walk(start: int, size: int, common: int) -> None:
        nonlocal total
        for v in range(start, h.n):
            cn = common & h.adj[v]
            if cn == 0 and b > 0:
                continue
            total += _surjections(a, size + 1) * cn.bit_count() ** b
            if size + 1 < a:
                walk(v + 1, size + 1, cn)

    walk(0, 0, full)
    return total


def search_order(g: SimpleGraph) -> list[int]:
    """Connected visiting order: repeatedly take the vertex with most placed
    neighbours (ties: higher degree, then smaller index)."""
    if g.n == 0:
        return []
    placed = 0
    order = []
    remaining = set(range(g.n))
    while remaining:
        v = min(
            remaining,
            key=lambda x: (-(g.adj[x] & placed).bit_count(), -g.degree(x), x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def hom_backtrack(g: SimpleGraph, h: TargetGraph) -> int:
    """Backtracking with bitset candidate sets over V(H)."""
    n = g.n
    if n == 0:
        return 1
    order = search_order(g)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in iter_bits(g.adj[v]) if pos[u] < i] for i, v in enumerate(order)]
    hadj = h.adj
    full = (1 << h.n) - 1
    images = [0] * n
    last = n - 1

    def rec(i: int) -> int:
        cand = full
        for j in back[i]:
            cand &= hadj[images[j]]
            if not cand:
                return 0
        if i == last:
            return cand.bit_count()
        total = 0
        while cand:
            low = cand & -cand
            images[i] = low.bit_length() - 1
            total += rec(i + 1)
            cand ^= low
        return total

    return rec(0)


def _connected_count(piece: SimpleGraph, h: TargetGraph) -> int:
    sides = complete_bipartite_sides(piece)
    if sides is not None:
        return hom_complete_bipartite(sides[0], sides[1], h)
    return hom_backtrack(piece, h)


def hom_count(g: SimpleGraph, h: TargetGraph, cache: HomCache | None = default_cache) -> int:
    """hom(G, H): product over components of G, sum over components of H."""
    h_parts = [h.induced(c) for c in components(h)]
    result = 1
    for comp in components(g):
        piece = g.induced(comp)
        key = None
        if cache is not None:
            key = (_cert(piece), _cert(h))
            hit = cache.get(key)
            if hit is not None:
                result *= hit
                if result == 0:
                    return 0
                continue
        value = sum(_connected_count(piece, hp) for hp in h_parts)
        if cache is not None:
            cache.put(key, value)
        result *= value
        if result == 0:
            return 0
    return result


def hom_q_colourings(g: SimpleGraph, q: int, cache: HomCache | None = default_cache) -> int:
    """Proper q-colourings of G, i.e. hom(G, K_q)."""
    return hom_count(g, complete_simple(q), cache)


def hom_disjoint_copies(
    g: SimpleGraph, m: int, h_connected: TargetGraph, cache: HomCache | None = default_cache
) -> int:
    """hom(G, m*H) for connected H without building the m-fold target."""
    if not is_connected(h_connected):
        raise ValueError("hom_disjoint_copies needs a connected target")
    result = 1
    for comp in components(g):
        result *= m * hom_count(g.induced(comp), h_connected, cache)
    return result


@dataclass(frozen=True)
class CopiesTarget:
    """``m`` disjoint copies of a connected target, kept symbolic."""

    m: int
    base: TargetGraph

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("copy count must be positive")
        if not is_connected(self.base):
            raise ValueError("copies target needs a connected base")

    def describe(self) -> dict:
        return {"copies": str(self.m), "base": self.base.to_json_obj()}


def hom(g: SimpleGraph, target: TargetGraph | CopiesTarget, cache: HomCache | None = default_cache) -> int:
    if isinstance(target, CopiesTarget):
        return hom_disjoint_copies(g, target.m, target.base, cache)
    return hom_count(g, target, cache)


# -- transfer matrices --------------------------------------------------------


def adjacency_matrix(h: TargetGraph) -> list[list[int]]:
    return [[h.adj[i] >> j & 1 for j in range(h.n)] for i in range(h.n)]


def _matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in x]


def matrix_power(m: list[list[int]], e: int) -> list[list[int]]:
    n = len(m)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = m
    while e:
        if e & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        e >>= 1
    return result


def path_hom_matrix(h: TargetGraph, r: int) -> list[list[int]]:
    """Entry (i, j): H-colourings of the r-vertex path with ends at i and j."""
    if r < 2:
        raise ValueError("path needs at least 2 vertices")
    return matrix_power(adjacency_matrix(h), r - 1)


def cycle_hom_count(h: TargetGraph, r: int) -> int:
    if r < 3:
        raise ValueError("cycle needs at least 3 vertices")
    p = matrix_power(adjacency_matrix(h), r)
    return sum(p[i][i] for i in range(h.n))
