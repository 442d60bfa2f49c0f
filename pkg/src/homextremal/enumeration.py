"""Isomorph-free generation of small graphs by canonical vertex augmentation.

A graph on ``m + 1`` vertices is produced from a parent on ``m`` vertices by
adding vertex ``m`` with a chosen neighbourhood.  The child is kept only if
``m`` lies in the automorphism orbit of the child's canonical deletion
vertex, so each isomorphism class has exactly one accepted parent class.
Children of the same parent are deduplicated by certificate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import get_context
from typing import Iterator

from .canon import _orbits, canonical_labelling
from .graph6 import encode as graph6_encode
from .graphs import SimpleGraph, components, iter_bits

DEFAULT_CAP = int(os.environ.get("HOMEXTREMAL_ENUM_CAP", "9"))


class EnumerationRefused(RuntimeError):
    """The requested class is beyond the configured enumeration cap."""


@dataclass(frozen=True)
class EnumSpec:
    n: int
    min_degree: int = 0
    connected_only: bool = False
    shard_prefix: str | None = None

    def __post_init__(self):
        if self.n < 0 or self.min_degree < 0:
            raise ValueError("n and min_degree must be nonnegative")

    def admits(self, g: SimpleGraph) -> bool:
        if g.n != self.n or g.min_degree() < self.min_degree:
            return False
        if self.connected_only and len(components(g)) != 1:
            return False
        return True

    def describe(self) -> dict:
        return {
            "n": self.n,
            "min_degree": self.min_degree,
            "connected_only": self.connected_only,
            "shard_prefix": self.shard_prefix,
        }


def _deletion_invariant(adj: tuple[int, ...], v: int) -> tuple[int, int]:
    d = adj[v].bit_count()
    return (d, sum(adj[u].bit_count() for u in iter_bits(adj[v])))


def _children(adj: tuple[int, ...], N: int, delta: int) -> Iterator[tuple[tuple[int, ...], bytes]]:
    """Accepted children of one parent, as ``(canonical rows, certificate)``."""
    m = len(adj)
    need = max(0, delta - (N - m - 1))
    required = 0
    optional = []
    for v in range(m):
        d = adj[v].bit_count()
        if d < need - 1:
            return
        if d == need - 1:
            required |= 1 << v
        else:
            optional.append(v)
    base = required.bit_count()
    seen: set[bytes] = set()
    new_bit = 1 << m
    for size in range(max(0, need - base), len(optional) + 1):
        for extra in combinations(optional, size):
            s = required
            for v in extra:
                s |= 1 << v
            child = tuple(r | new_bit if s >> v & 1 else r for v, r in enumerate(adj)) + (s,)
            inv = [_deletion_invariant(child, v) for v in range(m + 1)]
            top = max(inv)
            if inv[m] != top:
                continue
            lab = canonical_labelling(m + 1, child)
            cert = graph6_encode(SimpleGraph._unchecked(m + 1, lab.rows))
            if cert in seen:
                continue
            candidates = [v for v in range(m + 1) if inv[v] == top]
            if len(candidates) > 1:
                pos = {v: i for i, v in enumerate(lab.lab)}
                star = max(candidates, key=pos.__getitem__)
                if star != m:
                    orb = _orbits(m + 1, lab.generators)
                    if orb[star] != orb[m]:
                        continue
            seen.add(cert)
            yield lab.rows, cert


def _expand(args) -> list[tuple[bytes, tuple[int, ...]]]:
    adj, N, spec = args
    out = []
    stack = [adj]
    while stack:
        cur = stack.pop()
        for rows, cert in _children(cur, N, spec.min_degree):
            if len(rows) == N:
                g = SimpleGraph._unchecked(N, rows)
                if spec.admits(g) and (
                    spec.shard_prefix is None or cert.decode("ascii").startswith(spec.shard_prefix)
                ):
                    out.append((cert, rows))
            else:
                stack.append(rows)
    return out


def _frontier(N: int, delta: int, depth: int) -> list[tuple[int, ...]]:
    level = [()]
    for _ in range(depth):
        level = [rows for adj in level for rows, _ in _children(adj, N, delta)]
    return level


def enumerate_graphs(
    spec: EnumSpec, cap: int | None = None, workers: int = 1
) -> list[SimpleGraph]:
    """One canonical representative per isomorphism class, sorted by certificate."""
    cap = DEFAULT_CAP if cap is None else cap
    if spec.n > cap:
        raise EnumerationRefused(f"n={spec.n} exceeds enumeration cap {cap}")
    N = spec.n
    if N == 0:
        g = SimpleGraph._unchecked(0, ())
        ok = spec.min_degree == 0 and not spec.connected_only
        return [g] if ok else []
    if spec.min_degree > N - 1:
        return []
    split = max(0, N - 3) if workers > 1 else 0
    roots = _frontier(N, spec.min_degree, split)
    jobs = [(adj, N, spec) for adj in roots]
    results: list[tuple[bytes, tuple[int, ...]]] = []
    if workers > 1 and len(jobs) > 1:
        with get_context("fork").Pool(workers) as pool:
            for part in pool.imap_unordered(_expand, jobs, chunksize=4):
                results.extend(part)
    else:
        for job in jobs:
            results.extend(_expand(job))
    results.sort()
    return [SimpleGraph._unchecked(N, rows) for _, rows in results]


def iter_graphs(spec: EnumSpec, cap: int | None = None, workers: int = 1) -> Iterator[SimpleGraph]:
    yield from enumerate_graphs(spec, cap=cap, workers=workers)


def count_classes(spec: EnumSpec, cap: int | None = None, workers: int = 1) -> int:
    return len(enumerate_graphs(spec, cap=cap, workers=workers))
