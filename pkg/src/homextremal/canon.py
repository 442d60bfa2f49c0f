"""Canonical labelling by colour refinement and individualisation.

The search follows the usual nauty outline on a small scale: refine to an
equitable partition, individualise each vertex of the first non-singleton
cell, and keep the labelling whose relabelled adjacency rows are largest.
Automorphisms discovered at equivalent leaves prune sibling branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph6 import encode as graph6_encode
from .graphs import SimpleGraph, TargetGraph, iter_bits


def refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition."""
    cells = [list(c) for c in cells]
    i = 0
    while i < len(cells):
        smask = 0
        for v in cells[i]:
            smask |= 1 << v
        new: list[list[int]] = []
        split = False
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            counts = [(adj[v] & smask).bit_count() for v in c]
            if min(counts) == max(counts):
                new.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v, x in zip(c, counts):
                groups.setdefault(x, []).append(v)
            new.extend(groups[x] for x in sorted(groups))
            split = True
        if split:
            cells = new
            i = 0
        else:
            i += 1
    return cells


def _orbits(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


@dataclass
class Labelling:
    """Result of a canonical search.

    ``lab[i]`` is the original vertex placed at canonical position ``i``;
    ``rows`` is the relabelled adjacency; ``generators`` generate the
    automorphism group as permutations of the original vertices.
    """

    lab: list[int]
    rows: tuple[int, ...]
    generators: list[tuple[int, ...]] = field(default_factory=list)

    def orbits(self) -> list[int]:
        """Orbit representative (smallest member) for each vertex."""
        return _orbits(len(self.lab), self.generators)


class _Search:
    def __init__(self, n: int, adj: Sequence[int]):
        self.n = n
        self.adj = adj
        self.first_lab: list[int] | None = None
        self.first_code: tuple[int, ...] | None = None
        self.first_prefix: list[int] = []
        self.best_lab: list[int] | None = None
        self.best_code: tuple[int, ...] | None = None
        self.gens: list[tuple[int, ...]] = []

    def code(self, lab: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        rows = []
        for v in lab:
            r = 0
            for u in iter_bits(self.adj[v]):
                r |= 1 << pos[u]
            rows.append(r)
        return tuple(rows)

    def _automorphism(self, lab_a: list[int], lab_b: list[int]) -> tuple[int, ...]:
        g = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            g[a] = b
        return tuple(g)

    def run(self, cells: list[list[int]], prefix: list[int]) -> int | None:
        cells = refine(self.adj, cells)
        depth = len(prefix)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            lab = [c[0] for c in cells]
            code = self.code(lab)
            if self.first_code is None:
                self.first_code = self.best_code = code
                self.first_lab = self.best_lab = lab
                self.first_prefix = list(prefix)
                return None
            if code == self.first_code:
                gamma = self._automorphism(self.first_lab, lab)
                self.gens.append(gamma)
                d = 0
                while d < depth and prefix[d] == self.first_prefix[d]:
                    d += 1
                # If gamma carries the first path onto this one up to the divergence
                # level, the subtree there is an image of an explored one.
                if d < depth and all(gamma[self.first_prefix[j]] == prefix[j] for j in range(d + 1)):
                    return d
                return None
            if code > self.best_code:
                self.best_code, self.best_lab = code, lab
            elif code == self.best_code:
                self.gens.append(self._automorphism(self.best_lab, lab))
            return None
        explored: list[int] = []
        for w in sorted(cells[target]):
            if explored:
                fixing = [g for g in self.gens if all(g[p] == p for p in prefix)]
                if fixing:
                    orb = _orbits(self.n, fixing)
                    if any(orb[w] == orb[e] for e in explored):
                        continue
            rest = [v for v in cells[target] if v != w]
            child = cells[:target] + [[w], rest] + cells[target + 1 :]
            res = self.run(child, prefix + [w])
            explored.append(w)
            if res is not None and res < depth:
                return res
        return None


def canonical_labelling(
    n: int, adj: Sequence[int], colours: Sequence[int] | None = None
) -> Labelling:
    """Canonical labelling of a graph given as bitmask rows.

    Vertices with different ``colours`` are never exchanged; colour classes
    are placed in increasing colour order.
    """
    if n == 0:
        return Labelling([], ())
    if colours is None:
        cells = [list(range(n))]
    else:
        by: dict[int, list[int]] = {}
        for v in range(n):
            by.setdefault(colours[v], []).append(v)
        cells = [by[c] for c in sorted(by)]
    s = _Search(n, adj)
    s.run(cells, [])
    return Labelling(s.best_lab, s.best_code, s.gens)


def _loop_colours(h: TargetGraph) -> list[int]:
    return [h.adj[v] >> v & 1 for v in range(h.n)]


def canonical_graph(g: SimpleGraph) -> SimpleGraph:
    lab = canonical_labelling(g.n, g.adj)
    return SimpleGraph._unchecked(g.n, lab.rows)


def certificate(g: SimpleGraph | TargetGraph) -> bytes:
    """Bytes equal for two graphs exactly when they are isomorphic.

    Simple graphs map to the graph6 string of their canonical form.  Targets
    are prefixed with ``&`` and carry the loop flags of the canonical order.
    """
    if isinstance(g, TargetGraph):
        colours = _loop_colours(g)
        lab = canonical_labelling(g.n, g.adj, colours)
        plain = tuple(r & ~(1 << i) for i, r in enumerate(lab.rows))
        flags = bytes(48 + colours[v] for v in lab.lab)
        return b"&" + graph6_encode(SimpleGraph._unchecked(g.n, plain)) + b":" + flags
    lab = canonical_labelling(g.n, g.adj)
    return graph6_encode(SimpleGraph._unchecked(g.n, lab.rows))


def automorphism_orbits(g: SimpleGraph | TargetGraph) -> list[int]:
    colours = _loop_colours(g) if isinstance(g, TargetGraph) else None
    return canonical_labelling(g.n, g.adj, colours).orbits()


def are_isomorphic(a: SimpleGraph | TargetGraph, b: SimpleGraph | TargetGraph) -> bool:
    return type(a) is type(b) and certificate(a) == certificate(b)
