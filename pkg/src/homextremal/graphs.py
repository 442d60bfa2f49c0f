"""Immutable source and target graphs plus the named constructors.

Adjacency is stored as one integer bitmask per vertex.  A target graph
marks a loop at ``v`` by setting bit ``v`` in its own row, so that
``popcount(adj[v])`` is the degree under the "a loop adds one" convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised when a graph cannot be constructed from the given data."""


def popcount(x: int) -> int:
    return x.bit_count()


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _check_n(n: int) -> None:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    if n > MAX_VERTICES:
        raise GraphError(f"vertex count {n} exceeds cap {MAX_VERTICES}")


def _edge_rows(n: int, edges: Iterable[Sequence[int]], allow_loops: bool) -> list[int]:
    rows = [0] * n
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v and not allow_loops:
            raise GraphError(f"loop at vertex {u} in a simple graph")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return rows


@dataclass(frozen=True)
class SimpleGraph:
    """Simple loopless undirected graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        for u, row in enumerate(self.adj):
            if row >> self.n:
                raise GraphError(f"row {u} references vertices >= n")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u} in a simple graph")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        _check_n(n)
        return cls(n, tuple(_edge_rows(n, edges, allow_loops=False)))

    @classmethod
    def _unchecked(cls, n: int, adj: tuple[int, ...]) -> "SimpleGraph":
        # Hot path for the enumerator; rows are built symmetric by construction.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return SimpleGraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(vertices)}
        return SimpleGraph.from_edges(
            len(vertices),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def add_edge(self, u: int, v: int) -> "SimpleGraph":
        return SimpleGraph.from_edges(self.n, self.edges() + [(u, v)])

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class TargetGraph:
    """Undirected graph with optional loops; the homomorphism target."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        for u, row in enumerate(self.adj):
            if row >> self.n:
                raise GraphError(f"row {u} references vertices >= n")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_parts(
        cls, n: int, loops: Iterable[int] = (), edges: Iterable[Sequence[int]] = ()
    ) -> "TargetGraph":
        _check_n(n)
        rows = _edge_rows(n, edges, allow_loops=True)
        for v in loops:
            if not 0 <= v < n:
                raise GraphError(f"loop vertex {v} out of range for n={n}")
            rows[v] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_simple(cls, g: SimpleGraph) -> "TargetGraph":
        return cls(g.n, g.adj)

    @property
    def loops(self) -> list[int]:
        return [v for v in range(self.n) if self.adj[v] >> v & 1]

    def edges(self) -> list[tuple[int, int]]:
        """Non-loop edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def relabel(self, perm: Sequence[int]) -> "TargetGraph":
        return TargetGraph.from_parts(
            self.n,
            [perm[v] for v in self.loops],
            [(perm[u], perm[v]) for u, v in self.edges()],
        )

    def induced(self, vertices: Sequence[int]) -> "TargetGraph":
        index = {v: i for i, v in enumerate(vertices)}
        return TargetGraph.from_parts(
            len(vertices),
            [index[v] for v in self.loops if v in index],
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def to_json_obj(self) -> dict:
        return {"n": self.n, "loops": self.loops, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TargetGraph":
        try:
            return cls.from_parts(int(obj["n"]), obj.get("loops", []), obj.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed target JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"TargetGraph(n={self.n}, loops={self.loops}, edges={self.edges()})"


# -- constructors ---------------------------------------------------------


def build_simple(n: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
    return SimpleGraph.from_edges(n, edges)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [])


def path_graph(r: int) -> SimpleGraph:
    return SimpleGraph.from_edges(r, [(i, i + 1) for i in range(r - 1)])


def cycle_graph(r: int) -> SimpleGraph:
    if r < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(r, [(i, (i + 1) % r) for i in range(r)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    """K_{a,b} with classes ``[0, a)`` and ``[a, a+b)``."""
    return SimpleGraph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def complete_multipartite(sizes: Sequence[int]) -> SimpleGraph:
    classes = turan_classes_from_sizes(sizes)
    edges = [
        (u, v)
        for i, j in combinations(range(len(classes)), 2)
        for u in classes[i]
        for v in classes[j]
    ]
    return SimpleGraph.from_edges(sum(sizes), edges)


def turan_sizes(t: int, x: int) -> list[int]:
    """Class sizes of T_t(x), largest first."""
    if t < 1 or x < 0:
        raise GraphError("turan needs t >= 1 and x >= 0")
    q, r = divmod(x, t)
    return [q + 1] * r + [q] * (t - r)


def turan_classes_from_sizes(sizes: Sequence[int]) -> list[list[int]]:
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    return out


def turan(t: int, x: int) -> SimpleGraph:
    return complete_multipartite(turan_sizes(t, x))


def turan_minus_matching(t: int, x: int, class_a: int, class_b: int) -> SimpleGraph:
    """T_t(x) with the i-th vertices of two equal-size classes made non-adjacent."""
    sizes = turan_sizes(t, x)
    if not (0 <= class_a < t and 0 <= class_b < t) or class_a == class_b:
        raise GraphError("need two distinct class indices")
    if sizes[class_a] != sizes[class_b]:
        raise GraphError(
            f"classes {class_a} and {class_b} have sizes {sizes[class_a]} != {sizes[class_b]}"
        )
    classes = turan_classes_from_sizes(sizes)
    removed = {
        frozenset(p) for p in zip(classes[class_a], classes[class_b])
    }
    g = complete_multipartite(sizes)
    return SimpleGraph.from_edges(x, [e for e in g.edges() if frozenset(e) not in removed])


def disjoint_union(*graphs: SimpleGraph) -> SimpleGraph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return SimpleGraph.from_edges(offset, edges)


def copies(m: int, g: SimpleGraph) -> SimpleGraph:
    return disjoint_union(*([g] * m))


# -- target families ------------------------------------------------------


def complete_looped(k: int) -> TargetGraph:
    return TargetGraph.from_parts(k, range(k), combinations(range(k), 2))


def balanced_biclique(k: int) -> TargetGraph:
    return TargetGraph.from_simple(complete_bipartite(k, k))


def complete_simple(q: int) -> TargetGraph:
    return TargetGraph.from_simple(complete_graph(q))


def disjoint_copies(m: int, h: TargetGraph) -> TargetGraph:
    """``m`` copies of ``h``; copy ``i`` occupies vertices ``[i*|h|, (i+1)*|h|)``."""
    loops, edges = [], []
    for i in range(m):
        off = i * h.n
        loops += [v + off for v in h.loops]
        edges += [(u + off, v + off) for u, v in h.edges()]
    return TargetGraph.from_parts(m * h.n, loops, edges)


def independent_set_target() -> TargetGraph:
    """Single edge with one looped end: hom(G, .) counts independent sets."""
    return TargetGraph.from_parts(2, loops=[0], edges=[(0, 1)])


# -- structure ------------------------------------------------------------


def components(g: SimpleGraph | TargetGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(list(iter_bits(comp)))
    return out


def is_connected(g: SimpleGraph | TargetGraph) -> bool:
    return len(components(g)) == 1


def bipartition(g: SimpleGraph | TargetGraph) -> list[int] | None:
    """A proper 2-colouring as a list of 0/1, or None if none exists."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in iter_bits(g.adj[u]):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return None
    return side


def is_bipartite(g: SimpleGraph | TargetGraph) -> bool:
    return bipartition(g) is not None


@dataclass(frozen=True)
class GraphClass:
    is_connected: bool
    is_bipartite: bool
    min_degree: int
    max_degree: int


def classify_graph(g: SimpleGraph | TargetGraph) -> GraphClass:
    return GraphClass(
        is_connected=is_connected(g),
        is_bipartite=is_bipartite(g),
        min_degree=g.min_degree(),
        max_degree=g.max_degree(),
    )


def complete_bipartite_sides(g: SimpleGraph) -> tuple[int, int] | None:
    """``(a, b)`` with ``a <= b`` if connected ``g`` is K_{a,b}, else None."""
    if g.n < 2 or not is_connected(g):
        return None
    side = bipartition(g)
    if side is None:
        return None
    a = side.count(0)
    b = g.n - a
    if g.num_edges != a * b:
        return None
    return (min(a, b), max(a, b))


def validate(g: SimpleGraph | TargetGraph) -> None:
    """Re-check the type invariants over the full relation."""
    for u in range(g.n):
        for v in range(g.n):
            if g.has_edge(u, v) != g.has_edge(v, u):
                raise GraphError(f"asymmetric pair ({u}, {v})")
        if isinstance(g, SimpleGraph) and g.has_edge(u, u):
            raise GraphError(f"loop at {u}")
        if g.degree(u) != sum(g.has_edge(u, w) for w in range(g.n)):
            raise GraphError(f"degree mismatch at {u}")
