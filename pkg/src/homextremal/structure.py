"""Structural quantities of targets and source graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import factorial

from .graphs import SimpleGraph, TargetGraph, components, iter_bits
from .hom import DEFAULT_BUDGET, BudgetExceeded

DESK_CAP = 12


class CapExceeded(BudgetExceeded):
    """Refusal: the graph is larger than the desk-scale cap."""


@dataclass(frozen=True)
class SProfile:
    delta: int
    k: int
    s_value: int
    witnesses: tuple[tuple[int, ...], ...] | None = None


def s_value(
    delta: int, h: TargetGraph, budget: int = DEFAULT_BUDGET, witnesses: bool = False
) -> SProfile:
    """Count ordered delta-tuples of V(H) whose common neighbourhood has size k = max degree.

    A vertex lies in its own neighbourhood exactly when it is looped.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    if h.n**delta > budget:
        raise BudgetExceeded(f"{h.n}^{delta} tuples exceeds budget {budget}")
    k = h.max_degree()
    full = (1 << h.n) - 1
    count = 0
    found = []
    for tup in product(range(h.n), repeat=delta):
        common = full
        for v in tup:
            common &= h.adj[v]
        if common.bit_count() == k:
            count += 1
            if witnesses:
                found.append(tup)
    return SProfile(delta, k, count, tuple(found) if witnesses else None)


@dataclass(frozen=True)
class TargetClassification:
    """Flags are set when *some* component of H is the named graph at the global k."""

    k: int
    is_complete_looped_k: bool
    is_balanced_biclique_k: bool
    in_family_hk: bool


def _is_complete_looped(h: TargetGraph, comp: list[int], k: int) -> bool:
    if len(comp) != k:
        return False
    mask = 0
    for v in comp:
        mask |= 1 << v
    return all(h.adj[v] == mask for v in comp)


def _is_balanced_biclique(h: TargetGraph, comp: list[int], k: int) -> bool:
    if k == 0 or len(comp) != 2 * k:
        return False
    if any(h.adj[v] >> v & 1 for v in comp):
        return False
    first = comp[0]
    side_b = h.adj[first]
    side_a = 0
    for v in comp:
        if not side_b >> v & 1:
            side_a |= 1 << v
    if side_a.bit_count() != k or side_b.bit_count() != k:
        return False
    return all(h.adj[v] == (side_b if side_a >> v & 1 else side_a) for v in comp)


def classify_target(h: TargetGraph) -> TargetClassification:
    k = h.max_degree()
    looped = biclique = False
    for comp in components(h):
        looped |= _is_complete_looped(h, comp, k)
        biclique |= _is_balanced_biclique(h, comp, k)
    return TargetClassification(k, looped, biclique, not (looped or biclique))


# -- cycles -------------------------------------------------------------------


def chordless_cycles(g: SimpleGraph) -> list[list[int]]:
    """All induced cycles, each listed once starting at its smallest vertex,
    sorted by length then lexicographically."""
    adj = g.adj
    out = []
    for s in range(g.n):
        allowed = ((1 << g.n) - 1) & ~((1 << (s + 1)) - 1)
        sbit = 1 << s

        def extend(path: list[int], interior: int, used: int) -> None:
            last = path[-1]
            for v in iter_bits(adj[last] & allowed & ~used):
                if adj[v] & interior:
                    continue
                if adj[v] & sbit:
                    if len(path) >= 2 and path[1] < v:
                        out.append(path + [v])
                    continue
                extend(path + [v], interior | (1 << last), used | (1 << v))

        for a in iter_bits(adj[s] & allowed):
            extend([s, a], 0, sbit | (1 << a))
    out.sort(key=lambda c: (len(c), c))
    return out


@dataclass(frozen=True)
class CyclePacking:
    found: bool
    cycles: tuple[tuple[int, ...], ...] = field(default=())


def has_disjoint_cycles(g: SimpleGraph, d: int, cap: int = DESK_CAP) -> CyclePacking:
    """Search for ``d`` vertex-disjoint cycles.

    Restricting to induced cycles loses nothing: every cycle's vertex set
    contains an induced cycle.
    """
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds cycle-packing cap {cap}")
    if d <= 0:
        return CyclePacking(True)
    cycles = chordless_cycles(g)
    masks = []
    for c in cycles:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)

    chosen: list[int] = []

    def search(start: int, used: int) -> bool:
        if len(chosen) == d:
            return True
        for i in range(start, len(cycles)):
            if masks[i] & used:
                continue
            chosen.append(i)
            if search(i + 1, used | masks[i]):
                return True
            chosen.pop()
        return False

    if search(0, 0):
        return CyclePacking(True, tuple(tuple(cycles[i]) for i in chosen))
    return CyclePacking(False)


def is_forest(g: SimpleGraph, removed: int = 0) -> bool:
    keep = [v for v in range(g.n) if not removed >> v & 1]
    sub = g.induced(keep)
    return sub.num_edges == sub.n - len(components(sub))


def min_feedback_vertex_set(g: SimpleGraph, cap: int = DESK_CAP) -> list[int]:
    """A smallest vertex set whose removal leaves a forest (first in
    lexicographic order among those of minimum size)."""
    if g.n > cap:
        raise CapExceeded(f"n={g.n} exceeds feedback-vertex-set cap {cap}")
    for size in range(g.n + 1):
        for subset in combinations(range(g.n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            if is_forest(g, mask):
                return list(subset)
    raise AssertionError("removing every vertex always leaves a forest")


# -- Turan-copies threshold -----------------------------------------------------


def k0_inequality_holds(t: int, alpha: int, k: int) -> bool:
    """Exact test of (t!k)^(1/(t*alpha)) > t*k^(1/(t*alpha+1)).

    Both sides are raised to the power t*alpha*(t*alpha+1).
    """
    q = t * alpha
    return (factorial(t) * k) ** (q + 1) > t ** (q * (q + 1)) * k**q


def compute_k0(t: int, alpha: int) -> int:
    """Least positive integer k satisfying the inequality above."""
    if t < 3 or alpha < 1:
        raise ValueError("need t >= 3 and alpha >= 1")
    hi = 1
    while not k0_inequality_holds(t, alpha, hi):
        hi *= 2
    lo = hi // 2  # fails (or is 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if k0_inequality_holds(t, alpha, mid):
            hi = mid
        else:
            lo = mid
    return hi
