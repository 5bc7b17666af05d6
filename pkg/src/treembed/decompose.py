"""Tree decomposition helpers.

A tree with t edges always has a centroid vertex whose removal leaves
components of order at most ceil(t/2); the pieces can then be split into
two or three groups with balanced total size.  These routines back the
two-component embedding strategy and the obstruction checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import GraphError, TreeGraph, distance_bfs
from .rational import RationalLike, as_fraction


@dataclass(frozen=True)
class SeparatorResult:
    """Centroid vertex, the components of T - z, and the largest order."""

    separator: int
    components: tuple[tuple[int, ...], ...]
    max_component_order: int


def find_separator(tree: TreeGraph) -> SeparatorResult:
    """Exact centroid: the vertex minimizing the largest component of T - z.

    Every vertex is evaluated (one subtree-size pass computes the largest
    component order for all of them); ties go to the smallest vertex id.
    The winner always satisfies max_component_order <= ceil(t/2) where t is
    the edge count.
    """
    g = tree.graph
    n = g.n
    if n < 2:
        raise GraphError("separator needs a tree with at least one edge")
    worst = max_component_orders(tree)
    z = min(range(n), key=lambda v: (worst[v], v))
    comps = _components_without(g, z)
    realized = max(len(c) for c in comps)
    if realized != worst[z]:
        raise RuntimeError("separator bug: size pass disagrees with removal")
    t = n - 1
    if realized > (t + 1) // 2:
        raise RuntimeError("separator bug: centroid bound ceil(t/2) violated")
    return SeparatorResult(z, comps, realized)


def max_component_orders(tree: TreeGraph) -> tuple[int, ...]:
    """For every vertex v, the largest component order of T - v.

    Exposed so optimality of find_separator can be checked directly.
    """
    g = tree.graph
    if g.n < 2:
        raise GraphError("needs a tree with at least one edge")
    order, parent = _bfs_order(g, 0)
    size = [1] * g.n
    worst = [0] * g.n
    for v in reversed(order):
        p = parent[v]
        if p >= 0:
            size[p] += size[v]
            worst[p] = max(worst[p], size[v])
    for v in range(g.n):
        worst[v] = max(worst[v], g.n - size[v])
    return tuple(worst)


@dataclass(frozen=True)
class TwoWayPartition:
    """Index split with heavy_sum >= light_sum and heavy_sum <= 2t/3."""

    heavy: tuple[int, ...]
    light: tuple[int, ...]
    heavy_sum: int
    light_sum: int


def partition_two(sizes: Sequence[int], t: int) -> TwoWayPartition:
    """Split indices into two groups, the heavier one summing to at most 2t/3.

    Requires t >= 2, every size in 1..ceil(t/2), and a total of at most t.
    (At t = 1 the only admissible sequence is (1), and no split can keep the
    heavy side under 2/3, so that degenerate case is excluded.)

    Greedy over descending sizes, always into the currently lighter group,
    meets the bound: a singleton heavy group is one size <= ceil(t/2)
    <= 2t/3, and otherwise the last size x to enter the heavy group entered
    when that group was lighter, so heavy <= (t + x)/2 with x at most the
    third largest size, hence x <= t/3.
    """
    if t < 2:
        raise GraphError(f"the two-way bound needs t >= 2, got {t}")
    _check_partition_input(sizes, t)
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    groups: tuple[list[int], list[int]] = ([], [])
    sums = [0, 0]
    for i in order:
        side = 0 if sums[0] <= sums[1] else 1
        groups[side].append(i)
        sums[side] += sizes[i]
    heavy = 0 if sums[0] >= sums[1] else 1
    if Fraction(sums[heavy]) > Fraction(2 * t, 3):
        raise RuntimeError("partition bug: two-way bounds violated on valid input")
    return TwoWayPartition(
        tuple(sorted(groups[heavy])),
        tuple(sorted(groups[1 - heavy])),
        sums[heavy],
        sums[1 - heavy],
    )


@dataclass(frozen=True)
class ThreeWayPartition:
    """Index split into three groups, each summing to at most ceil(t/2),
    ordered by descending sum."""

    groups: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    sums: tuple[int, int, int]


def partition_three(sizes: Sequence[int], t: int) -> ThreeWayPartition:
    """Split indices into three groups each summing to at most ceil(t/2).

    Unlike the two-way split this holds for every t >= 1.  Greedy over
    descending sizes into the currently lightest group: the first three
    sizes open their own groups, and any later size x satisfies
    4x <= total <= t while the lightest group holds at most (total - x)/3,
    so the new sum stays at most t/3 + t/6 = t/2.
    """
    _check_partition_input(sizes, t)
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    groups: tuple[list[int], ...] = ([], [], [])
    sums = [0, 0, 0]
    for i in order:
        side = min(range(3), key=lambda s: (sums[s], s))
        groups[side].append(i)
        sums[side] += sizes[i]
    cap = (t + 1) // 2
    if max(sums) > cap:
        raise RuntimeError("partition bug: three-way cap violated on valid input")
    ranked = sorted(range(3), key=lambda s: (-sums[s], s))
    return ThreeWayPartition(
        tuple(tuple(sorted(groups[s])) for s in ranked),
        tuple(sums[s] for s in ranked),
    )


def even_distance_set(tree: TreeGraph, z: int) -> tuple[int, ...]:
    """Vertices at positive even distance from z in the tree."""
    dist = distance_bfs(tree.graph, z)
    return tuple(v for v in range(tree.n) if dist[v] > 0 and dist[v] % 2 == 0)


def split_family_by_cap(
    weights: Sequence[int], k: int, alpha: RationalLike
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Greedy inclusion-maximal index subset under the weight cap (1+alpha)k/2.

    Scans the weights in the given order and takes each one that still
    fits.  Every weight must be at most alpha*k; a larger weight belongs to
    the single-heavy-piece embedding case and is rejected here.  When the
    total weight reaches the cap, the taken part is guaranteed at least
    (1-alpha)k/2: the first skipped weight w has taken + w > cap and
    w <= alpha*k.
    """
    a = as_fraction(alpha)
    if k < 1:
        raise GraphError(f"k must be positive, got {k}")
    if a < 0:
        raise GraphError(f"alpha must be nonnegative, got {a}")
    cap = (1 + a) * Fraction(k, 2)
    taken: list[int] = []
    rest: list[int] = []
    total = 0
    for i, w in enumerate(weights):
        if w < 0:
            raise GraphError(f"weights must be nonnegative, got {w}")
        if w > a * k:
            raise GraphError(
                f"weight {w} at index {i} exceeds alpha*k = {a * k}; that piece "
                "needs the single-heavy-piece case"
            )
        if total + w <= cap:
            taken.append(i)
            total += w
        else:
            rest.append(i)
    if sum(weights) >= cap and not total >= (1 - a) * Fraction(k, 2):
        raise RuntimeError("split bug: taken weight fell below (1-alpha)k/2")
    return tuple(taken), tuple(rest)


def _check_partition_input(sizes: Sequence[int], t: int) -> None:
    if t < 1:
        raise GraphError(f"t must be positive, got {t}")
    cap = (t + 1) // 2
    for i, s in enumerate(sizes):
        if not (0 < s <= cap):
            raise GraphError(
                f"size {s} at index {i} outside 1..ceil(t/2) = {cap} for t={t}"
            )
    if sum(sizes) > t:
        raise GraphError(f"sizes sum to {sum(sizes)}, more than t={t}")


def _bfs_order(g, start: int) -> tuple[list[int], list[int]]:
    from collections import deque

    parent = [-2] * g.n
    parent[start] = -1
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if parent[w] == -2:
                parent[w] = u
                order.append(w)
                queue.append(w)
    if len(order) != g.n:
        raise GraphError("tree must be connected")
    return order, parent


def _components_without(g, z: int) -> tuple[tuple[int, ...], ...]:
    from collections import deque

    seen = {z}
    comps = []
    for s in g.adj[z]:
        if s in seen:
            continue
        queue = deque([s])
        seen.add(s)
        comp = []
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    comps.sort(key=lambda c: c[0])
    return tuple(comps)
