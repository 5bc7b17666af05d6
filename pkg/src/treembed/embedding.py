"""Embedding solvers.

exact_embed is a complete backtracking search over injective adjacency
preserving maps; it is the oracle every other routine is judged against,
and a NotEmbedded from it means the whole (symmetry reduced) space was
exhausted.  greedy_min_degree_embed, forest_embed_component, and
strategy_embed are the constructive routines shaped after the
two-component degree-condition strategy; they may answer Unknown but never
claim a non-embedding on their own.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .decompose import (
    even_distance_set,
    find_separator,
    partition_two,
    split_family_by_cap,
)
from .graphs import (
    Component,
    GraphError,
    SimpleGraph,
    TreeGraph,
    components,
    degree_stats,
    distance_bfs,
    induced_subgraph,
)
from .rational import RationalLike, as_fraction
from .structure import classify_apex_structure


class Verdict(Enum):
    EMBEDDED = "embedded"
    NOT_EMBEDDED = "not_embedded"
    UNKNOWN = "unknown"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Budget:
    """Search limits.  max_nodes is deterministic; time_ms is wall clock and
    therefore only suitable where reproducible verdicts are not required."""

    max_nodes: Optional[int] = None
    time_ms: Optional[float] = None


@dataclass(frozen=True)
class EmbedConstraints:
    """Required image sets for selected tree vertices."""

    required_images: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized = {}
        for v, images in dict(self.required_images).items():
            s = frozenset(images)
            if not s:
                raise GraphError(f"required image set for vertex {v} is empty")
            normalized[v] = s
        object.__setattr__(self, "required_images", normalized)


@dataclass
class EmbedVerdict:
    kind: Verdict
    embedding: Optional[dict[int, int]]
    nodes_explored: int = 0
    elapsed_ms: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class RootedForest:
    """An acyclic SimpleGraph with exactly one chosen root per component.

    Color class 0 consists of the vertices at even depth below their root
    (the roots included); class 1 is the rest.
    """

    graph: SimpleGraph
    roots: tuple[int, ...]

    def __post_init__(self) -> None:
        comps = components(self.graph)
        if self.graph.m != self.graph.n - len(comps):
            raise GraphError("forest must be acyclic")
        roots = set(self.roots)
        if len(roots) != len(self.roots):
            raise GraphError("duplicate roots")
        for comp in comps:
            hits = roots & set(comp.vertices)
            if len(hits) != 1:
                raise GraphError(
                    f"component starting at {comp.vertices[0]} needs exactly one root"
                )

    def color_classes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        depth = [-1] * self.graph.n
        queue = deque()
        for r in self.roots:
            depth[r] = 0
            queue.append(r)
        while queue:
            u = queue.popleft()
            for w in self.graph.adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    queue.append(w)
        class0 = tuple(v for v in range(self.graph.n) if depth[v] % 2 == 0)
        class1 = tuple(v for v in range(self.graph.n) if depth[v] % 2 == 1)
        return class0, class1


TreeLike = Union[TreeGraph, RootedForest, SimpleGraph]


def _graph_of(tree_like: TreeLike) -> SimpleGraph:
    if isinstance(tree_like, SimpleGraph):
        return tree_like
    return tree_like.graph


def embedding_violations(
    tree_like: TreeLike, host: SimpleGraph, mapping: Mapping[int, int]
) -> list[str]:
    """Reasons a claimed embedding is invalid; empty means it checks out."""
    g = _graph_of(tree_like)
    issues = []
    for v in range(g.n):
        if v not in mapping:
            issues.append(f"vertex {v} has no image")
    images = {}
    for v, w in mapping.items():
        if not (0 <= v < g.n):
            issues.append(f"mapped vertex {v} is not a tree vertex")
            continue
        if not (0 <= w < host.n):
            issues.append(f"image {w} of vertex {v} is not a host vertex")
            continue
        if w in images:
            issues.append(f"vertices {images[w]} and {v} share the image {w}")
        images[w] = v
    if issues:
        return issues
    for u, v in g.edges():
        if not host.has_edge(mapping[u], mapping[v]):
            issues.append(
                f"tree edge ({u}, {v}) maps to non-edge ({mapping[u]}, {mapping[v]})"
            )
    return issues


def validate_embedding(
    tree_like: TreeLike, host: SimpleGraph, mapping: Mapping[int, int]
) -> bool:
    """True when mapping is a total injective adjacency preserving map."""
    return not embedding_violations(tree_like, host, mapping)


class _LimitHit(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _Backtracker:
    """Depth first search for an injective adjacency preserving map.

    Vertices are assigned in BFS order from the given roots.  A candidate
    image must be an unused host vertex adjacent to the parent's image,
    with host degree at least the tree degree, in the vertex's allowed
    mask, with enough unused neighbors left for its pending children, and
    leaving the parent's image enough unused neighbors for the remaining
    siblings.  Roots additionally need a host component large enough for
    their subtree.

    With symmetry on, interchangeable siblings (equal rooted shape with
    nothing constrained below, or childless vertices sharing one allowed
    mask) are forced into ascending image order, and host vertices with
    identical neighborhoods and identical constraint membership collapse
    to one representative per search node.  Both reductions map any
    embedding to one the reduced search still visits, so verdicts agree
    with the unreduced search.
    """

    def __init__(
        self,
        forest: SimpleGraph,
        roots: Sequence[int],
        host: SimpleGraph,
        allowed: Sequence[int],
        symmetry: bool = True,
    ):
        self.forest = forest
        self.host = host
        self.symmetry = symmetry
        self.allowed = list(allowed)
        n_t = forest.n
        self.full_mask = (1 << host.n) - 1

        visited = [False] * n_t
        self.order: list[int] = []
        self.parent = [-1] * n_t
        self.children: list[list[int]] = [[] for _ in range(n_t)]
        comp_sizes: dict[int, int] = {}
        for r in roots:
            if visited[r]:
                raise GraphError(f"root {r} repeated or shared between components")
            start = len(self.order)
            visited[r] = True
            self.order.append(r)
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for w in forest.adj[u]:
                    if not visited[w]:
                        visited[w] = True
                        self.parent[w] = u
                        self.children[u].append(w)
                        self.order.append(w)
                        queue.append(w)
            comp_sizes[r] = len(self.order) - start
        if len(self.order) != n_t:
            raise GraphError("roots do not cover every component")

        self.child_count = [len(c) for c in self.children]
        self.sib_rest = [0] * n_t
        for u in range(n_t):
            kids = self.children[u]
            for i, c in enumerate(kids):
                self.sib_rest[c] = len(kids) - 1 - i
        self.tree_deg = [forest.degree(v) for v in range(n_t)]

        host_degs = host.degrees
        self.host_masks = host.adjacency_masks
        by_rank = sorted(range(host.n), key=lambda w: (-host_degs[w], w))
        self.rank = [0] * host.n
        for idx, w in enumerate(by_rank):
            self.rank[w] = idx
        self.deg_mask: dict[int, int] = {}
        for d in set(self.tree_deg):
            mask = 0
            for w in range(host.n):
                if host_degs[w] >= d:
                    mask |= 1 << w
            self.deg_mask[d] = mask

        host_comp = _host_component_sizes(host)
        self.cap_mask: dict[int, int] = {}
        for r in roots:
            need = comp_sizes[r]
            mask = 0
            for w in range(host.n):
                if host_comp[w] >= need:
                    mask |= 1 << w
            self.cap_mask[r] = mask

        self.chain_prev: list[Optional[int]] = [None] * n_t
        self.class_id = list(range(host.n))
        if symmetry:
            self._build_chains(list(roots))
            self._build_twin_classes()

    def _build_chains(self, roots: list[int]) -> None:
        n_t = self.forest.n
        codes = [0] * n_t
        constrained_below = [False] * n_t
        table: dict[tuple[int, ...], int] = {}
        for v in reversed(self.order):
            kids = self.children[v]
            key = tuple(sorted(codes[c] for c in kids))
            codes[v] = table.setdefault(key, len(table))
            constrained_below[v] = self.allowed[v] != self.full_mask or any(
                constrained_below[c] for c in kids
            )

        def signature(v: int):
            if not constrained_below[v]:
                return ("shape", codes[v])
            if not self.children[v]:
                return ("leaf", self.allowed[v])
            return None

        def chain(members: Sequence[int]) -> None:
            last: dict[object, int] = {}
            for v in members:
                sig = signature(v)
                if sig is None:
                    continue
                if sig in last:
                    self.chain_prev[v] = last[sig]
                last[sig] = v

        chain(roots)
        for v in self.order:
            if self.children[v]:
                chain(self.children[v])

    def _build_twin_classes(self) -> None:
        constrained = [
            v for v in range(self.forest.n) if self.allowed[v] != self.full_mask
        ]
        table: dict[tuple, int] = {}
        for w in range(self.host.n):
            key = (
                self.host_masks[w],
                tuple((self.allowed[v] >> w) & 1 for v in constrained),
            )
            self.class_id[w] = table.setdefault(key, len(table))

    def run(self, budget: Optional[Budget]) -> tuple[str, Optional[list[int]], int]:
        max_nodes = budget.max_nodes if budget else None
        deadline = None
        if budget and budget.time_ms is not None:
            if budget.time_ms <= 0:
                return ("time", None, 0)
            deadline = time.perf_counter() + budget.time_ms / 1000.0

        order = self.order
        parent = self.parent
        allowed = self.allowed
        masks = self.host_masks
        deg_mask = self.deg_mask
        tree_deg = self.tree_deg
        chain_prev = self.chain_prev
        child_count = self.child_count
        sib_rest = self.sib_rest
        cls = self.class_id
        rank = self.rank
        symmetry = self.symmetry
        n_t = self.forest.n
        images = [-1] * n_t
        used = 0
        nodes = 0

        def place(pos: int) -> bool:
            nonlocal used, nodes
            if pos == n_t:
                return True
            u = order[pos]
            cand = allowed[u] & ~used
            p = parent[u]
            if p >= 0:
                pmask = masks[images[p]]
                cand &= pmask
            else:
                pmask = 0
                cand &= self.cap_mask[u]
            cand &= deg_mask[tree_deg[u]]
            cp = chain_prev[u]
            if cp is not None:
                cand &= -(1 << (images[cp] + 1))
            if not cand:
                return False
            chosen = []
            if symmetry:
                seen_cls = set()
                m = cand
                while m:
                    low = m & -m
                    m ^= low
                    w = low.bit_length() - 1
                    c = cls[w]
                    if c not in seen_cls:
                        seen_cls.add(c)
                        chosen.append(w)
            else:
                m = cand
                while m:
                    low = m & -m
                    m ^= low
                    chosen.append(low.bit_length() - 1)
            if len(chosen) > 1:
                chosen.sort(key=rank.__getitem__)
            pend = child_count[u]
            rest = sib_rest[u]
            for w in chosen:
                nodes += 1
                if max_nodes is not None and nodes > max_nodes:
                    raise _LimitHit("node")
                if deadline is not None and nodes & 2047 == 0:
                    if time.perf_counter() > deadline:
                        raise _LimitHit("time")
                bit = 1 << w
                nxt = used | bit
                if pend and (masks[w] & ~nxt).bit_count() < pend:
                    continue
                if rest and (pmask & ~nxt).bit_count() < rest:
                    continue
                images[u] = w
                used = nxt
                if place(pos + 1):
                    return True
                used ^= bit
                images[u] = -1
            return False

        try:
            found = place(0)
        except _LimitHit as hit:
            return (hit.reason, None, nodes)
        return ("found", images, nodes) if found else ("exhausted", None, nodes)


def _host_component_sizes(host: SimpleGraph) -> list[int]:
    size = [0] * host.n
    seen = [False] * host.n
    for s in range(host.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        comp = [s]
        while queue:
            u = queue.popleft()
            for w in host.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        for v in comp:
            size[v] = len(comp)
    return size


def _allowed_masks(
    n_tree: int, n_host: int, constraints: Optional[EmbedConstraints]
) -> list[int]:
    full = (1 << n_host) - 1
    allowed = [full] * n_tree
    if constraints is None:
        return allowed
    for v, images in constraints.required_images.items():
        if not (0 <= v < n_tree):
            raise GraphError(f"constraint on vertex {v} outside the tree")
        mask = 0
        for w in images:
            if not (0 <= w < n_host):
                raise GraphError(f"constraint image {w} outside the host")
            mask |= 1 << w
        allowed[v] = mask
    return allowed


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _check_witness(tree_like: TreeLike, host: SimpleGraph, mapping: dict) -> None:
    issues = embedding_violations(tree_like, host, mapping)
    if issues:
        raise RuntimeError(f"solver bug: invalid witness: {issues[0]}")


def exact_embed(
    tree: TreeGraph,
    host: SimpleGraph,
    constraints: Optional[EmbedConstraints] = None,
    budget: Optional[Budget] = None,
    symmetry: bool = True,
) -> EmbedVerdict:
    """Complete backtracking search for the tree inside the host.

    Vertices are assigned in BFS order from the centroid separator, and
    candidates are tried by descending host degree with ties to the
    smaller id.  NotEmbedded is only returned once the search space is
    exhausted, so it is a proof; running out of budget yields Timeout.
    symmetry=False disables the interchangeability reductions (the
    verdicts agree; only the node counts differ).
    """
    t0 = time.perf_counter()
    g = tree.graph
    allowed = _allowed_masks(g.n, host.n, constraints)
    if g.n > host.n:
        return EmbedVerdict(
            Verdict.NOT_EMBEDDED, None, 0, _ms(t0),
            f"tree has {g.n} vertices, host only {host.n}",
        )
    if g.n == 1:
        host_degs = host.degrees
        cands = [w for w in range(host.n) if allowed[0] >> w & 1]
        cands.sort(key=lambda w: (-host_degs[w], w))
        if not cands:
            return EmbedVerdict(
                Verdict.NOT_EMBEDDED, None, 0, _ms(t0), "no admissible image"
            )
        mapping = {0: cands[0]}
        return EmbedVerdict(Verdict.EMBEDDED, mapping, 1, _ms(t0))
    root = find_separator(tree).separator
    solver = _Backtracker(g, (root,), host, allowed, symmetry)
    status, images, nodes = solver.run(budget)
    if status == "found":
        mapping = {v: images[v] for v in range(g.n)}
        _check_witness(tree, host, mapping)
        return EmbedVerdict(Verdict.EMBEDDED, mapping, nodes, _ms(t0))
    if status == "exhausted":
        return EmbedVerdict(
            Verdict.NOT_EMBEDDED, None, nodes, _ms(t0), "search space exhausted"
        )
    return EmbedVerdict(
        Verdict.TIMEOUT, None, nodes, _ms(t0), f"{status} budget exhausted"
    )


def greedy_min_degree_embed(tree: TreeGraph, host: SimpleGraph) -> EmbedVerdict:
    """Single pass greedy embedding.

    Walks the tree in BFS order from its root (vertex 0 when unrooted),
    sends the root to host vertex 0 and every child to the smallest unused
    neighbor of its parent's image.  When delta(host) >= k this cannot
    stall, because at most k host vertices are in use whenever a child
    needs a slot.  A stall is reported as Unknown.
    """
    t0 = time.perf_counter()
    g = tree.graph
    if host.n < g.n:
        return EmbedVerdict(Verdict.UNKNOWN, None, 0, _ms(t0), "host too small")
    root = tree.root if tree.root is not None else 0
    images = {root: 0}
    used = {0}
    order = [root]
    parent = {root: -1}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    for v in order[1:]:
        pimg = images[parent[v]]
        img = next((w for w in host.adj[pimg] if w not in used), None)
        if img is None:
            return EmbedVerdict(
                Verdict.UNKNOWN, None, len(images), _ms(t0),
                f"greedy stalled at tree vertex {v}",
            )
        images[v] = img
        used.add(img)
    _check_witness(tree, host, images)
    return EmbedVerdict(Verdict.EMBEDDED, images, len(images), _ms(t0))


def forest_embed_component(
    forest: RootedForest,
    comp: Component,
    targets: Optional[EmbedConstraints] = None,
    budget: Optional[Budget] = None,
    class0_side: int = 0,
) -> EmbedVerdict:
    """Embed a rooted forest into one bipartite host component, color class
    0 into the chosen side and class 1 into the other.

    Target sets (in original host ids) restrict where individual vertices,
    typically the roots, may land.  A color class larger than its side is
    refused outright with the pigeonhole certificate in the detail.  A
    greedy level pass runs first; on a stall the exact search takes over
    with the side restrictions as constraints, so a NotEmbedded here means
    no embedding with this side assignment exists.  Unknown only appears
    when the fallback runs out of budget.
    """
    t0 = time.perf_counter()
    if comp.bipartition is None:
        raise GraphError("target component must be bipartite")
    if class0_side not in (0, 1):
        raise GraphError("class0_side must be 0 or 1")
    sides = (comp.bipartition.side0, comp.bipartition.side1)
    side_of_class = (sides[class0_side], sides[1 - class0_side])
    class0, class1 = forest.color_classes()
    for cls, side, label in ((class0, side_of_class[0], 0), (class1, side_of_class[1], 1)):
        if len(cls) > len(side):
            return EmbedVerdict(
                Verdict.NOT_EMBEDDED, None, 0, _ms(t0),
                f"capacity certificate: color class {label} has {len(cls)} "
                f"vertices, its side only {len(side)}",
            )
    to_new = comp.index_map
    to_old = {i: v for v, i in to_new.items()}
    g = forest.graph
    n_host = comp.induced.n
    side_mask = [0, 0]
    for idx in (0, 1):
        for v in side_of_class[idx]:
            side_mask[idx] |= 1 << to_new[v]
    in_class0 = set(class0)
    allowed = [side_mask[0 if v in in_class0 else 1] for v in range(g.n)]
    if targets is not None:
        for v, images in targets.required_images.items():
            if not (0 <= v < g.n):
                raise GraphError(f"target on vertex {v} outside the forest")
            mask = 0
            for w in images:
                if w in to_new:
                    mask |= 1 << to_new[w]
            allowed[v] &= mask
            if allowed[v] == 0:
                return EmbedVerdict(
                    Verdict.NOT_EMBEDDED, None, 0, _ms(t0),
                    f"target set of vertex {v} misses its side of the component",
                )

    greedy = _greedy_forest_pass(forest, comp.induced, allowed)
    if greedy is not None:
        mapping = {v: to_old[w] for v, w in greedy.items()}
        return EmbedVerdict(Verdict.EMBEDDED, mapping, len(mapping), _ms(t0))

    solver = _Backtracker(g, forest.roots, comp.induced, allowed, symmetry=True)
    status, images, nodes = solver.run(budget)
    if status == "found":
        inner = {v: images[v] for v in range(g.n)}
        _check_witness(forest, comp.induced, inner)
        mapping = {v: to_old[w] for v, w in inner.items()}
        return EmbedVerdict(Verdict.EMBEDDED, mapping, nodes, _ms(t0))
    if status == "exhausted":
        return EmbedVerdict(
            Verdict.NOT_EMBEDDED, None, nodes, _ms(t0),
            f"no embedding with color class 0 in side {class0_side}",
        )
    return EmbedVerdict(
        Verdict.UNKNOWN, None, nodes, _ms(t0),
        f"fallback {status} budget exhausted",
    )


def _greedy_forest_pass(
    forest: RootedForest, host: SimpleGraph, allowed: Sequence[int]
) -> Optional[dict[int, int]]:
    """Level order greedy into smallest admissible images; None on stall."""
    g = forest.graph
    images: dict[int, int] = {}
    used = 0
    order = []
    parent = {}
    queue = deque()
    for r in forest.roots:
        parent[r] = -1
        order.append(r)
        queue.append(r)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    host_masks = host.adjacency_masks
    for v in order:
        cand = allowed[v] & ~used
        if parent[v] >= 0:
            cand &= host_masks[images[parent[v]]]
        if not cand:
            return None
        w = (cand & -cand).bit_length() - 1
        images[v] = w
        used |= 1 << w
    return images


def strategy_embed(
    tree: TreeGraph,
    host: SimpleGraph,
    k: Optional[int] = None,
    theta: RationalLike = Fraction(1, 10),
    budget: Optional[Budget] = None,
) -> EmbedVerdict:
    """Heuristic that mirrors the two-component degree-condition strategy.

    Let x be the max degree host vertex and alpha the clamped lower end of
    the feasible interval [1 - Delta/(2k), 2 delta/k - 1]; an empty
    interval skips the pipeline.  The tree splits at its centroid z with
    V0 the class at positive even distance from z.  Routing:

      * |V0| < (1+alpha)k/2: two-way partition of the pieces; the heavy
        group goes into the primary bipartite component of G - x with the
        roots on neighbors of x in its larger side, the light group
        greedily into the secondary component, z onto x itself.
      * otherwise, all pieces light (V0 weight <= alpha k): capped greedy
        family into the primary component, the remainder greedy into the
        secondary, z again onto x.
      * otherwise one heavy piece F*: everything but F* goes into the
        primary component with the color roles reversed and z on a
        neighbor of x there, while F* hangs its root on x and continues
        greedily into the secondary component.

    Any stall, capacity refusal, or missing structure answers Unknown;
    this routine never reports NotEmbedded.
    """
    t0 = time.perf_counter()
    g = tree.graph
    if k is not None and k != g.m:
        raise GraphError(f"k={k} does not match the tree's {g.m} edges")
    k = g.m

    def unknown(msg: str, nodes: int = 0) -> EmbedVerdict:
        return EmbedVerdict(Verdict.UNKNOWN, None, nodes, _ms(t0), msg)

    if host.n == 0:
        return unknown("empty host")
    if k == 0:
        mapping = {0: 0}
        return EmbedVerdict(Verdict.EMBEDDED, mapping, 1, _ms(t0))
    if g.n > host.n:
        return unknown("tree has more vertices than the host")
    if k == 1:
        # one edge cannot split across two components
        return _greedy_fallback(tree, host, t0, "single edge tree")

    stats = degree_stats(host)
    alpha_lo = 1 - Fraction(stats.max_degree, 2 * k)
    alpha_hi = Fraction(2 * stats.min_degree, k) - 1
    if alpha_lo > alpha_hi:
        return unknown(f"infeasible degree interval [{alpha_lo}, {alpha_hi}]")
    alpha = max(Fraction(0), alpha_lo)
    x = stats.argmax

    report = classify_apex_structure(host, x, k, theta)
    ranked = sorted(
        report.seen_indices,
        key=lambda i: (-report.facts[i].x_degree, report.facts[i].component.vertices[0]),
    )
    primary = next(
        (
            i
            for i in ranked
            if report.facts[i].bipartite and report.facts[i].x_degree_smaller == 0
            and report.facts[i].x_degree > 0
        ),
        None,
    )
    secondary = next((i for i in ranked if i != primary), None)
    if primary is None or secondary is None:
        return _greedy_fallback(tree, host, t0, "no two-component structure")
    c1 = report.facts[primary].component
    c2 = report.facts[secondary].component
    larger = report.facts[primary].larger_side
    x_nbrs = host.neighbor_sets[x]
    anchor_a = sorted(v for v in larger if v in x_nbrs)
    anchor_c2 = sorted(v for v in c2.vertices if v in x_nbrs)
    if not anchor_a or not anchor_c2:
        return _greedy_fallback(tree, host, t0, "apex misses an anchor side")

    sep = find_separator(tree)
    z = sep.separator
    dist = distance_bfs(g, z)
    pieces = sep.components
    piece_roots = []
    for piece in pieces:
        roots = [v for v in piece if dist[v] == 1]
        if len(roots) != 1:
            raise RuntimeError("strategy bug: piece without a unique root")
        piece_roots.append(roots[0])
    v0 = set(even_distance_set(tree, z))
    sizes = [len(p) for p in pieces]

    if Fraction(len(v0)) < (1 + alpha) * Fraction(k, 2):
        split = partition_two(sizes, k)
        into_primary, into_secondary = split.heavy, split.light
        star_piece = None
    else:
        weights = [len(set(p) & v0) for p in pieces]
        if all(Fraction(w) <= alpha * k for w in weights):
            into_primary, into_secondary = split_family_by_cap(weights, k, alpha)
            star_piece = None
        else:
            star_piece = max(range(len(pieces)), key=lambda i: (weights[i], -i))
            into_primary = tuple(i for i in range(len(pieces)) if i != star_piece)
            into_secondary = ()

    images: dict[int, int] = {}
    used: set[int] = {x}
    nodes = 0

    if star_piece is None:
        images[z] = x
        forest_vertices = [pieces[i] for i in into_primary]
        forest_roots = [piece_roots[i] for i in into_primary]
        root_targets = {r: anchor_a for r in forest_roots}
        verdict = _embed_pieces_into(
            g, forest_vertices, forest_roots, c1, larger, root_targets, budget
        )
        if verdict.kind is not Verdict.EMBEDDED:
            return unknown(f"primary component: {verdict.detail}", verdict.nodes_explored)
        nodes += verdict.nodes_explored
        images.update(verdict.embedding)
        used.update(verdict.embedding.values())
        stalled = _greedy_pieces_into(
            g, [pieces[i] for i in into_secondary],
            [piece_roots[i] for i in into_secondary],
            host, set(c2.vertices), anchor_c2, used, images,
        )
        if stalled is not None:
            return unknown(f"secondary component stalled at tree vertex {stalled}")
    else:
        rest_vertices = [(z,)] + [pieces[i] for i in range(len(pieces)) if i != star_piece]
        rest_union = sorted(v for piece in rest_vertices for v in piece)
        verdict = _embed_pieces_into(
            g, [tuple(rest_union)], [z], c1, larger, {z: anchor_a}, budget
        )
        if verdict.kind is not Verdict.EMBEDDED:
            return unknown(f"primary component: {verdict.detail}", verdict.nodes_explored)
        nodes += verdict.nodes_explored
        images.update(verdict.embedding)
        used.update(verdict.embedding.values())
        star_root = piece_roots[star_piece]
        images[star_root] = x
        stalled = _greedy_star_piece(
            g, pieces[star_piece], star_root, host, set(c2.vertices),
            anchor_c2, used, images,
        )
        if stalled is not None:
            return unknown(f"heavy piece stalled at tree vertex {stalled}")

    issues = embedding_violations(tree, host, images)
    if issues:
        raise RuntimeError(f"strategy bug: invalid embedding: {issues[0]}")
    return EmbedVerdict(Verdict.EMBEDDED, images, nodes + len(images), _ms(t0))


def _greedy_fallback(
    tree: TreeGraph, host: SimpleGraph, t0: float, reason: str
) -> EmbedVerdict:
    verdict = greedy_min_degree_embed(tree, host)
    if verdict.kind is Verdict.EMBEDDED:
        verdict.detail = f"{reason}; greedy fallback succeeded"
        return verdict
    return EmbedVerdict(
        Verdict.UNKNOWN, None, verdict.nodes_explored, _ms(t0),
        f"{reason}; greedy fallback failed",
    )


def _embed_pieces_into(
    tree_graph: SimpleGraph,
    piece_vertex_sets: Sequence[tuple[int, ...]],
    piece_roots: Sequence[int],
    comp: Component,
    larger_side: tuple[int, ...],
    root_targets: Mapping[int, Sequence[int]],
    budget: Optional[Budget],
) -> EmbedVerdict:
    """Forest of tree pieces into one bipartite component, roots (class 0)
    into the larger side.  Images come back in tree/host original ids."""
    all_vertices = sorted(v for piece in piece_vertex_sets for v in piece)
    if not all_vertices:
        return EmbedVerdict(Verdict.EMBEDDED, {}, 0, 0.0)
    sub, old_to_new = induced_subgraph(tree_graph, all_vertices)
    forest = RootedForest(sub, tuple(old_to_new[r] for r in piece_roots))
    targets = EmbedConstraints(
        {old_to_new[r]: frozenset(imgs) for r, imgs in root_targets.items()}
    )
    class0_side = 0 if larger_side == comp.bipartition.side0 else 1
    verdict = forest_embed_component(forest, comp, targets, budget, class0_side)
    if verdict.kind is Verdict.EMBEDDED:
        new_to_old = {i: v for v, i in old_to_new.items()}
        verdict.embedding = {new_to_old[v]: w for v, w in verdict.embedding.items()}
    return verdict


def _greedy_pieces_into(
    tree_graph: SimpleGraph,
    piece_vertex_sets: Sequence[tuple[int, ...]],
    piece_roots: Sequence[int],
    host: SimpleGraph,
    region: set[int],
    root_candidates: Sequence[int],
    used: set[int],
    images: dict[int, int],
) -> Optional[int]:
    """Greedy level order embedding of pieces into a host region.

    Roots take the smallest unused root candidate; children the smallest
    unused neighbor of the parent's image inside the region.  Returns the
    stalled tree vertex or None.
    """
    for piece, root in zip(piece_vertex_sets, piece_roots):
        img = next((w for w in root_candidates if w not in used), None)
        if img is None:
            return root
        images[root] = img
        used.add(img)
        stalled = _greedy_grow(tree_graph, set(piece), root, host, region, used, images)
        if stalled is not None:
            return stalled
    return None


def _greedy_star_piece(
    tree_graph: SimpleGraph,
    piece: tuple[int, ...],
    root: int,
    host: SimpleGraph,
    region: set[int],
    root_child_candidates: Sequence[int],
    used: set[int],
    images: dict[int, int],
) -> Optional[int]:
    """Grow the piece whose root already sits on the apex: the root's
    children take unused apex neighbors in the region, the rest is greedy."""
    for child in tree_graph.adj[root]:
        if child not in piece or child in images:
            continue
        img = next((w for w in root_child_candidates if w not in used), None)
        if img is None:
            return child
        images[child] = img
        used.add(img)
        stalled = _greedy_grow(
            tree_graph, set(piece), child, host, region, used, images
        )
        if stalled is not None:
            return stalled
    return None


def _greedy_grow(
    tree_graph: SimpleGraph,
    piece: set[int],
    start: int,
    host: SimpleGraph,
    region: set[int],
    used: set[int],
    images: dict[int, int],
) -> Optional[int]:
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in tree_graph.adj[u]:
            if w not in piece or w in images:
                continue
            img = next(
                (h for h in host.adj[images[u]] if h in region and h not in used),
                None,
            )
            if img is None:
                return w
            images[w] = img
            used.add(img)
            queue.append(w)
    return None


def auto_embed(
    tree: TreeGraph, host: SimpleGraph, budget: Optional[Budget] = None
) -> EmbedVerdict:
    """Greedy, then the strategy pipeline, then the exact oracle.

    The first Embedded answer wins; otherwise the oracle's verdict stands,
    and since the oracle never answers Unknown the effective precedence is
    Embedded, then NotEmbedded, then Timeout, then Unknown.
    """
    t0 = time.perf_counter()
    quick = greedy_min_degree_embed(tree, host)
    if quick.kind is Verdict.EMBEDDED:
        return quick
    shaped = strategy_embed(tree, host, budget=budget)
    if shaped.kind is Verdict.EMBEDDED:
        return shaped
    remaining = budget
    if budget is not None and budget.time_ms is not None:
        left = budget.time_ms - _ms(t0)
        remaining = Budget(max_nodes=budget.max_nodes, time_ms=max(left, 0.0))
    return exact_embed(tree, host, budget=remaining)
