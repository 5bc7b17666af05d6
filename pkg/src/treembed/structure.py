"""Structural analysis of hosts around a high degree apex.

The classifier checks whether deleting an apex x leaves the very specific
shape the blocker families realize: exactly two components that x sees
with at least a theta fraction of their vertices, every component small
relative to k, the primary component bipartite with x confined to its
larger side, and the secondary component either near-bipartite-shaped or
small.  All threshold comparisons use exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .families import ExtremalParams
from .graphs import (
    Component,
    GraphError,
    SimpleGraph,
    components,
    induced_subgraph,
)
from .rational import RationalLike, as_fraction


def theta_sees(g: SimpleGraph, x: int, vertices: Iterable[int], theta: RationalLike) -> bool:
    """True when x has at least theta * |U| neighbors inside U.

    The comparison is exact: deg(x, U) is an integer and theta * |U| a
    Fraction, so no float rounding can flip a boundary case.
    """
    th = as_fraction(theta)
    if not (0 <= x < g.n):
        raise GraphError(f"apex {x} out of range for n={g.n}")
    u = set(vertices)
    if x in u:
        raise GraphError("the seen set must not contain the apex itself")
    for v in u:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    into = sum(1 for v in u if g.has_edge(x, v))
    return Fraction(into) >= th * len(u)


def is_small(comp: Component, k: int, theta: RationalLike) -> bool:
    """(k, theta)-smallness of a component.

    A non-bipartite component is small when its order is below (1+theta)k;
    a bipartite one when its larger side is.
    """
    if k < 1:
        raise GraphError(f"k must be positive, got {k}")
    return _order_for_smallness(comp) < (1 + as_fraction(theta)) * k


def _order_for_smallness(comp: Component) -> int:
    if comp.bipartition is None:
        return comp.order
    return len(comp.bipartition.larger())


@dataclass(frozen=True)
class ComponentFacts:
    """Everything the classifier needs to know about one component of G - x."""

    component: Component
    order: int
    bipartite: bool
    larger_side: tuple[int, ...]
    smaller_side: tuple[int, ...]
    x_degree: int
    x_degree_larger: int
    x_degree_smaller: int
    seen: bool
    small_at_k: bool
    small_at_two_thirds_k: bool


@dataclass(frozen=True)
class StructureReport:
    """Outcome of classify_apex_structure.

    primary/secondary index the two seen components, ranked by total
    x-degree and then by smallest vertex id.  special_shaped is the
    conjunction of the four conditions.
    """

    x: int
    k: int
    theta: Fraction
    facts: tuple[ComponentFacts, ...]
    seen_indices: tuple[int, ...]
    primary: Optional[int]
    secondary: Optional[int]
    all_components_small: bool
    exactly_two_seen: bool
    primary_shape: bool
    secondary_shape: bool
    special_shaped: bool


def classify_apex_structure(
    g: SimpleGraph, x: int, k: int, theta: RationalLike
) -> StructureReport:
    """Classify the components of G - x against the blocker shape.

    The four conditions:
      1. every component of G - x is (k, theta)-small;
      2. x theta-sees exactly two components and sends no edge anywhere else;
      3. the primary seen component is bipartite, (2k/3, theta)-large, and
         x touches only its larger side;
      4. the secondary seen component is (2k/3, theta)-small when it is not
         bipartite, and x touches only one of its sides when it is.

    Side ties inside a bipartite component go to the side holding the
    smallest vertex.  Primary/secondary ties between equally seen
    components go to larger x-degree, then to the smaller least vertex.
    """
    th = as_fraction(theta)
    if not (0 <= x < g.n):
        raise GraphError(f"apex {x} out of range for n={g.n}")
    if g.n < 2:
        raise GraphError("classification needs at least one non-apex vertex")
    if k < 1:
        raise GraphError(f"k must be positive, got {k}")
    rest, old_to_new = induced_subgraph(g, (v for v in range(g.n) if v != x))
    new_to_old = {i: v for v, i in old_to_new.items()}
    facts = []
    for comp in components(rest):
        facts.append(_component_facts(g, x, k, th, comp, new_to_old))
    seen_indices = tuple(i for i, f in enumerate(facts) if f.seen)
    unseen_untouched = all(
        f.x_degree == 0 for i, f in enumerate(facts) if i not in seen_indices
    )
    ranked = sorted(
        seen_indices, key=lambda i: (-facts[i].x_degree, facts[i].component.vertices[0])
    )
    primary = ranked[0] if len(ranked) >= 1 else None
    secondary = ranked[1] if len(ranked) >= 2 else None
    all_small = all(f.small_at_k for f in facts)
    two_seen = len(seen_indices) == 2 and unseen_untouched
    primary_shape = False
    secondary_shape = False
    if primary is not None and secondary is not None:
        pf = facts[primary]
        primary_shape = (
            pf.bipartite
            and not pf.small_at_two_thirds_k
            and pf.x_degree_smaller == 0
        )
        sf = facts[secondary]
        if sf.bipartite:
            secondary_shape = sf.x_degree_smaller == 0 or sf.x_degree_larger == 0
        else:
            secondary_shape = sf.small_at_two_thirds_k
    special = all_small and two_seen and primary_shape and secondary_shape
    return StructureReport(
        x=x,
        k=k,
        theta=th,
        facts=tuple(facts),
        seen_indices=seen_indices,
        primary=primary,
        secondary=secondary,
        all_components_small=all_small,
        exactly_two_seen=two_seen,
        primary_shape=primary_shape,
        secondary_shape=secondary_shape,
        special_shaped=special,
    )


def _component_facts(
    g: SimpleGraph,
    x: int,
    k: int,
    theta: Fraction,
    comp: Component,
    new_to_old: dict[int, int],
) -> ComponentFacts:
    verts = tuple(sorted(new_to_old[v] for v in comp.vertices))
    sub, index_map = induced_subgraph(g, verts)
    translated = Component(
        verts,
        sub,
        index_map,
        _translate_bipartition(comp, new_to_old),
    )
    xs = g.neighbor_sets[x]
    x_degree = sum(1 for v in verts if v in xs)
    if translated.bipartition is not None:
        larger = translated.bipartition.larger()
        smaller = translated.bipartition.smaller()
        x_larger = sum(1 for v in larger if v in xs)
        x_smaller = sum(1 for v in smaller if v in xs)
    else:
        larger = ()
        smaller = ()
        x_larger = 0
        x_smaller = 0
    two_thirds = Fraction(2 * k, 3)
    return ComponentFacts(
        component=translated,
        order=translated.order,
        bipartite=translated.bipartition is not None,
        larger_side=larger,
        smaller_side=smaller,
        x_degree=x_degree,
        x_degree_larger=x_larger,
        x_degree_smaller=x_smaller,
        seen=Fraction(x_degree) >= theta * translated.order,
        small_at_k=_order_for_smallness(translated) < (1 + theta) * k,
        small_at_two_thirds_k=_order_for_smallness(translated) < (1 + theta) * two_thirds,
    )


def _translate_bipartition(comp: Component, new_to_old: dict[int, int]):
    if comp.bipartition is None:
        return None
    from .graphs import Bipartition

    side0 = tuple(sorted(new_to_old[v] for v in comp.bipartition.side0))
    side1 = tuple(sorted(new_to_old[v] for v in comp.bipartition.side1))
    if side1 and (not side0 or min(side1) < min(side0)):
        side0, side1 = side1, side0
    return Bipartition(side0, side1)


@dataclass(frozen=True)
class BroomObstructionCertificate:
    """Two exact inequalities that together block the broom from the
    two-wing host.

    leaf_demand is (ell+1)/2 * (k/ell - 1), the non-center interior of any
    majority group of stars, which must exceed one B part; center_demand is
    (ell-1)(k/ell - 1) + 1, the occupancy forced into one A part when the
    handle sits on the hub or inside a wing, which must exceed |A|.
    """

    params: ExtremalParams
    leaf_demand: int
    b_capacity: int
    center_demand: int
    a_capacity: int
    holds: bool


def verify_broom_obstruction(ell: int, c: int, k: int) -> BroomObstructionCertificate:
    """Evaluate the counting certificate for the (ell, c, k) two-wing host.

    Integer arithmetic only: ell odd makes (ell+1)/2 exact and ell | k makes
    k/ell exact.  holds is True when both strict inequalities hold, which is
    the case for every valid parameter triple; the oracle cross-checks this
    on desk-scale instances.
    """
    params = ExtremalParams(ell, c, k)
    leaf_demand = (ell + 1) // 2 * (k // ell - 1)
    center_demand = (ell - 1) * (k // ell - 1) + 1
    holds = leaf_demand > params.wing_b_order and center_demand > params.wing_a_order
    return BroomObstructionCertificate(
        params=params,
        leaf_demand=leaf_demand,
        b_capacity=params.wing_b_order,
        center_demand=center_demand,
        a_capacity=params.wing_a_order,
        holds=holds,
    )
