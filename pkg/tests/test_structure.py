"""Apex classification and the counting certificate."""

from fractions import Fraction

import pytest

from treembed.families import (
    ExtremalParams,
    cliques_with_apex,
    two_wing_host,
)
from treembed.graphs import GraphError, build_graph
from treembed.structure import (
    classify_apex_structure,
    is_small,
    theta_sees,
    verify_broom_obstruction,
)


def sweep_params():
    return [
        ExtremalParams(ell, c, c * ell * (ell + 1))
        for ell in (3, 5, 7)
        for c in (1, 2, 3)
    ]


class TestThetaSees:
    def test_exact_threshold_counts(self):
        g = build_graph(5, [(0, 1), (0, 2)])
        # 2 neighbors among 4 vertices: exactly 1/2
        assert theta_sees(g, 0, [1, 2, 3, 4], Fraction(1, 2))
        assert not theta_sees(g, 0, [1, 2, 3, 4], Fraction(51, 100))

    def test_float_threshold_is_exact(self):
        g = build_graph(11, [(0, v) for v in range(1, 4)])
        # 3 of 10 is exactly 0.3, so seeing holds at theta = 0.3
        assert theta_sees(g, 0, range(1, 11), 0.3)

    def test_empty_set_seen(self):
        g = build_graph(2, [(0, 1)])
        assert theta_sees(g, 0, [], Fraction(9, 10))

    def test_x_inside_rejected(self):
        g = build_graph(3, [(0, 1)])
        with pytest.raises(GraphError):
            theta_sees(g, 0, [0, 1], Fraction(1, 2))


class TestIsSmall:
    def test_non_bipartite_uses_order(self):
        from treembed.graphs import components

        triangle = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        comp = components(triangle)[0]
        assert is_small(comp, 3, Fraction(1, 10))       # 3 < 3.3
        assert not is_small(comp, 2, Fraction(1, 10))   # 3 < 2.2 fails

    def test_bipartite_uses_larger_side(self):
        from treembed.graphs import components

        star = build_graph(6, [(0, v) for v in range(1, 6)])
        comp = components(star)[0]
        # order 6 but larger side 5, so smallness is judged at 5
        assert is_small(comp, 4, Fraction(3, 10))       # 5 < 5.2
        assert not is_small(comp, 4, Fraction(1, 4))    # 5 < 5 fails


class TestClassifyApexStructure:
    def test_two_wing_shape(self):
        params = ExtremalParams(3, 1, 12)
        tagged = two_wing_host(params)
        report = classify_apex_structure(tagged.graph, 0, 12, Fraction(1, 10))
        assert len(report.facts) == 2
        assert report.seen_indices == (0, 1)
        assert report.all_components_small
        assert report.exactly_two_seen
        assert report.secondary_shape
        hub_neighbors = set(tagged.graph.adj[0])
        larger_union = set(report.facts[0].larger_side) | set(
            report.facts[1].larger_side
        )
        assert hub_neighbors == larger_union
        for fact in report.facts:
            assert fact.x_degree_smaller == 0

    def test_two_wing_shape_across_sweep(self):
        for params in sweep_params():
            tagged = two_wing_host(params)
            report = classify_apex_structure(
                tagged.graph, 0, params.k, Fraction(1, 10)
            )
            assert len(report.facts) == 2
            assert report.all_components_small
            assert report.exactly_two_seen
            assert report.secondary_shape
            for fact in report.facts:
                assert fact.bipartite
                assert fact.x_degree == len(fact.larger_side) > 0
                assert fact.x_degree_smaller == 0

    def test_wing_not_two_thirds_large_at_smallest_case(self):
        # |A| = 6 < 1.1 * 8, so the primary-shape condition fails at (3,1,12)
        tagged = two_wing_host(ExtremalParams(3, 1, 12))
        report = classify_apex_structure(tagged.graph, 0, 12, Fraction(1, 10))
        assert not report.primary_shape
        assert not report.special_shaped

    def test_cliques_apex_sees_three(self):
        tagged = cliques_with_apex(5, 3)
        report = classify_apex_structure(tagged.graph, 0, 12, Fraction(1, 10))
        assert len(report.seen_indices) == 3
        assert not report.exactly_two_seen
        assert all(not f.bipartite for f in report.facts)

    def test_primary_ranked_by_x_degree(self):
        # apex joined fully to one K_2 and partially to one K_3
        g = build_graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (4, 5), (3, 5)])
        report = classify_apex_structure(g, 0, 4, Fraction(1, 10))
        assert report.primary is not None
        assert report.facts[report.primary].x_degree == 2

    def test_apex_out_of_range(self):
        g = build_graph(2, [(0, 1)])
        with pytest.raises(GraphError):
            classify_apex_structure(g, 5, 3, Fraction(1, 10))


class TestBroomObstruction:
    def test_frozen_example(self):
        cert = verify_broom_obstruction(3, 1, 12)
        assert cert.leaf_demand == 6
        assert cert.b_capacity == 5
        assert cert.center_demand == 7
        assert cert.a_capacity == 6
        assert cert.holds

    def test_holds_across_sweep(self):
        for params in sweep_params():
            cert = verify_broom_obstruction(params.ell, params.c, params.k)
            assert cert.holds
            assert cert.leaf_demand > cert.b_capacity
            assert cert.center_demand > cert.a_capacity

    def test_consistent_with_generated_sizes(self):
        for params in sweep_params():
            tagged = two_wing_host(params)
            cert = verify_broom_obstruction(params.ell, params.c, params.k)
            assert cert.b_capacity == len(tagged.parts["B1"])
            assert cert.a_capacity == len(tagged.parts["A1"])

    def test_invalid_params_propagate(self):
        with pytest.raises(GraphError):
            verify_broom_obstruction(4, 1, 20)
