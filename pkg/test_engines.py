import random
import time

import pytest

from bipoly import ONE, X, Y, BiPoly, evaluate, geometric_x
from engines import (
    DeletionContraction,
    DisconnectedGraphError,
    canonical_certificate,
    spanning_tree_count,
    spanning_trees,
    tree_activities,
    tutte_activities,
    tutte_deletion_contraction,
    tutte_polynomial,
    tutte_subset_expansion,
)
from structures import (
    Multigraph,
    RankedSet,
    RankedSetValidationError,
    complete_graph,
    cycle_graph,
    graphic_rank,
    ranked_set_of_graph,
    theta_graph,
    uniform_matroid,
)

K3 = X ** 2 + X + Y
K4 = BiPoly({(3, 0): 1, (2, 0): 3, (1, 0): 2, (1, 1): 4, (0, 1): 2, (0, 2): 3, (0, 3): 1})


def shuffled(g: Multigraph, seed: int) -> Multigraph:
    rng = random.Random(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    rng.shuffle(edges)
    return Multigraph(g.n, tuple(edges))


class TestSubsetExpansion:
    def test_single_edge_and_loop(self):
        assert tutte_subset_expansion(uniform_matroid(1, 1)) == X
        assert tutte_subset_expansion(uniform_matroid(0, 1)) == Y

    def test_empty_ground_set(self):
        assert tutte_subset_expansion(RankedSet(0, 0, (0,))) == ONE

    def test_uniform_one_two(self):
        assert tutte_subset_expansion(uniform_matroid(1, 2)) == X + Y

    def test_non_matroidal_table(self):
        # (x-1) + (x-1)(y-1) + 1 + (y-1)
        assert tutte_subset_expansion(RankedSet(2, 1, (0, 0, 1, 1))) == X * Y

    def test_invalid_table_rejected(self):
        with pytest.raises(RankedSetValidationError):
            tutte_subset_expansion(RankedSet(1, 1, (0, 2)))

    def test_graph_examples(self, triangle, k4):
        assert tutte_subset_expansion(ranked_set_of_graph(triangle)) == K3
        assert tutte_subset_expansion(ranked_set_of_graph(k4)) == K4


class TestCertificates:
    def test_invariant_under_relabeling(self, quick_corpus):
        for idx, g in enumerate(quick_corpus):
            assert canonical_certificate(g) == canonical_certificate(shuffled(g, idx))

    def test_distinguishes_non_isomorphic(self, triangle, path3):
        assert canonical_certificate(triangle) != canonical_certificate(path3)
        star = Multigraph(4, ((0, 1), (0, 2), (0, 3)))
        path = Multigraph(4, ((0, 1), (1, 2), (2, 3)))
        assert canonical_certificate(star) != canonical_certificate(path)

    def test_multiplicity_and_loops_matter(self, k2, parallel_pair):
        looped = Multigraph(2, ((0, 1), (1, 1)))
        certificates = {canonical_certificate(g) for g in (k2, parallel_pair, looped)}
        assert len(certificates) == 3

    def test_regular_graph_individualization(self):
        # C6 and two disjoint triangles share the colour refinement
        c6 = cycle_graph(6)
        two_triangles = Multigraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)))
        assert canonical_certificate(c6) != canonical_certificate(two_triangles)

    def test_format(self, k2):
        assert canonical_certificate(k2) == b'2:0-1'

    def test_symmetric_graphs_resolve_quickly(self):
        start = time.perf_counter()
        assert canonical_certificate(Multigraph(12)) == b'12:'
        k9 = canonical_certificate(complete_graph(9))
        assert time.perf_counter() - start < 2
        assert k9 == canonical_certificate(shuffled(complete_graph(9), 3))
        assert k9.count(b'-') == 36
        assert canonical_certificate(Multigraph(3)) == b'3:'


class TestDeletionContraction:
    def test_examples(self, k2, single_loop, triangle, parallel_pair, path3, k4):
        assert tutte_deletion_contraction(k2) == X
        assert tutte_deletion_contraction(single_loop) == Y
        assert tutte_deletion_contraction(triangle) == K3
        assert tutte_deletion_contraction(parallel_pair) == X + Y
        assert tutte_deletion_contraction(path3) == X ** 2
        assert tutte_deletion_contraction(k4) == K4

    def test_edgeless_graph(self):
        assert tutte_deletion_contraction(Multigraph(3)) == ONE
        assert tutte_deletion_contraction(Multigraph(0)) == ONE

    def test_disconnected_graph_multiplies(self, triangle):
        two = Multigraph(5, triangle.edges + ((3, 4),))
        assert tutte_deletion_contraction(two) == K3 * X

    def test_cycles_and_theta(self):
        for n in range(1, 8):
            expected = sum((X ** i for i in range(1, n)), Y)
            assert tutte_deletion_contraction(cycle_graph(n)) == expected
        g = theta_graph(1, 2, 3)
        assert tutte_deletion_contraction(g) == tutte_subset_expansion(ranked_set_of_graph(g))

    @pytest.mark.parametrize('pivot_rule', ['max-multiplicity', 'first-edge'])
    def test_long_path(self, pivot_rule):
        path = Multigraph(2000, tuple((v, v + 1) for v in range(1999)))
        assert tutte_deletion_contraction(path, pivot_rule) == X ** 1999

    def test_long_cycle(self):
        assert tutte_deletion_contraction(cycle_graph(1000)) == X * geometric_x(999) + Y

    def test_long_theta_counts(self):
        a, b, c = 30, 40, 50
        t = tutte_deletion_contraction(theta_graph(a, b, c))
        assert evaluate(t, 1, 1) == a * b + b * c + c * a
        assert evaluate(t, 1, 2) == (a + 1) * (b + 1) * (c + 1) - a * b * c
        assert evaluate(t, 2, 1) == 2 ** (a + b + c) - 2 ** a - 2 ** b - 2 ** c + 2
        assert evaluate(t, 2, 2) == 2 ** (a + b + c)

    def test_series_paths_beside_parallel_classes(self):
        for g in (theta_graph(2, 3, 4), theta_graph(1, 1, 4), theta_graph(1, 4, 4)):
            assert tutte_deletion_contraction(g) == tutte_subset_expansion(ranked_set_of_graph(g)), g
        # a 4-edge path hung between the poles of a triple edge, with a loop on an inner vertex
        g = Multigraph(5, ((0, 1), (0, 1), (0, 1), (0, 2), (2, 3), (3, 4), (4, 1), (3, 3)))
        assert tutte_deletion_contraction(g) == tutte_subset_expansion(ranked_set_of_graph(g))

    @pytest.mark.parametrize('pivot_rule', ['max-multiplicity', 'first-edge'])
    @pytest.mark.parametrize('use_cache', [True, False])
    def test_pivot_rules_and_cache_agree(self, quick_corpus, pivot_rule, use_cache):
        for g in quick_corpus:
            expected = tutte_subset_expansion(ranked_set_of_graph(g))
            assert tutte_deletion_contraction(g, pivot_rule, use_cache) == expected

    def test_cache_is_hit_and_reset(self, k4):
        engine = DeletionContraction('first-edge', use_cache=True)
        engine.compute(k4)
        assert engine.stats['cache_hits'] > 0
        engine.compute(Multigraph(2, ((0, 1),)))
        assert engine.stats['cache_hits'] == 0

    def test_unknown_pivot_rule(self):
        with pytest.raises(ValueError, match='unknown pivot rule'):
            DeletionContraction('random')

    def test_edge_order_does_not_matter(self, quick_corpus):
        for idx, g in enumerate(quick_corpus):
            assert tutte_deletion_contraction(shuffled(g, idx)) == tutte_deletion_contraction(g)


class TestActivities:
    def test_triangle_table(self, triangle):
        table = tutte_activities(triangle)
        assert table.counts == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
        assert table.total == 3
        assert table.to_bipoly() == K3

    def test_loop_is_externally_active(self, single_loop):
        assert tutte_activities(single_loop).to_bipoly() == Y

    def test_spanning_trees_of_k4(self, k4):
        trees = list(spanning_trees(k4))
        assert len(trees) == 16
        assert all(len(tree) == 3 for tree in trees)

    def test_tree_activities_first_edge_rule(self, parallel_pair):
        # tree {0}: edge 0 is internally active, edge 1 is not externally active
        assert tree_activities(parallel_pair, frozenset({0})) == (1, 0)
        assert tree_activities(parallel_pair, frozenset({1})) == (0, 1)

    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedGraphError):
            tutte_activities(Multigraph(3, ((0, 1),)))

    def test_order_independence(self, quick_corpus):
        for idx, g in enumerate(quick_corpus[:40]):
            assert tutte_activities(shuffled(g, idx)).to_bipoly() == tutte_activities(g).to_bipoly()


class TestOracles:
    def test_three_engines_agree(self, quick_corpus):
        for g in quick_corpus:
            subset = tutte_polynomial(g, 'subset')
            assert tutte_polynomial(g, 'delcon') == subset
            assert tutte_polynomial(g, 'activities') == subset

    def test_coefficients_nonnegative_and_bounded_by_rank(self, quick_corpus):
        for g in quick_corpus:
            t = tutte_polynomial(g)
            r = graphic_rank(g)
            for (i, j), c in t.items():
                assert c > 0
                assert i <= r
                assert j <= g.m - r

    def test_tutte_at_one_one_counts_spanning_trees(self, quick_corpus):
        for g in quick_corpus:
            assert evaluate(tutte_polynomial(g), 1, 1) == spanning_tree_count(g)

    def test_tutte_at_two_two_counts_subsets(self, quick_corpus):
        for g in quick_corpus:
            assert evaluate(tutte_polynomial(g), 2, 2) == 2 ** g.m

    def test_matrix_tree_examples(self, k4, parallel_pair, single_loop):
        assert spanning_tree_count(k4) == 16
        assert spanning_tree_count(parallel_pair) == 2
        assert spanning_tree_count(single_loop) == 1
        assert spanning_tree_count(Multigraph(4, ((0, 1), (0, 1), (2, 3)))) == 2


class TestDispatch:
    def test_rank_table_defaults_to_subset(self):
        assert tutte_polynomial(uniform_matroid(1, 2)) == X + Y

    def test_rank_table_rejects_graph_engines(self):
        with pytest.raises(ValueError, match='needs a graph input'):
            tutte_polynomial(uniform_matroid(1, 2), 'delcon')

    def test_unknown_engine(self, k2):
        with pytest.raises(ValueError, match='unknown engine'):
            tutte_polynomial(k2, 'magic')
