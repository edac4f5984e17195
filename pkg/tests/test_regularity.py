import random

import pytest

from conftest import grid_extension, random_graph
from gridspectra.errors import (
    InvalidParameterError,
    PreconditionError,
    ResourceLimitError,
)
from gridspectra.graphs import (
    ExtensionParams,
    Graph,
    complement,
    complete_graph,
    grid_graph,
    local_graph,
)
from gridspectra.lines import find_lines
from gridspectra.regularity import (
    common_neighbors,
    hoffman_clique_check,
    local_valency_stats,
    max_coclique_order,
    regularity_profile,
)
from gridspectra.spectra import adjacency_matrix, mat_mul


class TestCommonNeighbors:
    def test_complete(self):
        g = complete_graph(4)
        assert common_neighbors(g, 0, 1) == 2

    def test_extension_nonadjacent_pairs(self):
        # mu = 2s for the genuine extension
        ext = grid_extension(2, 2)
        for x in range(ext.n):
            for y in range(x + 1, ext.n):
                if not ext.has_edge(x, y):
                    assert common_neighbors(ext, x, y) == 4

    def test_c4_opposite(self):
        c4 = grid_graph(2)
        x, y = next(
            (x, y) for x in range(4) for y in range(x + 1, 4) if not c4.has_edge(x, y)
        )
        assert common_neighbors(c4, x, y) == 2

    def test_same_vertex_rejected(self):
        with pytest.raises(InvalidParameterError):
            common_neighbors(complete_graph(3), 1, 1)

    def test_agrees_with_matrix_square(self):
        rng = random.Random(41)
        for _ in range(10):
            g = random_graph(rng, 8, 0.5)
            sq = mat_mul(adjacency_matrix(g), adjacency_matrix(g))
            for x in range(g.n):
                for y in range(g.n):
                    if x != y:
                        assert common_neighbors(g, x, y) == sq[x][y]


class TestRegularityProfile:
    def test_grid4(self):
        profile = regularity_profile(grid_graph(4))
        assert profile.srg_params == (16, 6, 2, 2)

    def test_extension_lambda_not_constant(self):
        profile = regularity_profile(grid_extension(2, 2))
        assert profile.k == 9
        assert profile.mu == 4
        assert profile.lam is None
        assert not profile.is_strongly_regular

    def test_path_has_no_valency(self):
        profile = regularity_profile(Graph.from_edges(3, [(0, 1), (1, 2)]))
        assert profile.k is None
        assert profile.mu is None

    def test_complete_graph_is_not_srg(self):
        profile = regularity_profile(complete_graph(4))
        assert profile.k == 3
        assert profile.lam == 2
        assert profile.mu is None
        assert not profile.is_strongly_regular

    def test_c4_is_srg(self):
        assert regularity_profile(grid_graph(2)).srg_params == (4, 2, 0, 2)


class TestLocalValencyStats:
    def test_extension_22(self):
        ext = grid_extension(2, 2)
        for v in range(ext.n):
            stats = local_valency_stats(ext, v, ExtensionParams(2, 2))
            assert stats.degree_sum == 40
            assert stats.square_sum == 192
            assert stats.centered_square_sum == 16
            assert stats.all_ok

    def test_extension_23_centered(self):
        ext = grid_extension(2, 3)
        stats = local_valency_stats(ext, 0, ExtensionParams(2, 3))
        assert stats.centered_square_sum == 36
        assert stats.all_ok

    def test_wrong_parameters_fail(self):
        ext = grid_extension(2, 3)
        with pytest.raises(PreconditionError, match="expected valency"):
            # degree 13 != s(2t+1)-1 = 9 for (2, 2)
            local_valency_stats(ext, 0, ExtensionParams(2, 2))

    def test_right_valency_wrong_structure_fails(self):
        # K10 has the (2, 2) valency 9 but its local graphs are K9
        stats = local_valency_stats(complete_graph(10), 0, ExtensionParams(2, 2))
        assert not (stats.sum_ok and stats.square_sum_ok and stats.centered_ok)


class TestHoffmanCliqueCheck:
    def test_line_is_equality_case(self):
        ext = grid_extension(2, 2)
        ls = find_lines(ext, ExtensionParams(2, 2))
        line = ls.lines[0].vertices
        check = hoffman_clique_check(ext, line, ExtensionParams(2, 2))
        assert check.order == 6
        assert check.order_ok and check.equality_case and check.outside_counts_ok

    def test_twin_pair_below_bound(self):
        ext = grid_extension(2, 2)
        check = hoffman_clique_check(ext, (0, 1), ExtensionParams(2, 2))
        assert check.order_ok
        assert not check.equality_case
        assert check.outside_counts_ok is None

    def test_vacuous_outside_set(self):
        check = hoffman_clique_check(complete_graph(6), tuple(range(6)), ExtensionParams(2, 2))
        assert check.order_ok and check.equality_case and check.outside_counts_ok

    def test_non_clique_refused(self):
        ext = grid_extension(2, 2)
        x, y = next(
            (x, y) for x in range(ext.n) for y in range(x + 1, ext.n) if not ext.has_edge(x, y)
        )
        with pytest.raises(PreconditionError, match="not adjacent"):
            hoffman_clique_check(ext, (x, y), ExtensionParams(2, 2))


class TestMaxCoclique:
    def test_complete(self):
        assert max_coclique_order(complete_graph(7)) == 1

    def test_empty(self):
        assert max_coclique_order(complement(complete_graph(5))) == 5

    def test_local_graph_of_extension(self):
        ext = grid_extension(2, 2)
        sub = local_graph(ext, 0).graph
        assert max_coclique_order(sub) == 2

    def test_limit_enforced(self):
        g = complete_graph(12)
        with pytest.raises(ResourceLimitError):
            max_coclique_order(g, limit=10)
