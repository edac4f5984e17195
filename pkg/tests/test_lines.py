import random

import pytest

from conftest import brute_force_maximal_cliques, grid_extension
from gridspectra.errors import (
    InvalidParameterError,
    PreconditionError,
    ResourceLimitError,
)
from gridspectra.graphs import (
    ExtensionParams,
    Graph,
    clique_extension,
    complete_graph,
    grid_graph,
    shrikhande_graph,
)
from gridspectra.lines import (
    Line,
    LineStructure,
    check_intersecting_pair_orders,
    check_line_count,
    check_order_histogram,
    check_two_lines_per_vertex,
    check_vertex_line_profile,
    find_lines,
    line_intersection_graph,
    max_clique_order,
    maximal_cliques,
)
from gridspectra.regularity import regularity_profile
from gridspectra.reconstruct import twin_classes
from gridspectra.spectra import expected_spectrum, verify_spectrum


def glued_cliques_graph():
    """Two 6-cliques sharing exactly one vertex (vertex 0)."""
    edges = []
    first = [0, 1, 2, 3, 4, 5]
    second = [0, 6, 7, 8, 9, 10]
    for block in (first, second):
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                edges.append((block[i], block[j]))
    return Graph.from_edges(11, edges)


class TestMaximalCliques:
    def test_c4_edges(self):
        c4 = grid_graph(2)
        assert maximal_cliques(c4) == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_extension_has_six_lines(self):
        ext = grid_extension(2, 2)
        cliques = maximal_cliques(ext)
        assert len(cliques) == 6
        assert all(len(c) == 6 for c in cliques)
        assert cliques == brute_force_maximal_cliques(ext)

    def test_shrikhande_cliques_are_triangles(self):
        sh = shrikhande_graph()
        cliques = maximal_cliques(sh)
        assert all(len(c) == 3 for c in cliques)
        # n*k*lambda/6 triangles, each maximal since no K4 exists
        assert len(cliques) == 16 * 6 * 2 // 6
        assert cliques == brute_force_maximal_cliques(sh)

    def test_deterministic(self):
        ext = grid_extension(2, 3)
        assert maximal_cliques(ext) == maximal_cliques(ext)

    def test_cap_enforced(self):
        with pytest.raises(ResourceLimitError):
            maximal_cliques(grid_extension(2, 2), cap=3)

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("GRIDSPECTRA_CLIQUE_CAP", "2")
        with pytest.raises(ResourceLimitError):
            maximal_cliques(grid_extension(2, 2))
        monkeypatch.setenv("GRIDSPECTRA_CLIQUE_CAP", "bogus")
        with pytest.raises(InvalidParameterError):
            maximal_cliques(grid_extension(2, 2))

    def test_max_clique_order(self):
        assert max_clique_order(complete_graph(5)) == 5
        assert max_clique_order(shrikhande_graph()) == 3
        assert max_clique_order(grid_extension(2, 2)) == 6


class TestFindLines:
    def test_extension_22(self):
        ls = find_lines(grid_extension(2, 2), ExtensionParams(2, 2))
        assert ls.delta == 6
        assert ls.alpha == 0
        assert ls.q == (0, 0, 0, 6)
        assert not ls.out_of_range
        assert all(line.order == 6 for line in ls.lines)

    def test_shrikhande_extension_has_no_lines(self):
        ext = clique_extension(shrikhande_graph(), 2)
        ls = find_lines(ext, ExtensionParams(2, 3))
        assert ls.delta == 0
        assert ls.alpha == -8

    def test_extension_23(self):
        ls = find_lines(grid_extension(2, 3), ExtensionParams(2, 3))
        assert ls.delta == 8
        assert all(line.order == 8 for line in ls.lines)

    def test_incidence(self):
        ext = grid_extension(2, 2)
        ls = find_lines(ext, ExtensionParams(2, 2))
        assert all(len(ls.incidence[v]) == 2 for v in range(ext.n))


class TestTwoLinesPerVertex:
    def test_extension_passes(self):
        ext = grid_extension(2, 2)
        ls = find_lines(ext, ExtensionParams(2, 2))
        assert check_two_lines_per_vertex(ls, ext.n).ok

    def test_no_lines_all_offending(self):
        ext = clique_extension(shrikhande_graph(), 2)
        ls = find_lines(ext, ExtensionParams(2, 3))
        check = check_two_lines_per_vertex(ls, ext.n)
        assert not check.ok
        assert len(check.offending) == ext.n

    def test_single_clique_fails(self):
        ls = find_lines(complete_graph(6), ExtensionParams(2, 2))
        assert ls.delta == 1
        check = check_two_lines_per_vertex(ls, 6)
        assert not check.ok
        assert check.offending == tuple(range(6))


class TestVertexLineProfile:
    def test_extension_22(self):
        ext = grid_extension(2, 2)
        ls = find_lines(ext, ExtensionParams(2, 2))
        for v in range(ext.n):
            prof = check_vertex_line_profile(ext, ls, v, ExtensionParams(2, 2))
            assert (prof.m, prof.ell) == (2, 0)
            assert prof.ell_plus_m_ok and prof.order_bounds_ok

    def test_extension_33(self):
        ext = grid_extension(3, 3)
        ls = find_lines(ext, ExtensionParams(3, 3))
        prof = check_vertex_line_profile(ext, ls, 0, ExtensionParams(3, 3))
        assert (prof.m, prof.ell) == (3, 0)
        assert prof.ell_plus_m_ok

    def test_glued_cliques_fail(self):
        # vertex 0 sits on two lines sharing only itself: ell + m = 1 != s
        g = glued_cliques_graph()
        ls = find_lines(g, ExtensionParams(2, 2))
        assert len(ls.incidence[0]) == 2
        prof = check_vertex_line_profile(g, ls, 0, ExtensionParams(2, 2))
        assert (prof.m, prof.ell) == (1, 0)
        assert not prof.ell_plus_m_ok

    def test_wrong_line_count_refused(self):
        g = glued_cliques_graph()
        ls = find_lines(g, ExtensionParams(2, 2))
        with pytest.raises(PreconditionError):
            check_vertex_line_profile(g, ls, 1, ExtensionParams(2, 2))


class TestPairOrders:
    @pytest.mark.parametrize("s,t", [(2, 2), (2, 3)])
    def test_extension(self, s, t):
        ls = find_lines(grid_extension(s, t), ExtensionParams(s, t))
        assert check_intersecting_pair_orders(ls, ExtensionParams(s, t)).ok

    def test_disjoint_pairs_vacuous(self):
        ls = LineStructure(
            lines=(Line((0, 1, 2)), Line((3, 4, 5))),
            incidence=(),
            q=(0, 0, 2, 0),
            delta=2,
            alpha=-2,
            out_of_range=(),
        )
        assert check_intersecting_pair_orders(ls, ExtensionParams(2, 1)).ok

    def test_violation_reported(self):
        g = glued_cliques_graph()
        ls = find_lines(g, ExtensionParams(2, 2))
        check = check_intersecting_pair_orders(ls, ExtensionParams(2, 2))
        # 6 + 6 != 2st + 2m = 8 + 2
        assert not check.ok
        assert "2st+2m" in check.witness


class TestOrderHistogram:
    def test_extension_22(self):
        ls = find_lines(grid_extension(2, 2), ExtensionParams(2, 2))
        check = check_order_histogram(ls, ExtensionParams(2, 2))
        assert check.eq_main and check.delta_bounds and check.eq_alpha
        assert check.all_lines_max_order is True

    def test_extension_33(self):
        ls = find_lines(grid_extension(3, 3), ExtensionParams(3, 3))
        assert ls.q[-1] == 8
        check = check_order_histogram(ls, ExtensionParams(3, 3))
        assert check.eq_main and check.delta_bounds and check.eq_alpha

    def test_delta_out_of_window(self):
        # 9 fabricated lines of maximal order with t=1: delta = 2t+7
        ls = LineStructure(
            lines=tuple(Line(tuple(range(4 * i, 4 * i + 4))) for i in range(9)),
            incidence=(),
            q=(0, 0, 0, 9),
            delta=9,
            alpha=5,
            out_of_range=(),
        )
        check = check_order_histogram(ls, ExtensionParams(2, 1))
        assert not check.delta_bounds

    def test_out_of_range_orders_flagged(self):
        # K7 is one maximal clique of order 7 > s(t+1) = 6
        ls = find_lines(complete_graph(7), ExtensionParams(2, 2))
        assert ls.out_of_range == (0,)
        check = check_order_histogram(ls, ExtensionParams(2, 2))
        assert check.reason is not None
        assert not (check.eq_main or check.delta_bounds or check.eq_alpha)


class TestLineCount:
    def test_extension_22(self):
        ls = find_lines(grid_extension(2, 2), ExtensionParams(2, 2))
        assert check_line_count(ls, ExtensionParams(2, 2))

    def test_extension_24(self):
        ls = find_lines(grid_extension(2, 4), ExtensionParams(2, 4))
        assert ls.delta == 10
        assert check_line_count(ls, ExtensionParams(2, 4))

    def test_shrikhande_extension_fails(self):
        ext = clique_extension(shrikhande_graph(), 2)
        ls = find_lines(ext, ExtensionParams(2, 3))
        assert not check_line_count(ls, ExtensionParams(2, 3))


class TestLineIntersectionGraph:
    def test_extension_22(self):
        ls = find_lines(grid_extension(2, 2), ExtensionParams(2, 2))
        lg = line_intersection_graph(ls)
        # three extended rows meet three extended columns: K_{3,3}
        assert (lg.n, lg.edge_count) == (6, 9)
        assert all(lg.degree(v) == 3 for v in range(6))

    def test_empty_structure_rejected(self):
        ext = clique_extension(shrikhande_graph(), 2)
        ls = find_lines(ext, ExtensionParams(2, 3))
        with pytest.raises(InvalidParameterError):
            line_intersection_graph(ls)


class TestPerturbationSensitivity:
    def test_edge_deletion_breaks_a_check(self):
        ext = grid_extension(2, 2)
        edges = list(ext.edges())
        rng = random.Random(47)
        for _ in range(5):
            removed = rng.randrange(len(edges))
            g = Graph.from_edges(ext.n, edges[:removed] + edges[removed + 1:])
            spectrum_ok = verify_spectrum(g, expected_spectrum(ExtensionParams(2, 2))).ok
            mu_ok = regularity_profile(g).mu == 4
            ls = find_lines(g, ExtensionParams(2, 2))
            two_ok = check_two_lines_per_vertex(ls, g.n).ok
            assert not (spectrum_ok and mu_ok and two_ok)

    def test_twin_classes_of_glued_cliques(self):
        # sanity for the gadget: the glue vertex is its own twin class
        tp = twin_classes(glued_cliques_graph())
        assert (0,) in tp.classes
