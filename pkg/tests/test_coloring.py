import unittest
import os
import sys
import random
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import patch

import networkx as nx

# Add src directory to path for testing
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from census import GraphCensus
from coloring import (
    ColoringSolver,
    SolverBudgetExceeded,
    chromatic_number,
    clique_lower_bound,
    dsatur_upper_bound,
    excess,
    is_k_colorable,
    is_proper_coloring,
    is_r_critical,
    optimal_coloring,
)
from graph import (
    Graph,
    delete_edge,
    delete_vertex,
    from_edges,
    join,
    make_catlin,
    make_complete,
    make_cycle,
    make_kr2_minus_c5,
)


def brute_force_chromatic(g):
    """Fewest blocks over all partitions of the vertex set into independent sets"""
    best = g.n
    blocks = []

    def place(v):
        nonlocal best
        if len(blocks) >= best:
            return
        if v == g.n:
            best = len(blocks)
            return
        for block in blocks:
            if not g.rows[v] & block[0]:
                block[0] |= 1 << v
                place(v + 1)
                block[0] &= ~(1 << v)
        blocks.append([1 << v])
        place(v + 1)
        blocks.pop()

    place(0)
    return best


def from_networkx(G):
    mapping = {v: i for i, v in enumerate(G.nodes())}
    return from_edges(G.number_of_nodes(), [(mapping[u], mapping[v]) for u, v in G.edges()])


def small_graphs(max_n=6):
    census = GraphCensus(max_n=max_n)
    return [g for n in range(1, max_n + 1) for g in census.enumerate_nonisomorphic(n)]


class TestChromaticNumber(unittest.TestCase):
    def setUp(self):
        self.solver = ColoringSolver()

    def test_known_values(self):
        """Test chromatic numbers of named graphs"""
        cases = [
            (Graph(0), 0),
            (Graph(4), 1),
            (make_complete(7), 7),
            (make_cycle(5), 3),
            (make_cycle(6), 2),
            (from_networkx(nx.petersen_graph()), 3),
            (make_kr2_minus_c5(6), 6),
            (make_catlin(2), 5),
        ]
        for g, chi in cases:
            self.assertEqual(self.solver.chromatic_number(g), chi, repr(g))

    def test_catlin_graph(self):
        """C5[K3] needs ceil(15/2) = 8 colors"""
        self.assertEqual(chromatic_number(make_catlin(3)), 8)

    def test_join_adds_chromatic_numbers(self):
        """Test that a join needs the colors of both sides"""
        self.assertEqual(chromatic_number(join(make_complete(6), make_cycle(5))), 9)

    def test_exhaustive_against_brute_force(self):
        """Test the solver against partition search on every graph up to 6 vertices"""
        for g in small_graphs():
            self.assertEqual(self.solver.chromatic_number(g), brute_force_chromatic(g), f"n={g.n} m={g.m}")

    def test_optimal_coloring_is_proper_and_tight(self):
        """Test optimal colorings are proper and use exactly chi colors"""
        for g in (make_catlin(2), make_kr2_minus_c5(5), from_networkx(nx.petersen_graph())):
            chi, coloring = optimal_coloring(g)
            self.assertTrue(is_proper_coloring(g, coloring))
            self.assertEqual(len(set(coloring.values())), chi)

    def test_greedy_bounds_bracket_chromatic_number(self):
        """Test that the clique and DSATUR bounds bracket chi on random graphs"""
        rng = random.Random(7)
        for _ in range(25):
            n = rng.randint(1, 14)
            g = from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45])
            chi = self.solver.chromatic_number(g)
            used, coloring = dsatur_upper_bound(g)
            self.assertLessEqual(clique_lower_bound(g), chi)
            self.assertGreaterEqual(used, chi)
            self.assertTrue(is_proper_coloring(g, coloring))


class TestDeletion(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.graphs = small_graphs()

    def test_deletion_lowers_chromatic_number_by_at_most_one(self):
        """Test chi(g) - 1 <= chi(g - v), chi(g - e) <= chi(g) on every graph up to 6 vertices"""
        for g in self.graphs:
            chi = chromatic_number(g)
            for v in range(g.n):
                self.assertIn(chromatic_number(delete_vertex(g, v)), (chi - 1, chi), f"{g!r} - {v}")
            for e in g.edges():
                self.assertIn(chromatic_number(delete_edge(g, e)), (chi - 1, chi), f"{g!r} - {e}")

    def test_criticality_matches_direct_deletions(self):
        """Test that non-critical graphs keep chi after some deletion and critical ones never do"""
        for g in self.graphs:
            chi = chromatic_number(g)
            after = [chromatic_number(delete_vertex(g, v)) for v in range(g.n)]
            after += [chromatic_number(delete_edge(g, e)) for e in g.edges()]
            if is_r_critical(g, chi):
                self.assertTrue(all(c == chi - 1 for c in after), repr(g))
            else:
                self.assertIn(chi, after, repr(g))


class TestColorability(unittest.TestCase):
    def test_witness(self):
        """Test that a positive answer carries a proper k-coloring"""
        ok, witness = is_k_colorable(make_cycle(7), 3)
        self.assertTrue(ok)
        self.assertTrue(is_proper_coloring(make_cycle(7), witness))
        self.assertLess(max(witness.values()), 3)

    def test_not_colorable(self):
        """Test graphs that need more than k colors"""
        self.assertEqual(is_k_colorable(make_cycle(7), 2), (False, None))
        self.assertEqual(is_k_colorable(make_catlin(3), 7), (False, None))

    def test_monotone_in_k(self):
        """Test that k-colorability switches on at chi and stays on"""
        for g in small_graphs(5) + [make_catlin(2), make_kr2_minus_c5(6)]:
            chi = chromatic_number(g)
            answers = [is_k_colorable(g, k)[0] for k in range(g.n + 1)]
            self.assertEqual(answers, [k >= chi for k in range(g.n + 1)], repr(g))

    def test_empty_graph(self):
        """Test colorability of graphs without vertices and without edges"""
        self.assertEqual(is_k_colorable(Graph(0), 0), (True, {}))
        self.assertEqual(is_k_colorable(Graph(1), 0), (False, None))

    def test_negative_k(self):
        """Test colorability with negative k"""
        with self.assertRaises(ValueError):
            is_k_colorable(make_cycle(5), -1)

    def test_node_budget(self):
        """Test that an exhausted budget raises with the node counts attached"""
        solver = ColoringSolver(node_budget=1)
        with self.assertRaises(SolverBudgetExceeded) as ctx:
            solver.is_k_colorable(make_catlin(3), 7)
        self.assertEqual(ctx.exception.budget, 1)
        self.assertGreater(ctx.exception.nodes, 1)

    def test_nodes_visited_reset_per_call(self):
        """Test nodes_visited counts only the latest call"""
        solver = ColoringSolver()
        solver.chromatic_number(make_catlin(3))
        self.assertGreater(solver.nodes_visited, 0)
        solver.chromatic_number(make_complete(3))
        self.assertEqual(solver.nodes_visited, 0)

    def test_invalid_budget(self):
        """Test invalid node budget"""
        with self.assertRaises(ValueError):
            ColoringSolver(node_budget=0)


class TestModuleFunctions(unittest.TestCase):
    def test_each_call_gets_its_own_solver(self):
        """Test module functions never reuse a solver between calls"""
        with patch("coloring.ColoringSolver", wraps=ColoringSolver) as factory:
            chromatic_number(make_cycle(5))
            is_k_colorable(make_cycle(5), 3)
            is_r_critical(make_cycle(5), 3)
        self.assertEqual(factory.call_count, 3)

    def test_concurrent_calls(self):
        """Test module functions from several threads at once"""
        graphs = [make_catlin(3), make_kr2_minus_c5(7), make_cycle(9), from_networkx(nx.petersen_graph())] * 4
        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(chromatic_number, graphs))
        self.assertEqual(results, [8, 7, 3, 3] * 4)


class TestCriticality(unittest.TestCase):
    def test_critical_graphs(self):
        """Test r-criticality of complete graphs, odd cycles and K_{r+2} minus C5"""
        self.assertTrue(is_r_critical(make_complete(4), 4))
        self.assertTrue(is_r_critical(make_cycle(5), 3))
        self.assertTrue(is_r_critical(make_cycle(7), 3))
        self.assertTrue(is_r_critical(make_kr2_minus_c5(4), 4))
        self.assertTrue(is_r_critical(make_kr2_minus_c5(5), 5))

    def test_non_critical_graphs(self):
        """Test graphs that are not r-critical"""
        self.assertFalse(is_r_critical(make_cycle(6), 3))
        self.assertFalse(is_r_critical(make_complete(4), 3))
        self.assertFalse(is_r_critical(join(make_complete(2), make_cycle(6)), 4))

    def test_isolated_vertex_breaks_criticality(self):
        """K4 plus an isolated vertex survives every edge deletion test but not vertex deletion"""
        g = Graph(5, list(make_complete(4).rows) + [0])
        self.assertFalse(is_r_critical(g, 4))
        self.assertFalse(ColoringSolver()._deletions_colorable(g, 3))

    def test_invalid_r(self):
        """Test criticality with r below 1"""
        with self.assertRaises(ValueError):
            is_r_critical(make_cycle(5), 0)

    def test_excess(self):
        """Test excess of K_r and of K_{r+2} minus C5"""
        for r in range(3, 13):
            self.assertEqual(excess(make_complete(r), r), 0)
            self.assertEqual(excess(make_kr2_minus_c5(r), r), 2 * r - 6)

    def test_audit(self):
        """Test audit fields and their serialization"""
        audit = ColoringSolver().audit(make_kr2_minus_c5(5), 5)
        self.assertEqual((audit.chi, audit.critical, audit.excess), (5, True, 4))
        self.assertTrue(is_proper_coloring(make_kr2_minus_c5(5), audit.witness_coloring))
        self.assertEqual(audit.to_dict()["witness_coloring"]["0"], audit.witness_coloring[0])


if __name__ == '__main__':
    unittest.main()
