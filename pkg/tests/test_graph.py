import unittest
import os
import sys
import random
import tempfile

import networkx as nx

# Add src directory to path for testing
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from graph import (
    Graph,
    GraphError,
    complement,
    contains_clique,
    delete_edge,
    delete_vertex,
    from_edges,
    join,
    lexicographic_product,
    make_catlin,
    make_complete,
    make_cycle,
    make_kr2_minus_c5,
    parse_graph6,
    read_graph6_file,
    to_graph6,
    write_graph6_file,
)


def random_graph(n, p, seed):
    rng = random.Random(seed)
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def to_networkx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


class TestGraphModel(unittest.TestCase):
    def test_constructor_rejects_bad_rows(self):
        """Asymmetric rows, self-loops and out-of-range bits are refused"""
        with self.assertRaises(GraphError):
            Graph(2, [0b10, 0])
        with self.assertRaises(GraphError):
            Graph(2, [0b01, 0])
        with self.assertRaises(GraphError):
            Graph(2, [0b100, 0])
        with self.assertRaises(GraphError):
            Graph(65)

    def test_edges_and_degrees(self):
        """Test edge list and degrees"""
        g = from_edges(4, [(2, 0), (1, 2), (3, 2)])
        self.assertEqual(g.edges(), [(0, 2), (1, 2), (2, 3)])
        self.assertEqual(g.m, 3)
        self.assertEqual(g.degrees(), [1, 1, 3, 1])
        self.assertEqual(g.neighbors(2), [0, 1, 3])
        self.assertEqual(g.min_degree(), 1)
        self.assertTrue(g.has_edge(0, 2))
        self.assertFalse(g.has_edge(0, 1))
        self.assertFalse(g.has_edge(0, 9))

    def test_equality_and_hash(self):
        """Test equality and hashing by order and rows"""
        a = from_edges(3, [(0, 1)])
        b = Graph(3, [0b010, 0b001, 0])
        self.assertEqual(a, b)
        self.assertEqual(len({a, b}), 1)

    def test_relabel(self):
        """Test relabeling by a permutation"""
        path = from_edges(3, [(0, 1), (1, 2)])
        self.assertEqual(path.relabel([1, 0, 2]).edges(), [(0, 1), (0, 2)])
        with self.assertRaises(GraphError):
            path.relabel([0, 0, 1])

    def test_complement_of_cycle(self):
        """Test complement of a cycle"""
        # C5 is self-complementary
        c5 = make_cycle(5)
        self.assertEqual(complement(c5).m, 5)
        self.assertTrue(nx.is_isomorphic(to_networkx(c5), to_networkx(complement(c5))))

    def test_small_cycle_refused(self):
        """Test cycles shorter than 3"""
        with self.assertRaises(GraphError):
            make_cycle(2)


class TestConstructors(unittest.TestCase):
    def test_kr2_minus_c5_degrees(self):
        """Test degrees of K_{r+2} minus C5"""
        for r in range(3, 13):
            g = make_kr2_minus_c5(r)
            self.assertEqual(g.n, r + 2)
            self.assertEqual(g.m, (r + 2) * (r + 1) // 2 - 5)
            self.assertEqual(g.degrees()[:5], [r - 1] * 5)
            self.assertEqual(g.degrees()[5:], [r + 1] * (r - 3))

    def test_kr2_minus_c5_for_r3_is_c5(self):
        """Test that K5 minus C5 is C5"""
        self.assertTrue(nx.is_isomorphic(to_networkx(make_kr2_minus_c5(3)), nx.cycle_graph(5)))

    def test_lexicographic_product_matches_networkx(self):
        """Test lexicographic product against networkx"""
        g = lexicographic_product(make_cycle(5), make_complete(3))
        self.assertEqual(g.n, 15)
        self.assertEqual(g.m, 60)
        expected = nx.lexicographic_product(nx.cycle_graph(5), nx.complete_graph(3))
        self.assertTrue(nx.is_isomorphic(to_networkx(g), expected))

    def test_catlin(self):
        """Test Catlin graph construction"""
        self.assertEqual(make_catlin(3), lexicographic_product(make_cycle(5), make_complete(3)))

    def test_join(self):
        """Test graph join"""
        g = join(make_complete(6), make_cycle(5))
        self.assertEqual(g.n, 11)
        self.assertEqual(g.m, 15 + 5 + 30)
        self.assertTrue(g.has_edge(0, 6))
        self.assertTrue(g.has_edge(6, 7))
        self.assertFalse(g.has_edge(6, 8))

    def test_delete_vertex_keeps_order(self):
        """Test that vertex deletion shifts higher labels down"""
        path = from_edges(4, [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(delete_vertex(path, 1).edges(), [(1, 2)])
        with self.assertRaises(GraphError):
            delete_vertex(path, 4)

    def test_delete_edge(self):
        """Test edge deletion"""
        g = delete_edge(make_complete(4), (1, 3))
        self.assertEqual(g.m, 5)
        self.assertFalse(g.has_edge(3, 1))
        with self.assertRaises(GraphError):
            delete_edge(g, (1, 3))

    def test_contains_clique(self):
        """Test clique containment"""
        self.assertTrue(contains_clique(make_complete(5), 5))
        self.assertFalse(contains_clique(make_complete(5), 6))
        self.assertTrue(contains_clique(make_cycle(5), 2))
        self.assertFalse(contains_clique(make_cycle(5), 3))
        self.assertFalse(contains_clique(make_kr2_minus_c5(7), 7))
        self.assertTrue(contains_clique(make_kr2_minus_c5(7), 6))

    def test_contains_clique_matches_networkx(self):
        """Test clique containment against networkx"""
        for seed in range(20):
            g = random_graph(10, 0.5, seed)
            largest = max(len(c) for c in nx.find_cliques(to_networkx(g)))
            self.assertTrue(contains_clique(g, largest))
            self.assertFalse(contains_clique(g, largest + 1))


class TestGraph6(unittest.TestCase):
    def test_known_encodings(self):
        """Test graph6 strings of known graphs"""
        self.assertEqual(to_graph6(make_complete(5)), "D~{")
        empty = parse_graph6("D??")
        self.assertEqual((empty.n, empty.m), (5, 0))
        self.assertEqual(parse_graph6(">>graph6<<D~{\n"), make_complete(5))
        self.assertEqual(to_graph6(Graph(0)), "?")

    def test_malformed_input(self):
        """Test malformed graph6 input"""
        for bad in ("", "D~", "D~{{", "D~\x7f", "A`"):
            with self.assertRaises(GraphError):
                parse_graph6(bad)
        with self.assertRaises(GraphError):
            parse_graph6("~?@?")

    def test_agrees_with_networkx(self):
        """Test graph6 codec against networkx"""
        for seed in range(30):
            g = random_graph(1 + seed % 20, 0.4, seed)
            code = to_graph6(g)
            expected = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
            self.assertEqual(code, expected)
            decoded = nx.from_graph6_bytes(code.encode())
            self.assertEqual(sorted(tuple(sorted(e)) for e in decoded.edges()), g.edges())
            self.assertEqual(parse_graph6(code), g)

    def test_file_round_trip(self):
        """Test writing and reading a graph6 file"""
        graphs = [make_complete(4), make_cycle(5), make_kr2_minus_c5(5)]
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "graphs.g6")
            self.assertEqual(write_graph6_file(path, graphs), 3)
            with open(path, "a") as f:
                f.write("\n")
            self.assertEqual(read_graph6_file(path), graphs)

    def test_file_error_names_line(self):
        """Test that a bad graph6 line is reported with its line number"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "bad.g6")
            with open(path, "w") as f:
                f.write("D~{\nD~\n")
            with self.assertRaisesRegex(GraphError, ":2:"):
                read_graph6_file(path)


if __name__ == '__main__':
    unittest.main()
