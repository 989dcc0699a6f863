import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixlab.graph import (DisconnectedBaseError, DuplicateEdgeError, EmptyOrFullSubsetError, Graph,
                          InvalidProbabilityError, IsolatedVertexError, LoopEdgeError, MalformedGraph6Error,
                          UnsupportedSizeError, VertexOutOfRangeError, blowup, boundary_size,
                          clique_plus_pendant, complete_bipartite, complete_graph, cycle_graph,
                          cycle_space_dimension, derive_seed, even_subgraph_corpus, from_edge_list, laplacian,
                          parse_edge_list, parse_graph6, path_graph, sample_gnp, transition_matrix,
                          two_cliques_matched, write_edge_list, write_graph6)

from oracles import boundary_brute, cheeger_brute, even_subgraphs_brute


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


def is_isomorphic(g, h):
    a, b = nx.Graph(), nx.Graph()
    a.add_nodes_from(range(g.n))
    a.add_edges_from(g.edges)
    b.add_nodes_from(range(h.n))
    b.add_edges_from(h.edges)
    return nx.is_isomorphic(a, b)


class TestConstruction:
    def test_triangle(self):
        g = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        assert g == complete_graph(3)
        assert g.edges == ((0, 1), (0, 2), (1, 2))
        assert g.degrees == (2, 2, 2)

    def test_canonical_order(self):
        g = Graph(4, [(3, 2), (1, 0), (2, 0)])
        assert g.edges == ((0, 1), (0, 2), (2, 3))

    def test_loop_rejected(self):
        with pytest.raises(LoopEdgeError):
            from_edge_list(2, [(0, 0)])

    def test_reversed_duplicate_rejected(self):
        with pytest.raises(DuplicateEdgeError):
            from_edge_list(4, [(0, 1), (1, 0)])

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRangeError):
            from_edge_list(3, [(0, 3)])

    def test_immutable(self):
        g = complete_graph(3)
        with pytest.raises(AttributeError):
            g.n = 4

    @given(graphs())
    def test_degree_sum(self, g):
        assert sum(g.degrees) == 2 * g.m

    @given(graphs(min_n=2, max_n=9))
    def test_connectivity_matches_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        assert g.is_connected() == nx.is_connected(h)
        assert g.components() == nx.number_connected_components(h)


class TestMatrices:
    def test_laplacian_k2(self):
        assert laplacian(complete_graph(2)).tolist() == [[1, -1], [-1, 1]]

    def test_laplacian_k3(self):
        q = laplacian(complete_graph(3))
        assert np.array_equal(q, 3 * np.eye(3, dtype=int) - np.ones((3, 3), dtype=int))

    def test_laplacian_kn_closed_form(self):
        n = 5
        assert np.array_equal(laplacian(complete_graph(n)), n * np.eye(n, dtype=int) - np.ones((n, n), dtype=int))

    @given(graphs())
    def test_laplacian_rows_and_symmetry(self, g):
        q = laplacian(g)
        assert np.all(q.sum(axis=1) == 0)
        assert np.array_equal(q, q.T)

    def test_transition_k2(self):
        assert transition_matrix(complete_graph(2)).tolist() == [[0, 1], [1, 0]]

    def test_transition_path(self):
        assert transition_matrix(path_graph(3))[1].tolist() == [0.5, 0, 0.5]

    def test_transition_isolated(self):
        with pytest.raises(IsolatedVertexError):
            transition_matrix(Graph(3, [(0, 1)]))

    @given(graphs(min_n=2))
    def test_transition_rows(self, g):
        if g.min_degree == 0:
            return
        assert np.allclose(transition_matrix(g).sum(axis=1), 1.0, atol=1e-12)


class TestBoundary:
    def test_k4_singleton(self):
        assert boundary_size(complete_graph(4), {0}) == 3

    def test_k4_pair(self):
        assert boundary_size(complete_graph(4), {0, 1}) == boundary_brute(complete_graph(4), {0, 1}) == 4

    def test_c4_adjacent_pair(self):
        assert boundary_size(cycle_graph(4), {0, 1}) == boundary_brute(cycle_graph(4), {0, 1}) == 2

    def test_bitmask_argument(self):
        assert boundary_size(cycle_graph(4), 0b0011) == 2

    @pytest.mark.parametrize("a", [set(), {0, 1, 2}])
    def test_empty_or_full(self, a):
        with pytest.raises(EmptyOrFullSubsetError):
            boundary_size(complete_graph(3), a)

    @given(graphs(min_n=2, max_n=9), st.data())
    def test_complement_symmetry(self, g, data):
        mask = data.draw(st.integers(1, (1 << g.n) - 2))
        assert boundary_size(g, mask) == boundary_size(g, ((1 << g.n) - 1) ^ mask)
        assert boundary_size(g, mask) == boundary_brute(g, [v for v in range(g.n) if mask >> v & 1])


class TestFamilies:
    def test_complete(self):
        assert complete_graph(3).m == 3
        assert complete_graph(7).m == 21

    def test_bipartite_2_2_is_c4(self):
        g = complete_bipartite(2, 2)
        assert g.m == 4 and is_isomorphic(g, cycle_graph(4))

    def test_two_cliques_small(self):
        g = two_cliques_matched(2)
        assert (g.n, g.m) == (4, 4)
        assert set(g.degrees) == {2}

    @pytest.mark.parametrize("n", [2, 3, 4, 7])
    def test_two_cliques_degrees(self, n):
        # Measured degree is n: n-1 inside the clique plus the matching edge.
        g = two_cliques_matched(n)
        assert g.n == 2 * n and g.m == n * (n - 1) + n
        assert set(g.degrees) == {n}

    def test_two_cliques_matching_cut(self):
        g = two_cliques_matched(4)
        assert boundary_size(g, range(4)) == 4

    def test_two_cliques_cheeger_witness(self):
        g = two_cliques_matched(3)
        assert boundary_size(g, {0, 1, 2}) == 3
        assert cheeger_brute(g) == 1

    def test_pendant(self):
        g = clique_plus_pendant(3)
        assert g.n == 4 and g.m == 4 and g.min_degree == 1
        g4 = clique_plus_pendant(4)
        assert (g4.n, g4.m) == (5, 7)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_pendant_min_degree(self, n):
        assert clique_plus_pendant(n).min_degree == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_blowup_k2_is_knn(self, n):
        assert blowup(complete_graph(2), [1, 1], n) == complete_bipartite(n, n)

    def test_blowup_k24(self):
        assert blowup(complete_graph(2), [1, 2], 2) == complete_bipartite(2, 4)

    def test_blowup_identity(self):
        p = path_graph(3)
        assert blowup(p, [1, 1, 1], 1) == p

    def test_blowup_disconnected_base(self):
        with pytest.raises(DisconnectedBaseError):
            blowup(Graph(3, [(0, 1)]), [1, 1, 1], 2)

    def test_blowup_no_intra_class_edges(self):
        g = blowup(path_graph(3), [1, 2, 1], 3)
        # classes: 0..2, 3..8, 9..11
        assert g.n == 12
        assert all(not (3 <= u <= 8 and 3 <= v <= 8) for u, v in g.edges)
        assert g.m == 3 * 6 + 6 * 3


class TestRandom:
    def test_deterministic(self):
        assert sample_gnp(12, 0.3, 7) == sample_gnp(12, 0.3, 7)

    def test_invalid_p(self):
        for p in (0, 1, -0.1, 1.5):
            with pytest.raises(InvalidProbabilityError):
                sample_gnp(5, p, 0)

    def test_edge_frequency_k2(self):
        hits = sum(sample_gnp(2, 0.5, s).m for s in range(10000))
        assert abs(hits / 10000 - 0.5) <= 0.02

    def test_edge_count_near_complete(self):
        p, trials = 0.95, 400
        counts = np.array([sample_gnp(5, p, derive_seed(3, i)).m for i in range(trials)])
        sigma = np.sqrt(10 * p * (1 - p) / trials)
        assert abs(counts.mean() - 10 * p) <= 3 * sigma

    def test_derived_seeds_distinct(self):
        seeds = {derive_seed(42, i) for i in range(1000)}
        assert len(seeds) == 1000


class TestCorpus:
    def test_dimension(self):
        assert cycle_space_dimension(4) == 3
        assert cycle_space_dimension(6) == 10

    def test_k4_matches_brute_force(self):
        got = list(even_subgraph_corpus(4))
        assert len(got) == 8
        assert set(got) == even_subgraphs_brute(4)

    def test_k5_matches_brute_force(self):
        assert set(even_subgraph_corpus(5)) == even_subgraphs_brute(5)

    def test_k4_connected(self):
        # Only the three 4-cycles span all four vertices; the four triangles
        # leave a vertex isolated.
        conn = list(even_subgraph_corpus(4, connected_only=True))
        assert len(conn) == 3
        assert all(is_isomorphic(g, cycle_graph(4)) for g in conn)
        edge_connected = [g for g in even_subgraph_corpus(4) if g.m and nx.is_connected(nx.Graph(g.edges))]
        assert len(edge_connected) == 7

    def test_n6_full(self):
        got = list(even_subgraph_corpus(6))
        assert len(got) == 1024
        assert len(set(got)) == 1024
        assert all(g.all_degrees_even() for g in got)

    def test_xor_closure(self):
        got = list(even_subgraph_corpus(6))
        rng = np.random.default_rng(0)
        for _ in range(200):
            a, b = (got[i] for i in rng.integers(len(got), size=2))
            x = Graph(6, set(a.edges) ^ set(b.edges))
            assert x.all_degrees_even()

    def test_sampled_sizes(self):
        g8 = list(even_subgraph_corpus(8, seed=1, max_graphs=50))
        assert len(g8) == 50 and all(g.all_degrees_even() and g.n == 8 for g in g8)
        assert g8 == list(even_subgraph_corpus(8, seed=1, max_graphs=50))
        assert len(list(even_subgraph_corpus(9, sample=30, seed=2))) == 30

    def test_unsupported(self):
        with pytest.raises(UnsupportedSizeError):
            list(even_subgraph_corpus(10))
        with pytest.raises(UnsupportedSizeError):
            list(even_subgraph_corpus(1))


class TestGraph6:
    def test_k3(self):
        assert write_graph6(complete_graph(3)) == "Bw"
        assert parse_graph6("Bw") == complete_graph(3)

    def test_single_vertex(self):
        assert write_graph6(Graph(1)) == "@"
        assert parse_graph6("@") == Graph(1)

    def test_header_and_whitespace(self):
        assert parse_graph6(">>graph6<<Bw\n") == complete_graph(3)

    @pytest.mark.parametrize("bad", ["", "B", "Bww", "B~", "?", "B\x7f"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedGraph6Error):
            parse_graph6(bad)

    @settings(max_examples=200)
    @given(graphs(min_n=1, max_n=12))
    def test_matches_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        assert write_graph6(g) == nx.to_graph6_bytes(h, header=False).decode().strip()

    def test_long_form(self):
        g = cycle_graph(70)
        s = write_graph6(g)
        assert s[0] == "~"
        assert parse_graph6(s) == g

    @pytest.mark.parametrize("n", range(2, 9))
    def test_corpus_round_trip(self, n):
        for g in itertools.islice(even_subgraph_corpus(n, seed=5, sample=300 if n > 6 else None), 400):
            assert parse_graph6(write_graph6(g)) == g


class TestEdgeList:
    def test_round_trip(self):
        g = two_cliques_matched(3)
        text = write_edge_list(g)
        assert text.splitlines()[0] == "6 9"
        assert parse_edge_list(text) == g

    def test_count_mismatch(self):
        with pytest.raises(ValueError):
            parse_edge_list("3 2\n0 1\n")
