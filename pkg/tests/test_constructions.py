import itertools

import pytest

from aeclab.constructions import (
    canonical_form,
    complement,
    connected_graphs_upto,
    enumerate_graphs,
    enumerate_graphs_upto,
    gen_complete,
    gen_cycle,
    gen_edgeless,
    gen_example_N,
    gen_path,
    independence_number,
    random_graph,
    random_triples,
)
from aeclab.errors import GraphInputError
from aeclab.graph_core import Graph, induced, is_isomorphic, relabel


class TestGenerators:
    def test_named_graphs(self):
        assert gen_edgeless(0) == Graph(0)
        assert gen_complete(3).size == 3
        assert gen_path(4).sorted_edges == ((0, 1), (1, 2), (2, 3))
        assert gen_cycle(5).edges == frozenset({(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)})

    def test_cycle_needs_three_vertices(self):
        with pytest.raises(GraphInputError):
            gen_cycle(2)

    def test_negative_order_rejected(self):
        with pytest.raises(GraphInputError):
            gen_complete(-1)

    def test_example_N_small(self):
        assert gen_example_N(6, 2).sorted_edges == ((2, 4), (2, 5), (3, 5))

    def test_example_N_with_mu_equal_n_is_edgeless(self):
        assert gen_example_N(3, 3) == gen_edgeless(3)

    def test_example_N_with_n_one(self):
        g = gen_example_N(5, 1)
        assert induced(g, [1, 2, 3, 4]) == gen_complete(4)
        assert g.degree(0) == 0

    def test_example_N_range(self):
        with pytest.raises(GraphInputError):
            gen_example_N(2, 3)
        with pytest.raises(GraphInputError):
            gen_example_N(4, 0)


class TestIndependence:
    def test_simple_values(self):
        assert independence_number(gen_complete(4)) == 1
        assert independence_number(gen_edgeless(4)) == 4
        assert independence_number(gen_cycle(5)) == 2

    def test_complement(self):
        assert complement(gen_edgeless(3)) == gen_complete(3)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_example_N_independence(self, n):
        for mu in range(n, 13):
            assert independence_number(gen_example_N(mu, n)) == n + min(n, mu - n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_large_subsets_contain_an_edge(self, n):
        for mu in range(2 * n + 1, 11):
            g = gen_example_N(mu, n)
            for s in itertools.combinations(g.vertices, 2 * n + 1):
                assert induced(g, s).size > 0


class TestEnumeration:
    def test_counts(self):
        assert [len(enumerate_graphs(m)) for m in range(7)] == [1, 1, 2, 4, 11, 34, 156]

    def test_upto_is_union(self):
        assert len(list(enumerate_graphs_upto(4))) == 1 + 1 + 2 + 4 + 11

    def test_pairwise_non_isomorphic(self):
        graphs = enumerate_graphs(4)
        for g, h in itertools.combinations(graphs, 2):
            assert not is_isomorphic(g, h)

    def test_deterministic(self):
        assert enumerate_graphs(5) == enumerate_graphs(5)

    def test_range(self):
        with pytest.raises(GraphInputError):
            enumerate_graphs(8)

    def test_connected(self):
        assert [g.order for g in connected_graphs_upto(3)] == [1, 2, 3, 3]

    def test_permutation_orbit_count(self):
        # independent count of iso classes on 4 vertices via canonical forms of every labeled graph
        pairs = list(itertools.combinations(range(4), 2))
        forms = set()
        for mask in range(1 << len(pairs)):
            edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
            forms.add(canonical_form(Graph(4, edges)))
        assert len(forms) == 11


class TestCanonicalForm:
    def test_isomorphic_graphs_share_form(self):
        g = gen_path(4)
        for permutation in itertools.permutations(range(4)):
            assert canonical_form(relabel(g, permutation)) == canonical_form(g)

    def test_form_is_isomorphic_to_input(self):
        g = gen_cycle(5)
        assert is_isomorphic(canonical_form(g), g)


class TestRandom:
    def test_extremes(self):
        assert random_graph(5, 0.0, 1) == gen_edgeless(5)
        assert random_graph(5, 1.0, 1) == gen_complete(5)

    def test_same_seed_same_graph(self):
        assert random_graph(5, 0.5, 1) == random_graph(5, 0.5, 1)

    def test_probability_range(self):
        with pytest.raises(GraphInputError):
            random_graph(3, 1.5, 1)

    def test_random_triples_share_prefix(self):
        for m0, m1, m2 in random_triples(30, seed=7):
            assert induced(m1, m0.vertices) == m0
            assert induced(m2, m0.vertices) == m0

    def test_random_triples_deterministic(self):
        assert random_triples(10, seed=3) == random_triples(10, seed=3)

    def test_random_triples_accept_filter(self):
        triples = random_triples(5, seed=3, accept=lambda t: t[0].order >= 1)
        assert all(m0.order >= 1 for m0, _, _ in triples)
