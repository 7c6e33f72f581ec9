"""
图基础、笛卡尔积、退化序与实例生成器
"""
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs.generators import (
    gen_dense_monotone,
    gen_grid,
    gen_hamming,
    gen_hypercube,
    gen_random_factor,
    gen_random_induced,
    gen_random_sub,
    gen_star,
)
from graphs.graph import (
    Graph,
    cartesian_product,
    complete_graph,
    cycle_graph,
    degeneracy_order,
    hypercube_graph,
    path_graph,
    product_tuples,
)
from graphs.io import format_graph, parse_graph, parse_instance, read_graph, write_graph
from graphs.product import EdgeMode, ProductInstance, induced_edges, realize
from utils.errors import GraphFormatError, InstanceFormatError, InstanceValidationError, ProductSizeError


@st.composite
def graphs(draw, max_n: int = 12) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


def _brute_force_product_edges(factors, tuples):
    edges = set()
    for a, b in combinations(range(len(tuples)), 2):
        diff = [j for j in range(len(factors)) if tuples[a][j] != tuples[b][j]]
        if len(diff) == 1 and factors[diff[0]].has_edge(tuples[a][diff[0]], tuples[b][diff[0]]):
            edges.add((a, b))
    return edges


# ==================== Graph ====================

class TestGraph:
    def test_rejects_self_loop_and_duplicates(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])

    @given(graphs())
    def test_adjacency_is_symmetric(self, g: Graph):
        for u in range(g.n):
            for v in g.neighbors(u):
                assert u in g.neighbors(v)
        assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m

    def test_induced_subgraph_relabels(self):
        sub, mapping = cycle_graph(5).induced_subgraph([4, 0, 1])
        assert mapping == {4: 0, 0: 1, 1: 2}
        assert sub.edges == {(0, 1), (1, 2)}

    def test_networkx_view_is_frozen(self):
        view = path_graph(3).as_networkx()
        assert nx.is_frozen(view)
        with pytest.raises(nx.NetworkXError):
            view.add_edge(0, 2)

    def test_from_networkx(self):
        assert Graph.from_networkx(nx.petersen_graph()).m == 15
        with pytest.raises(ValueError):
            Graph.from_networkx(nx.relabel_nodes(nx.path_graph(3), {0: 5}))

    def test_generators_match_networkx(self):
        assert nx.is_isomorphic(hypercube_graph(4).as_networkx(), nx.hypercube_graph(4))
        assert hypercube_graph(0).n == 1
        assert cycle_graph(7).edges == {(i, i + 1) for i in range(6)} | {(0, 6)}


# ==================== cartesian_product ====================

class TestCartesianProduct:
    def test_square(self):
        g = cartesian_product([complete_graph(2), complete_graph(2)])
        assert (g.n, g.m) == (4, 4)
        assert all(g.degree(v) == 2 for v in range(4))

    def test_single_factor_is_identity(self):
        p = path_graph(5)
        assert cartesian_product([p]) == p

    def test_k2_times_k3(self):
        factors = [complete_graph(2), complete_graph(3)]
        g = cartesian_product(factors)
        assert (g.n, g.m) == (6, 9)
        assert g.edges == _brute_force_product_edges(factors, product_tuples([2, 3]))

    def test_hypercube_matches_bit_construction(self):
        assert cartesian_product([complete_graph(2)] * 4) == hypercube_graph(4)

    def test_associative_edge_counts(self):
        a, b, c = path_graph(3), cycle_graph(4), complete_graph(3)
        left = cartesian_product([cartesian_product([a, b]), c])
        right = cartesian_product([a, cartesian_product([b, c])])
        flat = cartesian_product([a, b, c])
        assert left.n == right.n == flat.n == 36
        assert left.m == right.m == flat.m

    def test_budget(self):
        with pytest.raises(ProductSizeError):
            cartesian_product([complete_graph(2)] * 5, budget=16)
        with pytest.raises(ValueError):
            cartesian_product([])


# ==================== realize ====================

class TestRealize:
    def test_hypercube(self, q3):
        g = realize(q3)
        assert (g.n, g.m) == (8, 12)

    def test_explicit_empty(self, q3):
        g = realize(q3.with_edges([]))
        assert (g.n, g.m) == (8, 0)

    def test_star_in_cube(self):
        inst = ProductInstance.create(
            [complete_graph(2)] * 3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
        )
        g = realize(inst)
        assert g.degree(0) == 3
        assert g.m == 3

    def test_non_product_edge_is_named(self, q3):
        with pytest.raises(InstanceValidationError) as info:
            q3.with_edges([(0, 3)])
        assert info.value.edge == (0, 3)

        raw = ProductInstance(
            factors=q3.factors, tuples=q3.tuples, edge_mode=EdgeMode.EXPLICIT, edges=((0, 7),)
        )
        with pytest.raises(InstanceValidationError) as info:
            realize(raw)
        assert info.value.edge == (0, 7)

    def test_duplicate_tuples_rejected(self):
        with pytest.raises(InstanceValidationError):
            ProductInstance.create([complete_graph(2)], [(0,), (0,)])

    def test_factors_restricted_to_used_vertices(self):
        inst = ProductInstance.create([path_graph(10), complete_graph(4)], [(7, 0), (8, 0), (8, 3)])
        assert [f.n for f in inst.factors] == [2, 2]
        assert inst.tuples == ((0, 0), (1, 0), (1, 1))
        assert realize(inst).edges == {(0, 1), (1, 2)}

    @given(st.integers(min_value=0, max_value=2**32), st.integers(min_value=1, max_value=40))
    def test_induced_matches_brute_force(self, seed, size):
        factors = [gen_random_factor(seed + j, 5) for j in range(3)]
        inst = gen_random_induced(factors, size, seed)
        assert set(induced_edges(inst)) == _brute_force_product_edges(inst.factors, inst.tuples)


# ==================== degeneracy_order ====================

class TestDegeneracy:
    @pytest.mark.parametrize("g, k", [
        (path_graph(4), 1),
        (complete_graph(5), 4),
        (hypercube_graph(3), 3),
        (cycle_graph(6), 2),
        (Graph(3), 0),
    ])
    def test_known_values(self, g, k):
        assert degeneracy_order(g).k == k

    @given(graphs())
    def test_later_neighbor_bound(self, g: Graph):
        order = degeneracy_order(g)
        assert sorted(order.order) == list(range(g.n))
        for v in range(g.n):
            assert order.order[order.rank[v]] == v
            assert len(order.later_neighbors(g, v)) <= order.k

    def test_ties_broken_by_index(self):
        assert degeneracy_order(Graph(4)).order == (0, 1, 2, 3)

    @given(graphs(max_n=16))
    def test_k_matches_core_number(self, g: Graph):
        expected = max(nx.core_number(g.as_networkx()).values(), default=0)
        assert degeneracy_order(g).k == expected


# ==================== 生成器 ====================

class TestGenerators:
    def test_families(self):
        assert (realize(gen_hypercube(3)).n, realize(gen_hypercube(3)).m) == (8, 12)
        h = realize(gen_hamming(2, 3))
        assert (h.n, h.m) == (9, 18)
        grid = realize(gen_grid([5, 5]))
        assert (grid.n, grid.m) == (25, 40)

    def test_random_sub_extremes(self):
        base = gen_hypercube(4)
        full = gen_random_sub(base, 1.0, seed=3)
        assert set(full.edges) == set(induced_edges(base))
        assert gen_random_sub(base, 0.0, seed=3).edges == ()

    def test_random_sub_half_density(self):
        sub = gen_random_sub(gen_hypercube(5), 0.5, seed=1)
        assert 0.3 * 80 <= len(sub.edges) <= 0.7 * 80

    def test_random_sub_deterministic(self):
        a = gen_random_sub(gen_hypercube(5), 0.5, seed=11)
        b = gen_random_sub(gen_hypercube(5), 0.5, seed=11)
        assert a == b

    def test_random_sub_density_range(self, q3):
        with pytest.raises(ValueError):
            gen_random_sub(q3, 1.5, seed=0)

    def test_star_avoids_full_product(self):
        inst = gen_star(40)
        g = realize(inst)
        assert g.n == 41
        assert g.degree(0) == 40 and g.m == 40

    @pytest.mark.parametrize("g_prime", [complete_graph(4), cycle_graph(5), hypercube_graph(3)])
    @pytest.mark.parametrize("n", [16, 32, 64])
    def test_dense_monotone_bound(self, g_prime, n):
        g = realize(gen_dense_monotone(g_prime, n))
        assert g.n == n
        assert g.m * 4 >= n * g_prime.min_degree()

    def test_dense_monotone_small(self):
        g = realize(gen_dense_monotone(complete_graph(2), 4))
        assert g.n == 4 and g.m >= 1

    def test_dense_monotone_preconditions(self):
        with pytest.raises(ValueError):
            gen_dense_monotone(complete_graph(4), 3)
        with pytest.raises(ValueError):
            gen_dense_monotone(Graph(3, [(0, 1)]), 8)

    def test_random_induced_size(self):
        factors = [path_graph(4), cycle_graph(5), complete_graph(3)]
        inst = gen_random_induced(factors, 30, seed=9)
        assert inst.size == 30
        assert len(set(inst.tuples)) == 30


# ==================== 文本格式 ====================

class TestGraphIO:
    @given(graphs())
    def test_gr_round_trip(self, g: Graph):
        assert parse_graph(format_graph(g)) == g

    def test_file_round_trip(self, tmp_path):
        g = hypercube_graph(3)
        assert read_graph(write_graph(g, tmp_path / "q3.gr")) == g

    def test_comments_and_blank_lines(self):
        assert parse_graph(["c 注释", "", "p 3 1", "e 0 2"]) == Graph(3, [(0, 2)])

    @pytest.mark.parametrize("lines", [
        [],
        ["p 3"],
        ["p 3 1", "e 1 0"],
        ["p 3 2", "e 0 1"],
        ["p 3 2", "e 0 1", "e 0 1"],
        ["p 3 1", "x 0 1"],
        ["p 3 1", "e 0 -1"],
    ])
    def test_gr_rejects(self, lines):
        with pytest.raises(GraphFormatError):
            parse_graph(lines)

    @pytest.mark.parametrize("factor_edges", [["0 0"], ["0 1", "1 0"], ["0 2"]])
    def test_cpi_rejects_bad_factor(self, factor_edges):
        lines = ["factors 1", f"factor 2 {len(factor_edges)}", *factor_edges,
                 "vertices 1", "0", "edges induced"]
        with pytest.raises(InstanceFormatError, match="因子 0"):
            parse_instance(lines)
