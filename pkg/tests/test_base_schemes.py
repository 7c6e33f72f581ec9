"""
基础标签方案
"""
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs.graph import Graph, complete_graph, cycle_graph, hypercube_graph, path_graph
from labeling.base_schemes import (
    check_membership,
    decode_base,
    encode_base,
    make_scheme,
    scheme_for_factors,
    scheme_from_width,
    scheme_size,
)
from labeling.label import Label
from utils.errors import ClassMembershipError, LabelFormatError
from utils.helpers import index_bits


def _assert_exact(scheme, g):
    labels = encode_base(scheme, g)
    assert all(len(lb) == scheme.s for lb in labels)
    assert len(set(labels)) == g.n
    for u, v in combinations(range(g.n), 2):
        assert decode_base(scheme, labels[u], labels[v]) == g.has_edge(u, v)
        assert decode_base(scheme, labels[v], labels[u]) == g.has_edge(u, v)
    for v in range(g.n):
        assert decode_base(scheme, labels[v], labels[v]) is False


class TestSchemes:
    def test_clique_k3(self):
        scheme = make_scheme("clique", 3)
        labels = encode_base(scheme, complete_graph(3))
        assert decode_base(scheme, labels[0], labels[1]) is True
        assert decode_base(scheme, labels[0], labels[0]) is False

    @pytest.mark.parametrize("scheme_id, g", [
        ("clique", complete_graph(7)),
        ("path", path_graph(9)),
        ("cycle", cycle_graph(8)),
        ("knr", hypercube_graph(4)),
        ("row", cycle_graph(6)),
        ("row", hypercube_graph(3)),
    ])
    def test_exact_on_members(self, scheme_id, g):
        k = 4 if scheme_id == "knr" else 0
        _assert_exact(make_scheme(scheme_id, g.n, k), g)

    def test_cycle_wraps(self):
        scheme = make_scheme("cycle", 5)
        labels = encode_base(scheme, cycle_graph(5))
        assert decode_base(scheme, labels[0], labels[4])
        assert not decode_base(scheme, labels[0], labels[2])

    def test_sizes(self):
        assert scheme_size("clique", 8) == 3
        assert scheme_size("path", 9) == 4
        assert scheme_size("cycle", 8) == 3 + 4
        assert scheme_size("knr", 16, k=4) == 5 * 4
        assert scheme_size("row", 6) == 3 + 6

    def test_smaller_graph_than_parameter(self):
        # 规模参数取所有因子的最大值，较小的因子也按同样宽度编码
        scheme = make_scheme("path", 10)
        _assert_exact(scheme, path_graph(4))

    @given(st.integers(min_value=2, max_value=10), st.data())
    def test_knr_on_random_graphs(self, n, data):
        pairs = list(combinations(range(n), 2))
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
        g = Graph(n, edges)
        scheme = scheme_for_factors([g], "knr")
        _assert_exact(scheme, g)
        assert scheme.s == (scheme.k + 1) * index_bits(n)

    @given(st.integers(min_value=1, max_value=10), st.data())
    def test_row_on_random_graphs(self, n, data):
        pairs = list(combinations(range(n), 2))
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        g = Graph(n, edges)
        _assert_exact(make_scheme("row", n), g)


class TestMembership:
    def test_path_scheme_rejects_cycle(self):
        with pytest.raises(ClassMembershipError):
            check_membership(make_scheme("path", 5), cycle_graph(5))

    def test_clique_rejects_path(self):
        with pytest.raises(ClassMembershipError):
            encode_base(make_scheme("clique", 3), path_graph(3))

    def test_knr_degeneracy_limit(self):
        with pytest.raises(ClassMembershipError):
            check_membership(make_scheme("knr", 5, k=2), complete_graph(5))

    def test_too_many_vertices(self):
        with pytest.raises(ClassMembershipError):
            check_membership(make_scheme("clique", 2), complete_graph(3))


class TestSchemeSelection:
    def test_auto_choice(self):
        assert scheme_for_factors([complete_graph(2), complete_graph(3)]).scheme_id == "clique"
        assert scheme_for_factors([path_graph(3), path_graph(5)]).scheme_id == "path"
        assert scheme_for_factors([cycle_graph(4), cycle_graph(3)]).scheme_id == "cycle"
        mixed = scheme_for_factors([path_graph(3), cycle_graph(5)])
        assert (mixed.scheme_id, mixed.k, mixed.n) == ("knr", 2, 5)

    @pytest.mark.parametrize("scheme_id, n, k", [
        ("clique", 6, 0), ("path", 9, 0), ("cycle", 12, 0), ("knr", 16, 3), ("row", 7, 0),
    ])
    def test_rebuild_from_width(self, scheme_id, n, k):
        scheme = make_scheme(scheme_id, n, k)
        assert scheme_from_width(scheme_id, n, scheme.s) == scheme

    def test_rebuild_rejects_bad_width(self):
        with pytest.raises(LabelFormatError):
            scheme_from_width("clique", 8, 5)

    def test_decode_rejects_wrong_length(self):
        scheme = make_scheme("path", 4)
        with pytest.raises(LabelFormatError):
            decode_base(scheme, Label(0, 2), Label(0, 3))
