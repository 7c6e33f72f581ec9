"""
阶段1：汉明距离恰为1的草图标签
"""
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from labeling.hamming_sketch import (
    adaptive_q_schedule,
    alphabet_copy,
    binary_copy,
    build_distance_one,
    copy_accepts,
    decode_distance_one,
    default_params,
    default_q,
    partition_map,
    symbol_bit,
)
from labeling.label import Label
from models.descriptor import DistanceOneParams
from utils.errors import LabelFormatError, SketchBuildError
from utils.helpers import nibbles_within_one, popcount


def _hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


class TestParams:
    def test_default_q(self):
        assert default_q(1024) == 215
        assert default_q(1) == 1
        assert default_q(2) == 22

    def test_default_params(self):
        params = default_params(8)
        assert params.id_bits == 3
        assert params.k_bits == 4 * params.q + 3

    def test_id_bits_must_cover_n(self):
        with pytest.raises(ValueError):
            DistanceOneParams(n=8, q=4, id_bits=2)

    def test_adaptive_schedule_ends_at_cap(self):
        schedule = adaptive_q_schedule(256)
        assert schedule[0] == 32
        assert schedule[-1] == default_q(256)
        assert schedule == sorted(schedule)


class TestSingleCopy:
    def test_prf_is_deterministic(self):
        assert (partition_map(7, 3, 10) == partition_map(7, 3, 10)).all()
        assert symbol_bit(7, 0, 2, 5) == symbol_bit(7, 0, 2, 5)

    def test_partition_values_in_range(self):
        p = partition_map(123, 0, 4000)
        assert set(np.unique(p)) <= {0, 1, 2, 3}
        # 4000 次均匀抽样，每类都应接近 1000
        counts = np.bincount(p, minlength=4)
        assert (counts > 850).all()

    @given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=1, max_value=12))
    def test_distance_one_always_accepted(self, seed, d):
        x = [0] * d
        rows = [x] + [[1 if i == j else 0 for i in range(d)] for j in range(d)]
        sketches = binary_copy(rows, seed, 0)
        assert all(copy_accepts(sketches[0], s) for s in sketches[1:])

    @given(
        st.integers(min_value=0, max_value=2**64 - 1),
        st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=8),
        st.data(),
    )
    def test_alphabet_distance_one_accepted(self, seed, x, data):
        i = data.draw(st.integers(min_value=0, max_value=len(x) - 1))
        y = list(x)
        y[i] = x[i] + data.draw(st.integers(min_value=1, max_value=5))
        a, b = alphabet_copy([x, y], seed, 0)
        assert copy_accepts(a, b)

    def test_copy_accepts(self):
        assert copy_accepts(0b1010, 0b1010)
        assert copy_accepts(0b1010, 0b1000)
        assert not copy_accepts(0b1010, 0b0101)


class TestBuild:
    def test_exact_on_hypercube_tuples(self):
        tuples = list(product(range(2), repeat=4))
        labeling = build_distance_one(tuples, seed=1)
        params = labeling.params
        assert len(set(labeling.labels)) == 16
        assert all(len(lb) == params.k_bits for lb in labeling.labels)
        for a, b in combinations(range(16), 2):
            expected = _hamming(tuples[a], tuples[b]) == 1
            assert decode_distance_one(params, labeling.labels[a], labeling.labels[b]) == expected

    def test_id_field_is_vertex_index(self):
        tuples = [(0, 0), (0, 1), (2, 1)]
        labeling = build_distance_one(tuples, seed=5)
        ids = [lb.value & ((1 << labeling.params.id_bits) - 1) for lb in labeling.labels]
        assert ids == [0, 1, 2]

    def test_same_label_not_adjacent(self):
        labeling = build_distance_one([(0,), (1,)], seed=2)
        lb = labeling.labels[0]
        assert decode_distance_one(labeling.params, lb, lb) is False

    def test_deterministic(self):
        tuples = list(product(range(3), repeat=3))
        a = build_distance_one(tuples, seed=99)
        b = build_distance_one(tuples, seed=99)
        assert a.labels == b.labels
        assert a.seed == b.seed and a.attempts == b.attempts

    def test_adaptive_not_longer_than_default(self):
        tuples = list(product(range(2), repeat=6))
        n = len(tuples)
        full = build_distance_one(tuples, default_params(n), seed=4)
        adaptive = build_distance_one(tuples, default_params(n, q_mode="adaptive"), seed=4)
        assert adaptive.params.q <= full.params.q
        for a, b in combinations(range(n), 2):
            expected = _hamming(tuples[a], tuples[b]) == 1
            assert decode_distance_one(adaptive.params, adaptive.labels[a], adaptive.labels[b]) == expected

    def test_exhaustion_raises(self):
        tuples = list(product(range(2), repeat=6))
        params = DistanceOneParams(n=64, q=1, id_bits=6, max_retries=2)
        with pytest.raises(SketchBuildError) as info:
            build_distance_one(tuples, params, seed=0)
        assert info.value.attempts == 2
        assert info.value.failing_pairs > 0
        assert info.value.phase == "phase1"

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            build_distance_one([(0, 1), (0, 1)])

    def test_sampled_above_cap(self):
        tuples = list(product(range(2), repeat=5))
        labeling = build_distance_one(tuples, seed=3, exhaustive_cap=8, sample_pairs=2000)
        assert labeling.sampled
        assert labeling.params.q == default_q(32)

    def test_decode_checks_length(self):
        labeling = build_distance_one([(0,), (1,)], seed=2)
        with pytest.raises(LabelFormatError):
            decode_distance_one(labeling.params, labeling.labels[0], Label(0, 3))


class TestNibbles:
    @given(st.lists(st.integers(min_value=0, max_value=15), min_size=1, max_size=40))
    def test_matches_per_block_popcount(self, blocks):
        value = 0
        for b in blocks:
            value = (value << 4) | b
        expected = all(bin(b).count("1") <= 1 for b in blocks)
        assert nibbles_within_one(value, len(blocks)) == expected

    @given(st.integers(min_value=0, max_value=(1 << 200) - 1))
    def test_popcount(self, value):
        assert popcount(value) == sum(value >> i & 1 for i in range(value.bit_length()))
        assert popcount(0) == 0
