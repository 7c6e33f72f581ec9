"""
最小完美哈希
"""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from labeling.label import BitReader, BitWriter
from labeling.mphf import (
    THEORETICAL_BITS_PER_KEY,
    Mphf,
    build_mphf,
    deserialize_mphf,
    eval_mphf,
    read_mphf,
    serialize_mphf,
    write_mphf,
)
from utils.errors import LabelFormatError, MphfBuildError


def _assert_bijective(h: Mphf, keys):
    assert sorted(eval_mphf(h, key) for key in keys) == list(range(len(keys)))


class TestBuild:
    def test_single_key(self):
        h = build_mphf([42])
        assert h.k == 1
        assert eval_mphf(h, 42) == 0

    @given(st.sets(st.integers(min_value=0, max_value=(1 << 20) - 1), min_size=1, max_size=200))
    def test_bijective(self, keys):
        keys = sorted(keys)
        h = build_mphf(keys, m=1 << 20)
        _assert_bijective(h, keys)

    def test_large_key_set_uses_displacement(self):
        rng = np.random.default_rng(5)
        keys = [int(x) for x in rng.choice(1 << 20, size=1024, replace=False)]
        h = build_mphf(keys, m=1 << 20)
        assert h.kind == "displace"
        _assert_bijective(h, keys)
        assert h.bit_size <= 4 * len(keys) + 64
        assert h.bits_per_key == h.bit_size / 1024
        assert THEORETICAL_BITS_PER_KEY < h.bits_per_key <= 4 + 64 / 1024

    def test_small_key_set_picks_shorter_encoding(self):
        h = build_mphf([3, 9, 17])
        assert h.kind in ("table", "displace")
        table_bits = 32 + 2 + 6 + 3 * 5
        assert h.bit_size <= table_bits

    def test_deterministic(self):
        keys = list(range(0, 3000, 7))
        assert build_mphf(keys) == build_mphf(keys)

    def test_rejects_bad_keys(self):
        with pytest.raises(ValueError):
            build_mphf([1, 1])
        with pytest.raises(ValueError):
            build_mphf([])
        with pytest.raises(ValueError):
            build_mphf([5], m=4)

    def test_exhaustion(self):
        # 位移上限为1时只能依赖哈希本身恰好无冲突
        keys = list(range(200))
        with pytest.raises(MphfBuildError) as info:
            build_mphf(keys, cap=1, retries=2)
        assert info.value.phase == "mphf"

    def test_empty_cannot_evaluate(self):
        with pytest.raises(LabelFormatError):
            eval_mphf(Mphf.empty(), 0)

    @pytest.mark.slow
    def test_randomized_builds_are_bijective(self):
        rng = np.random.default_rng(20240601)
        builds = 10_000
        for i in range(builds):
            # k 取 1..1024 的对数均匀分布，首尾两次固定取端点
            k = 1 if i == 0 else 1024 if i == 1 else int(2 ** rng.uniform(0, 10))
            m = int(rng.integers(k, (1 << 20) + 1))
            seed = int(rng.integers(0, 1 << 32))
            keys = [int(x) for x in rng.choice(m, size=k, replace=False)]
            h = build_mphf(keys, seed=seed, m=m)
            assert sorted(eval_mphf(h, key) for key in keys) == list(range(k)), (i, k, m, seed)
            assert deserialize_mphf(serialize_mphf(h)) == h, (i, k, m, seed)


class TestSerialization:
    @pytest.mark.parametrize("keys", [[7], [1, 5, 12, 40], list(range(10, 1000, 9))])
    def test_round_trip(self, keys):
        h = build_mphf(keys)
        bits = serialize_mphf(h)
        assert len(bits) == h.bit_size
        again = deserialize_mphf(bits)
        assert again == h
        _assert_bijective(again, keys)

    def test_empty_round_trip(self):
        bits = serialize_mphf(Mphf.empty())
        assert len(bits) == 34
        assert deserialize_mphf(bits).k == 0

    def test_embedded_read_stops_at_end(self):
        h = build_mphf([2, 4, 8, 16, 32])
        writer = BitWriter()
        writer.write(0b101, 3)
        write_mphf(h, writer)
        writer.write(0b11, 2)
        reader = BitReader(writer.to_bits())
        assert reader.read(3) == 0b101
        assert read_mphf(reader) == h
        assert reader.read(2) == 0b11
        assert reader.remaining == 0

    def test_truncated(self):
        bits = serialize_mphf(build_mphf(list(range(100))))
        with pytest.raises(LabelFormatError):
            deserialize_mphf(bits[:-1])

    def test_trailing_bits(self):
        writer = BitWriter()
        write_mphf(build_mphf([1, 2, 3]), writer)
        writer.write(1, 1)
        with pytest.raises(LabelFormatError):
            deserialize_mphf(writer.to_bits())
