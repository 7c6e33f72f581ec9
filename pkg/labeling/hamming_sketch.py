"""
阶段1：汉明距离恰为1的标签

每个副本把元组经随机符号比特 q_i(σ) 约化为二元元组，再按随机划分 p : [d] → [4]
求四个类上的奇偶校验，得到一个4位草图。两元组距离 ≤ 1 时每个副本的草图
汉明距离必然 ≤ 1；距离 > 1 时单个副本误判的概率不超过 15/16。取 q 个独立
副本并在末尾附上元素下标，构造时对全部元素对校验，失败则换种子重来。

标签布局（MSB优先）: [copy_0:4] … [copy_{q-1}:4] [id:⌈log2 n⌉]
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from config.config import (
    ADAPTIVE_ATTEMPTS_PER_LEVEL,
    DEFAULT_SEED,
    MAX_RETRIES,
    PHASE1_EXHAUSTIVE_CAP,
    PHASE1_SAMPLE_PAIRS,
)
from labeling.label import Label
from labeling.prf import (
    SUBKEY_SAMPLE,
    SUBKEY_SKETCH,
    TAG_PARTITION,
    TAG_SYMBOL,
    derive_seed,
    prf64,
)
from models.descriptor import DistanceOneParams, QMode
from utils.errors import LabelFormatError, SketchBuildError
from utils.helpers import index_bits, nibbles_within_one, popcount

# 单副本误判率上界 15/16 对应的 q 系数 2 / log2(16/15)
DEFAULT_Q_FACTOR = 2.0 / math.log2(16 / 15)

_M5 = np.uint64(0x5555555555555555)
_M3 = np.uint64(0x3333333333333333)
_ME = np.uint64(0xEEEEEEEEEEEEEEEE)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_NIBBLES_PER_WORD = 16


def default_q(n: int) -> int:
    """默认副本数 ⌈(2 / log2(16/15))·log2 n⌉，n = 1 时为1"""
    if n <= 1:
        return 1
    return max(1, math.ceil(DEFAULT_Q_FACTOR * math.log2(n)))


def adaptive_q_schedule(n: int, cap: Optional[int] = None) -> List[int]:
    """
    自适应 q 序列：从 ⌈4·log2 n⌉ 开始倍增，封顶于 cap（默认取 default_q）

    Args:
        n: 元素个数
        cap: 上限

    Returns:
        递增的 q 列表，最后一项等于 cap
    """
    cap = default_q(n) if cap is None else cap
    q = max(1, math.ceil(4 * math.log2(n))) if n > 1 else 1
    schedule = []
    while q < cap:
        schedule.append(q)
        q *= 2
    schedule.append(cap)
    return schedule


def default_params(n: int, q_mode: QMode = "paper", max_retries: int = MAX_RETRIES) -> DistanceOneParams:
    return DistanceOneParams(n=n, q=default_q(n), id_bits=index_bits(n), max_retries=max_retries, q_mode=q_mode)


# ==================== 单副本 ====================

def partition_map(seed: int, copy_index: int, d: int) -> np.ndarray:
    """划分映射 p : [d] → [4]"""
    return np.fromiter(
        (prf64(seed, TAG_PARTITION, copy_index, i) & 3 for i in range(d)),
        dtype=np.int64,
        count=d,
    )


def symbol_bit(seed: int, copy_index: int, coordinate: int, symbol: int) -> int:
    """符号比特 q_i(σ)"""
    return prf64(seed, TAG_SYMBOL, copy_index, coordinate, symbol) & 1


def sketch_from_partition(bits: np.ndarray, partition: np.ndarray) -> np.ndarray:
    """
    按划分求各类奇偶校验

    Args:
        bits: (N, d) 的0/1矩阵
        partition: 长 d 的类编号

    Returns:
        长 N 的4位草图，类0为最高位
    """
    onehot = np.eye(4, dtype=np.int64)[partition]
    parity = (np.asarray(bits, dtype=np.int64) @ onehot) & 1
    return ((parity[:, 0] << 3) | (parity[:, 1] << 2) | (parity[:, 2] << 1) | parity[:, 3]).astype(np.uint8)


def binary_copy(S: Sequence[Sequence[int]], seed: int, copy_index: int) -> List[int]:
    """
    二元元组的一个副本：ℓ(x)_i 为 x 在类 P_i = p^{-1}(i) 上的异或

    Args:
        S: {0,1}^d 中的元组
        seed: 种子
        copy_index: 副本编号

    Returns:
        每个元组的4位草图
    """
    bits = np.asarray(S, dtype=np.int64)
    if bits.ndim != 2:
        raise ValueError("元组长度必须一致")
    p = partition_map(seed, copy_index, bits.shape[1])
    return [int(v) for v in sketch_from_partition(bits, p)]


def _symbol_columns(tuples: np.ndarray) -> List[Tuple[np.ndarray, np.ndarray]]:
    return [np.unique(tuples[:, i], return_inverse=True) for i in range(tuples.shape[1])]


def _copy_nibbles(seed: int, copy_index: int, columns, n: int) -> np.ndarray:
    d = len(columns)
    bits = np.empty((n, d), dtype=np.int64)
    for i, (symbols, inverse) in enumerate(columns):
        table = np.fromiter(
            (symbol_bit(seed, copy_index, i, int(s)) for s in symbols),
            dtype=np.int64,
            count=len(symbols),
        )
        bits[:, i] = table[inverse.reshape(-1)]
    return sketch_from_partition(bits, partition_map(seed, copy_index, d))


def alphabet_copy(S: Sequence[Sequence[int]], seed: int, copy_index: int) -> List[int]:
    """
    任意字母表元组的一个副本：先用 q_i(σ) 约化为二元元组，再做 binary_copy

    Args:
        S: Σ^d 中的元组（符号为非负整数）
        seed: 种子
        copy_index: 副本编号

    Returns:
        每个元组的4位草图
    """
    tuples = np.asarray(S, dtype=np.int64)
    if tuples.ndim != 2:
        raise ValueError("元组长度必须一致")
    nib = _copy_nibbles(seed, copy_index, _symbol_columns(tuples), len(tuples))
    return [int(v) for v in nib]


def copy_accepts(a: int, b: int) -> bool:
    """单副本判定 D′：两个4位草图的汉明距离 ≤ 1"""
    return popcount((a ^ b) & 0xF) <= 1


# ==================== 校验 ====================

def _within_one(x: np.ndarray) -> np.ndarray:
    t = (x & _M5) + ((x >> _ONE) & _M5)
    u = (t & _M3) + ((t >> _TWO) & _M3)
    return (u & _ME) == 0


def _pack_words(nibbles: np.ndarray) -> np.ndarray:
    """(N, q) 半字节矩阵 → (N, ⌈q/16⌉) 的 uint64 字，补零的半字节不影响判定"""
    n, q = nibbles.shape
    words = -(-q // _NIBBLES_PER_WORD)
    padded = np.zeros((n, words * _NIBBLES_PER_WORD), dtype=np.uint64)
    padded[:, :q] = nibbles
    out = np.zeros((n, words), dtype=np.uint64)
    for c in range(_NIBBLES_PER_WORD):
        shift = np.uint64(4 * (_NIBBLES_PER_WORD - 1 - c))
        out |= padded[:, c::_NIBBLES_PER_WORD] << shift
    return out


def _count_failures_exhaustive(words: np.ndarray, tuples: np.ndarray) -> int:
    n, w = words.shape
    failures = 0
    for x in range(n - 1):
        cand = np.arange(x + 1, n)
        for j in range(w):
            if cand.size == 0:
                break
            cand = cand[_within_one(words[cand, j] ^ words[x, j])]
        accepted_dist1 = int(((tuples[cand] != tuples[x]).sum(axis=1) == 1).sum())
        all_dist1 = int(((tuples[x + 1:] != tuples[x]).sum(axis=1) == 1).sum())
        failures += (cand.size - accepted_dist1) + (all_dist1 - accepted_dist1)
    return failures


def _count_failures_sampled(words: np.ndarray, tuples: np.ndarray, seed: int, pairs: int) -> int:
    n = len(words)
    rng = np.random.default_rng(derive_seed(seed, SUBKEY_SAMPLE))
    xs = rng.integers(0, n, size=pairs)
    ys = rng.integers(0, n, size=pairs)
    keep = xs != ys
    xs, ys = xs[keep], ys[keep]
    accepted = _within_one(words[xs] ^ words[ys]).all(axis=1)
    dist1 = (tuples[xs] != tuples[ys]).sum(axis=1) == 1
    return int((accepted != dist1).sum())


@dataclass(frozen=True)
class DistanceOneLabeling:
    """阶段1标签集合"""
    params: DistanceOneParams
    labels: Tuple[Label, ...]
    seed: int
    attempts: int = 1
    sampled: bool = False
    failure_history: Tuple[int, ...] = field(default=())


def _draw(tuples: np.ndarray, columns, seed: int, q: int) -> np.ndarray:
    n = len(tuples)
    nibbles = np.empty((n, q), dtype=np.uint8)
    for c in range(q):
        nibbles[:, c] = _copy_nibbles(seed, c, columns, n)
    return nibbles


def _assemble(nibbles: np.ndarray, id_bits: int) -> Tuple[Label, ...]:
    n, q = nibbles.shape
    odd = q % 2
    if odd:
        nibbles = np.concatenate([nibbles, np.zeros((n, 1), dtype=np.uint8)], axis=1)
    packed = ((nibbles[:, 0::2] << 4) | nibbles[:, 1::2]).astype(np.uint8)
    length = 4 * q + id_bits
    labels = []
    for v in range(n):
        sketch = int.from_bytes(packed[v].tobytes(), "big") >> (4 * odd)
        labels.append(Label((sketch << id_bits) | v, length))
    return tuple(labels)


def build_distance_one(
    S: Sequence[Sequence[int]],
    params: Optional[DistanceOneParams] = None,
    seed: int = DEFAULT_SEED,
    exhaustive_cap: int = PHASE1_EXHAUSTIVE_CAP,
    sample_pairs: int = PHASE1_SAMPLE_PAIRS,
) -> DistanceOneLabeling:
    """
    构造距离恰为1的标签（Las Vegas）

    每次尝试用 derive_seed(seed, SUBKEY_SKETCH, attempt) 抽取 q 个副本，对全部
    元素对与真实汉明距离比对，出现任何不一致就换种子。自适应模式下 q 从
    ⌈4·log2 n⌉ 起倍增，每一档尝试 ADAPTIVE_ATTEMPTS_PER_LEVEL 次，
    到达 params.q 后最多再试 max_retries 次。

    Args:
        S: 互不相同的元组
        params: 参数，None 时使用默认 q
        seed: 主种子
        exhaustive_cap: 超过该元素数改为抽样校验，并强制使用 params.q
        sample_pairs: 抽样校验的对数

    Returns:
        通过校验的标签集合
    """
    tuples = np.asarray(S, dtype=np.int64)
    if tuples.ndim != 2 or len(tuples) == 0:
        raise ValueError("需要至少一个等长元组")
    n = len(tuples)
    params = params or default_params(n)
    if params.n != n:
        raise ValueError(f"参数 n={params.n} 与元素个数 {n} 不符")
    if len(np.unique(tuples, axis=0)) != n:
        raise ValueError("元组必须互不相同")

    sampled = n > exhaustive_cap
    if sampled:
        logger.warning(f"n={n} 超过穷举上限 {exhaustive_cap}，改为抽样校验 {sample_pairs} 对并使用 q={params.q}")
        levels = [(params.q, params.max_retries)]
    elif params.q_mode == "adaptive":
        schedule = adaptive_q_schedule(n, params.q)
        levels = [(q, ADAPTIVE_ATTEMPTS_PER_LEVEL) for q in schedule[:-1]]
        levels.append((schedule[-1], params.max_retries))
    else:
        levels = [(params.q, params.max_retries)]

    columns = _symbol_columns(tuples)
    history: List[int] = []
    attempt = 0
    for q, tries in levels:
        for _ in range(tries):
            attempt_seed = derive_seed(seed, SUBKEY_SKETCH, attempt)
            attempt += 1
            nibbles = _draw(tuples, columns, attempt_seed, q)
            words = _pack_words(nibbles)
            if sampled:
                failures = _count_failures_sampled(words, tuples, attempt_seed, sample_pairs)
            else:
                failures = _count_failures_exhaustive(words, tuples)
            history.append(failures)
            if failures == 0:
                used = params.model_copy(update={"q": q})
                logger.debug(f"阶段1通过: n={n}, q={q}, 第 {attempt} 次尝试")
                return DistanceOneLabeling(
                    params=used,
                    labels=_assemble(nibbles, params.id_bits),
                    seed=attempt_seed,
                    attempts=attempt,
                    sampled=sampled,
                    failure_history=tuple(history),
                )
            logger.debug(f"阶段1第 {attempt} 次尝试失败: q={q}, 错误对 {failures}")

    raise SketchBuildError(
        f"阶段1在 {attempt} 次尝试后仍未通过校验（最后一次错误对 {history[-1]}），可以增大 q",
        attempts=attempt,
        failing_pairs=history[-1],
    )


def decode_distance_one(params: DistanceOneParams, label_x: Label, label_y: Label) -> bool:
    """
    无状态判定：所有副本草图距离 ≤ 1，且下标字段不同

    Args:
        params: 标签参数
        label_x: 标签
        label_y: 标签

    Returns:
        两元组汉明距离是否恰为1
    """
    if len(label_x) != params.k_bits or len(label_y) != params.k_bits:
        raise LabelFormatError(
            f"阶段1标签长度应为 {params.k_bits}，实际 {len(label_x)} 与 {len(label_y)}"
        )
    x = label_x.value ^ label_y.value
    if not x & ((1 << params.id_bits) - 1):
        return False
    return nibbles_within_one(x >> params.id_bits, params.q)
