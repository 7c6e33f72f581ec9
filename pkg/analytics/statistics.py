"""
统计检验模块 - 阶段1单副本接受率与 Las Vegas 重试次数
"""
import math
from itertools import product
from typing import List, Sequence, Tuple

import numpy as np
from loguru import logger

from config.config import DEFAULT_SEED
from graphs.generators import gen_hypercube
from labeling.hamming_sketch import (
    alphabet_copy,
    build_distance_one,
    copy_accepts,
    default_params,
    sketch_from_partition,
)
from labeling.prf import derive_seed
from labeling.xor_lift import build_lift
from models.report import Phase1StatReport

# 统计试验用的子密钥，与编码用的子密钥互不重叠
SUBKEY_STAT_TRIAL = 0x61
SUBKEY_PROFILE = 0x62

MIN_TRIALS = 1000
SIGMA = 3.0


def binomial_ci(successes: int, trials: int, z: float = SIGMA) -> Tuple[float, float]:
    """
    Wilson 置信区间

    Args:
        successes: 成功次数
        trials: 试验次数
        z: 标准差倍数

    Returns:
        (下界, 上界)
    """
    if trials <= 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def exhaustive_binary_accept_rate(x: Sequence[int], y: Sequence[int]) -> float:
    """
    枚举全部 4^d 个划分映射，求单副本接受 (x, y) 的精确比例

    Args:
        x: 二元元组
        y: 二元元组

    Returns:
        接受比例
    """
    d = len(x)
    if len(y) != d:
        raise ValueError("元组长度不一致")
    bits = np.asarray([x, y], dtype=np.int64)
    accepted = 0
    for p in product(range(4), repeat=d):
        a, b = sketch_from_partition(bits, np.asarray(p, dtype=np.int64))
        accepted += copy_accepts(int(a), int(b))
    return accepted / 4 ** d


def stat_test_phase1(d: int, sigma_size: int, trials: int, seed: int = DEFAULT_SEED) -> Phase1StatReport:
    """
    蒙特卡洛估计单副本接受率

    每次试验换一个种子，随机取 x，再取与 x 距离为1的 y1 和距离为 r ∈ [2, d] 的 y2。

    Args:
        d: 维数
        sigma_size: 字母表大小（≥ 2）
        trials: 试验次数（≥ 1000）
        seed: 种子

    Returns:
        统计报告
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"试验次数至少为 {MIN_TRIALS}: {trials}")
    if d < 1 or sigma_size < 2:
        raise ValueError(f"参数不合法: d={d}, sigma_size={sigma_size}")

    rng = np.random.default_rng(seed)
    dist1_ok = 0
    far_ok = 0
    far_trials = 0
    for t in range(trials):
        x = rng.integers(0, sigma_size, size=d)
        y1 = x.copy()
        i = int(rng.integers(d))
        y1[i] = (y1[i] + int(rng.integers(1, sigma_size))) % sigma_size
        rows = [x, y1]
        if d >= 2:
            r = int(rng.integers(2, d + 1))
            coords = rng.choice(d, size=r, replace=False)
            y2 = x.copy()
            y2[coords] = (y2[coords] + rng.integers(1, sigma_size, size=r)) % sigma_size
            rows.append(y2)
        sketches = alphabet_copy(rows, derive_seed(seed, SUBKEY_STAT_TRIAL, t), 0)
        dist1_ok += copy_accepts(sketches[0], sketches[1])
        if d >= 2:
            far_trials += 1
            far_ok += copy_accepts(sketches[0], sketches[2])

    far_rate = far_ok / far_trials if far_trials else 0.0
    low, high = binomial_ci(far_ok, far_trials) if far_trials else (0.0, 0.0)
    exhaustive = exhaustive_binary_accept_rate((0, 0), (1, 1)) if d == 2 else None
    report = Phase1StatReport(
        d=d,
        sigma_size=sigma_size,
        trials=trials,
        dist1_accept_rate=dist1_ok / trials,
        distgt1_accept_rate=far_rate,
        ci_low=low,
        ci_high=high,
        exhaustive_binary_rate=exhaustive,
    )
    logger.info(
        f"阶段1统计 d={d} |Σ|={sigma_size}: 距离1接受率 {report.dist1_accept_rate:.4f}, "
        f"距离>1接受率 {far_rate:.4f} [{low:.4f}, {high:.4f}]"
    )
    return report


def phase1_retry_profile(d: int, builds: int, seed: int = DEFAULT_SEED, q_mode: str = "paper") -> List[int]:
    """
    在 Q_d 的全部元组上重复构造阶段1标签，返回每次构造的尝试次数

    Args:
        d: 超立方体维数（n = 2^d）
        builds: 构造次数
        seed: 种子
        q_mode: paper 或 adaptive

    Returns:
        尝试次数列表
    """
    tuples = gen_hypercube(d).tuples
    params = default_params(len(tuples), q_mode=q_mode)
    attempts = []
    for b in range(builds):
        labeling = build_distance_one(tuples, params, seed=derive_seed(seed, SUBKEY_PROFILE, b))
        attempts.append(labeling.attempts)
    logger.info(f"阶段1重试分布 (n={len(tuples)}): 中位数 {float(np.median(attempts)):.1f}, 最大 {max(attempts)}")
    return attempts


def lift_retry_profile(s: int, builds: int, seed: int = DEFAULT_SEED) -> List[int]:
    """
    在完整定义域 {0,1}^s 上重复构造XOR提升，返回每次构造的尝试次数

    Args:
        s: 基础标签位宽
        builds: 构造次数
        seed: 种子

    Returns:
        尝试次数列表
    """
    domain = range(1 << s)
    attempts = [
        build_lift(domain, s, seed=derive_seed(seed, SUBKEY_PROFILE, b)).attempts
        for b in range(builds)
    ]
    logger.info(f"XOR提升重试分布 (s={s}): 中位数 {float(np.median(attempts)):.1f}, 最大 {max(attempts)}")
    return attempts
