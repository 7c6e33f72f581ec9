"""
规模基准测试 - 按实例族编码并与 KNR 基线比较标签长度
"""
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger
from tqdm import tqdm

from config.config import DEFAULT_SEED
from graphs.generators import gen_family, gen_random_sub
from graphs.graph import degeneracy_order
from graphs.product import realize
from labeling.product_labeler import encode_induced, encode_subgraph, label_stats
from models.descriptor import QMode
from models.report import SizeReport
from utils.file_handler import save_csv
from utils.helpers import index_bits

CSV_COLUMNS = [
    "family", "n", "mode", "max_bits", "mean_bits", "phase1_bits",
    "xor_bits", "phase3_bits", "baseline_bits", "kH", "kG", "mphf_bits_per_key",
]

# 子图模式附加位数的上界常数：α·k(H) + β·log2 n + γ
OVERHEAD_ALPHA = 6
OVERHEAD_BETA = 2
OVERHEAD_GAMMA = 128


def knr_baseline_bits(k: int, n: int) -> int:
    """通用退化度方案的标签长度 (k+1)·⌈log2 n⌉"""
    return (k + 1) * index_bits(n)


def overhead_bound(k: int, n: int) -> float:
    return OVERHEAD_ALPHA * k + OVERHEAD_BETA * math.log2(max(n, 1)) + OVERHEAD_GAMMA


def bench_sizes(
    family: str,
    params: Iterable[int],
    modes: Sequence[str] = ("induced",),
    seed: int = DEFAULT_SEED,
    q_mode: QMode = "paper",
    base: Optional[str] = None,
    density: float = 0.5,
    progress: bool = False,
) -> List[SizeReport]:
    """
    对一个实例族的多个规模编码并统计标签长度

    Args:
        family: 实例族（hypercube/hamming3/grid2/star）
        params: 族的规模参数列表
        modes: induced 和/或 subgraph；子图模式使用按 density 随机删边的实例
        seed: 主种子
        q_mode: paper 或 adaptive
        base: 基础方案，None 表示自动选择
        density: 子图模式保留边的概率
        progress: 是否显示进度条

    Returns:
        每个 (规模, 模式) 一条报告
    """
    reports = []
    for param in tqdm(list(params), desc=f"基准 {family}", disable=not progress):
        instance = gen_family(family, param)
        k_h = degeneracy_order(realize(instance)).k
        for mode in modes:
            if mode == "induced":
                target = instance
                descriptor, labels = encode_induced(target, base, seed=seed, q_mode=q_mode)
                k_g = k_h
            elif mode == "subgraph":
                target = gen_random_sub(instance, density, seed)
                descriptor, labels = encode_subgraph(target, base, seed=seed, q_mode=q_mode)
                k_g = descriptor.k_g
            else:
                raise ValueError(f"未知编码模式: {mode}")

            stats = label_stats(descriptor, labels)
            n = instance.size
            reports.append(SizeReport(
                family=family,
                n=n,
                mode=mode,
                max_bits=stats.max_bits,
                mean_bits=stats.mean_bits,
                phase1_bits=descriptor.phase1_bits,
                xor_bits=descriptor.xor_bits,
                phase3_bits=stats.max_bits - descriptor.induced_bits,
                baseline_bits=knr_baseline_bits(k_g, n),
                kH=k_h,
                kG=k_g,
                mphf_bits_per_key=stats.mphf_bits_per_key,
            ))
            logger.info(f"{family}({param}) {mode}: n={n}, 最长 {stats.max_bits} 位, 基线 {reports[-1].baseline_bits} 位")
    return reports


def save_bench_csv(reports: Sequence[SizeReport], path: Union[str, Path]) -> Path:
    """按固定列顺序写出 CSV"""
    rows: List[Dict] = [r.model_dump() for r in reports]
    return save_csv(rows, path, CSV_COLUMNS)


def fit_log_linear(ns: Sequence[int], bits: Sequence[float]) -> Tuple[float, float, float]:
    """
    最小二乘拟合 bits ≈ a + b·log2 n

    Args:
        ns: 顶点数
        bits: 标签位数

    Returns:
        (a, b, 最大相对残差)
    """
    x = np.log2(np.asarray(ns, dtype=float))
    y = np.asarray(bits, dtype=float)
    b, a = np.polyfit(x, y, 1)
    residual = np.abs(y - (a + b * x)) / np.abs(y)
    return float(a), float(b), float(residual.max())


def quadratic_ratios(ns: Sequence[int], bits: Sequence[float]) -> List[float]:
    """bits / log2²n，与朴素 O(log² n) 方案比较增长形状"""
    return [float(v) / math.log2(n) ** 2 for n, v in zip(ns, bits)]
