"""
实例生成器 - 超立方体、汉明图、网格、随机子图、稠密单调实例等
"""
import math
from typing import List, Sequence

import numpy as np
from loguru import logger

from config.config import PRODUCT_BUDGET
from graphs.graph import (
    Graph,
    check_product_budget,
    complete_graph,
    cycle_graph,
    path_graph,
    product_tuples,
)
from graphs.product import ProductInstance, induced_edges

FACTOR_KINDS = ("path", "cycle", "clique")


def _full_instance(factors: List[Graph], budget: int) -> ProductInstance:
    check_product_budget([f.n for f in factors], budget)
    return ProductInstance.create(factors, product_tuples([f.n for f in factors]))


def gen_hypercube(d: int, budget: int = PRODUCT_BUDGET) -> ProductInstance:
    """Q_d：d 个 K_2 的完整笛卡尔积"""
    if d < 1:
        raise ValueError(f"维数必须为正: {d}")
    return _full_instance([complete_graph(2)] * d, budget)


def gen_hamming(d: int, a: int, budget: int = PRODUCT_BUDGET) -> ProductInstance:
    """汉明图 K_a^d"""
    if d < 1 or a < 2:
        raise ValueError(f"汉明图参数不合法: d={d}, a={a}")
    return _full_instance([complete_graph(a)] * d, budget)


def gen_grid(dims: Sequence[int], budget: int = PRODUCT_BUDGET) -> ProductInstance:
    """网格：路径因子的完整笛卡尔积"""
    if not dims or any(s < 1 for s in dims):
        raise ValueError(f"网格尺寸不合法: {list(dims)}")
    return _full_instance([path_graph(s) for s in dims], budget)


def gen_star(leaves: int) -> ProductInstance:
    """
    嵌入 K_2^leaves 的星 K_{1,leaves}：全零元组与所有单位向量

    不物化笛卡尔积，leaves 可以很大。
    """
    if leaves < 1:
        raise ValueError(f"叶子数必须为正: {leaves}")
    tuples = [tuple([0] * leaves)]
    for i in range(leaves):
        t = [0] * leaves
        t[i] = 1
        tuples.append(tuple(t))
    return ProductInstance.create([complete_graph(2)] * leaves, tuples)


def gen_random_sub(instance_base: ProductInstance, density: float, seed: int) -> ProductInstance:
    """
    随机子图：每条诱导边以概率 density 独立保留

    Args:
        instance_base: 基础实例（按其诱导实现取边）
        density: 保留概率，0 ≤ density ≤ 1
        seed: 随机种子

    Returns:
        显式边实例
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density 必须在 [0, 1] 内: {density}")
    base = instance_base.as_induced()
    edges = induced_edges(base)
    rng = np.random.default_rng(seed)
    keep = rng.random(len(edges)) < density
    kept = [e for e, k in zip(edges, keep) if k]
    logger.debug(f"随机子图: 保留 {len(kept)}/{len(edges)} 条边 (density={density})")
    return base.with_edges(kept)


def gen_dense_monotone(g_prime: Graph, n: int) -> ProductInstance:
    """
    沿坐标轴放置 g' 副本得到的 n 顶点稠密实例

    副本 V_i 为第 i 维取遍 g' 的顶点、其余维固定为锚点 0 的元组，所有副本共享
    锚点 (0, …, 0)。取 d = ⌈(n−1)/(n_1−1)⌉ 个副本，再从 V_1 删去编号最大的
    m = d(n_1−1)+1−n 个非锚点顶点，恰好剩下 n 个顶点。

    Args:
        g_prime: 最小度 ≥ 1 的因子图
        n: 目标顶点数，n ≥ |V(g')|

    Returns:
        诱导实例
    """
    n1 = g_prime.n
    if n1 < 2 or g_prime.min_degree() < 1:
        raise ValueError("g' 的最小度必须至少为1")
    if n < n1:
        raise ValueError(f"n={n} 小于 g' 的顶点数 {n1}")

    d = math.ceil((n - 1) / (n1 - 1))
    m = d * (n1 - 1) + 1 - n
    tuples = [tuple([0] * d)]
    for i in range(d):
        top = n1 - m if i == 0 else n1
        for v in range(1, top):
            t = [0] * d
            t[i] = v
            tuples.append(tuple(t))
    logger.debug(f"稠密单调实例: d={d}, 删除 {m} 个顶点, 共 {len(tuples)} 个顶点")
    return ProductInstance.create([g_prime] * d, tuples)


def gen_random_factor(seed: int, max_size: int = 6, kinds: Sequence[str] = FACTOR_KINDS) -> Graph:
    """
    随机因子图：从 kinds 中随机选择类型，规模在 [2, max_size] 内（环至少3）

    Args:
        seed: 随机种子
        max_size: 最大顶点数
        kinds: 可选类型（path/cycle/clique）

    Returns:
        因子图
    """
    rng = np.random.default_rng(seed)
    kind = kinds[int(rng.integers(len(kinds)))]
    low = 3 if kind == "cycle" else 2
    size = int(rng.integers(low, max(low, max_size) + 1))
    if kind == "path":
        return path_graph(size)
    if kind == "cycle":
        return cycle_graph(size)
    if kind == "clique":
        return complete_graph(size)
    raise ValueError(f"未知因子类型: {kind}")


def gen_random_induced(
    factors: Sequence[Graph],
    size: int,
    seed: int,
    budget: int = PRODUCT_BUDGET,
) -> ProductInstance:
    """
    从笛卡尔积中均匀随机选取 size 个不同元组得到的诱导实例

    Args:
        factors: 因子图
        size: 选取的元组数（超过乘积规模时取全部）
        seed: 随机种子
        budget: 乘积规模上限

    Returns:
        诱导实例（因子已限制到用到的顶点）
    """
    sizes = [f.n for f in factors]
    total = check_product_budget(sizes, budget)
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(total, size=min(size, total), replace=False))
    coords = np.unravel_index(picks, sizes)
    tuples = [tuple(int(c[i]) for c in coords) for i in range(len(picks))]
    return ProductInstance.create(factors, tuples)


def gen_family(family: str, param: int) -> ProductInstance:
    """
    按族名和单个规模参数生成实例（基准测试使用）

    hypercube: Q_param；hamming3: K_3^param；grid2: param×param 网格；
    star: K_{1,param}。
    """
    if family == "hypercube":
        return gen_hypercube(param)
    if family == "hamming3":
        return gen_hamming(param, 3)
    if family == "grid2":
        return gen_grid([param, param])
    if family == "star":
        return gen_star(param)
    raise ValueError(f"未知实例族: {family}")
