"""
图的基础表示 - 基于networkx的简单无向图、笛卡尔积与退化序

顶点为 0..n-1，边存为有序对 (u, v)，u < v。
"""
import heapq
import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
from loguru import logger

from config.config import PRODUCT_BUDGET
from utils.errors import ProductSizeError

Edge = Tuple[int, int]


class Graph:
    """
    简单无向图（构造后不可变），内部为冻结的 networkx.Graph

    Args:
        n: 顶点数
        edges: 边的可迭代对象，每条边两个端点顺序任意
    """

    __slots__ = ("_g", "_edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"顶点数不能为负: {n}")
        g = nx.Graph()
        g.add_nodes_from(range(n))
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"不允许自环: ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"边 ({u}, {v}) 的端点超出 0..{n - 1}")
            if g.has_edge(u, v):
                raise ValueError(f"重复的边: {(min(u, v), max(u, v))}")
            g.add_edge(u, v)
        self._g = nx.freeze(g)
        self._edges: FrozenSet[Edge] = frozenset((min(e), max(e)) for e in g.edges)
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(g.adj[v])) for v in range(n))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """从顶点恰为 0..n-1 的 networkx 图构造"""
        n = g.number_of_nodes()
        if set(g.nodes) != set(range(n)):
            raise ValueError("networkx 图的顶点必须恰为 0..n-1")
        return cls(n, g.edges)

    def as_networkx(self) -> nx.Graph:
        """冻结的 networkx 视图，修改会抛出 NetworkXError"""
        return self._g

    @property
    def n(self) -> int:
        return self._g.number_of_nodes()

    @property
    def m(self) -> int:
        return self._g.number_of_edges()

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def sorted_edges(self) -> List[Edge]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """v 的邻居（升序）"""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return self._g.degree[v]

    def has_edge(self, u: int, v: int) -> bool:
        return self._g.has_edge(u, v)

    def min_degree(self) -> int:
        return min((d for _, d in self._g.degree), default=0)

    def induced_subgraph(self, vertices: Sequence[int]) -> Tuple["Graph", Dict[int, int]]:
        """
        诱导子图，按 vertices 的顺序重新编号

        Args:
            vertices: 保留的顶点（互不相同）

        Returns:
            (子图, 原顶点 -> 新顶点 的映射)
        """
        mapping = {v: i for i, v in enumerate(vertices)}
        if len(mapping) != len(vertices):
            raise ValueError("诱导子图的顶点集合存在重复")
        sub = nx.relabel_nodes(self._g.subgraph(vertices), mapping, copy=True)
        return Graph(len(vertices), sub.edges), mapping

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegeneracyOrder:
    """
    退化序

    order[r] 是秩为 r 的顶点，rank[v] 是顶点 v 的秩；
    每个顶点至多有 k 个秩更大的邻居。
    """
    order: Tuple[int, ...]
    rank: Tuple[int, ...]
    k: int

    def later_neighbors(self, g: Graph, v: int) -> List[int]:
        """v 在序中排在其后的邻居 N⁺(v)"""
        rv = self.rank[v]
        return [u for u in g.neighbors(v) if self.rank[u] > rv]


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """
    反复删除最小度顶点（同度取下标最小者）得到退化序

    删除顺序决定编码结果，因此自行剥离而不用 networkx 的核分解顺序；
    k 与 networkx.core_number 的最大值一致。

    Args:
        g: 图

    Returns:
        退化序，k 为删除时度数的最大值，即图的退化度
    """
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    heap = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)

    order: List[int] = []
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        k = max(k, d)
        for u in g.neighbors(v):
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))

    assert k == max(nx.core_number(g.as_networkx()).values(), default=0)

    rank = [0] * g.n
    for r, v in enumerate(order):
        rank[v] = r
    return DegeneracyOrder(order=tuple(order), rank=tuple(rank), k=k)


def check_product_budget(sizes: Sequence[int], budget: int = PRODUCT_BUDGET) -> int:
    """
    检查完整笛卡尔积的顶点数是否在预算内

    Returns:
        笛卡尔积顶点数
    """
    total = math.prod(sizes)
    if total > budget:
        raise ProductSizeError(f"笛卡尔积顶点数 {total} 超出预算 {budget}")
    return total


def product_tuples(sizes: Sequence[int]) -> List[Tuple[int, ...]]:
    """混合进制顺序（最后一维变化最快）枚举全部元组"""
    return list(product(*(range(s) for s in sizes)))


def cartesian_product(factors: Sequence[Graph], budget: int = PRODUCT_BUDGET) -> Graph:
    """
    完整笛卡尔积 G_1 □ ⋯ □ G_d

    顶点按混合进制编号：元组 (x_1, …, x_d) 的下标为 Σ x_j·stride_j，
    最后一维的 stride 为1。

    Args:
        factors: 因子图列表（至少一个）
        budget: 顶点数上限

    Returns:
        乘积图
    """
    if not factors:
        raise ValueError("笛卡尔积至少需要一个因子")
    total = check_product_budget([f.n for f in factors], budget)

    acc = factors[0].as_networkx()
    for f in factors[1:]:
        # 节点 (a, x) 编号为 a·n_f + x，保持混合进制顺序
        size = f.n
        acc = nx.relabel_nodes(
            nx.cartesian_product(acc, f.as_networkx()),
            lambda node, size=size: node[0] * size + node[1],
        )

    logger.debug(f"笛卡尔积: {len(factors)} 个因子, {total} 个顶点, {acc.number_of_edges()} 条边")
    return Graph.from_networkx(acc)


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    """环 C_n，要求 n ≥ 3"""
    if n < 3:
        raise ValueError(f"环至少需要3个顶点: {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def hypercube_graph(d: int) -> Graph:
    """超立方体 Q_d：顶点为 d 位整数，相差一位即相邻"""
    if d < 0:
        raise ValueError(f"维数不能为负: {d}")
    if d == 0:
        return Graph(1)
    cube = nx.hypercube_graph(d)

    def to_int(node) -> int:
        bits = node if isinstance(node, tuple) else (node,)
        return sum(bit << i for i, bit in enumerate(bits))

    return Graph.from_networkx(nx.relabel_nodes(cube, to_int))
