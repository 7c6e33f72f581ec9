"""
笛卡尔积实例 - 因子图 + 嵌入的元组集合 + 边模式

实例即 G ∈ her(F^□)（诱导模式）或 G ∈ mon(F^□)（显式边模式）的证书。
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from graphs.graph import Edge, Graph
from utils.errors import InstanceValidationError

VertexTuple = Tuple[int, ...]


class EdgeMode(str, Enum):
    INDUCED = "induced"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class ProductInstance:
    """
    笛卡尔积实例

    请使用 ProductInstance.create 构造：它会校验不变式，并把每个因子限制到
    实际用到的顶点上（按原编号升序重新编号）。
    """
    factors: Tuple[Graph, ...]
    tuples: Tuple[VertexTuple, ...]
    edge_mode: EdgeMode = EdgeMode.INDUCED
    edges: Optional[Tuple[Edge, ...]] = field(default=None)

    @classmethod
    def create(
        cls,
        factors: Sequence[Graph],
        tuples: Iterable[Sequence[int]],
        edges: Optional[Iterable[Tuple[int, int]]] = None,
        restrict: bool = True,
    ) -> "ProductInstance":
        """
        校验并构造实例

        Args:
            factors: 因子图（d ≥ 1）
            tuples: 元组列表，tuple[j] 为因子 j 的顶点
            edges: None 表示诱导模式；否则为显式保留的边（元组下标对）
            restrict: 是否把因子限制到用到的顶点

        Returns:
            实例
        """
        factors = tuple(factors)
        d = len(factors)
        if d < 1:
            raise InstanceValidationError("至少需要一个因子")

        rows: List[VertexTuple] = []
        for i, t in enumerate(tuples):
            t = tuple(int(x) for x in t)
            if len(t) != d:
                raise InstanceValidationError(f"第 {i} 个元组长度为 {len(t)}，应为 {d}")
            for j, x in enumerate(t):
                if not 0 <= x < factors[j].n:
                    raise InstanceValidationError(f"第 {i} 个元组的第 {j} 维 {x} 超出因子顶点范围")
            rows.append(t)
        if len(set(rows)) != len(rows):
            raise InstanceValidationError("元组存在重复")

        if restrict:
            factors, rows = _restrict(factors, rows)

        instance = cls(factors=factors, tuples=tuple(rows))
        if edges is None:
            return instance

        normalized = set()
        for a, b in edges:
            a, b = int(a), int(b)
            e = (a, b) if a < b else (b, a)
            if not 0 <= e[0] < e[1] < len(rows):
                raise InstanceValidationError(f"显式边 {e} 的端点不合法", edge=e)
            if e in normalized:
                raise InstanceValidationError(f"重复的显式边 {e}", edge=e)
            if not instance.is_product_edge(*e):
                raise InstanceValidationError(
                    f"显式边 {e} 不是乘积边: {rows[e[0]]} 与 {rows[e[1]]}", edge=e
                )
            normalized.add(e)
        return cls(
            factors=factors,
            tuples=tuple(rows),
            edge_mode=EdgeMode.EXPLICIT,
            edges=tuple(sorted(normalized)),
        )

    @property
    def d(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        """实例顶点数 N"""
        return len(self.tuples)

    @property
    def is_induced(self) -> bool:
        return self.edge_mode == EdgeMode.INDUCED

    @cached_property
    def index_of(self) -> Dict[VertexTuple, int]:
        return {t: i for i, t in enumerate(self.tuples)}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges or ())

    def differing_coordinate(self, a: int, b: int) -> Optional[int]:
        """元组 a、b 恰有一维不同时返回该维，否则返回 None"""
        diff = None
        for j, (x, y) in enumerate(zip(self.tuples[a], self.tuples[b])):
            if x != y:
                if diff is not None:
                    return None
                diff = j
        return diff

    def is_product_edge(self, a: int, b: int) -> bool:
        """乘积边谓词：恰一维不同，且该维在对应因子中相邻"""
        j = self.differing_coordinate(a, b)
        return j is not None and self.factors[j].has_edge(self.tuples[a][j], self.tuples[b][j])

    def as_induced(self) -> "ProductInstance":
        """同一元组集合的诱导实例"""
        if self.is_induced:
            return self
        return ProductInstance(factors=self.factors, tuples=self.tuples)

    def with_edges(self, edges: Iterable[Tuple[int, int]]) -> "ProductInstance":
        """同一元组集合上的显式边实例"""
        return ProductInstance.create(self.factors, self.tuples, edges=edges, restrict=False)


def _restrict(
    factors: Tuple[Graph, ...], rows: List[VertexTuple]
) -> Tuple[Tuple[Graph, ...], List[VertexTuple]]:
    new_factors = []
    mappings = []
    for j, f in enumerate(factors):
        used = sorted({t[j] for t in rows})
        if len(used) == f.n:
            new_factors.append(f)
            mappings.append(None)
            continue
        sub, mapping = f.induced_subgraph(used)
        logger.debug(f"因子 {j} 限制到用到的 {len(used)}/{f.n} 个顶点")
        new_factors.append(sub)
        mappings.append(mapping)
    if all(m is None for m in mappings):
        return tuple(new_factors), rows
    new_rows = [
        tuple(x if mappings[j] is None else mappings[j][x] for j, x in enumerate(t))
        for t in rows
    ]
    return tuple(new_factors), new_rows


def induced_edges(instance: ProductInstance) -> List[Edge]:
    """
    诱导模式下的全部边，按邻居查表枚举，不物化完整笛卡尔积

    Args:
        instance: 实例

    Returns:
        升序边列表 (a, b)，a < b
    """
    index_of = instance.index_of
    edges = []
    for a, t in enumerate(instance.tuples):
        for j, f in enumerate(instance.factors):
            x = t[j]
            for y in f.neighbors(x):
                if y < x:
                    continue
                b = index_of.get(t[:j] + (y,) + t[j + 1:])
                if b is not None:
                    edges.append((a, b) if a < b else (b, a))
    edges.sort()
    return edges


def realize(instance: ProductInstance) -> Graph:
    """
    实现实例：诱导模式得到元组诱导的子图 H，显式模式得到恰含所列边的图 G

    结果的顶点 i 对应元组 i。
    """
    if instance.is_induced:
        return Graph(instance.size, induced_edges(instance))
    for a, b in instance.edges or ():
        if not instance.is_product_edge(a, b):
            raise InstanceValidationError(f"显式边 {(a, b)} 不是乘积边", edge=(a, b))
    return Graph(instance.size, instance.edges or ())
