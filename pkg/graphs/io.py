"""
图与实例的文本格式

.gr:  `c` 注释行；`p <n> <m>`；m 行 `e <u> <v>`（u < v）
.cpi: `factors <d>`；每个因子 `factor <n_i> <m_i>` 加 m_i 行 `u v`；
      `vertices <N>` 加 N 行元组；`edges induced` 或 `edges explicit <M>` 加 M 行 `u v`
"""
from pathlib import Path
from typing import Iterable, Iterator, List, Tuple, Union

import networkx as nx
from loguru import logger

from graphs.graph import Graph
from graphs.product import ProductInstance
from utils.errors import GraphFormatError, InstanceFormatError, InstanceValidationError
from utils.file_handler import read_lines, write_lines


def _content_lines(lines: Iterable[str]) -> Iterator[Tuple[int, List[str]]]:
    """跳过空行与 c 注释行，产出 (行号, 词列表)"""
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        yield lineno, tokens


def _ints(tokens: List[str], lineno: int, error_cls) -> List[int]:
    try:
        values = [int(t) for t in tokens]
    except ValueError as e:
        raise error_cls(f"第 {lineno} 行: 非法整数 {tokens}") from e
    if any(v < 0 for v in values):
        raise error_cls(f"第 {lineno} 行: 不允许负数 {tokens}")
    return values


def _edge_list_graph(n: int, edges: Iterable[Tuple[int, int]], error_cls) -> Graph:
    """按边表逐条 add_edge 构造 networkx 图，拒绝重复边后转为 Graph"""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    for u, v in edges:
        if g.has_edge(u, v):
            raise error_cls(f"重复的边: ({u}, {v})")
        g.add_edge(u, v)
    if g.number_of_nodes() != n:
        raise error_cls(f"边的端点超出 0..{n - 1}")
    try:
        return Graph.from_networkx(g)
    except ValueError as e:
        raise error_cls(str(e)) from e


# ==================== .gr ====================

def format_graph(g: Graph) -> List[str]:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return lines


def parse_graph(lines: Iterable[str]) -> Graph:
    """
    解析 .gr 文本

    Args:
        lines: 文本行

    Returns:
        图
    """
    it = _content_lines(lines)
    try:
        lineno, tokens = next(it)
    except StopIteration:
        raise GraphFormatError("缺少 p 头部行") from None
    if tokens[0] != "p" or len(tokens) != 3:
        raise GraphFormatError(f"第 {lineno} 行: 应为 'p <n> <m>'")
    n, m = _ints(tokens[1:], lineno, GraphFormatError)

    edges = []
    for lineno, tokens in it:
        if tokens[0] != "e" or len(tokens) != 3:
            raise GraphFormatError(f"第 {lineno} 行: 应为 'e <u> <v>'")
        u, v = _ints(tokens[1:], lineno, GraphFormatError)
        if not u < v < n:
            raise GraphFormatError(f"第 {lineno} 行: 需要 0 ≤ u < v < {n}")
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(f"头部声明 {m} 条边，实际 {len(edges)} 条")
    return _edge_list_graph(n, edges, GraphFormatError)


def write_graph(g: Graph, path: Union[str, Path]) -> Path:
    return write_lines(format_graph(g), path)


def read_graph(path: Union[str, Path]) -> Graph:
    g = parse_graph(read_lines(path))
    logger.debug(f"读取图 {path}: n={g.n}, m={g.m}")
    return g


# ==================== .cpi ====================

def format_instance(instance: ProductInstance) -> List[str]:
    lines = [f"factors {instance.d}"]
    for f in instance.factors:
        lines.append(f"factor {f.n} {f.m}")
        lines.extend(f"{u} {v}" for u, v in f.sorted_edges())
    lines.append(f"vertices {instance.size}")
    lines.extend(" ".join(map(str, t)) for t in instance.tuples)
    if instance.is_induced:
        lines.append("edges induced")
    else:
        edges = instance.edges or ()
        lines.append(f"edges explicit {len(edges)}")
        lines.extend(f"{a} {b}" for a, b in edges)
    return lines


class _Cursor:
    """带行号的内容行游标"""

    def __init__(self, lines: Iterable[str]):
        self._it = _content_lines(lines)
        self.lineno = 0

    def next(self, what: str) -> List[str]:
        try:
            self.lineno, tokens = next(self._it)
        except StopIteration:
            raise InstanceFormatError(f"文件提前结束，缺少 {what}") from None
        return tokens

    def header(self, keyword: str, arity: int) -> List[int]:
        tokens = self.next(keyword)
        if tokens[0] != keyword or len(tokens) != arity + 1:
            raise InstanceFormatError(f"第 {self.lineno} 行: 应为 '{keyword}' 加 {arity} 个整数")
        return _ints(tokens[1:], self.lineno, InstanceFormatError)

    def row(self, arity: int, what: str) -> List[int]:
        tokens = self.next(what)
        if len(tokens) != arity:
            raise InstanceFormatError(f"第 {self.lineno} 行: {what} 应有 {arity} 个整数")
        return _ints(tokens, self.lineno, InstanceFormatError)

    def rest(self) -> List[List[str]]:
        return [tokens for _, tokens in self._it]


def parse_instance(lines: Iterable[str]) -> ProductInstance:
    """
    解析 .cpi 文本

    Args:
        lines: 文本行

    Returns:
        乘积实例（经过 ProductInstance.create 校验）
    """
    cur = _Cursor(lines)
    (d,) = cur.header("factors", 1)
    if d < 1:
        raise InstanceFormatError("因子数必须至少为1")

    factors = []
    for i in range(d):
        n_i, m_i = cur.header("factor", 2)
        edges = [tuple(cur.row(2, f"因子 {i} 的边")) for _ in range(m_i)]
        try:
            factors.append(_edge_list_graph(n_i, edges, InstanceFormatError))
        except InstanceFormatError as e:
            raise InstanceFormatError(f"因子 {i}: {e}") from e

    (count,) = cur.header("vertices", 1)
    tuples = [tuple(cur.row(d, "元组")) for _ in range(count)]

    tokens = cur.next("edges 行")
    if tokens == ["edges", "induced"]:
        explicit = None
    elif len(tokens) == 3 and tokens[:2] == ["edges", "explicit"]:
        (m,) = _ints(tokens[2:], cur.lineno, InstanceFormatError)
        explicit = [tuple(cur.row(2, "显式边")) for _ in range(m)]
    else:
        raise InstanceFormatError(f"第 {cur.lineno} 行: 应为 'edges induced' 或 'edges explicit <M>'")

    if cur.rest():
        raise InstanceFormatError("文件末尾存在多余内容")

    try:
        return ProductInstance.create(factors, tuples, edges=explicit)
    except InstanceValidationError as e:
        raise InstanceFormatError(str(e)) from e


def write_instance(instance: ProductInstance, path: Union[str, Path]) -> Path:
    return write_lines(format_instance(instance), path)


def read_instance(path: Union[str, Path]) -> ProductInstance:
    instance = parse_instance(read_lines(path))
    logger.debug(f"读取实例 {path}: d={instance.d}, N={instance.size}, 模式={instance.edge_mode.value}")
    return instance
