"""
标签文件（.lbl）

    第1行  scheme cartlabel v1 mode <m> n <n> seed <hex16> q <q> s <s> k <k> base <id> [键 值]…
    第2行  domain <|Z|> <hex>…
    其后   <index> <bitlen> <hex>    每个顶点一行，按下标顺序

标签行之间不允许空行（查询按行号定位），文件末尾的空行被忽略。

查询只解析两行头部和被查询的两行标签，其余行直接跳过。
"""
from itertools import islice
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Tuple, Union

from loguru import logger

from config.config import LABEL_FORMAT_VERSION
from labeling.label import Label
from models.descriptor import EncodingDescriptor
from utils.errors import LabelFormatError, VertexNotFoundError
from utils.file_handler import read_lines, write_lines
from utils.helpers import to_hex

MAGIC = ("scheme", "cartlabel")

# 头部必需键（按写出顺序）与描述符字段的对应
_HEADER_FIELDS = (
    ("mode", "mode", str),
    ("n", "n", int),
    ("seed", "master_seed", "hex"),
    ("q", "q", int),
    ("s", "s", int),
    ("k", "k", int),
    ("base", "base", str),
    ("base_n", "base_n", int),
    ("id_bits", "id_bits", int),
    ("sketch_seed", "sketch_seed", "hex"),
    ("lift_seed", "lift_seed", "hex"),
    ("q_mode", "q_mode", str),
    ("p1_attempts", "phase1_attempts", int),
    ("lift_attempts", "lift_attempts", int),
    ("kG", "k_g", int),
)


def format_header(descriptor: EncodingDescriptor) -> List[str]:
    """描述符的两行头部"""
    tokens = [*MAGIC, f"v{descriptor.version}"]
    for key, attr, kind in _HEADER_FIELDS:
        value = getattr(descriptor, attr)
        tokens += [key, format(value, "016x") if kind == "hex" else str(value)]
    domain = ["domain", str(len(descriptor.domain))]
    domain += [to_hex(z, descriptor.s) for z in descriptor.domain]
    return [" ".join(tokens), " ".join(domain)]


def header_size_bits(descriptor: EncodingDescriptor) -> int:
    """头部（含换行）的位数"""
    return sum(len(line.encode("utf-8")) + 1 for line in format_header(descriptor)) * 8


def format_label_line(index: int, label: Label) -> str:
    return f"{index} {len(label)} {label.to_hex()}"


def parse_header(first: str, second: str) -> EncodingDescriptor:
    """
    解析两行头部

    Args:
        first: 第1行
        second: 第2行（domain）

    Returns:
        描述符
    """
    tokens = first.split()
    if tuple(tokens[:2]) != MAGIC or len(tokens) < 3:
        raise LabelFormatError("不是 cartlabel 标签文件")
    version = tokens[2]
    if version != f"v{LABEL_FORMAT_VERSION}":
        raise LabelFormatError(f"不支持的标签格式版本: {version}")
    rest = tokens[3:]
    if len(rest) % 2:
        raise LabelFormatError("头部键值对不完整")
    pairs: Dict[str, str] = dict(zip(rest[0::2], rest[1::2]))

    values = {"version": LABEL_FORMAT_VERSION}
    for key, attr, kind in _HEADER_FIELDS:
        if key not in pairs:
            raise LabelFormatError(f"头部缺少字段 {key}")
        raw = pairs[key]
        try:
            values[attr] = int(raw, 16) if kind == "hex" else kind(raw)
        except ValueError as e:
            raise LabelFormatError(f"头部字段 {key} 的值非法: {raw!r}") from e

    dom = second.split()
    if len(dom) < 2 or dom[0] != "domain":
        raise LabelFormatError("第2行应为 'domain <count> <hex>…'")
    try:
        count = int(dom[1])
        values["domain"] = tuple(int(h, 16) for h in dom[2:])
    except ValueError as e:
        raise LabelFormatError("domain 行含有非法数字") from e
    if count != len(values["domain"]):
        raise LabelFormatError(f"domain 声明 {count} 个标签，实际 {len(values['domain'])} 个")

    try:
        return EncodingDescriptor(**values)
    except ValueError as e:
        raise LabelFormatError(f"头部字段不一致: {e}") from e


def parse_label_line(line: str, expected_index: int) -> Label:
    """解析 `<index> <bitlen> <hex>`，下标必须等于 expected_index"""
    parts = line.split()
    if not parts:
        raise LabelFormatError(f"顶点 {expected_index} 的标签行为空行")
    if len(parts) != 3:
        raise LabelFormatError(f"标签行格式错误: {line!r}")
    try:
        index, bitlen = int(parts[0]), int(parts[1])
    except ValueError as e:
        raise LabelFormatError(f"标签行格式错误: {line!r}") from e
    if index != expected_index:
        raise LabelFormatError(f"标签行下标应为 {expected_index}，实际 {index}")
    return Label.from_hex(parts[2], bitlen)


def format_label_file(descriptor: EncodingDescriptor, labels: Iterable[Label]) -> List[str]:
    lines = format_header(descriptor)
    lines.extend(format_label_line(i, lb) for i, lb in enumerate(labels))
    return lines


def write_label_file(
    descriptor: EncodingDescriptor, labels: List[Label], path: Union[str, Path]
) -> Path:
    """写出标签文件"""
    if len(labels) != descriptor.n:
        raise ValueError(f"标签数 {len(labels)} 与描述符 n={descriptor.n} 不符")
    path = write_lines(format_label_file(descriptor, labels), path)
    logger.debug(f"标签文件已保存: {path} ({descriptor.n} 个标签)")
    return path


def _header(lines: Iterator[str]) -> EncodingDescriptor:
    try:
        first = next(lines)
        second = next(lines)
    except StopIteration:
        raise LabelFormatError("标签文件缺少头部") from None
    return parse_header(first, second)


def read_label_file(path: Union[str, Path]) -> Tuple[EncodingDescriptor, List[Label]]:
    """
    读取完整标签文件

    Args:
        path: 文件路径

    Returns:
        (描述符, 全部标签)
    """
    lines = read_lines(path)
    descriptor = _header(lines)
    body = list(lines)
    while body and not body[-1].strip():
        body.pop()
    labels = [parse_label_line(line, i) for i, line in enumerate(body)]
    if len(labels) != descriptor.n:
        raise LabelFormatError(f"头部声明 {descriptor.n} 个标签，实际 {len(labels)} 个")
    return descriptor, labels


def query_labels(path: Union[str, Path], x: int, y: int) -> Tuple[EncodingDescriptor, Label, Label]:
    """
    只解析头部与第 x、y 行标签

    Args:
        path: 标签文件
        x: 顶点
        y: 顶点

    Returns:
        (描述符, x 的标签, y 的标签)
    """
    lines = read_lines(path)
    descriptor = _header(lines)
    for v in (x, y):
        if not 0 <= v < descriptor.n:
            raise VertexNotFoundError(f"顶点 {v} 不在 0..{descriptor.n - 1} 中")

    lo, hi = min(x, y), max(x, y)
    lo_line = next(islice(lines, lo, None), None)
    hi_line = lo_line if hi == lo else next(islice(lines, hi - lo - 1, None), None)
    if lo_line is None or hi_line is None:
        raise VertexNotFoundError(f"标签文件在顶点 {hi} 之前结束")
    labels = {lo: parse_label_line(lo_line, lo), hi: parse_label_line(hi_line, hi)}
    return descriptor, labels[x], labels[y]
