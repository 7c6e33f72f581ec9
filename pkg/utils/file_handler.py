"""
文件处理模块 - 报告与文本文件读写

使用orjson（Rust实现）处理JSON报告
使用polars写出基准测试CSV
"""
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Union

import orjson
import polars as pl
from loguru import logger


def save_json(
    data: Union[Dict, List],
    file_path: Union[str, Path],
    pretty: bool = False
) -> None:
    """
    保存JSON文件（使用orjson）

    Args:
        data: 要保存的数据
        file_path: 文件路径
        pretty: 是否格式化输出
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)

    options = orjson.OPT_NON_STR_KEYS | orjson.OPT_SORT_KEYS
    if pretty:
        options |= orjson.OPT_INDENT_2

    file_path.write_bytes(orjson.dumps(data, option=options))
    logger.debug(f"JSON文件已保存: {file_path}")


def load_json(file_path: Union[str, Path]) -> Union[Dict, List]:
    """
    加载JSON文件（使用orjson）

    Args:
        file_path: 文件路径

    Returns:
        解析后的数据
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"文件不存在: {file_path}")

    data = orjson.loads(file_path.read_bytes())
    logger.debug(f"JSON文件已加载: {file_path}")
    return data


def dumps_json(data: Any, pretty: bool = True) -> str:
    """序列化为JSON字符串（用于命令行输出）"""
    options = orjson.OPT_NON_STR_KEYS | orjson.OPT_SORT_KEYS
    if pretty:
        options |= orjson.OPT_INDENT_2
    return orjson.dumps(data, option=options).decode("utf-8")


def save_csv(rows: List[Dict[str, Any]], file_path: Union[str, Path], columns: List[str]) -> Path:
    """
    按给定列顺序保存CSV（使用polars）

    Args:
        rows: 行字典列表
        file_path: 文件路径
        columns: 列顺序

    Returns:
        保存的文件路径
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)

    df = pl.DataFrame(rows, schema=None if rows else {c: pl.Utf8 for c in columns})
    df.select(columns).write_csv(file_path)

    logger.debug(f"CSV文件已保存: {file_path} (行数: {len(df)})")
    return file_path


def load_csv(file_path: Union[str, Path]) -> pl.DataFrame:
    """加载CSV为polars DataFrame"""
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"文件不存在: {file_path}")
    return pl.read_csv(file_path)


def write_lines(lines: Iterable[str], file_path: Union[str, Path]) -> Path:
    """
    写出以换行结尾的文本行

    Args:
        lines: 文本行（不含换行符）
        file_path: 文件路径

    Returns:
        文件路径
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with file_path.open("w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line)
            f.write("\n")
    logger.debug(f"文本文件已保存: {file_path}")
    return file_path


def read_lines(file_path: Union[str, Path]) -> Iterator[str]:
    """
    逐行读取文本文件（去掉行尾换行符），惰性迭代

    Args:
        file_path: 文件路径

    Yields:
        文本行
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"文件不存在: {file_path}")
    with file_path.open("r", encoding="utf-8") as f:
        for line in f:
            yield line.rstrip("\n")
