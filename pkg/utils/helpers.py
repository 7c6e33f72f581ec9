"""
辅助函数模块 - 位宽计算、半字节判定等通用工具
"""
import math
from functools import lru_cache
from typing import Iterable


def index_bits(n: int) -> int:
    """
    存储 0..n-1 中任一下标所需的位数，即 ⌈log2 n⌉，至少为1

    Args:
        n: 元素个数

    Returns:
        位数
    """
    if n < 1:
        raise ValueError(f"元素个数必须为正: {n}")
    return max(1, (n - 1).bit_length())


def safe_log2(n: int) -> float:
    """log2(n)，n<=1 时返回1，避免除零"""
    return math.log2(n) if n > 1 else 1.0


def popcount(value: int) -> int:
    """整数中1的个数"""
    return value.bit_count()


@lru_cache(maxsize=256)
def _nibble_masks(q: int) -> tuple[int, int, int]:
    m5 = int("5" * q, 16) if q else 0
    m3 = int("3" * q, 16) if q else 0
    me = int("e" * q, 16) if q else 0
    return m5, m3, me


def nibbles_within_one(xor_value: int, q: int) -> bool:
    """
    判断 q 个4位块中每一块的汉明重量是否都不超过1

    使用按位并行计数：先两两相加得到2位计数，再合并为每个半字节的计数，
    计数 ≤ 1 当且仅当每个半字节的高3位全为0。

    Args:
        xor_value: 两个草图的异或值（4q位）
        q: 块数

    Returns:
        是否每块重量 ≤ 1
    """
    m5, m3, me = _nibble_masks(q)
    t = (xor_value & m5) + ((xor_value >> 1) & m5)
    u = (t & m3) + ((t >> 2) & m3)
    return (u & me) == 0


def format_count(count: int) -> str:
    """
    格式化计数（如1234 -> 1.2K, 1234567 -> 1.2M）

    Args:
        count: 数字

    Returns:
        格式化后的字符串
    """
    if count < 1000:
        return str(count)
    elif count < 1000000:
        return f"{count / 1000:.1f}K"
    elif count < 1000000000:
        return f"{count / 1000000:.1f}M"
    return f"{count / 1000000000:.1f}B"


def hex_width(bits: int) -> int:
    """bits 位数据对应的十六进制位数（至少1位）"""
    return max(1, (bits + 3) // 4)


def to_hex(value: int, bits: int) -> str:
    """按声明位宽输出补零的十六进制串"""
    return format(value, f"0{hex_width(bits)}x")


def pair_count(n: int) -> int:
    """无序对数量 C(n,2)"""
    return n * (n - 1) // 2


def mean(values: Iterable[float]) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0
