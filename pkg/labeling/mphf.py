"""
最小完美哈希（hash-and-displace）

键先按第一级哈希 g 分桶（平均每桶 MPHF_BUCKET_SIZE 个键），桶按大小降序处理，
为每个桶找最小的位移 d，使桶内键落在互不相同且空闲的槽位：

    slot(key) = (f1 + d1·f2 + d2) mod k,  (d1, d2) = divmod(d, k)

位移搜索超过上限时整体换种子。位移数组按定长压缩存储。

位格式（自定界，MSB优先）:
    [k:32][tag:2][payload]
    tag 0 有序表:  [key_width:6][key_0 … key_{k-1}]
    tag 1 位移:    [seed_width:6][seed][disp_width:5][disp_0 … disp_{b-1}]
k = 0 时没有 payload。
"""
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple, Union

from bitarray import bitarray, frozenbitarray
from loguru import logger

from config.config import (
    MPHF_BUCKET_SIZE,
    MPHF_DISPLACEMENT_CAP,
    MPHF_GLOBAL_RETRIES,
    MPHF_TABLE_THRESHOLD,
)
from labeling.label import BitReader, BitWriter, Label
from labeling.prf import TAG_MPHF, prf64
from utils.errors import LabelFormatError, MphfBuildError

THEORETICAL_BITS_PER_KEY = math.log2(math.e)

K_BITS = 32
TAG_BITS = 2
WIDTH6 = 6
WIDTH5 = 5

TAG_TABLE = 0
TAG_DISPLACE = 1


@dataclass(frozen=True)
class Mphf:
    """
    最小完美哈希函数

    Attributes:
        k: 键数
        kind: empty / table / displace
        keys: 有序表（仅 table）
        key_width: 表中每个键的位数
        seed: 哈希种子（仅 displace）
        disps: 每个桶的位移（仅 displace）
        disp_width: 位移的位数
        m: 构造时给出的全集大小（仅供统计，不参与序列化）
    """
    k: int
    kind: str
    keys: Tuple[int, ...] = ()
    key_width: int = 0
    seed: int = 0
    disps: Tuple[int, ...] = ()
    disp_width: int = 0
    m: Optional[int] = field(default=None, compare=False)

    @classmethod
    def empty(cls) -> "Mphf":
        """k = 0 的占位函数（34位）"""
        return cls(k=0, kind="empty")

    @property
    def seed_width(self) -> int:
        return max(1, self.seed.bit_length())

    @property
    def bit_size(self) -> int:
        """序列化后的位数"""
        size = K_BITS + TAG_BITS
        if self.kind == "table":
            size += WIDTH6 + self.k * self.key_width
        elif self.kind == "displace":
            size += WIDTH6 + self.seed_width + WIDTH5 + len(self.disps) * self.disp_width
        return size

    @property
    def bits_per_key(self) -> float:
        return self.bit_size / self.k if self.k else float(self.bit_size)

    def eval(self, key: int) -> int:
        return eval_mphf(self, key)


def _hashes(seed: int, key: int) -> Tuple[int, int, int]:
    h = prf64(seed, TAG_MPHF, key)
    return h >> 40, (h >> 20) & 0xFFFFF, h & 0xFFFFF


def _bucket_count(k: int) -> int:
    return -(-k // MPHF_BUCKET_SIZE)


def _slot(f1: int, f2: int, disp: int, k: int) -> int:
    d1, d2 = divmod(disp, k)
    return (f1 + d1 * f2 + d2) % k


def _try_displace(keys: List[int], seed: int, cap: int) -> Optional[List[int]]:
    k = len(keys)
    b = _bucket_count(k)
    hashes = [_hashes(seed, key) for key in keys]
    buckets: List[List[int]] = [[] for _ in range(b)]
    for i, (g, _, _) in enumerate(hashes):
        buckets[g % b].append(i)

    taken = [False] * k
    disps = [0] * b
    limit = min(cap, k * k)
    for j in sorted(range(b), key=lambda j: (-len(buckets[j]), j)):
        members = buckets[j]
        if not members:
            continue
        for disp in range(limit):
            slots = [_slot(hashes[i][1], hashes[i][2], disp, k) for i in members]
            if len(set(slots)) == len(slots) and not any(taken[s] for s in slots):
                for s in slots:
                    taken[s] = True
                disps[j] = disp
                break
        else:
            return None
    return disps


def _table(keys: List[int], m: Optional[int]) -> Mphf:
    ordered = tuple(sorted(keys))
    width = max(1, ordered[-1].bit_length())
    return Mphf(k=len(ordered), kind="table", keys=ordered, key_width=width, m=m)


def build_mphf(
    keys: Iterable[int],
    seed: int = 0,
    m: Optional[int] = None,
    cap: int = MPHF_DISPLACEMENT_CAP,
    retries: int = MPHF_GLOBAL_RETRIES,
) -> Mphf:
    """
    构造最小完美哈希

    Args:
        keys: 互不相同的非负整数键
        seed: 起始种子，位移搜索失败时依次加1
        m: 全集大小（可选，用于校验键的范围）
        cap: 单个桶的位移搜索上限
        retries: 整体换种子的次数上限

    Returns:
        在键集合上为双射的函数；k < MPHF_TABLE_THRESHOLD 时取有序表与位移两种
        编码中较短者
    """
    keys = [int(x) for x in keys]
    if len(set(keys)) != len(keys):
        raise ValueError("MPHF 的键必须互不相同")
    if not keys:
        raise ValueError("MPHF 至少需要一个键")
    if any(x < 0 or x.bit_length() >= 64 for x in keys):
        raise ValueError("MPHF 的键必须是小于 2^63 的非负整数")
    if m is not None and any(x >= m for x in keys):
        raise ValueError(f"MPHF 的键超出全集 [0, {m})")

    k = len(keys)
    best: Optional[Mphf] = _table(keys, m) if k < MPHF_TABLE_THRESHOLD else None

    for attempt in range(retries):
        s = seed + attempt
        disps = _try_displace(keys, s, cap)
        if disps is None:
            logger.debug(f"MPHF 种子 {s} 位移搜索超限，换种子")
            continue
        width = max(1, max(disps).bit_length())
        candidate = Mphf(k=k, kind="displace", seed=s, disps=tuple(disps), disp_width=width, m=m)
        if best is None or candidate.bit_size < best.bit_size:
            best = candidate
        return best

    if best is not None:
        return best
    raise MphfBuildError(f"MPHF 在 {retries} 个种子下都未能完成构造", attempts=retries)


def eval_mphf(h: Mphf, key: int) -> int:
    """
    求值；对构造集合外的键返回 [k] 中的任意值

    Args:
        h: 函数
        key: 键

    Returns:
        0..k-1 中的整数
    """
    if h.k == 0:
        raise LabelFormatError("空 MPHF 不能求值")
    if h.kind == "table":
        return min(bisect_left(h.keys, key), h.k - 1)
    g, f1, f2 = _hashes(h.seed, key)
    return _slot(f1, f2, h.disps[g % len(h.disps)], h.k)


def write_mphf(h: Mphf, writer: BitWriter) -> None:
    """把函数追加写入位写入器"""
    writer.write(h.k, K_BITS)
    if h.kind == "empty":
        writer.write(TAG_TABLE, TAG_BITS)
        return
    if h.kind == "table":
        writer.write(TAG_TABLE, TAG_BITS)
        writer.write(h.key_width, WIDTH6)
        for key in h.keys:
            writer.write(key, h.key_width)
        return
    writer.write(TAG_DISPLACE, TAG_BITS)
    writer.write(h.seed_width, WIDTH6)
    writer.write(h.seed, h.seed_width)
    writer.write(h.disp_width, WIDTH5)
    for disp in h.disps:
        writer.write(disp, h.disp_width)


def read_mphf(reader: BitReader) -> Mphf:
    """
    从位读取器当前位置解析一个函数（用于嵌入标签中的 MPHF）

    Args:
        reader: 位读取器

    Returns:
        函数，读取器前进到其末尾
    """
    k = reader.read(K_BITS)
    tag = reader.read(TAG_BITS)
    if k == 0:
        if tag != TAG_TABLE:
            raise LabelFormatError(f"空 MPHF 的格式标记应为0，实际 {tag}")
        return Mphf.empty()

    if tag == TAG_TABLE:
        width = reader.read(WIDTH6)
        if width == 0:
            raise LabelFormatError("有序表的键位数不能为0")
        keys = tuple(reader.read(width) for _ in range(k))
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise LabelFormatError("有序表的键未严格递增")
        return Mphf(k=k, kind="table", keys=keys, key_width=width)

    if tag == TAG_DISPLACE:
        seed_width = reader.read(WIDTH6)
        if seed_width == 0:
            raise LabelFormatError("种子位数不能为0")
        seed = reader.read(seed_width)
        if max(1, seed.bit_length()) != seed_width:
            raise LabelFormatError("种子位数与种子不一致")
        disp_width = reader.read(WIDTH5)
        if disp_width == 0:
            raise LabelFormatError("位移位数不能为0")
        disps = tuple(reader.read(disp_width) for _ in range(_bucket_count(k)))
        return Mphf(k=k, kind="displace", seed=seed, disps=disps, disp_width=disp_width)

    raise LabelFormatError(f"未知的 MPHF 格式标记: {tag}")


def serialize_mphf(h: Mphf) -> frozenbitarray:
    writer = BitWriter()
    write_mphf(h, writer)
    return writer.to_bits()


def deserialize_mphf(bits: Union[bitarray, frozenbitarray, Label]) -> Mphf:
    """
    解析恰好一个函数的位串

    Args:
        bits: 位串

    Returns:
        函数；位串被截断或有多余位时抛出 LabelFormatError
    """
    reader = BitReader(bits)
    h = read_mphf(reader)
    if reader.remaining:
        raise LabelFormatError(f"MPHF 位串末尾有 {reader.remaining} 个多余位")
    return h
