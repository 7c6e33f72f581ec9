"""
笛卡尔积子图的邻接标签

诱导模式标签:  [阶段1: 4q + id_bits][XOR聚合: 4s]
子图模式标签:  [诱导模式标签][rank: id_bits][MPHF over N⁺(x)][edge 位图: |N⁺(x)|]

解码三步：
1. 阶段1判定两元组汉明距离恰为1，否则不相邻；
2. 两个聚合值异或后只剩唯一不同坐标上的 φ(ℓ_i(x_i)) ⊕ φ(ℓ_i(y_i))，反查后
   用基础方案判定在 H 中是否相邻；诱导模式到此为止；
3. 子图模式按退化序取秩较小的一方，用它的 MPHF 定位对方在位图中的位置，
   位为1才相邻。
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from config.config import DEFAULT_SEED, MAX_RETRIES, PHASE1_EXHAUSTIVE_CAP
from graphs.graph import degeneracy_order
from graphs.product import ProductInstance, realize
from labeling.base_schemes import (
    BaseScheme,
    check_membership,
    encode_base,
    scheme_for_factors,
    scheme_from_width,
)
from labeling.hamming_sketch import build_distance_one, default_params
from labeling.label import BitReader, BitWriter, Label
from labeling.mphf import THEORETICAL_BITS_PER_KEY, Mphf, build_mphf, eval_mphf, read_mphf, write_mphf
from labeling.xor_lift import XorLift, build_lift, rebuild_lift, xor_decode
from models.descriptor import EncodingDescriptor, QMode
from models.report import LabelStats
from utils.errors import InstanceValidationError, LabelFormatError
from utils.helpers import mean, nibbles_within_one

SchemeArg = Union[None, str, BaseScheme]


def _resolve_scheme(instance: ProductInstance, scheme: SchemeArg) -> BaseScheme:
    if isinstance(scheme, BaseScheme):
        return scheme
    return scheme_for_factors(instance.factors, scheme)


def encode_induced(
    instance: ProductInstance,
    scheme: SchemeArg = None,
    seed: int = DEFAULT_SEED,
    q_mode: QMode = "paper",
    max_retries: int = MAX_RETRIES,
    exhaustive_cap: int = PHASE1_EXHAUSTIVE_CAP,
) -> Tuple[EncodingDescriptor, List[Label]]:
    """
    诱导子图编码

    Args:
        instance: 诱导模式实例
        scheme: 基础方案（方案对象、方案编号或 None 表示自动选择）
        seed: 主种子
        q_mode: paper 或 adaptive
        max_retries: Las Vegas 重试上限
        exhaustive_cap: 阶段1穷举校验的元素数上限

    Returns:
        (描述符, 每个顶点的标签)
    """
    if not instance.is_induced:
        raise InstanceValidationError("诱导模式编码需要诱导实例，显式边实例请使用子图模式")
    base = _resolve_scheme(instance, scheme)
    n = instance.size
    logger.info(f"诱导编码: N={n}, d={instance.d}, 基础方案={base.scheme_id}, s={base.s}")

    factor_labels: List[List[Label]] = []
    for j, f in enumerate(instance.factors):
        check_membership(base, f, name=f"因子 {j}")
        factor_labels.append(encode_base(base, f))

    phase1 = build_distance_one(
        instance.tuples,
        default_params(n, q_mode=q_mode, max_retries=max_retries),
        seed=seed,
        exhaustive_cap=exhaustive_cap,
    )
    lift = build_lift(
        (z for labels in factor_labels for z in labels), base.s, seed=seed, max_retries=max_retries
    )

    xor_width = lift.width
    labels = []
    for v, t in enumerate(instance.tuples):
        agg = 0
        for j, x in enumerate(t):
            agg ^= lift.phi[factor_labels[j][x].value]
        labels.append(phase1.labels[v].concat(Label(agg, xor_width)))

    descriptor = EncodingDescriptor(
        mode="induced",
        n=n,
        master_seed=seed,
        q=phase1.params.q,
        id_bits=phase1.params.id_bits,
        q_mode=q_mode,
        sketch_seed=phase1.seed,
        base=base.scheme_id,
        base_n=base.n,
        s=base.s,
        lift_seed=lift.lift_seed,
        domain=lift.domain,
        phase1_attempts=phase1.attempts,
        lift_attempts=lift.attempts,
    )
    logger.info(
        f"诱导编码完成: 标签 {descriptor.induced_bits} 位 "
        f"(阶段1 {descriptor.phase1_bits} + XOR {descriptor.xor_bits})"
    )
    return descriptor, labels


def encode_subgraph(
    instance: ProductInstance,
    scheme: SchemeArg = None,
    seed: int = DEFAULT_SEED,
    q_mode: QMode = "paper",
    max_retries: int = MAX_RETRIES,
    exhaustive_cap: int = PHASE1_EXHAUSTIVE_CAP,
) -> Tuple[EncodingDescriptor, List[Label]]:
    """
    任意子图编码

    在诱导超图 H 的标签之后附加秩、N⁺(x) 上的 MPHF 与保留边位图。
    退化序取自 H，因此 |N⁺(x)| ≤ k(H)。

    Args:
        instance: 显式边实例
        scheme: 基础方案
        seed: 主种子
        q_mode: paper 或 adaptive
        max_retries: Las Vegas 重试上限
        exhaustive_cap: 阶段1穷举校验的元素数上限

    Returns:
        (描述符, 每个顶点的标签)
    """
    if instance.is_induced:
        raise InstanceValidationError("子图模式编码需要显式边实例")
    induced = instance.as_induced()
    descriptor, induced_labels = encode_induced(
        induced, scheme, seed=seed, q_mode=q_mode, max_retries=max_retries, exhaustive_cap=exhaustive_cap
    )

    h = realize(induced)
    g = realize(instance)
    order = degeneracy_order(h)
    k_g = degeneracy_order(g).k
    kept = instance.edge_set
    n = instance.size
    id_bits = descriptor.id_bits

    labels = []
    for x in range(n):
        later = order.later_neighbors(h, x)
        writer = BitWriter()
        writer.write_label(induced_labels[x])
        writer.write(order.rank[x], id_bits)
        if later:
            mphf = build_mphf((order.rank[y] for y in later), seed=0, m=n)
            bitmap = 0
            for y in later:
                if ((x, y) if x < y else (y, x)) in kept:
                    bitmap |= 1 << (mphf.k - 1 - eval_mphf(mphf, order.rank[y]))
        else:
            mphf, bitmap = Mphf.empty(), 0
        write_mphf(mphf, writer)
        writer.write(bitmap, mphf.k)
        labels.append(writer.to_label())

    descriptor = descriptor.model_copy(update={"mode": "subgraph", "k": order.k, "k_g": k_g})
    logger.info(f"子图编码完成: k(H)={order.k}, k(G)={k_g}, 最长标签 {max(len(lb) for lb in labels)} 位")
    return descriptor, labels


def encode(
    instance: ProductInstance,
    mode: Optional[str] = None,
    scheme: SchemeArg = None,
    seed: int = DEFAULT_SEED,
    q_mode: QMode = "paper",
    max_retries: int = MAX_RETRIES,
) -> Tuple[EncodingDescriptor, List[Label]]:
    """按模式分派；mode 为 None 时由实例的边模式决定"""
    mode = mode or ("induced" if instance.is_induced else "subgraph")
    if mode == "induced":
        return encode_induced(instance.as_induced(), scheme, seed, q_mode, max_retries)
    if mode == "subgraph":
        return encode_subgraph(instance, scheme, seed, q_mode, max_retries)
    raise ValueError(f"未知编码模式: {mode}")


# ==================== 解码 ====================

@dataclass(frozen=True)
class ParsedLabel:
    """拆分后的标签字段"""
    phase1: int
    agg: int
    rank: int = 0
    mphf: Optional[Mphf] = None
    bitmap: int = 0


@dataclass(frozen=True)
class DecoderContext:
    """由描述符推出的解码所需对象"""
    lift: XorLift
    scheme: BaseScheme
    id_mask: int


@lru_cache(maxsize=32)
def decoder_context(descriptor: EncodingDescriptor) -> DecoderContext:
    """重建提升反查表与基础方案（同一描述符只重建一次）"""
    scheme = scheme_from_width(descriptor.base, descriptor.base_n, descriptor.s)
    lift = rebuild_lift(descriptor.s, descriptor.lift_seed, descriptor.domain)
    return DecoderContext(lift=lift, scheme=scheme, id_mask=(1 << descriptor.id_bits) - 1)


def parse_label(descriptor: EncodingDescriptor, label: Label) -> ParsedLabel:
    """
    按描述符拆分标签

    Args:
        descriptor: 描述符
        label: 标签

    Returns:
        各字段
    """
    base_bits = descriptor.induced_bits
    if descriptor.mode == "induced":
        if len(label) != base_bits:
            raise LabelFormatError(f"诱导模式标签应为 {base_bits} 位，实际 {len(label)}")
        return ParsedLabel(phase1=label.field(0, descriptor.phase1_bits), agg=label.field(descriptor.phase1_bits, descriptor.xor_bits))

    if len(label) < base_bits + descriptor.id_bits:
        raise LabelFormatError(f"子图模式标签过短: {len(label)} 位")
    reader = BitReader(label, offset=base_bits)
    rank = reader.read(descriptor.id_bits)
    mphf = read_mphf(reader)
    if mphf.k > descriptor.k:
        raise LabelFormatError(f"MPHF 键数 {mphf.k} 超过 k={descriptor.k}")
    bitmap = reader.read(mphf.k)
    if reader.remaining:
        raise LabelFormatError(f"子图模式标签末尾有 {reader.remaining} 个多余位")
    if rank >= descriptor.n:
        raise LabelFormatError(f"秩 {rank} 超出顶点数 {descriptor.n}")
    return ParsedLabel(
        phase1=label.field(0, descriptor.phase1_bits),
        agg=label.field(descriptor.phase1_bits, descriptor.xor_bits),
        rank=rank,
        mphf=mphf,
        bitmap=bitmap,
    )


def decode_parsed(descriptor: EncodingDescriptor, px: ParsedLabel, py: ParsedLabel) -> bool:
    """对已拆分的两个标签解码"""
    ctx = decoder_context(descriptor)

    diff = px.phase1 ^ py.phase1
    if not diff & ctx.id_mask:
        return False
    if not nibbles_within_one(diff >> descriptor.id_bits, descriptor.q):
        return False

    if not xor_decode(ctx.lift, ctx.scheme, px.agg ^ py.agg):
        return False
    if descriptor.mode == "induced":
        return True

    if px.rank == py.rank:
        raise LabelFormatError("两个标签的秩相同")
    low, high = (px, py) if px.rank < py.rank else (py, px)
    if low.mphf is None or low.mphf.k == 0:
        raise LabelFormatError("H 中相邻但秩较小一方的后继邻居表为空")
    pos = eval_mphf(low.mphf, high.rank)
    return bool(low.bitmap >> (low.mphf.k - 1 - pos) & 1)


def decode(descriptor: EncodingDescriptor, label_x: Label, label_y: Label) -> bool:
    """
    无状态解码：只依赖描述符和两个标签

    Args:
        descriptor: 描述符
        label_x: 标签
        label_y: 标签

    Returns:
        是否相邻
    """
    return decode_parsed(descriptor, parse_label(descriptor, label_x), parse_label(descriptor, label_y))


# ==================== 统计 ====================

FIELD_NAMES = ("phase1", "xor", "rank", "mphf", "bitmap")


def label_fields(descriptor: EncodingDescriptor, label: Label) -> Dict[str, int]:
    """单个标签各字段的位数，之和等于标签长度"""
    fields = {"phase1": descriptor.phase1_bits, "xor": descriptor.xor_bits}
    if descriptor.mode == "subgraph":
        parsed = parse_label(descriptor, label)
        fields["rank"] = descriptor.id_bits
        fields["mphf"] = parsed.mphf.bit_size
        fields["bitmap"] = parsed.mphf.k
    return fields


def label_stats(
    descriptor: EncodingDescriptor,
    labels: Sequence[Label],
    header_bits: Optional[int] = None,
) -> LabelStats:
    """
    逐字段统计标签位数

    Args:
        descriptor: 描述符
        labels: 标签
        header_bits: 标签文件头部位数，None 时按头部格式计算

    Returns:
        统计结果
    """
    if header_bits is None:
        from labeling.label_file import header_size_bits
        header_bits = header_size_bits(descriptor)

    totals: Dict[str, int] = {}
    maxima: Dict[str, int] = {}
    mphf_keys = mphf_bits = 0
    for label in labels:
        fields = label_fields(descriptor, label)
        if sum(fields.values()) != len(label):
            raise LabelFormatError(f"标签字段位数之和 {sum(fields.values())} 与长度 {len(label)} 不符")
        for name, bits in fields.items():
            totals[name] = totals.get(name, 0) + bits
            maxima[name] = max(maxima.get(name, 0), bits)
        # 空MPHF只有固定头部，不计入每键位数
        if fields.get("bitmap"):
            mphf_keys += fields["bitmap"]
            mphf_bits += fields["mphf"]

    lengths = [len(lb) for lb in labels]
    count = len(lengths)
    return LabelStats(
        n=max(1, count),
        mode=descriptor.mode,
        max_bits=max(lengths, default=0),
        min_bits=min(lengths, default=0),
        mean_bits=mean(lengths),
        total_bits=sum(lengths),
        field_totals=totals,
        field_max=maxima,
        header_bits=header_bits,
        amortized_header_bits=header_bits / count if count else float(header_bits),
        phase1_constant=descriptor.phase1_constant,
        k=descriptor.k,
        k_g=descriptor.k_g,
        mphf_keys=mphf_keys,
        mphf_bits_per_key=mphf_bits / mphf_keys if mphf_keys else 0.0,
        mphf_floor_bits_per_key=THEORETICAL_BITS_PER_KEY if descriptor.mode == "subgraph" else 0.0,
    )
