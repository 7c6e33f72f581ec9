"""
阶段2：XOR提升

把任意基础方案变成只依赖两标签异或值的方案：φ 把 s 位基础标签映射为 4s 位的
伪随机串，在实际用到的标签集合 Z 上校验 Φ({z1, z2}) = φ(z1) ⊕ φ(z2) 单射且非零，
解码时由异或值反查出标签对，再交给基础方案解码。
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

from loguru import logger

from config.config import DEFAULT_SEED, MAX_RETRIES
from labeling.base_schemes import BaseScheme, decode_base
from labeling.label import Label
from labeling.prf import SUBKEY_LIFT, TAG_LIFT, derive_seed, prf_bits
from utils.errors import LabelFormatError, LiftBuildError, UndecodableXorError, UnknownBaseLabelError


@dataclass(frozen=True)
class XorLift:
    """
    XOR提升

    Attributes:
        s: 基础标签位宽
        lift_seed: 通过校验的种子
        domain: 定义域 Z（升序的基础标签值）
        phi: z → φ(z)
        inverse: φ(z1) ⊕ φ(z2) → (z1, z2)，z1 < z2
        attempts: 构造尝试次数
    """
    s: int
    lift_seed: int
    domain: Tuple[int, ...]
    phi: Dict[int, int] = field(compare=False, repr=False)
    inverse: Dict[int, Tuple[int, int]] = field(compare=False, repr=False)
    attempts: int = 1

    @property
    def width(self) -> int:
        return 4 * self.s


def _draw(s: int, lift_seed: int, domain: Tuple[int, ...]):
    """抽取 φ 并建立反查表；不单射时返回 (phi, None, 冲突数)"""
    phi = {z: prf_bits(lift_seed, 4 * s, TAG_LIFT, z) for z in domain}
    inverse: Dict[int, Tuple[int, int]] = {}
    collisions = 0
    for a in range(len(domain)):
        za = domain[a]
        pa = phi[za]
        for b in range(a + 1, len(domain)):
            zb = domain[b]
            w = pa ^ phi[zb]
            if w == 0 or w in inverse:
                collisions += 1
                continue
            inverse[w] = (za, zb)
    return phi, (None if collisions else inverse), collisions


def _normalize_domain(Z: Iterable[Union[Label, int]], s: int) -> Tuple[int, ...]:
    values = set()
    for z in Z:
        if isinstance(z, Label):
            if len(z) != s:
                raise LabelFormatError(f"基础标签长度应为 {s}，实际 {len(z)}")
            z = z.value
        if z < 0 or z >> s:
            raise LabelFormatError(f"基础标签 {z} 超出 {s} 位")
        values.add(int(z))
    if not values:
        raise ValueError("提升定义域不能为空")
    return tuple(sorted(values))


def build_lift(
    Z: Iterable[Union[Label, int]],
    s: int,
    seed: int = DEFAULT_SEED,
    max_retries: int = MAX_RETRIES,
) -> XorLift:
    """
    构造XOR提升（Las Vegas）

    Args:
        Z: 用到的基础标签
        s: 基础标签位宽
        seed: 主种子，第 t 次尝试使用 derive_seed(seed, SUBKEY_LIFT, t)
        max_retries: 最大尝试次数

    Returns:
        在 Z 上单射的提升
    """
    domain = _normalize_domain(Z, s)
    collisions = 0
    for attempt in range(max_retries):
        lift_seed = derive_seed(seed, SUBKEY_LIFT, attempt)
        phi, inverse, collisions = _draw(s, lift_seed, domain)
        if inverse is not None:
            logger.debug(f"XOR提升通过: |Z|={len(domain)}, s={s}, 第 {attempt + 1} 次尝试")
            return XorLift(s=s, lift_seed=lift_seed, domain=domain, phi=phi, inverse=inverse, attempts=attempt + 1)
        logger.debug(f"XOR提升第 {attempt + 1} 次尝试出现 {collisions} 个冲突")
    raise LiftBuildError(
        f"XOR提升在 {max_retries} 次尝试后仍有冲突",
        attempts=max_retries,
        failing_pairs=collisions,
    )


@lru_cache(maxsize=32)
def rebuild_lift(s: int, lift_seed: int, domain: Tuple[int, ...]) -> XorLift:
    """
    由描述符中的 (s, lift_seed, Z) 重建提升及其反查表

    Args:
        s: 基础标签位宽
        lift_seed: 描述符记录的种子
        domain: 描述符记录的定义域

    Returns:
        提升
    """
    domain = _normalize_domain(domain, s)
    phi, inverse, collisions = _draw(s, lift_seed, domain)
    if inverse is None:
        raise LabelFormatError(f"描述符中的提升种子在定义域上有 {collisions} 个冲突")
    return XorLift(s=s, lift_seed=lift_seed, domain=domain, phi=phi, inverse=inverse)


def lift_label(lift: XorLift, z: Union[Label, int]) -> Label:
    """φ(z)，恰为 4s 位"""
    value = z.value if isinstance(z, Label) else z
    try:
        return Label(lift.phi[value], lift.width)
    except KeyError:
        raise UnknownBaseLabelError(f"基础标签 {value} 不在提升定义域内") from None


def xor_decode(lift: XorLift, scheme: BaseScheme, w: Union[Label, int]) -> bool:
    """
    由 φ(z1) ⊕ φ(z2) 反查标签对并用基础方案解码

    Args:
        lift: 提升
        scheme: 基础方案
        w: 异或值（4s 位）

    Returns:
        基础方案下是否相邻
    """
    value = w.value if isinstance(w, Label) else w
    pair = lift.inverse.get(value)
    if pair is None:
        raise UndecodableXorError(f"异或值 {value:#x} 不对应任何标签对")
    z1, z2 = pair
    return decode_base(scheme, Label(z1, lift.s), Label(z2, lift.s))
