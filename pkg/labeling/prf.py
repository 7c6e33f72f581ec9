"""
带密钥的伪随机函数

所有随机选择（划分映射 p、符号比特 q_i(σ)、提升映射 φ、MPHF哈希）都通过
BLAKE2b 以64位种子为密钥计算，因此给定种子时每一位都可复现。
"""
import hashlib

MASK64 = (1 << 64) - 1

# 域分离标签
TAG_PARTITION = 1
TAG_SYMBOL = 2
TAG_LIFT = 3
TAG_MPHF = 4

# 主种子派生子密钥
SUBKEY_SKETCH = 0x51
SUBKEY_LIFT = 0x52
SUBKEY_SAMPLE = 0x53

_BLOCK = 64


def _message(fields) -> bytes:
    parts = []
    for f in fields:
        f = int(f)
        if f < 0:
            raise ValueError(f"PRF字段必须非负: {f}")
        raw = f.to_bytes(max(1, (f.bit_length() + 7) // 8), "big")
        parts.append(len(raw).to_bytes(2, "big"))
        parts.append(raw)
    return b"".join(parts)


def prf_bytes(seed: int, *fields: int, size: int = 8) -> bytes:
    """
    计算 PRF(seed, fields) 的 size 字节输出

    Args:
        seed: 64位密钥
        fields: 非负整数字段（变长编码，互不混淆）
        size: 输出字节数，超过64字节时使用计数器模式

    Returns:
        伪随机字节串
    """
    key = (seed & MASK64).to_bytes(8, "big")
    msg = _message(fields)
    if size <= _BLOCK:
        return hashlib.blake2b(msg, key=key, digest_size=max(1, size)).digest()[:size]
    out = bytearray()
    counter = 0
    while len(out) < size:
        out += hashlib.blake2b(msg + counter.to_bytes(4, "big"), key=key, digest_size=_BLOCK).digest()
        counter += 1
    return bytes(out[:size])


def prf64(seed: int, *fields: int) -> int:
    """64位伪随机整数"""
    return int.from_bytes(prf_bytes(seed, *fields), "big")


def prf_bits(seed: int, width: int, *fields: int) -> int:
    """
    width 位伪随机整数

    Args:
        seed: 密钥
        width: 输出位数
        fields: 字段

    Returns:
        [0, 2^width) 中的整数
    """
    if width <= 0:
        return 0
    nbytes = (width + 7) // 8
    raw = int.from_bytes(prf_bytes(seed, *fields, size=nbytes), "big")
    return raw >> (8 * nbytes - width)


def derive_seed(master: int, subkey: int, attempt: int = 0) -> int:
    """由主种子按固定子密钥和尝试序号派生阶段种子"""
    return prf64(master, subkey, attempt)
