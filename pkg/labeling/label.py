"""
标签位串 - 带声明长度的不可变位串，以及基于bitarray的位读写器

位序统一为MSB优先：偏移0是最高位。
"""
from dataclasses import dataclass
from typing import Union

from bitarray import bitarray, frozenbitarray
from bitarray.util import ba2int, int2ba

from utils.errors import LabelFormatError
from utils.helpers import hex_width, to_hex


def _big_endian(bits: Union[bitarray, frozenbitarray]) -> frozenbitarray:
    """按下标顺序复制为大端位数组，与源数组的端序无关"""
    return frozenbitarray(bits.to01(), endian="big")


@dataclass(frozen=True)
class Label:
    """
    不可变标签：整数负载 + 声明位长

    value 的二进制表示（补零到 length 位）即标签位串。
    """
    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise LabelFormatError(f"标签长度不能为负: {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise LabelFormatError(f"标签值超出声明长度 {self.length} 位")

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "Label") -> "Label":
        if other.length != self.length:
            raise LabelFormatError(f"标签长度不一致: {self.length} != {other.length}")
        return Label(self.value ^ other.value, self.length)

    def field(self, offset: int, width: int) -> int:
        """
        读取从 offset 开始、宽 width 位的字段

        Args:
            offset: 起始偏移（MSB优先）
            width: 字段宽度

        Returns:
            字段整数值
        """
        if offset < 0 or width < 0 or offset + width > self.length:
            raise LabelFormatError(
                f"字段 [{offset}, {offset + width}) 超出标签长度 {self.length}"
            )
        shift = self.length - offset - width
        return (self.value >> shift) & ((1 << width) - 1)

    def slice(self, offset: int, width: int) -> "Label":
        """截取子标签"""
        return Label(self.field(offset, width), width)

    def concat(self, other: "Label") -> "Label":
        """拼接：self 在前（高位），other 在后"""
        return Label((self.value << other.length) | other.value, self.length + other.length)

    def to_bits(self) -> frozenbitarray:
        """转为 frozenbitarray（大端）"""
        if self.length == 0:
            return frozenbitarray(endian="big")
        return frozenbitarray(int2ba(self.value, length=self.length, endian="big"))

    @classmethod
    def from_bits(cls, bits: Union[bitarray, frozenbitarray]) -> "Label":
        """从位数组构造（位数组的位序即标签位序）"""
        if len(bits) == 0:
            return cls(0, 0)
        return cls(ba2int(_big_endian(bits)), len(bits))

    def to_hex(self) -> str:
        """补零到 ⌈length/4⌉ 位的十六进制串"""
        return to_hex(self.value, self.length)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "Label":
        """
        从十六进制串解析

        Args:
            text: 十六进制串
            length: 声明位长

        Returns:
            标签
        """
        if len(text) != hex_width(length):
            raise LabelFormatError(f"十六进制长度 {len(text)} 与位长 {length} 不符")
        try:
            value = int(text, 16)
        except ValueError as e:
            raise LabelFormatError(f"非法十六进制串: {text!r}") from e
        return cls(value, length)

    def to01(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""


class BitWriter:
    """追加式位写入器"""

    def __init__(self):
        self._bits = bitarray(endian="big")

    def __len__(self) -> int:
        return len(self._bits)

    def write(self, value: int, width: int) -> None:
        """写入 width 位无符号整数"""
        if width == 0:
            if value:
                raise ValueError("零宽字段只能写入0")
            return
        if value < 0 or value >> width:
            raise ValueError(f"值 {value} 超出 {width} 位")
        self._bits.extend(int2ba(value, length=width, endian="big"))

    def write_label(self, label: Label) -> None:
        self._bits.extend(label.to_bits())

    def to_bits(self) -> frozenbitarray:
        return frozenbitarray(self._bits)

    def to_label(self) -> Label:
        return Label.from_bits(self._bits)


class BitReader:
    """顺序位读取器，越界时抛出 LabelFormatError"""

    def __init__(self, bits: Union[bitarray, frozenbitarray, Label], offset: int = 0):
        self._bits = bits.to_bits() if isinstance(bits, Label) else _big_endian(bits)
        self.position = offset

    @property
    def remaining(self) -> int:
        return len(self._bits) - self.position

    def read(self, width: int) -> int:
        """读取 width 位无符号整数"""
        if width == 0:
            return 0
        if self.position + width > len(self._bits):
            raise LabelFormatError(
                f"位串被截断: 需要 {width} 位，剩余 {self.remaining} 位"
            )
        chunk = self._bits[self.position:self.position + width]
        self.position += width
        return ba2int(chunk)

