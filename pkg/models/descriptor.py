"""
编码描述符数据模型

一个编码的所有标签共享同一个描述符：阶段1参数、基础方案、XOR提升种子与定义域、
子图模式下的退化度上界。描述符写在标签文件头部，解码器只依赖它和两个标签。

使用Pydantic v2进行数据验证和序列化
"""
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from utils.helpers import index_bits, safe_log2

EncodingMode = Literal["induced", "subgraph"]
QMode = Literal["paper", "adaptive"]
BASE_SCHEME_IDS = ("clique", "path", "cycle", "knr", "row")


class DistanceOneParams(BaseModel):
    """阶段1（汉明距离恰为1）标签参数"""
    n: int = Field(..., ge=1, description="元素个数")
    q: int = Field(..., ge=1, description="独立4位副本数")
    id_bits: int = Field(..., ge=1, description="唯一下标位数 ⌈log2 n⌉")
    max_retries: int = Field(default=32, ge=1, description="Las Vegas 最大重试次数")
    q_mode: QMode = Field(default="paper", description="q选择方式")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_id_bits(self) -> "DistanceOneParams":
        if self.id_bits < index_bits(self.n):
            raise ValueError(f"id_bits={self.id_bits} 不足以区分 {self.n} 个元素")
        return self

    @property
    def k_bits(self) -> int:
        """标签总长 4q + id_bits"""
        return 4 * self.q + self.id_bits


class EncodingDescriptor(BaseModel):
    """
    编码描述符

    由主种子 master_seed 派生各阶段种子；sketch_seed 与 lift_seed 记录的是
    通过校验的那一次尝试所用的种子。
    """
    version: int = Field(default=1, ge=1, description="标签格式版本")
    mode: EncodingMode = Field(..., description="编码模式（induced/subgraph）")
    n: int = Field(..., ge=1, description="顶点数")
    master_seed: int = Field(..., ge=0, lt=1 << 64, description="64位主种子")

    # 阶段1
    q: int = Field(..., ge=1, description="汉明草图副本数")
    id_bits: int = Field(..., ge=1, description="顶点下标位数")
    q_mode: QMode = Field(default="paper", description="q选择方式")
    sketch_seed: int = Field(..., ge=0, lt=1 << 64, description="通过校验的草图种子")

    # 阶段2
    base: str = Field(..., description="基础标签方案")
    base_n: int = Field(..., ge=1, description="基础方案规模参数（最大因子顶点数）")
    s: int = Field(..., ge=1, description="基础标签位宽")
    lift_seed: int = Field(..., ge=0, lt=1 << 64, description="XOR提升种子")
    domain: Tuple[int, ...] = Field(..., min_length=1, description="提升定义域Z（使用到的基础标签）")

    # 阶段3
    k: int = Field(default=0, ge=0, description="诱导超图H的退化度（后继邻居上界）")
    k_g: int = Field(default=0, ge=0, description="子图G自身的退化度（仅统计用）")

    # 构造记录
    phase1_attempts: int = Field(default=1, ge=1, description="阶段1尝试次数")
    lift_attempts: int = Field(default=1, ge=1, description="提升尝试次数")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "mode": "induced",
                "n": 16,
                "master_seed": 0x9e3779b97f4a7c15,
                "q": 86,
                "id_bits": 4,
                "sketch_seed": 0x1234,
                "base": "clique",
                "base_n": 2,
                "s": 1,
                "lift_seed": 0x5678,
                "domain": [0, 1],
            }
        }
    )

    @field_validator("base")
    @classmethod
    def check_base(cls, v: str) -> str:
        if v not in BASE_SCHEME_IDS:
            raise ValueError(f"未知基础方案: {v}")
        return v

    @field_validator("domain")
    @classmethod
    def check_domain(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(set(v)) != len(v):
            raise ValueError("提升定义域存在重复标签")
        if any(z < 0 for z in v):
            raise ValueError("提升定义域标签必须非负")
        return tuple(sorted(v))

    @model_validator(mode="after")
    def check_widths(self) -> "EncodingDescriptor":
        if self.id_bits < index_bits(self.n):
            raise ValueError(f"id_bits={self.id_bits} 不足以区分 {self.n} 个顶点")
        if any(z >> self.s for z in self.domain):
            raise ValueError(f"提升定义域中存在超过 {self.s} 位的标签")
        return self

    @computed_field
    @property
    def phase1_constant(self) -> float:
        """实测常数 c = 阶段1位数 / log2 n"""
        return self.phase1_bits / safe_log2(self.n)

    @property
    def phase1_bits(self) -> int:
        return 4 * self.q + self.id_bits

    @property
    def xor_bits(self) -> int:
        return 4 * self.s

    @property
    def induced_bits(self) -> int:
        """诱导模式标签长度（子图模式标签的前缀长度）"""
        return self.phase1_bits + self.xor_bits
