"""
校验与统计报告数据模型

使用Pydantic v2进行数据验证和序列化
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Mismatch(BaseModel):
    """一次解码与真值不一致的顶点对"""
    x: int = Field(..., ge=0, description="顶点x")
    y: int = Field(..., ge=0, description="顶点y")
    expected: bool = Field(..., description="真值（暴力判定）")
    got: Optional[bool] = Field(default=None, description="解码结果，解码抛错时为None")
    error: Optional[str] = Field(default=None, description="解码异常信息")

    model_config = ConfigDict(frozen=True)


class VerifyReport(BaseModel):
    """全对校验报告"""
    n: int = Field(..., ge=1, description="顶点数")
    pairs_checked: int = Field(default=0, ge=0, description="已检查的顶点对数")
    total_pairs: int = Field(default=0, ge=0, description="全部无序对数")
    sampled: bool = Field(default=False, description="是否为抽样校验")
    mismatch_count: int = Field(default=0, ge=0, description="不一致对总数")
    mismatches: List[Mismatch] = Field(default_factory=list, description="不一致对（最多记录上限条）")
    phase1_attempts: int = Field(default=0, ge=0, description="阶段1重试次数")
    lift_attempts: int = Field(default=0, ge=0, description="XOR提升重试次数")
    wall_time: float = Field(default=0.0, ge=0, description="耗时（秒）")

    @model_validator(mode="after")
    def check_counts(self) -> "VerifyReport":
        if len(self.mismatches) > self.mismatch_count:
            raise ValueError("记录的不一致对多于总数")
        if self.mismatch_count and not self.mismatches:
            raise ValueError("存在不一致但未记录任何一对")
        return self

    @property
    def passed(self) -> bool:
        return self.mismatch_count == 0


class LabelStats(BaseModel):
    """
    一个编码的标签位数统计

    field_totals 为各字段在全部标签上的位数总和，之和等于 total_bits；
    field_max 为各字段的单标签最大位数。
    """
    n: int = Field(..., ge=1, description="标签个数")
    mode: str = Field(..., description="编码模式")
    max_bits: int = Field(..., ge=0, description="最长标签位数")
    min_bits: int = Field(..., ge=0, description="最短标签位数")
    mean_bits: float = Field(..., ge=0, description="平均标签位数")
    total_bits: int = Field(..., ge=0, description="全部标签位数之和")
    field_totals: Dict[str, int] = Field(default_factory=dict, description="各字段位数总和")
    field_max: Dict[str, int] = Field(default_factory=dict, description="各字段单标签最大位数")
    header_bits: int = Field(default=0, ge=0, description="标签文件头部位数")
    amortized_header_bits: float = Field(default=0.0, ge=0, description="头部均摊到每个标签的位数")
    phase1_constant: float = Field(default=0.0, ge=0, description="阶段1实测常数c")
    k: int = Field(default=0, ge=0, description="k(H)")
    mphf_keys: int = Field(default=0, ge=0, description="全部非空MPHF的键数之和")
    mphf_bits_per_key: float = Field(default=0.0, ge=0, description="非空MPHF的平均每键位数（总位数/总键数）")
    mphf_floor_bits_per_key: float = Field(default=0.0, ge=0, description="最小完美哈希的每键位数下界 log2 e")
    k_g: int = Field(default=0, ge=0, description="k(G)")

    @model_validator(mode="after")
    def check_totals(self) -> "LabelStats":
        if self.field_totals and sum(self.field_totals.values()) != self.total_bits:
            raise ValueError("字段位数之和与总位数不一致")
        return self


class SizeReport(BaseModel):
    """基准测试中一个实例、一种模式的标签规模"""
    family: str = Field(..., description="实例族")
    n: int = Field(..., ge=1, description="顶点数")
    mode: str = Field(..., description="编码模式")
    max_bits: int = Field(..., ge=0, description="最长标签位数")
    mean_bits: float = Field(..., ge=0, description="平均标签位数")
    phase1_bits: int = Field(..., ge=0, description="阶段1位数")
    xor_bits: int = Field(..., ge=0, description="XOR聚合位数")
    phase3_bits: int = Field(default=0, ge=0, description="阶段3（秩+MPHF+位图）最大位数")
    baseline_bits: int = Field(..., ge=0, description="KNR基线标签位数 (k(G)+1)⌈log2 n⌉")
    kH: int = Field(default=0, ge=0, description="k(H)")
    kG: int = Field(default=0, ge=0, description="k(G)")
    mphf_bits_per_key: float = Field(default=0.0, ge=0, description="子图模式非空MPHF的平均每键位数")

    @model_validator(mode="after")
    def check_parts(self) -> "SizeReport":
        if self.phase1_bits + self.xor_bits + self.phase3_bits != self.max_bits:
            raise ValueError("各部分位数之和与最长标签位数不一致")
        return self


class Phase1StatReport(BaseModel):
    """阶段1单副本接受率的蒙特卡洛统计"""
    d: int = Field(..., ge=1, description="元组维数")
    sigma_size: int = Field(..., ge=2, description="字母表大小")
    trials: int = Field(..., ge=1, description="每类的试验次数")
    dist1_accept_rate: float = Field(..., ge=0, le=1, description="距离≤1对的接受率（必须为1）")
    distgt1_accept_rate: float = Field(..., ge=0, le=1, description="距离>1对的接受率")
    ci_low: float = Field(..., ge=0, le=1, description="距离>1接受率置信区间下界")
    ci_high: float = Field(..., ge=0, le=1, description="距离>1接受率置信区间上界")
    bound: float = Field(default=15 / 16, description="理论上界")
    exhaustive_binary_rate: Optional[float] = Field(
        default=None, description="d=2二元对径对的穷举接受率"
    )

    @property
    def within_bound(self) -> bool:
        """距离≤1全部接受，且置信区间下界不超过理论上界"""
        return self.dist1_accept_rate == 1.0 and self.ci_low <= self.bound
