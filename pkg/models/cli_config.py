"""
命令行配置数据模型
"""
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config.config import DEFAULT_SEED, VERIFY_CAP
from models.descriptor import BASE_SCHEME_IDS, QMode

Command = Literal["gen", "encode", "query", "verify", "stats", "bench"]


class CliConfig(BaseModel):
    """一次命令行调用的全部公共参数"""
    command: Command = Field(..., description="子命令")
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=1 << 64, description="64位主种子")
    q_mode: QMode = Field(default="paper", description="q选择方式（paper/adaptive）")
    base: Optional[str] = Field(default=None, description="基础方案，None表示按因子自动选择")
    cap: int = Field(default=VERIFY_CAP, ge=1, description="全对校验的顶点上限")
    density: Optional[float] = Field(default=None, ge=0, le=1, description="random-sub 保留边的概率")
    input_path: Optional[Path] = Field(default=None, description="输入文件")
    output_path: Optional[Path] = Field(default=None, description="输出文件")

    model_config = ConfigDict(frozen=True)

    @field_validator("seed", mode="before")
    @classmethod
    def parse_seed(cls, v: Union[int, str]) -> int:
        """种子可以是整数或十六进制字符串（可带0x前缀）"""
        if isinstance(v, str):
            text = v.strip().lower()
            text = text[2:] if text.startswith("0x") else text
            try:
                return int(text, 16)
            except ValueError as e:
                raise ValueError(f"非法十六进制种子: {v!r}") from e
        return v

    @field_validator("base")
    @classmethod
    def check_base(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in BASE_SCHEME_IDS:
            raise ValueError(f"未知基础方案: {v}")
        return v
