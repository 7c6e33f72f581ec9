"""
数据模型 - 使用Pydantic v2定义（底层Rust加速）
"""
from .descriptor import BASE_SCHEME_IDS, DistanceOneParams, EncodingDescriptor
from .report import LabelStats, Mismatch, Phase1StatReport, SizeReport, VerifyReport
from .cli_config import CliConfig

__all__ = [
    'BASE_SCHEME_IDS',
    'DistanceOneParams',
    'EncodingDescriptor',
    'LabelStats',
    'Mismatch',
    'Phase1StatReport',
    'SizeReport',
    'VerifyReport',
    'CliConfig',
]
