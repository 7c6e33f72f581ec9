"""
异常定义 - 标签方案各阶段的错误类型

命令行根据异常类型决定退出码：格式错误为3，用法/前置条件错误为2，
构造失败为1。
"""
from typing import Optional, Tuple


class CartLabelError(Exception):
    """所有错误的基类"""


class ProductSizeError(CartLabelError, ValueError):
    """笛卡尔积规模超出内存预算"""


class InstanceValidationError(CartLabelError, ValueError):
    """乘积实例不满足不变式（重复元组、非乘积边等）"""

    def __init__(self, message: str, edge: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.edge = edge


class GraphFormatError(CartLabelError, ValueError):
    """.gr 文件格式错误"""


class InstanceFormatError(CartLabelError, ValueError):
    """.cpi 文件格式错误"""


class LabelFormatError(CartLabelError, ValueError):
    """标签位串或 .lbl 文件格式错误"""


class ClassMembershipError(CartLabelError, ValueError):
    """图不属于基础标签方案支持的图类"""


class UnknownBaseLabelError(CartLabelError, KeyError):
    """基础标签不在XOR提升的定义域内"""


class UndecodableXorError(CartLabelError, ValueError):
    """XOR值无法反解为一对基础标签（标签损坏或来自不同编码）"""


class BuildError(CartLabelError, RuntimeError):
    """随机化构造在重试上限内未能通过校验"""

    phase = "build"

    def __init__(self, message: str, attempts: int = 0, failing_pairs: int = 0):
        super().__init__(message)
        self.attempts = attempts
        self.failing_pairs = failing_pairs


class SketchBuildError(BuildError):
    phase = "phase1"


class LiftBuildError(BuildError):
    phase = "xor-lift"


class MphfBuildError(BuildError):
    phase = "mphf"


class VertexNotFoundError(CartLabelError, IndexError):
    """查询的顶点不在标签文件中"""
