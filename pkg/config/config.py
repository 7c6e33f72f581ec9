"""
配置文件 - 标签方案基础配置

所有常量都可以通过环境变量（或项目根目录下的 .env 文件）覆盖。
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# 项目根目录
PROJECT_ROOT = Path(__file__).parent.parent

load_dotenv(PROJECT_ROOT / ".env")

# 随机种子：所有编码都由一个64位主种子派生
DEFAULT_SEED = int(os.getenv("CARTLABEL_SEED", "9e3779b97f4a7c15"), 16)

# 完整笛卡尔积物化的顶点上限
PRODUCT_BUDGET = int(os.getenv("CARTLABEL_PRODUCT_BUDGET", str(1 << 24)))

# 阶段1（汉明距离草图）校验
PHASE1_EXHAUSTIVE_CAP = 1 << 13  # 超过该规模改为抽样校验
PHASE1_SAMPLE_PAIRS = 200_000
ADAPTIVE_ATTEMPTS_PER_LEVEL = 2  # 自适应q模式下每一档q尝试的种子数

# Las Vegas 构造的最大重试次数（阶段1与XOR提升共用）
MAX_RETRIES = 32

# 最小完美哈希
MPHF_BUCKET_SIZE = 4  # 平均每个桶的键数
MPHF_DISPLACEMENT_CAP = 1 << 16  # 单个桶的位移搜索上限，超过则整体换种子
MPHF_GLOBAL_RETRIES = 64
MPHF_TABLE_THRESHOLD = 64  # 小于该键数时允许使用有序表

# 全对校验
VERIFY_CAP = int(os.getenv("CARTLABEL_VERIFY_CAP", str(1 << 13)))
VERIFY_SAMPLE_PAIRS = 1_000_000
MAX_REPORTED_MISMATCHES = 1000

# 标签文件格式版本
LABEL_FORMAT_VERSION = 1

# 日志配置
LOG_LEVEL = os.getenv("CARTLABEL_LOG_LEVEL", "INFO")
LOG_FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
LOG_FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | seed={extra[seed]} | {name}:{function}:{line} - {message}"
