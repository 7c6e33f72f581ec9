"""
测试公共配置：项目路径、hypothesis 配置与常用实例
"""
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from loguru import logger

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from graphs.generators import gen_hypercube  # noqa: E402

settings.register_profile(
    "default",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_logger():
    """测试中只保留警告以上的日志"""
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
    yield


@pytest.fixture
def q4():
    return gen_hypercube(4)


@pytest.fixture
def q3():
    return gen_hypercube(3)
