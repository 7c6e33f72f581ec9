"""
日志配置模块 - 使用loguru进行日志管理

文件日志的每一行都带上本次运行的主种子，便于按种子复现某次编码。
"""
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from config.config import LOG_FILE_FORMAT, LOG_FORMAT

LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


def setup_logger(
    log_file: Optional[Path] = None,
    level: str = "INFO",
    seed: Optional[str] = None,
    rotation: str = "10 MB",
    retention: str = "7 days",
    console: bool = True
) -> None:
    """
    配置全局日志器

    Args:
        log_file: 日志文件路径，None表示只输出到控制台
        level: 日志级别（DEBUG/INFO/SUCCESS/WARNING/ERROR）
        seed: 主种子的十六进制表示，写入文件日志的每一行
        rotation: 日志文件轮转大小
        retention: 日志文件保留时间
        console: 是否输出到控制台
    """
    level = level.upper()
    if level not in LEVELS:
        raise ValueError(f"未知日志级别: {level}")

    # 移除默认handler
    logger.remove()
    logger.configure(extra={"seed": seed or "-"})

    if console:
        logger.add(sys.stderr, format=LOG_FORMAT, level=level, colorize=True)

    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            format=LOG_FILE_FORMAT,
            level=level,
            rotation=rotation,
            retention=retention,
            encoding="utf-8",
        )

    logger.debug(f"日志系统初始化完成，级别: {level}, 种子: {seed or '-'}")
