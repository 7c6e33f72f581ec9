"""
校验模块 - 暴力判定相邻关系，并与标签解码逐对比较
"""
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from config.config import DEFAULT_SEED, MAX_REPORTED_MISMATCHES, VERIFY_CAP, VERIFY_SAMPLE_PAIRS
from graphs.product import ProductInstance, realize
from labeling.label import Label
from labeling.product_labeler import ParsedLabel, decode_parsed, parse_label
from models.descriptor import EncodingDescriptor
from models.report import Mismatch, VerifyReport
from utils.errors import CartLabelError
from utils.helpers import format_count, pair_count


def oracle_adjacent(instance: ProductInstance, x: int, y: int) -> bool:
    """
    直接按定义判定：恰有一维不同、该维在因子中相邻、（显式模式下）边未被删除

    Args:
        instance: 实例
        x: 元组下标
        y: 元组下标

    Returns:
        是否相邻
    """
    if x == y:
        return False
    j = instance.differing_coordinate(x, y)
    if j is None:
        return False
    if not instance.factors[j].has_edge(instance.tuples[x][j], instance.tuples[y][j]):
        return False
    if instance.is_induced:
        return True
    return ((x, y) if x < y else (y, x)) in instance.edge_set


class Verifier:
    """逐对校验器：每个标签只解析一次，不一致记录到上限为止"""

    def __init__(
        self,
        instance: ProductInstance,
        descriptor: EncodingDescriptor,
        labels: Sequence[Label],
        max_reported: int = MAX_REPORTED_MISMATCHES,
    ):
        if len(labels) != instance.size or descriptor.n != instance.size:
            raise ValueError(
                f"标签数 {len(labels)}、描述符 n={descriptor.n} 与实例顶点数 {instance.size} 不一致"
            )
        self.instance = instance
        self.descriptor = descriptor
        self.edges = realize(instance).edges
        self.max_reported = max_reported
        self.mismatch_count = 0
        self.mismatches: List[Mismatch] = []
        self.parsed: List[Optional[ParsedLabel]] = []
        self.parse_errors: List[Optional[str]] = []
        for label in labels:
            try:
                self.parsed.append(parse_label(descriptor, label))
                self.parse_errors.append(None)
            except CartLabelError as e:
                self.parsed.append(None)
                self.parse_errors.append(str(e))

    def check(self, x: int, y: int) -> None:
        """比较一对顶点，x < y"""
        expected = (x, y) in self.edges
        got: Optional[bool] = None
        error = self.parse_errors[x] or self.parse_errors[y]
        if error is None:
            try:
                got = decode_parsed(self.descriptor, self.parsed[x], self.parsed[y])
            except CartLabelError as e:
                error = str(e)
        if got == expected:
            return
        self.mismatch_count += 1
        if len(self.mismatches) < self.max_reported:
            self.mismatches.append(Mismatch(x=x, y=y, expected=expected, got=got, error=error))


def _sample_pairs(n: int, count: int, seed: int) -> List[Tuple[int, int]]:
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, n, size=count)
    ys = rng.integers(0, n, size=count)
    return [(int(min(a, b)), int(max(a, b))) for a, b in zip(xs, ys) if a != b]


def verify_all_pairs(
    instance: ProductInstance,
    descriptor: EncodingDescriptor,
    labels: Sequence[Label],
    cap: int = VERIFY_CAP,
    sample_pairs: int = VERIFY_SAMPLE_PAIRS,
    seed: int = DEFAULT_SEED,
    progress: bool = False,
) -> VerifyReport:
    """
    全对校验；顶点数超过 cap 时改为随机抽样

    Args:
        instance: 实例（真值来源）
        descriptor: 描述符
        labels: 标签
        cap: 穷举的顶点数上限
        sample_pairs: 抽样对数
        seed: 抽样种子
        progress: 是否显示进度条

    Returns:
        校验报告
    """
    start = time.perf_counter()
    verifier = Verifier(instance, descriptor, labels)
    n = instance.size
    total = pair_count(n)
    sampled = n > cap

    checked = 0
    if sampled:
        logger.warning(f"N={n} 超过校验上限 {cap}，抽样校验 {sample_pairs} 对")
        pairs = _sample_pairs(n, sample_pairs, seed)
        for x, y in tqdm(pairs, desc="抽样校验", disable=not progress):
            verifier.check(x, y)
        checked = len(pairs)
    else:
        for x in tqdm(range(n), desc="全对校验", disable=not progress):
            for y in range(x + 1, n):
                verifier.check(x, y)
        checked = total

    report = VerifyReport(
        n=n,
        pairs_checked=checked,
        total_pairs=total,
        sampled=sampled,
        mismatch_count=verifier.mismatch_count,
        mismatches=verifier.mismatches,
        phase1_attempts=descriptor.phase1_attempts,
        lift_attempts=descriptor.lift_attempts,
        wall_time=time.perf_counter() - start,
    )
    if report.passed:
        logger.success(f"校验通过: {format_count(checked)} 对, 耗时 {report.wall_time:.2f}s")
    else:
        logger.error(f"校验失败: {report.mismatch_count} 对不一致 (共检查 {checked} 对)")
    return report
