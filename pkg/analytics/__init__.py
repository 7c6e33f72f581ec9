"""
分析模块 - 校验、统计检验、规模基准测试和报告生成
"""
from .verifier import Verifier, oracle_adjacent, verify_all_pairs
from .statistics import (
    binomial_ci,
    exhaustive_binary_accept_rate,
    lift_retry_profile,
    phase1_retry_profile,
    stat_test_phase1,
)
from .benchmark import bench_sizes, fit_log_linear, quadratic_ratios, save_bench_csv
from .report_generator import ReportGenerator

__all__ = [
    'Verifier',
    'oracle_adjacent',
    'verify_all_pairs',
    'binomial_ci',
    'exhaustive_binary_accept_rate',
    'lift_retry_profile',
    'phase1_retry_profile',
    'stat_test_phase1',
    'bench_sizes',
    'fit_log_linear',
    'quadratic_ratios',
    'save_bench_csv',
    'ReportGenerator',
]
