"""
报告生成模块 - 生成Markdown格式的基准测试报告
"""
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Sequence

from loguru import logger

from analytics.benchmark import fit_log_linear, overhead_bound, quadratic_ratios
from labeling.mphf import THEORETICAL_BITS_PER_KEY
from models.report import SizeReport


class ReportGenerator:
    """报告生成器"""

    def __init__(self):
        self.report_parts: List[str] = []

    def generate_report(self, reports: Sequence[SizeReport], output_path: Path) -> Path:
        """
        生成完整的基准测试报告

        Args:
            reports: 规模报告
            output_path: 输出路径

        Returns:
            报告文件路径
        """
        logger.info("开始生成基准测试报告")

        self.report_parts = []

        # 1. 报告头部
        self._add_header()

        # 2. 标签规模表
        self._add_size_table(reports)

        # 3. 增长形状
        self._add_shape_analysis(reports)

        # 4. 子图模式附加位数
        self._add_overhead(reports)

        # 5. 结论
        self._add_conclusion()

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text('\n\n'.join(self.report_parts) + '\n', encoding='utf-8')

        logger.info(f"报告已生成: {output_path}")
        return output_path

    def _add_header(self):
        """添加报告头部"""
        header = f"""# 笛卡尔积邻接标签规模报告

**生成时间**: {datetime.now().strftime('%Y年%m月%d日 %H:%M:%S')}

**报告说明**: 各实例族在诱导模式与子图模式下的最长标签位数，以及与 (k+1)⌈log2 n⌉ 位的 KNR 基线的比较。

---"""
        self.report_parts.append(header)

    def _add_size_table(self, reports: Sequence[SizeReport]):
        table = """## 一、标签规模

| 实例族 | n | 模式 | 最长 | 平均 | 阶段1 | XOR | 阶段3 | 基线 | k(H) | k(G) |
|--------|---|------|------|------|-------|-----|-------|------|------|------|"""
        for r in reports:
            table += (
                f"\n| {r.family} | {r.n} | {r.mode} | {r.max_bits} | {r.mean_bits:.1f} | "
                f"{r.phase1_bits} | {r.xor_bits} | {r.phase3_bits} | {r.baseline_bits} | {r.kH} | {r.kG} |"
            )
        self.report_parts.append(table)

    def _add_shape_analysis(self, reports: Sequence[SizeReport]):
        """按 (实例族, 模式) 拟合 a + b·log2 n"""
        groups: Dict[tuple, List[SizeReport]] = {}
        for r in reports:
            groups.setdefault((r.family, r.mode), []).append(r)

        section = """## 二、增长形状

| 实例族 | 模式 | a | b | 最大相对残差 | bits/log2²n |
|--------|------|---|---|--------------|-------------|"""
        for (family, mode), rows in groups.items():
            rows = sorted(rows, key=lambda r: r.n)
            ns = [r.n for r in rows]
            bits = [r.max_bits for r in rows]
            if len(rows) < 2 or min(ns) < 2:
                section += f"\n| {family} | {mode} | - | - | - | - |"
                continue
            a, b, residual = fit_log_linear(ns, bits)
            ratios = ", ".join(f"{v:.2f}" for v in quadratic_ratios(ns, bits))
            section += f"\n| {family} | {mode} | {a:.1f} | {b:.1f} | {residual:.2%} | {ratios} |"
        self.report_parts.append(section)

    def _add_overhead(self, reports: Sequence[SizeReport]):
        section = """## 三、子图模式附加位数

| 实例族 | n | k(H) | 附加位数 | 上界 6k + 2log2 n + 128 | MPHF 位/键 |
|--------|---|------|----------|-------------------------|-------------|"""
        rows = [r for r in reports if r.mode == "subgraph"]
        for r in rows:
            section += (
                f"\n| {r.family} | {r.n} | {r.kH} | {r.phase3_bits} | "
                f"{overhead_bound(r.kH, r.n):.0f} | {r.mphf_bits_per_key:.2f} |"
            )
        if not rows:
            section += "\n| - | - | - | - | - | - |"
        section += f"\n\nMPHF 每键位数的理论下界为 log2 e ≈ {THEORETICAL_BITS_PER_KEY:.3f}；小 k 时固定头部占比大，实测值远高于下界。"
        self.report_parts.append(section)

    def _add_conclusion(self):
        conclusion = """## 四、说明

按默认 q 取值时，阶段1的常数较大，桌面规模下标签绝对长度通常仍长于 KNR 基线；
本报告只比较增长形状：标签位数应随 log2 n 线性增长，bits/log2²n 随 n 翻倍严格下降。

---

*报告生成完毕*"""
        self.report_parts.append(conclusion)
