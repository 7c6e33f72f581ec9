#!/usr/bin/env python3
"""
主程序入口 - 笛卡尔积邻接标签命令行

使用方法:
    python main.py gen hypercube --d 4 -o q4.cpi           # 生成实例
    python main.py encode q4.cpi -o q4.lbl                 # 编码（内部全对校验）
    python main.py query q4.lbl 0 1                        # 只凭两个标签判定相邻
    python main.py verify q4.cpi q4.lbl                    # 与暴力判定逐对比较
    python main.py stats q4.lbl                            # 标签位数分解
    python main.py bench --family hypercube --params 8,9,10 --out bench.csv

退出码: 0 正常；1 校验不一致或构造失败；2 用法/前置条件错误；3 文件格式错误
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# 添加项目路径
sys.path.insert(0, str(Path(__file__).parent))

from loguru import logger
from pydantic import ValidationError

from analytics.benchmark import bench_sizes, save_bench_csv
from analytics.report_generator import ReportGenerator
from analytics.verifier import verify_all_pairs
from config.config import DEFAULT_SEED, LOG_LEVEL
from graphs.generators import (
    FACTOR_KINDS,
    gen_dense_monotone,
    gen_grid,
    gen_hamming,
    gen_hypercube,
    gen_random_factor,
    gen_random_induced,
    gen_random_sub,
    gen_star,
)
from graphs.io import read_graph, read_instance, write_instance
from graphs.product import ProductInstance
from labeling.label_file import query_labels, read_label_file, write_label_file
from labeling.product_labeler import decode, encode, label_stats
from models.cli_config import CliConfig
from models.descriptor import BASE_SCHEME_IDS
from models.report import VerifyReport
from utils.errors import (
    BuildError,
    CartLabelError,
    ClassMembershipError,
    GraphFormatError,
    InstanceFormatError,
    InstanceValidationError,
    LabelFormatError,
    ProductSizeError,
    UndecodableXorError,
    UnknownBaseLabelError,
    VertexNotFoundError,
)
from utils.file_handler import dumps_json, save_json
from utils.logger import LEVELS, setup_logger

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3

GEN_FAMILIES = ("hypercube", "hamming", "grid", "random-sub", "dense-monotone", "star", "random-induced")
SUB_BASE_FAMILIES = ("hypercube", "hamming", "grid")


def _int_list(text: str) -> List[int]:
    """解析逗号分隔的整数列表，如 5,5,5"""
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数: {text!r}") from None


def _str_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def exit_code_for(error: BaseException) -> int:
    """异常到退出码的映射"""
    if isinstance(error, (GraphFormatError, InstanceFormatError, LabelFormatError)):
        return EXIT_FORMAT
    if isinstance(error, (BuildError, UndecodableXorError, UnknownBaseLabelError)):
        return EXIT_MISMATCH
    if isinstance(error, (
        FileNotFoundError,
        ClassMembershipError,
        ProductSizeError,
        InstanceValidationError,
        VertexNotFoundError,
        ValidationError,
        ValueError,
    )):
        return EXIT_USAGE
    return EXIT_MISMATCH


class CartLabelApp:
    """命令行应用主类"""

    def __init__(self, config: CliConfig, args: argparse.Namespace):
        self.config = config
        self.args = args

    def run(self) -> int:
        handler = getattr(self, f"cmd_{self.config.command}")
        return handler()

    # ==================== gen ====================

    def _base_instance(self, family: str) -> ProductInstance:
        args = self.args
        if family == "hypercube":
            return gen_hypercube(self._need("d"))
        if family == "hamming":
            return gen_hamming(self._need("d"), args.a)
        if family == "grid":
            return gen_grid(self._need("dims"))
        raise ValueError(f"未知实例族: {family}")

    def _need(self, name: str):
        value = getattr(self.args, name, None)
        if value is None:
            raise ValueError(f"实例族 {self.args.family} 需要参数 --{name}")
        return value

    def cmd_gen(self) -> int:
        """生成 .cpi 实例文件"""
        args = self.args
        family = args.family
        seed = self.config.seed
        if family in SUB_BASE_FAMILIES:
            instance = self._base_instance(family)
        elif family == "random-sub":
            density = self.config.density if self.config.density is not None else 0.5
            instance = gen_random_sub(self._base_instance(args.sub_base), density, seed)
        elif family == "dense-monotone":
            instance = gen_dense_monotone(read_graph(self._need("gprime")), self._need("n"))
        elif family == "star":
            instance = gen_star(self._need("leaves"))
        elif family == "random-induced":
            factors = [gen_random_factor(seed + j, args.max_factor) for j in range(self._need("d"))]
            instance = gen_random_induced(factors, self._need("size"), seed)
        else:
            raise ValueError(f"未知实例族: {family}")

        path = write_instance(instance, self.config.output_path)
        mode = "诱导" if instance.is_induced else f"显式 {len(instance.edges)} 条边"
        logger.success(f"实例已生成: {path} (N={instance.size}, d={instance.d}, {mode})")
        return EXIT_OK

    # ==================== encode ====================

    def cmd_encode(self) -> int:
        """编码实例并在内部做全对校验，校验通过才返回0"""
        config = self.config
        instance = read_instance(config.input_path)
        descriptor, labels = encode(
            instance,
            mode=self.args.mode,
            scheme=config.base,
            seed=config.seed,
            q_mode=config.q_mode,
        )
        path = write_label_file(descriptor, labels, config.output_path)
        logger.info(f"标签文件已写出: {path}")

        target = instance.as_induced() if descriptor.mode == "induced" else instance
        report = verify_all_pairs(target, descriptor, labels, cap=config.cap, seed=config.seed)
        if not report.passed:
            self._log_mismatches(report)
            return EXIT_MISMATCH
        stats = label_stats(descriptor, labels)
        logger.success(f"编码完成: N={descriptor.n}, 最长标签 {stats.max_bits} 位, 平均 {stats.mean_bits:.1f} 位")
        return EXIT_OK

    # ==================== query ====================

    def cmd_query(self) -> int:
        """只读取头部和两行标签做解码"""
        x, y = self.args.x, self.args.y
        descriptor, label_x, label_y = query_labels(self.config.input_path, x, y)
        adjacent = decode(descriptor, label_x, label_y)
        print("adjacent" if adjacent else "not-adjacent")
        return EXIT_OK

    # ==================== verify ====================

    def cmd_verify(self) -> int:
        config = self.config
        instance = read_instance(config.input_path)
        descriptor, labels = read_label_file(self.args.labels)
        if descriptor.n != instance.size:
            raise InstanceValidationError(f"标签文件有 {descriptor.n} 个顶点，实例有 {instance.size} 个")
        report = verify_all_pairs(
            instance, descriptor, labels, cap=config.cap, seed=config.seed, progress=self.args.progress
        )
        if self.args.save is not None:
            save_json(report.model_dump(), self.args.save, pretty=True)
        if self.args.json:
            print(dumps_json(report.model_dump()))
        else:
            kind = "抽样" if report.sampled else "全对"
            print(f"{kind}校验 {report.pairs_checked}/{report.total_pairs} 对, 不一致 {report.mismatch_count} 对")
            for m in report.mismatches:
                print(f"mismatch {m.x} {m.y} expected={int(m.expected)} got={m.got if m.got is None else int(m.got)}")
        if not report.passed:
            self._log_mismatches(report)
            return EXIT_MISMATCH
        return EXIT_OK

    # ==================== stats ====================

    def cmd_stats(self) -> int:
        descriptor, labels = read_label_file(self.config.input_path)
        stats = label_stats(descriptor, labels)
        if self.args.save is not None:
            save_json(stats.model_dump(), self.args.save, pretty=True)
        if self.args.json:
            print(dumps_json(stats.model_dump()))
            return EXIT_OK

        print(f"模式 {stats.mode}, N={descriptor.n}, 最长 {stats.max_bits} 位, "
              f"最短 {stats.min_bits} 位, 平均 {stats.mean_bits:.2f} 位")
        print(f"阶段1常数 c = {stats.phase1_constant:.2f} (阶段1位数 / log2 n)")
        for name, total in stats.field_totals.items():
            print(f"  {name:<8} 合计 {total:>10} 位, 最长 {stats.field_max[name]} 位")
        print(f"  {'total':<8} 合计 {stats.total_bits:>10} 位")
        print(f"头部 {stats.header_bits} 位, 均摊每个标签 {stats.amortized_header_bits:.2f} 位")
        if descriptor.mode == "subgraph":
            print(f"k(H)={stats.k}, k(G)={stats.k_g}")
            print(f"MPHF {stats.mphf_keys} 个键, 每键 {stats.mphf_bits_per_key:.2f} 位 "
                  f"(下界 {stats.mphf_floor_bits_per_key:.3f})")
        return EXIT_OK

    # ==================== bench ====================

    def cmd_bench(self) -> int:
        """按实例族批量编码，写出规模CSV和可选的Markdown报告"""
        config = self.config
        args = self.args
        reports = bench_sizes(
            args.bench_family,
            args.params,
            modes=args.modes,
            seed=config.seed,
            q_mode=config.q_mode,
            base=config.base,
            density=config.density if config.density is not None else 0.5,
            progress=args.progress,
        )
        if config.output_path is not None:
            save_bench_csv(reports, config.output_path)
            logger.success(f"基准结果已保存: {config.output_path}")
        else:
            for r in reports:
                print(dumps_json(r.model_dump(), pretty=False))
        if args.report is not None:
            ReportGenerator().generate_report(reports, args.report)
        return EXIT_OK

    @staticmethod
    def _log_mismatches(report: VerifyReport) -> None:
        logger.error(f"校验失败: {report.mismatch_count} 对不一致")
        for m in report.mismatches[:10]:
            logger.error(f"  ({m.x}, {m.y}): 期望 {m.expected}, 解码 {m.got} {m.error or ''}")


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器；公共参数在每个子命令上都可用"""
    logging_opts = argparse.ArgumentParser(add_help=False)
    logging_opts.add_argument('--seed', default=argparse.SUPPRESS, help=f'64位十六进制主种子（默认 {DEFAULT_SEED:016x}）')
    logging_opts.add_argument('--log-level', type=str.upper, choices=LEVELS, default=argparse.SUPPRESS, help=f'日志级别（默认 {LOG_LEVEL}）')
    logging_opts.add_argument('--log-file', type=Path, default=argparse.SUPPRESS, help='同时写入日志文件')

    scheme_opts = argparse.ArgumentParser(add_help=False)
    scheme_opts.add_argument('--q-mode', choices=['paper', 'adaptive'], default=argparse.SUPPRESS,
                             help='阶段1副本数q的选择方式')
    scheme_opts.add_argument('--base', choices=BASE_SCHEME_IDS, default=argparse.SUPPRESS,
                             help='基础标签方案（默认按因子自动选择）')
    scheme_opts.add_argument('--cap', type=int, default=argparse.SUPPRESS, help='全对校验的顶点上限')

    parser = argparse.ArgumentParser(
        description="笛卡尔积子图与诱导子图的邻接标签方案",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  python main.py gen hypercube --d 4 -o q4.cpi
  python main.py gen random-sub --base hypercube --d 5 --density 0.5 --seed 1 -o sub.cpi
  python main.py gen dense-monotone --gprime k4.gr --n 16 -o dense.cpi
  python main.py encode sub.cpi --mode subgraph -o sub.lbl
  python main.py query sub.lbl 0 1
  python main.py verify sub.cpi sub.lbl --json
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', parents=[logging_opts], help='生成实例文件 (.cpi)')
    gen.add_argument('family', choices=GEN_FAMILIES, help='实例族')
    gen.add_argument('--d', type=int, help='维数（random-induced 时为因子个数）')
    gen.add_argument('--a', type=int, default=3, help='汉明图的字母表大小')
    gen.add_argument('--dims', type=_int_list, help='网格各维长度，如 5,5')
    gen.add_argument('--base', dest='sub_base', choices=SUB_BASE_FAMILIES, default='hypercube',
                     help='random-sub 的基础实例族')
    gen.add_argument('--density', type=float, help='random-sub 保留每条边的概率')
    gen.add_argument('--gprime', type=Path, help='dense-monotone 的因子图 (.gr)')
    gen.add_argument('--n', type=int, help='dense-monotone 的顶点数')
    gen.add_argument('--leaves', type=int, help='star 的叶子数')
    gen.add_argument('--size', type=int, help='random-induced 选取的元组数')
    gen.add_argument('--max-factor', type=int, default=6, help=f'random-induced 因子最大规模（{"/".join(FACTOR_KINDS)}）')
    gen.add_argument('-o', '--out', type=Path, required=True, help='输出文件')

    enc = sub.add_parser('encode', parents=[logging_opts, scheme_opts], help='编码实例为标签文件 (.lbl)')
    enc.add_argument('instance', type=Path, help='实例文件')
    enc.add_argument('--mode', choices=['induced', 'subgraph'], help='编码模式（默认按实例的边模式）')
    enc.add_argument('-o', '--out', type=Path, required=True, help='输出文件')

    query = sub.add_parser('query', parents=[logging_opts], help='只凭两个标签判定相邻')
    query.add_argument('labels', type=Path, help='标签文件')
    query.add_argument('x', type=int)
    query.add_argument('y', type=int)

    ver = sub.add_parser('verify', parents=[logging_opts, scheme_opts], help='与暴力判定逐对比较')
    ver.add_argument('instance', type=Path, help='实例文件')
    ver.add_argument('labels', type=Path, help='标签文件')
    ver.add_argument('--json', action='store_true', help='以JSON输出校验报告')
    ver.add_argument('--progress', action='store_true', help='显示进度条')
    ver.add_argument('--save', type=Path, help='同时把校验报告保存为JSON文件')

    stats = sub.add_parser('stats', parents=[logging_opts], help='标签位数分解')
    stats.add_argument('labels', type=Path, help='标签文件')
    stats.add_argument('--json', action='store_true', help='以JSON输出')
    stats.add_argument('--save', type=Path, help='同时把统计结果保存为JSON文件')

    bench = sub.add_parser('bench', parents=[logging_opts, scheme_opts], help='标签规模基准测试')
    bench.add_argument('--family', dest='bench_family', default='hypercube',
                       choices=['hypercube', 'hamming3', 'grid2', 'star'], help='实例族')
    bench.add_argument('--params', type=_int_list, required=True, help='规模参数，如 8,9,10')
    bench.add_argument('--modes', type=_str_list, default=['induced'], help='induced,subgraph')
    bench.add_argument('--density', type=float, help='子图模式保留边的概率')
    bench.add_argument('--out', type=Path, help='CSV输出文件（缺省时逐行打印JSON）')
    bench.add_argument('--report', type=Path, help='Markdown报告输出文件')
    bench.add_argument('--progress', action='store_true', help='显示进度条')
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    values = {
        "command": args.command,
        "seed": getattr(args, "seed", DEFAULT_SEED),
        "q_mode": getattr(args, "q_mode", "paper"),
        "base": getattr(args, "base", None),
        "density": getattr(args, "density", None),
        "input_path": getattr(args, "instance", None) or getattr(args, "labels", None),
        "output_path": getattr(args, "out", None),
    }
    if hasattr(args, "cap"):
        values["cap"] = args.cap
    if args.command in ("stats", "query"):
        values["input_path"] = args.labels
    return CliConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主函数，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logger(
        log_file=getattr(args, "log_file", None),
        level=getattr(args, "log_level", LOG_LEVEL),
        seed=getattr(args, "seed", f"{DEFAULT_SEED:016x}"),
    )

    try:
        config = _config_from_args(args)
        return CartLabelApp(config, args).run()
    except KeyboardInterrupt:
        logger.warning("程序被用户中断")
        return EXIT_MISMATCH
    except BuildError as e:
        logger.error(f"[{e.phase}] 构造失败（{e.attempts} 次尝试）: {e}")
        return EXIT_MISMATCH
    except ValidationError as e:
        logger.error(f"参数不合法: {e}")
        return EXIT_USAGE
    except (CartLabelError, FileNotFoundError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return exit_code_for(e)


if __name__ == '__main__':
    sys.exit(main())
