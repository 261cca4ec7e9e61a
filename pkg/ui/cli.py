"""
命令行界面

子命令: validate, consistency, matchings, partition, dt, logz, correspond, builtins。
标准输出只写确定性的计算结果，日志走标准错误和轮转日志文件。
"""
import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from config import get_config, init_config_and_logging
from database import builtin_tiling, list_builtins, read_tiling_file
from engine.cover import CoverContext, build_cover, dump_mu
from engine.dimer import MatchingRoute, matching_radius, roundtrip_suite
from engine.ideals import (EnumerationLimits, ResourceLimitError, apply_dt_signs, brute_force_series,
                           enumerate_ideals, ideal_series, require_certificate)
from engine.matching import perfect_matchings
from engine.series import (compare_series, detect_recurrence, expand_rational, log_specialized,
                           parse_rational_function)
from engine.verify import consistency_report
from models.ideal import SeriesByDim
from models.tiling import TilingSpec, TilingValidationError, validate_tiling
from utils.decorators import EXIT_NOT_CERTIFIED, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, UsageError, cli_error_handler
from utils.export import TextExporter, TSVExporter
from utils.logger import get_logger
from utils.statistics import SeriesStatistics

logger = get_logger(__name__)

# correspond 子命令在此大小以内附带朴素枚举对照
BRUTE_FORCE_LIMIT = 8


class CliParser(argparse.ArgumentParser):
    """参数错误抛出 UsageError（退出码 4），不直接退出"""

    def error(self, message: str):
        raise UsageError(message)


@dataclass
class RunConfig:
    """一次命令行运行的参数"""
    command: str
    builtin: Optional[str] = None
    param: Optional[int] = None
    file: Optional[str] = None
    vertex: int = 0
    max_size: int = 12
    trunc: Optional[int] = None
    radius: Optional[int] = None
    force: bool = False
    format: str = "human"
    threads: int = 1
    dt: bool = False
    summary: bool = False
    dump_mu: bool = False
    output: Optional[str] = None
    condition_c: bool = False
    resolution: bool = False
    degree_bound: int = 6
    rational: bool = False
    golden: Optional[str] = None
    max_ideals: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_size < 0:
            raise UsageError("--max-size must be non-negative")
        if self.trunc is not None and self.trunc < 0:
            raise UsageError("--trunc must be non-negative")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        if self.radius is not None and self.radius < 1:
            raise UsageError("--radius must be at least 1")
        if self.degree_bound < 0:
            raise UsageError("--degree-bound must be non-negative")
        if self.format not in ("human", "tsv"):
            raise UsageError(f"unknown format {self.format}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        fields = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__}
        return cls(**fields)

    @property
    def limits(self) -> EnumerationLimits:
        return EnumerationLimits(self.max_ideals, self.time_budget)


def build_parser() -> argparse.ArgumentParser:
    config = get_config()
    common = CliParser(add_help=False)
    source = common.add_argument_group('tiling source')
    source.add_argument('--builtin', help='builtin tiling name (see the builtins subcommand)')
    source.add_argument('--param', type=int, help='builtin parameter (c3-zn: n)')
    source.add_argument('--file', help='tiling file')
    common.add_argument('--vertex', type=int, default=0, help='base vertex i0')
    common.add_argument('--max-size', dest='max_size', type=int, default=config.enumeration.max_size)
    common.add_argument('--trunc', type=int, help='series truncation degree (default: max size)')
    common.add_argument('--radius', type=int, help='cover window radius override')
    common.add_argument('--force', action='store_true', help='compute without a consistency certificate')
    common.add_argument('--format', choices=('human', 'tsv'), default=config.output.format)
    common.add_argument('--threads', type=int, default=config.enumeration.threads)
    common.add_argument('--summary', action='store_true', help='append a per-size statistics table')
    common.add_argument('--dump-mu', dest='dump_mu', action='store_true', help='write the mu table to stderr')
    common.add_argument('--output', help='write the result to this file instead of stdout')
    common.add_argument('--max-ideals', dest='max_ideals', type=int, default=config.enumeration.max_ideals)
    common.add_argument('--time-budget', dest='time_budget', type=float,
                        default=config.enumeration.time_budget_seconds)
    common.add_argument('--log-level', dest='log_level', choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    common.add_argument('--no-log-file', dest='no_log_file', action='store_true')

    parser = CliParser(prog='tiling-dt', description='Donaldson-Thomas partition functions of brane tilings')
    sub = parser.add_subparsers(dest='command', parser_class=CliParser)
    sub.add_parser('validate', parents=[common], help='check the tiling invariants')
    consistency = sub.add_parser('consistency', parents=[common], help='consistency certificate')
    consistency.add_argument('--condition-c', dest='condition_c', action='store_true',
                             help='also run the bounded condition C search')
    consistency.add_argument('--resolution', action='store_true',
                             help='check the graded resolution character at every vertex')
    consistency.add_argument('--degree-bound', dest='degree_bound', type=int, default=config.verify.degree_bound)
    sub.add_parser('matchings', parents=[common], help='list perfect matchings')
    partition = sub.add_parser('partition', parents=[common], help='partition function Z')
    partition.add_argument('--dt', action='store_true', help='apply the DT signs')
    sub.add_parser('dt', parents=[common], help='signed partition function Z_DT')
    logz = sub.add_parser('logz', parents=[common], help='specialized plethystic logarithm of Z')
    logz.add_argument('--rational', action='store_true', help='guess a rational function by recurrence')
    logz.add_argument('--golden', help='compare against a rational function, e.g. "(x+x^2)/(1-x^6)^2"')
    sub.add_parser('correspond', parents=[common], help='ideal/matching roundtrip and two-route check')
    sub.add_parser('builtins', parents=[common], help='list builtin tilings')
    return parser


def load_tiling(cfg: RunConfig, check: bool = True) -> TilingSpec:
    """
    读取 --builtin 或 --file 指定的铺砌

    Raises:
        TilingValidationError: check 为真且铺砌不满足不变量
    """
    if (cfg.builtin is None) == (cfg.file is None):
        raise UsageError("give exactly one of --builtin or --file")
    if cfg.builtin is not None:
        t = builtin_tiling(cfg.builtin, cfg.param)
    else:
        t = read_tiling_file(cfg.file)
    if not 0 <= cfg.vertex < t.vertex_count:
        raise UsageError(f"--vertex {cfg.vertex} out of range 0..{t.vertex_count - 1}")
    if check:
        report = validate_tiling(t)
        if not report.ok:
            raise TilingValidationError(f"tiling {t.name} fails validation: "
                                        + "; ".join(str(v) for v in report.violations))
    return t


class Output:
    """收集输出行，最后写到 stdout 或 --output 文件"""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: List[str] = []

    def write(self, *lines: str) -> None:
        self.lines.extend(lines)

    def series(self, series: SeriesByDim) -> None:
        if self.cfg.format == "tsv":
            self.write(series.header())
            if not series.authoritative:
                self.write("# partial=true")
            self.write("alpha\tcount")
            self.write(*(f"{alpha}\t{count}" for alpha, count in series.items()))
        else:
            self.write(*series.to_text().splitlines())
        if self.cfg.summary:
            self.write(*SeriesStatistics(series).to_lines())

    def flush(self) -> None:
        if self.cfg.output is None:
            for line in self.lines:
                print(line)
            return
        body = [line for line in self.lines if not line.startswith("#")]
        comments = [line.lstrip("#").strip() for line in self.lines if line.startswith("#")]
        output = get_config().output
        if self.cfg.format == "tsv" and body and body[0] == "alpha\tcount":
            rows = [line.split("\t") for line in body[1:]]
            TSVExporter(output.export_path, output.encoding, output.tsv_delimiter).export_data(
                ["alpha", "count"], rows, path=self.cfg.output, comments=comments)
        else:
            TextExporter(output.export_path, output.encoding).export_text(
                "\n".join(self.lines) + "\n", path=self.cfg.output)


def _cover(t: TilingSpec, cfg: RunConfig, max_size: int, radius: Optional[int] = None) -> CoverContext:
    window = get_config().window
    ctx = build_cover(t, cfg.vertex, max_size, radius=radius if radius is not None else cfg.radius,
                      margin=window.margin, max_radius=window.max_radius)
    if cfg.dump_mu:
        for line in dump_mu(ctx.table):
            print(line, file=sys.stderr)
    return ctx


def cmd_validate(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg, check=False)
    report = validate_tiling(t)
    out.write(*report.lines())
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_consistency(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg)
    verify = get_config().verify
    report = consistency_report(t, condition_c=cfg.condition_c, max_states=verify.condition_c_max_states,
                                resolution_bound=cfg.degree_bound if cfg.resolution else None)
    out.write(*report.lines())
    return EXIT_OK if report.certified else EXIT_NOT_CERTIFIED


def cmd_matchings(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg)
    matchings = perfect_matchings(t)
    out.write(*(m.serialize() for m in matchings))
    out.write(f"# count={len(matchings)}")
    return EXIT_OK


def _series(t: TilingSpec, cfg: RunConfig, max_size: int, out: Output, signed: bool) -> Optional[SeriesByDim]:
    require_certificate(t, cfg.force)
    ctx = _cover(t, cfg, max_size)
    try:
        series = ideal_series(ctx, max_size, threads=cfg.threads, limits=cfg.limits)
    except ResourceLimitError as e:
        if e.partial is not None:
            out.series(apply_dt_signs(t, e.partial) if signed else e.partial)
        raise
    return apply_dt_signs(t, series) if signed else series


def cmd_partition(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg)
    signed = cfg.dt or cfg.command == 'dt'
    out.series(_series(t, cfg, cfg.max_size, out, signed))
    return EXIT_OK


def cmd_logz(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg)
    trunc = cfg.trunc if cfg.trunc is not None else cfg.max_size
    series = _series(t, cfg, trunc, out, signed=False)
    log = log_specialized(series, trunc)
    out.write(f"# Log Z specialized, vertex={cfg.vertex} trunc={trunc}")
    out.write(*log.to_text().splitlines())
    code = EXIT_OK
    if cfg.rational:
        guess = detect_recurrence(log.to_list(), min_terms=get_config().series.min_recurrence_terms)
        if guess is None:
            out.write("# no recurrence found within the evidence threshold")
        else:
            out.write(*("# " + line for line in guess.to_text().splitlines()))
    if cfg.golden is not None:
        numerator, denominator = parse_rational_function(cfg.golden)
        expected = expand_rational(numerator, denominator, trunc)
        comparison = compare_series(expected, log, trunc)
        out.write(comparison.message())
        if not comparison.match:
            code = EXIT_VALIDATION
    return code


def cmd_correspond(cfg: RunConfig, out: Output) -> int:
    t = load_tiling(cfg)
    require_certificate(t, cfg.force)
    radius = cfg.radius if cfg.radius is not None else matching_radius(t, cfg.max_size)
    ctx = _cover(t, cfg, cfg.max_size, radius=radius)
    ideals = list(enumerate_ideals(ctx.table, ctx.certificate, cfg.max_size, limits=cfg.limits))

    report = roundtrip_suite(ctx.table, ideals)
    by_ideals = SeriesByDim(t.vertex_count, cfg.vertex, cfg.max_size)
    for om in ideals:
        by_ideals.add(om.dim_vector)
    route = MatchingRoute(ctx.table, cfg.max_size)
    by_matchings = route.run()
    agree = by_ideals.equals(by_matchings)

    out.write(f"roundtrips: {report.passed}/{report.total} ok; z-routes agree: {'yes' if agree else 'no'}")
    out.write(f"# negative-height cuts: {route.discarded}")
    out.write(f"# size-bound cuts: {route.pruned}; oversize matchings: {route.oversize}")
    brute_ok = True
    if cfg.max_size <= BRUTE_FORCE_LIMIT:
        brute_ok = brute_force_series(ctx.table, cfg.max_size).equals(by_ideals)
        out.write(f"# brute force agrees: {'yes' if brute_ok else 'no'}")
    for failure in report.failures[:1]:
        out.write(f"# first failure: {failure}")
    return EXIT_OK if report.ok and agree and brute_ok else EXIT_VALIDATION


def cmd_builtins(cfg: RunConfig, out: Output) -> int:
    out.write("name\tvertices\tarrows\tfaces\tparameter\tdescription")
    for info in list_builtins():
        if info.needs_param:
            out.write(f"{info.name}\t-\t-\t-\tn\t{info.description}")
            continue
        t = builtin_tiling(info.name)
        out.write(f"{info.name}\t{t.vertex_count}\t{len(t.arrows)}\t{len(t.faces)}\t-\t{info.description}")
    return EXIT_OK


HANDLERS = {
    'validate': cmd_validate,
    'consistency': cmd_consistency,
    'matchings': cmd_matchings,
    'partition': cmd_partition,
    'dt': cmd_partition,
    'logz': cmd_logz,
    'correspond': cmd_correspond,
    'builtins': cmd_builtins,
}


@cli_error_handler
def _dispatch(cfg: RunConfig, out: Output) -> int:
    try:
        return HANDLERS[cfg.command](cfg, out)
    finally:
        out.flush()


@cli_error_handler
def _parse(argv: Sequence[str]) -> argparse.Namespace:
    return build_parser().parse_args(list(argv))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    执行一条命令

    Returns:
        int: 退出码 0 成功, 1 校验失败, 2 未通过一致性认证, 3 资源限制, 4 用法错误
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = _parse(argv)
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    if isinstance(args, int):
        return args
    if args.command is None:
        print(build_parser().format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE

    init_config_and_logging(args.log_level, log_file=not args.no_log_file)
    try:
        cfg = RunConfig.from_args(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logger.info(f"执行子命令 {cfg.command}")
    return _dispatch(cfg, Output(cfg))


__all__ = ['run', 'build_parser', 'RunConfig']
