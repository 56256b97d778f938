"""Command-line entry point: `ssm2d <command> [options]`.

Reports are printed to stdout as `key: value` lines; log records go to
stderr. Exit codes: 0 ok, 1 failed property, 2 bad arguments, configuration
or file format, 3 I/O error, 4 shape or group mismatch.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from ssm2d.cli.bench import cmd_bench
from ssm2d.cli.commands import cmd_apply, cmd_info, cmd_kernel, cmd_rank
from ssm2d.cli.verify import cmd_verify
from ssm2d.constants import (
    DEFAULT_RANK_TOL,
    EXIT_BAD_ARGUMENTS,
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILED,
    EXIT_SHAPE_MISMATCH,
    MIN_BENCH_REPS,
)
from ssm2d.exceptions import (
    ExtentMismatch,
    GroupMismatch,
    ShapeMismatch,
    Ssm2dError,
    VerificationFailed,
)
from ssm2d.kernel import KernelFormat
from ssm2d.logging import get_logger, setup_logging
from ssm2d.models import Mode, RunReport, ScalarField
from ssm2d.utils import parse_size
from ssm2d.version import __version__

logger = get_logger(__name__)


def _size(text: str) -> tuple[int, int]:
    try:
        l1, l2 = parse_size(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid size {text!r}: expected L1xL2") from exc
    if l1 < 1 or l2 < 1:
        raise argparse.ArgumentTypeError(f"invalid size {text!r}: extents must be >= 1")
    return l1, l2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssm2d", description="2-D state space model kernels and layers")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="stderr log level (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    kernel = commands.add_parser("kernel", help="compile and export a kernel")
    kernel.add_argument("config", type=Path, help="parameter file")
    kernel.add_argument("--size", type=_size, required=True, help="grid, e.g. 32x32")
    kernel.add_argument("--mode", choices=[m.value for m in Mode], help="override the file's mode")
    kernel.add_argument("--format", default="csv", choices=[f.value for f in KernelFormat])
    kernel.add_argument("--out", type=Path, required=True, help="output file")
    kernel.add_argument("--group", type=int, default=0)
    kernel.add_argument("--direction", type=int, default=0)

    verify = commands.add_parser("verify", help="run the verification suite")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--max-size", type=int, default=12)
    verify.add_argument("--trials", type=int, default=50)
    verify.add_argument("--timings", action="store_true", help="add per-check timings")

    bench = commands.add_parser("bench", help="time recurrence against compiled kernels")
    bench.add_argument("--sizes", type=_size, nargs="+", default=[(32, 32)])
    bench.add_argument("--n", type=int, default=16)
    bench.add_argument("--n-ssm", type=int, default=8)
    bench.add_argument("--h", type=int, default=64)
    bench.add_argument("--batch", type=int, default=16)
    bench.add_argument("--reps", type=int, default=MIN_BENCH_REPS)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--mode", default=Mode.NORMALIZED_RELAXED.value, choices=[m.value for m in Mode])

    apply = commands.add_parser("apply", help="apply a layer to a tensor file")
    apply.add_argument("tensor", type=Path, help="input tensor file")
    apply.add_argument("config", type=Path, help="parameter file")
    apply.add_argument("--out", type=Path, required=True, help="output tensor file")

    rank = commands.add_parser("rank", help="singular values and numerical rank of a kernel")
    rank.add_argument("config", type=Path, nargs="?", help="parameter file")
    rank.add_argument("--size", type=_size, required=True)
    rank.add_argument("--s4nd", action="store_true", help="random separable kernel instead")
    rank.add_argument("--seed", type=int, default=0)
    rank.add_argument("--n", type=int, default=4)
    rank.add_argument("--field", default=ScalarField.REAL.value, choices=[f.value for f in ScalarField])
    rank.add_argument("--mode", choices=[m.value for m in Mode])
    rank.add_argument("--tol", type=float, default=DEFAULT_RANK_TOL)

    info = commands.add_parser("info", help="describe a parameter file")
    info.add_argument("config", type=Path, help="parameter file")
    info.add_argument("--size", type=_size, required=True)
    return parser


def run(args: argparse.Namespace) -> RunReport:
    """Dispatch parsed arguments to a command."""
    if args.command == "kernel":
        return cmd_kernel(
            args.config, args.size, args.out, args.format, args.mode, args.group, args.direction
        )
    if args.command == "verify":
        return cmd_verify(args.seed, args.max_size, args.trials, timings=args.timings)
    if args.command == "bench":
        return cmd_bench(
            args.sizes, args.n, args.n_ssm, args.h, args.batch, args.reps, args.seed, args.mode
        )
    if args.command == "apply":
        return cmd_apply(args.tensor, args.config, args.out)
    if args.command == "rank":
        return cmd_rank(
            args.size,
            args.config,
            s4nd=args.s4nd,
            seed=args.seed,
            n=args.n,
            field=args.field,
            mode=args.mode,
            tol_ratio=args.tol,
        )
    return cmd_info(args.config, args.size)


def exit_code(exc: BaseException) -> int:
    """Exit code for an exception raised by a command."""
    if isinstance(exc, VerificationFailed):
        return EXIT_PROPERTY_FAILED
    if isinstance(exc, ShapeMismatch | GroupMismatch | ExtentMismatch):
        return EXIT_SHAPE_MISMATCH
    if isinstance(exc, OSError):
        return EXIT_IO_ERROR
    if isinstance(exc, Ssm2dError | ValueError):
        return EXIT_BAD_ARGUMENTS
    raise exc


def main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (None, 0) else EXIT_BAD_ARGUMENTS

    setup_logging(args.log_level, format_timestamps=False)
    try:
        report = run(args)
    except (Ssm2dError, OSError, ValueError) as exc:
        logger.error(str(exc), extra={"phase": args.command})
        return exit_code(exc)

    sys.stdout.write(report.to_text())
    try:
        report.raise_on_failure()
    except VerificationFailed as exc:
        logger.error(str(exc), extra={"phase": args.command})
        return exit_code(exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
