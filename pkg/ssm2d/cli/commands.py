"""kernel, apply, rank and info commands."""

from __future__ import annotations

import time
from pathlib import Path

import numpy as np

from ssm2d.baseline import numerical_rank, random_s4nd_kernel, singular_values
from ssm2d.cli.config_file import load_param_file
from ssm2d.constants import DEFAULT_RANK_TOL
from ssm2d.exceptions import GroupMismatch, ShapeMismatch
from ssm2d.kernel import KernelFormat, compile_kernel_stack, get_cache, kernel_digest, write_kernel
from ssm2d.layer import Ssm2dLayer, read_tensor, write_tensor
from ssm2d.logging import get_logger
from ssm2d.models import LayerConfig, Mode, RunReport, ScalarField
from ssm2d.params import count_parameters
from ssm2d.utils import format_size

logger = get_logger(__name__)


def _check_index(cfg: LayerConfig, group: int, direction: int) -> None:
    if not 0 <= group < cfg.n_ssm:
        raise GroupMismatch(f"group {group} out of range for n_ssm={cfg.n_ssm}")
    if not 0 <= direction < cfg.directions:
        raise GroupMismatch(f"direction {direction} out of range for directions={cfg.directions}")


def cmd_kernel(
    config_path: Path,
    size: tuple[int, int],
    out_path: Path,
    fmt: KernelFormat | str = KernelFormat.CSV,
    mode: Mode | str | None = None,
    group: int = 0,
    direction: int = 0,
) -> RunReport:
    """Compile one kernel from a parameter file and write it to out_path."""
    fmt = KernelFormat(fmt)
    pf = load_param_file(config_path)
    cfg, params = pf.build(*size, mode=mode)
    _check_index(cfg, group, direction)

    report = RunReport(command="kernel")
    start = time.perf_counter()
    cache = get_cache(cfg.l1, cfg.l2, cfg.mode)
    report.add_timing("cache", time.perf_counter() - start)

    start = time.perf_counter()
    kernel = compile_kernel_stack(params, cfg, cache).kernel(group, direction)
    report.add_timing("compile", time.perf_counter() - start)

    write_kernel(kernel, fmt, out_path)
    logger.info("kernel written", extra={"grid": format_size(*size), "mode": cfg.mode.value})

    report.add("size", format_size(*size))
    report.add("mode", cfg.mode.value)
    report.add("field", cfg.field.value)
    report.add("group", group)
    report.add("direction", direction)
    report.add("format", fmt.value)
    report.add("out", str(out_path))
    report.add("kernel.max_abs", float(np.max(np.abs(kernel.real))))
    report.add("kernel.digest", kernel_digest(kernel))
    return report


def cmd_apply(tensor_path: Path, config_path: Path, out_path: Path) -> RunReport:
    """Apply the layer described by a parameter file to a tensor file."""
    x = read_tensor(tensor_path)
    batch, l1, l2, h = x.shape
    pf = load_param_file(config_path)
    if pf.h != h:
        raise ShapeMismatch("tensor channels", (pf.h,), (h,))
    cfg, params = pf.build(l1, l2)

    report = RunReport(command="apply")
    layer = Ssm2dLayer(cfg, params)
    start = time.perf_counter()
    y = layer.forward(x)
    report.add_timing("forward", time.perf_counter() - start)
    write_tensor(out_path, y)

    report.add("shape", f"{batch}x{l1}x{l2}x{h}")
    report.add("mode", cfg.mode.value)
    report.add("kernel_compiles", layer.kernel_compiles)
    report.add("out", str(out_path))
    report.add("output.digest", kernel_digest(y.reshape(batch * l1, l2 * h)))
    return report


def cmd_rank(
    size: tuple[int, int],
    config_path: Path | None = None,
    *,
    s4nd: bool = False,
    seed: int = 0,
    n: int = 4,
    field: ScalarField | str = ScalarField.REAL,
    mode: Mode | str | None = None,
    tol_ratio: float = DEFAULT_RANK_TOL,
) -> RunReport:
    """
    Singular values and numerical rank of a compiled 2-D SSM kernel, or of a
    random separable S4ND-style kernel when s4nd is set.
    """
    report = RunReport(command="rank", seed=seed if s4nd else None)
    if s4nd:
        kernel = random_s4nd_kernel(seed, n, *size, field=ScalarField(field))
        report.add("source", "s4nd")
    else:
        if config_path is None:
            raise ValueError("rank needs a parameter file or --s4nd")
        cfg, params = load_param_file(config_path).build(*size, mode=mode)
        kernel = compile_kernel_stack(params, cfg).kernel(0)
        report.add("source", "ssm2d")
        report.add("mode", cfg.mode.value)

    sigma = singular_values(kernel)
    report.add("size", format_size(*size))
    report.add("tol_ratio", tol_ratio)
    report.add("singular_values", [float(s) for s in sigma])
    report.add("rank", numerical_rank(kernel, tol_ratio))
    report.add("kernel.digest", kernel_digest(kernel))
    return report


def cmd_info(config_path: Path, size: tuple[int, int]) -> RunReport:
    """Layer configuration, parameter count and kernel digests of a parameter file."""
    cfg, params = load_param_file(config_path).build(*size)
    report = RunReport(command="info")
    report.add("size", format_size(cfg.l1, cfg.l2))
    report.add("h", cfg.h)
    report.add("n", cfg.n)
    report.add("n_ssm", cfg.n_ssm)
    report.add("field", cfg.field.value)
    report.add("mode", cfg.mode.value)
    report.add("directions", cfg.directions)
    report.add("parameters", count_parameters(cfg))
    report.add("stable", all(p.in_stable_region() for p in params))

    stack = compile_kernel_stack(params, cfg)
    for group in range(stack.n_ssm):
        report.add(f"group{group}.digest", kernel_digest(stack.kernel(group)))
    return report
