"""Benchmark behind the `bench` command.

Per grid size, the median over `reps` runs of:
    scan     naive recurrence over one batch element (all channels)
    cache    coefficient cache build
    compile  kernel compilation for every group and direction
    forward  FFT layer forward over the whole batch, kernels precompiled
and the ratio (scan * batch) / (compile + forward).
"""

from __future__ import annotations

import timeit
from collections.abc import Callable, Sequence
from functools import partial

import numpy as np

from ssm2d.constants import MIN_BENCH_REPS
from ssm2d.kernel import build_cache, compile_kernel_stack
from ssm2d.layer import Ssm2dLayer
from ssm2d.logging import get_logger
from ssm2d.models import LayerConfig, Mode, RunReport, SsmParams
from ssm2d.params import constrain, init_raw
from ssm2d.recurrence import scan
from ssm2d.utils import format_size, make_rng

logger = get_logger(__name__)


def median_time(fn: Callable[[], object], reps: int) -> float:
    """Median wall-clock seconds of single calls."""
    return float(np.median(timeit.Timer(fn).repeat(repeat=reps, number=1)))


def scan_sample(cfg: LayerConfig, params: Sequence[SsmParams], u: np.ndarray) -> np.ndarray:
    """Layer output of one (L1, L2, H) sample by per-channel recurrence scans."""
    y = np.empty_like(u)
    for channel in range(cfg.h):
        group = cfg.group_of(channel)
        p = params[group]
        offset = channel - group * cfg.group_size
        y[..., channel] = scan(p, u[..., channel], cfg.mode).y + p.d[offset] * u[..., channel]
    return y


def cmd_bench(
    sizes: Sequence[tuple[int, int]],
    n: int = 16,
    n_ssm: int = 8,
    h: int = 64,
    batch: int = 16,
    reps: int = MIN_BENCH_REPS,
    seed: int = 0,
    mode: Mode | str = Mode.NORMALIZED_RELAXED,
) -> RunReport:
    """
    Time the recurrence against the compiled-kernel path.

    Raises:
        ValueError: sizes below 2x2, reps or batch below one
    """
    if not sizes:
        raise ValueError("at least one size is required")
    for l1, l2 in sizes:
        if l1 < 2 or l2 < 2:
            raise ValueError(f"bench sizes must be at least 2x2, got {format_size(l1, l2)}")
    if reps < 1 or batch < 1:
        raise ValueError(f"reps and batch must be >= 1, got reps={reps}, batch={batch}")
    if reps < MIN_BENCH_REPS:
        logger.warning(f"only {reps} repetitions; medians of fewer than {MIN_BENCH_REPS} are noisy")

    rng = make_rng(seed)
    report = RunReport(command="bench", seed=seed)
    report.add("n", n)
    report.add("n_ssm", n_ssm)
    report.add("h", h)
    report.add("batch", batch)
    report.add("reps", reps)
    report.add("mode", Mode(mode).value)

    for l1, l2 in sizes:
        cfg = LayerConfig(l1=l1, l2=l2, h=h, n=n, n_ssm=n_ssm, mode=Mode(mode))
        label = format_size(l1, l2)
        bench_log = logger.with_context(grid=label, mode=cfg.mode.value)
        params = [constrain(init_raw(seed, cfg, g)) for g in range(cfg.n_ssm)]
        x = rng.standard_normal((batch, l1, l2, h))

        t_scan = median_time(partial(scan_sample, cfg, params, x[0]), reps)
        t_cache = median_time(partial(build_cache, l1, l2, cfg.mode), reps)
        cache = build_cache(l1, l2, cfg.mode)
        t_compile = median_time(partial(compile_kernel_stack, params, cfg, cache), reps)

        layer = Ssm2dLayer(cfg, params, cache=cache)
        _ = layer.kernels  # compiled outside the timed region
        t_forward = median_time(partial(layer.forward, x), reps)

        ratio = t_scan * batch / (t_compile + t_forward)
        report.add_timing(f"{label}.scan", t_scan)
        report.add_timing(f"{label}.cache", t_cache)
        report.add_timing(f"{label}.compile", t_compile)
        report.add_timing(f"{label}.forward", t_forward)
        report.add(f"{label}.ratio", ratio)
        bench_log.info(f"ratio {ratio:.2f}", extra={"phase": "bench"})
    return report
