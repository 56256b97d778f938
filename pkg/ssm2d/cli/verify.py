"""Verification suite behind the `verify` command.

Every check records its worst error against a tolerance in a RunReport; the
command fails when any check does. Random draws come from one seeded
generator, so a seed fully determines the report.
"""

from __future__ import annotations

import time
from collections.abc import Callable

import numpy as np

from ssm2d.baseline import numerical_rank, random_s4nd_kernel, second_mode_ratio
from ssm2d.constants import (
    BOUND_TOL,
    CACHE_CHECK_SIZE,
    EQUIVALENCE_TOL,
    FFT_TOL,
    GRADIENT_EPS,
    GRADIENT_TOL,
    LINEARITY_TOL,
    SEPARABLE_TOL,
    UNNORMALIZED_CHECK_MAX,
)
from ssm2d.kernel import build_cache, compile_kernel, compile_states, get_cache, kernel_gradient
from ssm2d.layer import Ssm2dLayer, conv2d_direct, conv2d_fft
from ssm2d.logging import get_logger
from ssm2d.models import LayerConfig, Mode, RawParams, RunReport, ScalarField
from ssm2d.params import constrain, init_raw, pascal_kernel, pascal_params
from ssm2d.recurrence import impulse_response
from ssm2d.utils import make_rng, max_relative_error

logger = get_logger(__name__)

FIELDS = (ScalarField.REAL, ScalarField.COMPLEX)
MODES = (Mode.UNNORMALIZED, Mode.NORMALIZED, Mode.NORMALIZED_RELAXED)
PASCAL_SIZE = 5
PASCAL_RANK_SIZES = range(3, 9)
GRADIENT_GRID = 8
BOUND_GRID = 16
LAYER_GRID = 16
SEPARABLE_MAX = 32


def _draw_raw(rng: np.random.Generator, l1: int, l2: int, field: ScalarField, n: int) -> RawParams:
    cfg = LayerConfig(l1=l1, l2=l2, n=n, field=field)
    return init_raw(int(rng.integers(2**63)), cfg)


def _grids(max_size: int) -> list[tuple[int, int]]:
    grids = [(5, 5), (8, 5), (max_size, max_size)]
    return sorted({(min(a, max_size), min(b, max_size)) for a, b in grids})


def _extents(grid: tuple[int, int], mode: Mode) -> tuple[int, int]:
    if mode is Mode.UNNORMALIZED:
        return (min(grid[0], UNNORMALIZED_CHECK_MAX), min(grid[1], UNNORMALIZED_CHECK_MAX))
    return grid


def check_pascal(report: RunReport) -> None:
    """Pascal restriction: exact binomial kernel, full rank for several sizes."""
    expected = pascal_kernel(PASCAL_SIZE)
    params = pascal_params()
    cache = get_cache(PASCAL_SIZE, PASCAL_SIZE, Mode.UNNORMALIZED)
    compiled = compile_kernel(params, cache).real
    scanned = impulse_response(params, PASCAL_SIZE, PASCAL_SIZE, Mode.UNNORMALIZED).real
    error = max(float(np.max(np.abs(compiled - expected))), float(np.max(np.abs(scanned - expected))))
    report.record_check("pascal.kernel", error, 0.0)

    wrong = 0
    for size in PASCAL_RANK_SIZES:
        kernel = compile_kernel(params, get_cache(size, size, Mode.UNNORMALIZED))
        if numerical_rank(kernel) != size:
            wrong += 1
    report.record_check("pascal.rank", float(wrong), 0.0)


def check_oracle(report: RunReport, rng: np.random.Generator, max_size: int, trials: int) -> None:
    """Compiled kernel against the recurrence's impulse response."""
    combos = [(f, m, g) for f in FIELDS for m in MODES for g in _grids(max_size)]
    worst = 0.0
    for trial in range(trials):
        field, mode, grid = combos[trial % len(combos)]
        l1, l2 = _extents(grid, mode)
        params = constrain(_draw_raw(rng, l1, l2, field, int(rng.integers(1, 5))))
        compiled = compile_kernel(params, get_cache(l1, l2, mode)).real
        oracle = impulse_response(params, l1, l2, mode).real
        worst = max(worst, max_relative_error(compiled, oracle))
    report.record_check("oracle", worst, EQUIVALENCE_TOL)


def check_cache_reuse(report: RunReport, rng: np.random.Generator) -> None:
    """One shared cache gives the same kernels as freshly built ones."""
    l1, l2 = 6, 7
    shared = get_cache(l1, l2, Mode.NORMALIZED_RELAXED)
    mismatches = 0
    for _ in range(2):
        params = constrain(_draw_raw(rng, l1, l2, ScalarField.COMPLEX, 3))
        fresh = build_cache(l1, l2, Mode.NORMALIZED_RELAXED)
        if not np.array_equal(compile_kernel(params, shared).values, compile_kernel(params, fresh).values):
            mismatches += 1
    report.record_check("cache.reuse", float(mismatches), 0.0)


def check_cache_structure(report: RunReport) -> None:
    """Per-cell term bound and exponent conservation."""
    size = CACHE_CHECK_SIZE
    cache = get_cache(size, size, Mode.NORMALIZED)
    violations = 0
    for i in range(size):
        for j in range(size):
            bound = 2 * max(i + 1, j + 1)
            for monomials in (cache.horizontal(i, j), cache.vertical(i, j)):
                if len(monomials) > bound:
                    violations += 1
                violations += sum(1 for m in monomials if m.degree != i + j)
    report.record_check("cache.structure", float(violations), 0.0)


def check_fft(report: RunReport, rng: np.random.Generator, max_size: int, trials: int) -> None:
    """FFT convolution against the direct double sum."""
    worst = 0.0
    for _ in range(trials):
        l1, l2 = (int(v) for v in rng.integers(1, max_size + 1, size=2))
        u = rng.standard_normal((l1, l2))
        k = rng.standard_normal((l1, l2))
        worst = max(worst, max_relative_error(conv2d_fft(u, k), conv2d_direct(u, k)))
    report.record_check("fft", worst, FFT_TOL)


def finite_difference_jacobian(raw: RawParams, mode: Mode, eps: float = GRADIENT_EPS) -> np.ndarray:
    """Central differences of Re(K) over RawParams.flatten order, shape (P, L1, L2)."""
    cache = get_cache(GRADIENT_GRID, GRADIENT_GRID, mode)
    base = raw.flatten()
    rows = []
    for p in range(base.size):
        step = np.zeros_like(base)
        step[p] = eps
        plus = compile_kernel(constrain(raw.unflatten(base + step)), cache).real
        minus = compile_kernel(constrain(raw.unflatten(base - step)), cache).real
        rows.append((plus - minus) / (2 * eps))
    return np.stack(rows)


def check_gradient(report: RunReport, rng: np.random.Generator, trials: int) -> None:
    """Analytic raw-parameter partials against central differences."""
    combos = [(f, m) for f in FIELDS for m in MODES]
    worst = 0.0
    for trial in range(trials):
        field, mode = combos[trial % len(combos)]
        raw = _draw_raw(rng, GRADIENT_GRID, GRADIENT_GRID, field, int(rng.integers(1, 4)))
        cache = get_cache(GRADIENT_GRID, GRADIENT_GRID, mode)
        analytic = kernel_gradient(raw, cache).jacobian()
        worst = max(worst, max_relative_error(analytic, finite_difference_jacobian(raw, mode)))
    report.record_check("gradient", worst, GRADIENT_TOL)


def check_normalization_bound(report: RunReport, rng: np.random.Generator, trials: int) -> None:
    """Normalized states never exceed max(|B1|, |B2|) per coordinate."""
    cache = get_cache(BOUND_GRID, BOUND_GRID, Mode.NORMALIZED)
    worst = 0.0
    for trial in range(trials):
        field = FIELDS[trial % len(FIELDS)]
        params = constrain(_draw_raw(rng, BOUND_GRID, BOUND_GRID, field, int(rng.integers(1, 9))))
        states = compile_states(params, cache)
        peak = np.maximum(np.abs(states.kh), np.abs(states.kv)).max(axis=(0, 1))
        bound = np.maximum(np.abs(params.b1), np.abs(params.b2))
        worst = max(worst, float(np.max(peak - bound)))
    report.record_check("normalization.bound", max(worst, 0.0), BOUND_TOL)


def check_separable(report: RunReport, rng: np.random.Generator, trials: int) -> None:
    """Outer-product kernels have a single non-negligible singular value."""
    worst = 0.0
    for trial in range(trials):
        l1, l2 = (int(v) for v in rng.integers(2, SEPARABLE_MAX + 1, size=2))
        kernel = random_s4nd_kernel(
            int(rng.integers(2**63)), int(rng.integers(1, 9)), l1, l2, field=FIELDS[trial % 2]
        )
        worst = max(worst, second_mode_ratio(kernel))
    report.record_check("separable.rank", worst, SEPARABLE_TOL)


def check_layer(report: RunReport, rng: np.random.Generator) -> None:
    """Linearity, interior translation equivariance, flips, batch independence, precompute."""
    size = LAYER_GRID
    cfg = LayerConfig(l1=size, l2=size, h=4, n=4, n_ssm=2, field=ScalarField.COMPLEX)
    params = [constrain(init_raw(int(rng.integers(2**63)), cfg, g)) for g in range(cfg.n_ssm)]
    layer = Ssm2dLayer(cfg, params)

    u = rng.standard_normal((1, size, size, cfg.h))
    w = rng.standard_normal((1, size, size, cfg.h))
    alpha, beta = rng.standard_normal(2)
    combined = layer.forward(alpha * u + beta * w)
    report.record_check(
        "layer.linearity",
        max_relative_error(combined, alpha * layer.forward(u) + beta * layer.forward(w)),
        LINEARITY_TOL,
    )

    shift = 3
    local = np.zeros_like(u)
    local[:, : size - shift, : size - shift] = u[:, : size - shift, : size - shift]
    moved = np.roll(local, (shift, shift), axis=(1, 2))
    report.record_check(
        "layer.translation",
        max_relative_error(layer.forward(moved)[:, shift:, shift:], layer.forward(local)[:, : size - shift, : size - shift]),
        LINEARITY_TOL,
    )

    four = LayerConfig(l1=size, l2=size, h=4, n=4, n_ssm=2, directions=4)
    flipping = Ssm2dLayer(four, [constrain(init_raw(int(rng.integers(2**63)), four, g)) for g in range(2)])
    worst = 0.0
    for axes in ((1,), (2,), (1, 2)):
        flipped_in = flipping.forward(np.flip(u, axis=axes))
        worst = max(worst, max_relative_error(flipped_in, np.flip(flipping.forward(u), axis=axes)))
    report.record_check("layer.flip_equivariance", worst, FFT_TOL)

    batch = rng.standard_normal((3, size, size, cfg.h))
    stacked = np.stack([layer.forward(sample[None])[0] for sample in batch])
    report.record_check("layer.batch", 0.0 if np.array_equal(layer.forward(batch), stacked) else 1.0, 0.0)
    report.record_check("layer.precompute", float(layer.kernel_compiles - 1), 0.0)


def cmd_verify(
    seed: int = 0, max_size: int = 12, trials: int = 50, timings: bool = False
) -> RunReport:
    """
    Run every check.

    Args:
        seed: Seed of all random draws
        max_size: Largest grid extent for the oracle and FFT checks
        trials: Random draws per randomized check
        timings: Record per-check wall-clock timings in the report

    Returns:
        RunReport with one `<check>.max_error` / `<check>.status` pair per check
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if max_size < 1:
        raise ValueError(f"max-size must be >= 1, got {max_size}")

    rng = make_rng(seed)
    report = RunReport(command="verify", seed=seed)
    report.add("trials", trials)
    report.add("max_size", max_size)
    steps: list[tuple[str, Callable[[], None]]] = [
        ("pascal", lambda: check_pascal(report)),
        ("oracle", lambda: check_oracle(report, rng, max_size, trials)),
        ("cache", lambda: (check_cache_reuse(report, rng), check_cache_structure(report))),
        ("fft", lambda: check_fft(report, rng, max_size, trials)),
        ("gradient", lambda: check_gradient(report, rng, trials)),
        ("normalization", lambda: check_normalization_bound(report, rng, trials)),
        ("separable", lambda: check_separable(report, rng, trials)),
        ("layer", lambda: check_layer(report, rng)),
    ]
    for name, step in steps:
        start = time.perf_counter()
        step()
        if timings:
            report.add_timing(name, time.perf_counter() - start)
        logger.info("check finished", extra={"phase": name})
    return report
