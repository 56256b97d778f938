"""Closed-form kernel compilation from a coefficient cache.

Power tables A_k^p (p = 0 .. 2 * L_max) are gathered by each monomial's
exponents, multiplied term-wise and summed per cell, independently for every
state coordinate g. The kernel is K = sum_g C1[g] kh[g] + C2[g] kv[g].
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ssm2d.constants import DIRECTION_FLIPS, RELAXED_EDGE_SCALE
from ssm2d.exceptions import ExtentMismatch, GridError, GroupMismatch, ShapeMismatch
from ssm2d.kernel.cache import CoeffCache, MonomialTable
from ssm2d.logging import get_logger
from ssm2d.models.config import LayerConfig
from ssm2d.models.kernel import Kernel2D, KernelStack
from ssm2d.models.params import Mode, SsmParams
from ssm2d.utils import format_size

logger = get_logger(__name__)


def power_table(values: np.ndarray, max_power: int) -> np.ndarray:
    """Vandermonde table: row p holds values**p, shape (max_power + 1, N)."""
    return np.vander(np.asarray(values), max_power + 1, increasing=True).T


def power_tables(params: SsmParams, max_power: int) -> np.ndarray:
    """Stacked power tables of A1..A4, shape (4, max_power + 1, N)."""
    return np.stack([power_table(params.a[k], max_power) for k in range(4)])


def gather_factors(table: MonomialTable, powers: np.ndarray) -> np.ndarray:
    """Per-term A_k^{z_k} factors, shape (4, M, N)."""
    return np.stack([powers[k][table.exponents[:, k]] for k in range(4)])


def evaluate_table(table: MonomialTable, params: SsmParams, powers: np.ndarray) -> np.ndarray:
    """Per-cell, per-coordinate polynomial values, shape (L_tot, N)."""
    if len(table) == 0:
        return np.zeros((table.summation.shape[0], params.n), dtype=params.field.dtype)
    factors = gather_factors(table, powers)
    terms = table.coeff[:, None] * np.prod(factors, axis=0) * params.b[table.b_row]
    return table.cell_sums(terms)


@dataclass(frozen=True, eq=False)
class CoordinateStates:
    """Per-coordinate impulse-response states kh, kv of shape (L1, L2, N)."""
    kh: np.ndarray
    kv: np.ndarray


def _check_cache(cache: CoeffCache, mode: Mode | None, extents: tuple[int, int] | None) -> None:
    if mode is not None and Mode(mode) is not cache.mode:
        raise GridError(f"cache built for mode {cache.mode.value}, requested {Mode(mode).value}")
    if extents is not None and tuple(extents) != cache.shape:
        raise ExtentMismatch(cache.shape, tuple(extents))


def compile_states(params: SsmParams, cache: CoeffCache) -> CoordinateStates:
    """
    Per-coordinate horizontal and vertical kernel polynomials from the cache's
    main lists (normalized in the normalized modes, no relaxation applied).
    """
    powers = power_tables(params, cache.max_power)
    shape = (cache.l1, cache.l2, params.n)
    kh = evaluate_table(cache.h_table, params, powers).reshape(shape)
    kv = evaluate_table(cache.v_table, params, powers).reshape(shape)
    return CoordinateStates(kh=kh, kv=kv)


def edge_mask(l1: int, l2: int) -> np.ndarray:
    """Boolean mask of row 0 and column 0."""
    mask = np.zeros((l1, l2), dtype=bool)
    mask[0, :] = True
    mask[:, 0] = True
    return mask


def compile_kernel(
    params: SsmParams,
    cache: CoeffCache,
    mode: Mode | None = None,
    *,
    extents: tuple[int, int] | None = None,
    group: int = 0,
    direction: int = 0,
) -> Kernel2D:
    """
    Compile the convolution kernel of one parameter set.

    Args:
        params: Constrained parameters
        cache: Coefficient cache for the grid and mode
        mode: Mode to check the cache against (defaults to the cache's mode)
        extents: Requested kernel extents to check against the cache

    Returns:
        Kernel2D of the cache's extents
    """
    _check_cache(cache, mode, extents)
    powers = power_tables(params, cache.max_power)
    kh = evaluate_table(cache.h_table, params, powers)
    kv = evaluate_table(cache.v_table, params, powers)
    values = (kh @ params.c1 + kv @ params.c2).reshape(cache.shape)

    if cache.mode.relaxed:
        edge_h = evaluate_table(cache.edge_h_table, params, powers)
        edge_v = evaluate_table(cache.edge_v_table, params, powers)
        edges = RELAXED_EDGE_SCALE * (edge_h @ params.c1 + edge_v @ params.c2)
        mask = edge_mask(*cache.shape)
        values[mask] = edges.reshape(cache.shape)[mask]

    logger.debug(
        "kernel compiled",
        extra={
            "grid": format_size(*cache.shape),
            "mode": cache.mode.value,
            "group": group,
            "direction": direction,
            "phase": "compile",
        },
    )
    return Kernel2D(values=values, group=group, direction=direction)


def _param_grid(
    params: Sequence[SsmParams] | Sequence[Sequence[SsmParams]], cfg: LayerConfig
) -> list[list[SsmParams]]:
    """Normalize params to n_ssm rows of per-direction parameter sets."""
    if len(params) != cfg.n_ssm:
        raise GroupMismatch(f"expected {cfg.n_ssm} parameter groups, got {len(params)}")
    rows: list[list[SsmParams]] = []
    for group, entry in enumerate(params):
        row = [entry] if isinstance(entry, SsmParams) else list(entry)
        if len(row) != cfg.param_sets_per_group:
            raise GroupMismatch(
                f"group {group}: expected {cfg.param_sets_per_group} parameter sets, got {len(row)}"
            )
        if len(row) == 1:
            row = row * cfg.directions
        for p in row:
            if p.n != cfg.n:
                raise ShapeMismatch(f"group {group} state dimension", (cfg.n,), (p.n,))
            if p.field is not cfg.field:
                raise GroupMismatch(f"group {group}: field {p.field.value} != {cfg.field.value}")
            if p.d.shape != (cfg.group_size,):
                raise ShapeMismatch(f"group {group} d", (cfg.group_size,), p.d.shape)
        rows.append(row)
    return rows


def compile_kernel_stack(
    params: Sequence[SsmParams] | Sequence[Sequence[SsmParams]],
    cfg: LayerConfig,
    cache: CoeffCache | None = None,
) -> KernelStack:
    """
    Compile kernels for every group and direction.

    Args:
        params: One SsmParams per group (shared directions) or, per group, one
            SsmParams per direction
        cfg: Layer configuration
        cache: Cache to use; fetched from the process registry when omitted

    Returns:
        KernelStack whose direction d kernel is flipped along DIRECTION_FLIPS[d]
    """
    from ssm2d.kernel.cache import get_cache

    rows = _param_grid(params, cfg)
    if cache is None:
        cache = get_cache(cfg.l1, cfg.l2, cfg.mode)
    _check_cache(cache, cfg.mode, cfg.grid)

    flips = DIRECTION_FLIPS[cfg.directions]
    kernels: list[tuple[Kernel2D, ...]] = []
    for group, row in enumerate(rows):
        compiled: dict[int, Kernel2D] = {}
        group_kernels = []
        for direction, axes in enumerate(flips):
            p = row[direction]
            base = compiled.get(id(p))
            if base is None:
                base = compile_kernel(p, cache, group=group, direction=direction)
                compiled[id(p)] = base
            group_kernels.append(base.flipped(axes, direction=direction))
        kernels.append(tuple(group_kernels))
    return KernelStack(kernels=tuple(kernels), flips=flips)
