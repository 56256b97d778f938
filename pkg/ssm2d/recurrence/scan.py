"""Brute-force evaluation of the 2-D Roesser recurrence.

Axis convention: the horizontal state advances along the first index i and
the vertical state along the second index j:

    xh[i, j] = s * (A1 xh[i-1, j] + A2 xv[i-1, j]) + B1 u[i, j]
    xv[i, j] = s * (A3 xh[i, j-1] + A4 xv[i, j-1]) + B2 u[i, j]
    y[i, j]  = Re(C1 . xh[i, j] + C2 . xv[i, j])

with zero states at index -1 and s = 1 (unnormalized) or 0.5 (normalized).
In relaxed mode the outputs on row 0 and column 0 are recomputed from
s = 1 edge states read through 2*C1, 2*C2; interior cells still consume the
normalized states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ssm2d.constants import RELAXED_EDGE_SCALE
from ssm2d.exceptions import EmptyGrid
from ssm2d.logging import get_logger
from ssm2d.models.kernel import Kernel2D
from ssm2d.models.params import Mode, SsmParams
from ssm2d.utils import format_size, require_finite

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class StateGrid:
    """Horizontal/vertical states (L1, L2, N) and real output (L1, L2) of a scan."""
    xh: np.ndarray
    xv: np.ndarray
    y: np.ndarray


def _check_grid(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 2 or u.shape[0] < 1 or u.shape[1] < 1:
        raise EmptyGrid(f"input grid must be 2-D with extents >= 1, got shape {u.shape}")
    require_finite("u", u)
    return u


def _wavefront(params: SsmParams, u: np.ndarray, scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the recurrence one anti-diagonal at a time."""
    l1, l2 = u.shape
    dtype = params.field.dtype
    xh = np.zeros((l1, l2, params.n), dtype=dtype)
    xv = np.zeros((l1, l2, params.n), dtype=dtype)

    for t in range(l1 + l2 - 1):
        i = np.arange(max(0, t - l2 + 1), min(t, l1 - 1) + 1)
        j = t - i
        feed = u[i, j][:, None]

        h = params.b1 * feed
        up = i > 0
        if np.any(up):
            pi, pj = i[up] - 1, j[up]
            h[up] += scale * (params.a1 * xh[pi, pj] + params.a2 * xv[pi, pj])

        v = params.b2 * feed
        left = j > 0
        if np.any(left):
            qi, qj = i[left], j[left] - 1
            v[left] += scale * (params.a3 * xh[qi, qj] + params.a4 * xv[qi, qj])

        xh[i, j] = h
        xv[i, j] = v
    return xh, xv


def _read_out(params: SsmParams, xh: np.ndarray, xv: np.ndarray) -> np.ndarray:
    # The only place the complex state is projected onto the reals.
    return np.real(xh @ params.c1 + xv @ params.c2)


def _relaxed_edges(params: SsmParams, u: np.ndarray, y: np.ndarray) -> None:
    """Overwrite row 0 and column 0 of y with unnormalized, 2C-read outputs."""
    dtype = params.field.dtype
    c1 = RELAXED_EDGE_SCALE * params.c1
    c2 = RELAXED_EDGE_SCALE * params.c2

    # column 0: cells (i, 0) only ever see their upper neighbours
    xh = np.zeros(params.n, dtype=dtype)
    xv = np.zeros(params.n, dtype=dtype)
    for i in range(u.shape[0]):
        xh = params.a1 * xh + params.a2 * xv + params.b1 * u[i, 0]
        xv = params.b2 * u[i, 0]
        y[i, 0] = np.real(c1 @ xh + c2 @ xv)

    # row 0: cells (0, j) only ever see their left neighbours
    xh = np.zeros(params.n, dtype=dtype)
    xv = np.zeros(params.n, dtype=dtype)
    for j in range(u.shape[1]):
        xv = params.a3 * xh + params.a4 * xv + params.b2 * u[0, j]
        xh = params.b1 * u[0, j]
        y[0, j] = np.real(c1 @ xh + c2 @ xv)


def scan(params: SsmParams, u: np.ndarray, mode: Mode) -> StateGrid:
    """
    Run the recurrence over a real input grid.

    Args:
        params: Constrained (or explicitly constructed) parameters
        u: Real input grid (L1, L2)
        mode: Normalization mode

    Returns:
        StateGrid with the interior-feeding states and the reported output
    """
    u = _check_grid(u)
    mode = Mode(mode)
    xh, xv = _wavefront(params, u, mode.step_scale)
    y = _read_out(params, xh, xv)
    if mode.relaxed:
        _relaxed_edges(params, u, y)
    logger.debug(
        "scan complete",
        extra={"grid": format_size(*u.shape), "mode": mode.value, "field": params.field.value},
    )
    return StateGrid(xh=xh, xv=xv, y=y)


def impulse_response(params: SsmParams, l1: int, l2: int, mode: Mode) -> Kernel2D:
    """Kernel as the scan output for a unit impulse at (0, 0)."""
    if l1 < 1 or l2 < 1:
        raise EmptyGrid(f"grid extents must be >= 1, got {l1}x{l2}")
    u = np.zeros((l1, l2))
    u[0, 0] = 1.0
    return Kernel2D(values=scan(params, u, mode).y)
