"""Singular values and numerical rank of 2-D kernels."""

from __future__ import annotations

import numpy as np

from ssm2d.constants import DEFAULT_RANK_TOL
from ssm2d.models.kernel import Kernel2D
from ssm2d.utils import require_finite


def _matrix(kernel: Kernel2D | np.ndarray) -> np.ndarray:
    values = kernel.real if isinstance(kernel, Kernel2D) else np.real(np.asarray(kernel))
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise ValueError(f"kernel must be 2-D, got shape {values.shape}")
    require_finite("kernel", values)
    return values


def singular_values(kernel: Kernel2D | np.ndarray) -> np.ndarray:
    """Singular values of the kernel's real part, in descending order."""
    return np.linalg.svd(_matrix(kernel), compute_uv=False)


def numerical_rank(kernel: Kernel2D | np.ndarray, tol_ratio: float = DEFAULT_RANK_TOL) -> int:
    """
    Count of singular values strictly above sigma_1 * tol_ratio.

    Args:
        kernel: Finite 2-D kernel
        tol_ratio: Relative tolerance in (0, 1)

    Returns:
        Numerical rank (0 for the zero matrix)
    """
    if not 0 < tol_ratio < 1:
        raise ValueError(f"tol_ratio must lie in (0, 1), got {tol_ratio}")
    sigma = singular_values(kernel)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > sigma[0] * tol_ratio))


def second_mode_ratio(kernel: Kernel2D | np.ndarray) -> float:
    """sigma_2 / sigma_1 (0 for rank-deficient trivial cases)."""
    sigma = singular_values(kernel)
    if sigma.size < 2 or sigma[0] == 0.0:
        return 0.0
    return float(sigma[1] / sigma[0])
