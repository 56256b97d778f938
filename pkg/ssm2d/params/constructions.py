"""Explicit parameter sets on the boundary of the stable region."""

from __future__ import annotations

import numpy as np
from scipy.linalg import pascal

from ssm2d.models.params import ScalarField, SsmParams


def pascal_params(n: int = 1, field: ScalarField = ScalarField.REAL, h: int = 1) -> SsmParams:
    """
    A1 = A2 = A3 = 1, A4 = 0, B1 = C1 = 1, B2 = C2 = 0.

    Only coordinate 0 carries signal; the unnormalized kernel is the lower
    binomial matrix, which has full rank.
    """
    a = np.zeros((4, n))
    a[:3] = 1.0
    b = np.zeros((2, n))
    c = np.zeros((2, n))
    b[0, 0] = 1.0
    c[0, 0] = 1.0
    return SsmParams(field=ScalarField(field), a=a, b=b, c=c, d=np.zeros(h))


def pascal_kernel(size: int) -> np.ndarray:
    """Expected unnormalized kernel of pascal_params: K[i, j] = C(i, j)."""
    return pascal(size, kind="lower").astype(np.float64)


def delta_params(
    n: int = 1, field: ScalarField = ScalarField.REAL, h: int = 1, d: float = 0.0
) -> SsmParams:
    """All A zero, B1 = B2 = 1, C1 = C2 = 0.5: the kernel is a unit delta (unrelaxed modes)."""
    return SsmParams(
        field=ScalarField(field),
        a=np.zeros((4, n)),
        b=np.ones((2, n)),
        c=np.full((2, n), 0.5 / n),
        d=np.full(h, d),
    )
