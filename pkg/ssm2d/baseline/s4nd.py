"""Separable (outer-product) kernels of per-axis 1-D diagonal SSMs.

Each axis runs a directly parameterized discrete diagonal SSM with kernel
k[l] = Re(sum_g C[g] * A[g]**l * B[g]); the 2-D kernel is k1 (x) k2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ssm2d.constants import INIT_HIGH, INIT_LOW, RADIUS_MARGIN
from ssm2d.exceptions import EmptyGrid, NonFiniteValues, ParameterError, ShapeMismatch
from ssm2d.models.kernel import Kernel2D
from ssm2d.models.params import ScalarField
from ssm2d.params.constrain import polar
from ssm2d.utils import make_rng, unit_open

# Sub-stream id keeping 1-D draws apart from the 2-D (group, direction) streams
_BASELINE_STREAM = 1_000_003


@dataclass(frozen=True, eq=False)
class Ssm1dRaw:
    """
    Unconstrained 1-D SSM parameters.

    Each of a, b, c is (N,) in the real field and (2, N) = (radius, angle)
    in the complex field.
    """
    field: ScalarField
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=np.float64)
        n = a.shape[-1] if a.ndim else 0
        expected = (2, n) if self.field is ScalarField.COMPLEX else (n,)
        for name in ("a", "b", "c"):
            values = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if values.shape != expected or n < 1:
                raise ShapeMismatch(f"{name}_raw", expected, values.shape)
            if not np.all(np.isfinite(values)):
                raise NonFiniteValues(f"{name}_raw")
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def n(self) -> int:
        return int(self.a.shape[-1])


@dataclass(frozen=True, eq=False)
class Ssm1dParams:
    """Constrained 1-D SSM: diagonal A, B, C of length N in the field's dtype."""
    field: ScalarField
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self) -> None:
        dtype = self.field.dtype
        n = int(np.asarray(self.a).size)
        for name in ("a", "b", "c"):
            values = np.atleast_1d(np.asarray(getattr(self, name)))
            if self.field is ScalarField.REAL and np.iscomplexobj(values):
                if np.any(values.imag != 0):
                    raise ParameterError(f"{name} has imaginary parts but the field is real")
                values = values.real
            if values.shape != (n,) or n < 1:
                raise ShapeMismatch(name, (n,), values.shape)
            if not np.all(np.isfinite(values)):
                raise NonFiniteValues(name)
            frozen = np.array(values, dtype=dtype, copy=True)
            frozen.setflags(write=False)
            object.__setattr__(self, name, frozen)

    @property
    def n(self) -> int:
        return int(self.a.size)


def constrain_1d(raw: Ssm1dRaw) -> Ssm1dParams:
    """Same constraint maps as the 2-D parameters: sigmoid A, polar complex values."""
    if raw.field is ScalarField.REAL:
        return Ssm1dParams(field=raw.field, a=unit_open(raw.a), b=raw.b, c=raw.c)
    return Ssm1dParams(
        field=raw.field,
        a=polar(unit_open(raw.a[0], RADIUS_MARGIN), raw.a[1]),
        b=polar(unit_open(raw.b[0], RADIUS_MARGIN), raw.b[1]),
        c=polar(raw.c[0], raw.c[1]),
    )


def init_raw_1d(seed: int, n: int, field: ScalarField = ScalarField.REAL, axis: int = 0) -> Ssm1dRaw:
    """Draw raw 1-D parameters uniformly from [-1, 1]; deterministic in (seed, n, field, axis)."""
    field = ScalarField(field)
    rng = make_rng(seed, _BASELINE_STREAM, axis)
    shape = (2, n) if field is ScalarField.COMPLEX else (n,)
    return Ssm1dRaw(
        field=field,
        a=rng.uniform(INIT_LOW, INIT_HIGH, size=shape),
        b=rng.uniform(INIT_LOW, INIT_HIGH, size=shape),
        c=rng.uniform(INIT_LOW, INIT_HIGH, size=shape),
    )


def kernel_1d(params: Ssm1dParams, length: int) -> np.ndarray:
    """
    1-D kernel of a diagonal SSM.

    Args:
        params: Constrained parameters
        length: Kernel length L >= 1

    Returns:
        Real float64 vector k[l] = Re(sum_g C[g] A[g]**l B[g]), l = 0 .. L-1
    """
    if length < 1:
        raise EmptyGrid(f"kernel length must be >= 1, got {length}")
    powers = np.vander(params.a, length, increasing=True)  # (N, L)
    return np.real((params.c * params.b) @ powers).astype(np.float64)


def outer_kernel(k1: np.ndarray, k2: np.ndarray) -> Kernel2D:
    """K[i, j] = k1[i] * k2[j]."""
    k1 = np.asarray(k1, dtype=np.float64).ravel()
    k2 = np.asarray(k2, dtype=np.float64).ravel()
    if k1.size == 0 or k2.size == 0:
        raise EmptyGrid("outer kernel factors must be non-empty")
    return Kernel2D(values=np.outer(k1, k2))


def s4nd_kernel(p1: Ssm1dParams, p2: Ssm1dParams, l1: int, l2: int) -> Kernel2D:
    """Separable 2-D kernel from one 1-D SSM per axis."""
    return outer_kernel(kernel_1d(p1, l1), kernel_1d(p2, l2))


def random_s4nd_kernel(seed: int, n: int, l1: int, l2: int, field: ScalarField = ScalarField.REAL) -> Kernel2D:
    """Separable kernel from freshly drawn per-axis parameters."""
    p1 = constrain_1d(init_raw_1d(seed, n, field, axis=0))
    p2 = constrain_1d(init_raw_1d(seed, n, field, axis=1))
    return s4nd_kernel(p1, p2, l1, l2)
