"""SSM parameter data models."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ssm2d.constants import NORMALIZED_STEP
from ssm2d.exceptions import NonFiniteValues, ParameterError, ShapeMismatch


class ScalarField(str, Enum):
    """Scalar field the SSM spectra live in."""
    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self) -> type[np.generic]:
        """numpy dtype for constrained values."""
        return np.complex128 if self is ScalarField.COMPLEX else np.float64


class Mode(str, Enum):
    """Recurrence / kernel normalization mode."""
    UNNORMALIZED = "unnormalized"
    NORMALIZED = "normalized"
    NORMALIZED_RELAXED = "normalized-relaxed"

    @property
    def step_scale(self) -> float:
        """Factor applied to every propagation step."""
        return 1.0 if self is Mode.UNNORMALIZED else NORMALIZED_STEP

    @property
    def relaxed(self) -> bool:
        """Whether the first row and column use relaxed edge values."""
        return self is Mode.NORMALIZED_RELAXED


# Parameter blocks in flatten order: (attribute, row names)
PARAM_BLOCKS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("a", ("a1", "a2", "a3", "a4")),
    ("b", ("b1", "b2")),
    ("c", ("c1", "c2")),
)


def _frozen(values: np.ndarray, dtype: type[np.generic]) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _check_rows(values: np.ndarray, rows: tuple[str, ...], suffix: str) -> None:
    for name, row in zip(rows, values):
        if not np.all(np.isfinite(row)):
            raise NonFiniteValues(f"{name}{suffix}")


@dataclass(frozen=True, eq=False)
class RawParams:
    """
    Unconstrained parameters of one channel group.

    Shapes (N = state dimension, G = channels in the group):
        real:    a (4, N), b (2, N), c (2, N)
        complex: a (4, 2, N), b (2, 2, N), c (2, 2, N), axis 1 = (radius, angle)
        d (G,) in both fields
    """
    field: ScalarField
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        """Validate shapes and finiteness, then freeze the arrays."""
        a = np.asarray(self.a, dtype=np.float64)
        n = a.shape[-1] if a.ndim else 0
        inner = (2, n) if self.field is ScalarField.COMPLEX else (n,)
        for attr, rows in PARAM_BLOCKS:
            values = np.asarray(getattr(self, attr), dtype=np.float64)
            expected = (len(rows), *inner)
            if values.shape != expected or n < 1:
                raise ShapeMismatch(f"{attr}_raw", expected, values.shape)
            _check_rows(values, rows, "_raw")
            object.__setattr__(self, attr, _frozen(values, np.float64))
        d = np.atleast_1d(np.asarray(self.d, dtype=np.float64))
        if d.ndim != 1 or d.size < 1:
            raise ShapeMismatch("d_raw", (max(d.size, 1),), d.shape)
        if not np.all(np.isfinite(d)):
            raise NonFiniteValues("d_raw")
        object.__setattr__(self, "d", _frozen(d, np.float64))

    @property
    def n(self) -> int:
        """State dimension N."""
        return int(self.a.shape[-1])

    @property
    def size(self) -> int:
        """Number of raw scalars excluding D."""
        return int(self.a.size + self.b.size + self.c.size)

    def flatten(self) -> np.ndarray:
        """Raw scalars (excluding D) as one vector: a, b, c in row-major order."""
        return np.concatenate([self.a.ravel(), self.b.ravel(), self.c.ravel()])

    def unflatten(self, vector: np.ndarray) -> RawParams:
        """Inverse of flatten; D and field are taken from self."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.size,):
            raise ShapeMismatch("raw vector", (self.size,), vector.shape)
        na, nb = self.a.size, self.b.size
        return RawParams(
            field=self.field,
            a=vector[:na].reshape(self.a.shape),
            b=vector[na:na + nb].reshape(self.b.shape),
            c=vector[na + nb:].reshape(self.c.shape),
            d=self.d,
        )


@dataclass(frozen=True, eq=False)
class SsmParams:
    """
    Constrained parameters of one channel group.

    a (4, N) holds the diagonals of A1..A4, b (2, N) B1/B2, c (2, N) C1/C2,
    all in the field's dtype; d (G,) is the real skip weight per channel.
    Values outside the stable region are accepted (explicit constructions
    such as the Pascal restriction live on its boundary); see in_stable_region.
    """
    field: ScalarField
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self) -> None:
        """Validate shapes and finiteness, then freeze the arrays."""
        dtype = self.field.dtype
        a = np.asarray(self.a)
        n = a.shape[-1] if a.ndim == 2 else 0
        for attr, rows in PARAM_BLOCKS:
            values = np.asarray(getattr(self, attr))
            if self.field is ScalarField.REAL and np.iscomplexobj(values):
                if np.any(values.imag != 0):
                    raise ParameterError(f"{attr} has imaginary parts but the field is real")
                values = values.real
            expected = (len(rows), n)
            if values.shape != expected or n < 1:
                raise ShapeMismatch(attr, expected, values.shape)
            _check_rows(values, rows, "")
            object.__setattr__(self, attr, _frozen(values, dtype))
        d = np.atleast_1d(np.asarray(self.d, dtype=np.float64))
        if d.ndim != 1 or d.size < 1:
            raise ShapeMismatch("d", (max(d.size, 1),), d.shape)
        if not np.all(np.isfinite(d)):
            raise NonFiniteValues("d")
        object.__setattr__(self, "d", _frozen(d, np.float64))

    @property
    def n(self) -> int:
        """State dimension N."""
        return int(self.a.shape[1])

    @property
    def a1(self) -> np.ndarray:
        return self.a[0]

    @property
    def a2(self) -> np.ndarray:
        return self.a[1]

    @property
    def a3(self) -> np.ndarray:
        return self.a[2]

    @property
    def a4(self) -> np.ndarray:
        return self.a[3]

    @property
    def b1(self) -> np.ndarray:
        return self.b[0]

    @property
    def b2(self) -> np.ndarray:
        return self.b[1]

    @property
    def c1(self) -> np.ndarray:
        return self.c[0]

    @property
    def c2(self) -> np.ndarray:
        return self.c[1]

    def in_stable_region(self) -> bool:
        """
        Check the invariants that constrain() guarantees.

        Real: every A eigenvalue in (0, 1).
        Complex: |A|, |B| in (0, 1) and arg(A), arg(B) in (0, 2*pi).
        """
        if self.field is ScalarField.REAL:
            return bool(np.all((self.a > 0) & (self.a < 1)))
        for values in (self.a, self.b):
            radius = np.abs(values)
            if not np.all((radius > 0) & (radius < 1)):
                return False
            angle = np.mod(np.angle(values), 2 * np.pi)
            if not np.all(angle > 0):
                return False
        return True

    def with_values(self, **changes: np.ndarray) -> SsmParams:
        """Copy with some blocks replaced."""
        values = {"a": self.a, "b": self.b, "c": self.c, "d": self.d, **changes}
        return SsmParams(field=self.field, **values)
