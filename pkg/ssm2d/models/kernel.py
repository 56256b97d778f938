"""Compiled kernel data models."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ssm2d.exceptions import NonFiniteValues


@dataclass(frozen=True, eq=False)
class Kernel2D:
    """
    A compiled L1 x L2 convolution kernel.

    values is float64 for real parameters and complex128 for complex ones;
    the layer only ever consumes the real part.
    """
    values: np.ndarray
    group: int = 0
    direction: int = 0

    def __post_init__(self) -> None:
        values = np.array(self.values, copy=True)
        if values.ndim != 2:
            raise ValueError(f"kernel must be 2-D, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValues("kernel")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> tuple[int, int]:
        return (int(self.values.shape[0]), int(self.values.shape[1]))

    @property
    def is_complex(self) -> bool:
        return bool(np.iscomplexobj(self.values))

    @property
    def real(self) -> np.ndarray:
        """Real part as float64 (the part the layer output uses)."""
        return np.ascontiguousarray(self.values.real, dtype=np.float64)

    def flipped(self, axes: tuple[int, ...], direction: int | None = None) -> Kernel2D:
        """Kernel reversed along the given axes."""
        values = np.flip(self.values, axis=axes) if axes else self.values
        return Kernel2D(
            values=values,
            group=self.group,
            direction=self.direction if direction is None else direction,
        )

    def __repr__(self) -> str:
        return (
            f"Kernel2D(shape={self.shape}, group={self.group}, "
            f"direction={self.direction}, complex={self.is_complex})"
        )


@dataclass(frozen=True, eq=False)
class KernelStack:
    """
    Kernels of a whole layer: n_ssm groups x directions.

    flips[d] lists the axes direction d's kernel was reversed along; a
    reversed axis is applied anchored at the kernel's far corner.
    """
    kernels: tuple[tuple[Kernel2D, ...], ...]
    flips: tuple[tuple[int, ...], ...]

    @property
    def n_ssm(self) -> int:
        return len(self.kernels)

    @property
    def directions(self) -> int:
        return len(self.flips)

    @property
    def shape(self) -> tuple[int, int]:
        return self.kernels[0][0].shape

    def kernel(self, group: int, direction: int = 0) -> Kernel2D:
        return self.kernels[group][direction]

    def real_values(self) -> np.ndarray:
        """Real parts as an (n_ssm, directions, L1, L2) array."""
        return np.stack([np.stack([k.real for k in row]) for row in self.kernels])
