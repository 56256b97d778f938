"""Separable S4ND-style baseline and kernel rank measurement."""

from ssm2d.baseline.rank import numerical_rank, second_mode_ratio, singular_values
from ssm2d.baseline.s4nd import (
    Ssm1dParams,
    Ssm1dRaw,
    constrain_1d,
    init_raw_1d,
    kernel_1d,
    outer_kernel,
    random_s4nd_kernel,
    s4nd_kernel,
)

__all__ = [
    "numerical_rank",
    "second_mode_ratio",
    "singular_values",
    "Ssm1dParams",
    "Ssm1dRaw",
    "constrain_1d",
    "init_raw_1d",
    "kernel_1d",
    "outer_kernel",
    "random_s4nd_kernel",
    "s4nd_kernel",
]
