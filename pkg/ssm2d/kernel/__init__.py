"""Coefficient cache, kernel compilation, gradients and export."""

from ssm2d.kernel.cache import (
    CoeffCache,
    Monomial,
    MonomialTable,
    build_cache,
    cache_builds,
    get_cache,
)
from ssm2d.kernel.compiler import (
    CoordinateStates,
    compile_kernel,
    compile_kernel_stack,
    compile_states,
    power_table,
)
from ssm2d.kernel.export import (
    KernelFormat,
    kernel_digest,
    read_kernel_bin,
    write_kernel,
)
from ssm2d.kernel.gradient import KernelGradient, kernel_gradient

__all__ = [
    "CoeffCache",
    "Monomial",
    "MonomialTable",
    "build_cache",
    "cache_builds",
    "get_cache",
    "CoordinateStates",
    "compile_kernel",
    "compile_kernel_stack",
    "compile_states",
    "power_table",
    "KernelFormat",
    "kernel_digest",
    "read_kernel_bin",
    "write_kernel",
    "KernelGradient",
    "kernel_gradient",
]
