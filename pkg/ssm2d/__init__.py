"""
ssm2d - 2-D (Roesser) state space model layers compiled to global convolution kernels.

Usage:
    import ssm2d

    cfg = ssm2d.LayerConfig(l1=32, l2=32, h=64, n=16, n_ssm=8)
    params = [ssm2d.constrain(ssm2d.init_raw(0, cfg, g)) for g in range(cfg.n_ssm)]

    # Kernels are compiled once and reused by every forward pass
    layer = ssm2d.Ssm2dLayer(cfg, params)
    y = layer.forward(x)  # x: (batch, 32, 32, 64)
"""

from ssm2d.version import __version__
from ssm2d.models import (
    Kernel2D,
    KernelStack,
    LayerConfig,
    Mode,
    RawParams,
    RunReport,
    ScalarField,
    SsmParams,
)
from ssm2d.params import constrain, count_parameters, init_layer, init_raw, pascal_params
from ssm2d.recurrence import impulse_response, scan
from ssm2d.kernel import (
    CoeffCache,
    build_cache,
    compile_kernel,
    compile_kernel_stack,
    get_cache,
    kernel_gradient,
)
from ssm2d.layer import Ssm2dLayer, apply_layer, conv2d_direct, conv2d_fft
from ssm2d.baseline import numerical_rank, outer_kernel, s4nd_kernel
from ssm2d.exceptions import (
    Ssm2dError,
    ParameterError,
    NonFiniteValues,
    ShapeMismatch,
    GroupMismatch,
    ConfigError,
    GridError,
    CacheError,
    CoefficientOverflow,
    FormatError,
    VerificationFailed,
)

__all__ = [
    "__version__",
    "Kernel2D",
    "KernelStack",
    "LayerConfig",
    "Mode",
    "RawParams",
    "RunReport",
    "ScalarField",
    "SsmParams",
    "constrain",
    "count_parameters",
    "init_layer",
    "init_raw",
    "pascal_params",
    "impulse_response",
    "scan",
    "CoeffCache",
    "build_cache",
    "compile_kernel",
    "compile_kernel_stack",
    "get_cache",
    "kernel_gradient",
    "Ssm2dLayer",
    "apply_layer",
    "conv2d_direct",
    "conv2d_fft",
    "numerical_rank",
    "outer_kernel",
    "s4nd_kernel",
    # Exceptions
    "Ssm2dError",
    "ParameterError",
    "NonFiniteValues",
    "ShapeMismatch",
    "GroupMismatch",
    "ConfigError",
    "GridError",
    "CacheError",
    "CoefficientOverflow",
    "FormatError",
    "VerificationFailed",
]
