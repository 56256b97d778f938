"""Parameter constraints, initialization and explicit constructions."""

from ssm2d.params.constrain import (
    constrain,
    count_parameters,
    init_layer,
    init_raw,
    polar,
)
from ssm2d.params.constructions import delta_params, pascal_kernel, pascal_params

__all__ = [
    "constrain",
    "count_parameters",
    "init_layer",
    "init_raw",
    "polar",
    "delta_params",
    "pascal_kernel",
    "pascal_params",
]
