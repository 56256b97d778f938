"""Data models for ssm2d."""

from ssm2d.models.config import LayerConfig
from ssm2d.models.kernel import Kernel2D, KernelStack
from ssm2d.models.params import Mode, RawParams, ScalarField, SsmParams
from ssm2d.models.report import RunReport

__all__ = [
    "LayerConfig",
    "Kernel2D",
    "KernelStack",
    "Mode",
    "RawParams",
    "ScalarField",
    "SsmParams",
    "RunReport",
]
