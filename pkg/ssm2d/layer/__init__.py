"""FFT convolution, the 2-D SSM layer and tensor files."""

from ssm2d.layer.conv import (
    conv2d_direct,
    conv2d_direct_flipped,
    conv2d_fft,
    fft_shape,
    window_offsets,
)
from ssm2d.layer.layer import Ssm2dLayer, apply_layer
from ssm2d.layer.tensor_io import (
    read_tensor,
    tensor_from_bytes,
    tensor_to_bytes,
    write_tensor,
)

__all__ = [
    "conv2d_direct",
    "conv2d_direct_flipped",
    "conv2d_fft",
    "fft_shape",
    "window_offsets",
    "Ssm2dLayer",
    "apply_layer",
    "read_tensor",
    "tensor_from_bytes",
    "tensor_to_bytes",
    "write_tensor",
]
