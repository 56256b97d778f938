"""Binary tensor files.

Layout: b"SSM2DTEN", batch, L1, L2 and H as little-endian uint32, then
batch*L1*L2*H little-endian float64 values in row-major order.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from ssm2d.constants import TENSOR_MAGIC
from ssm2d.exceptions import BadMagic, FormatError, ShapeMismatch, TruncatedPayload

_HEADER = struct.Struct("<8sIIII")


def tensor_to_bytes(x: np.ndarray) -> bytes:
    """Serialize a (batch, L1, L2, H) tensor."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 4:
        raise ShapeMismatch("tensor", (0, 0, 0, 0), x.shape)
    return _HEADER.pack(TENSOR_MAGIC, *x.shape) + np.ascontiguousarray(x).astype("<f8").tobytes()


def tensor_from_bytes(data: bytes) -> np.ndarray:
    """Parse tensor file contents."""
    if len(data) < _HEADER.size:
        raise TruncatedPayload(f"tensor header needs {_HEADER.size} bytes, got {len(data)}")
    magic, *extents = _HEADER.unpack_from(data)
    if magic != TENSOR_MAGIC:
        raise BadMagic(TENSOR_MAGIC, magic)
    if min(extents) < 1:
        raise FormatError(f"tensor extents must be >= 1, got {tuple(extents)}")

    expected = _HEADER.size + 8 * int(np.prod(extents))
    if len(data) != expected:
        raise TruncatedPayload(f"tensor file should be {expected} bytes, got {len(data)}")
    values = np.frombuffer(data, dtype="<f8", offset=_HEADER.size)
    return values.reshape(extents).astype(np.float64)


def read_tensor(path: Path) -> np.ndarray:
    """Read a tensor file."""
    return tensor_from_bytes(Path(path).read_bytes())


def write_tensor(path: Path, x: np.ndarray) -> None:
    """Write a tensor file."""
    Path(path).write_bytes(tensor_to_bytes(x))
