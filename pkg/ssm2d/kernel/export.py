"""Kernel export formats: CSV, PGM (P2) heatmap and raw binary.

Binary layout: b"SSM2DKRN", L1 and L2 as little-endian uint32, then L1*L2
little-endian float64 values in row-major order.
"""

from __future__ import annotations

import struct
from enum import Enum
from pathlib import Path

import blake3
import numpy as np

from ssm2d.constants import KERNEL_MAGIC
from ssm2d.exceptions import BadMagic, FormatError, TruncatedPayload
from ssm2d.models.kernel import Kernel2D

_HEADER = struct.Struct("<8sII")
PGM_MAX_GRAY = 255


class KernelFormat(str, Enum):
    """Supported export formats."""
    CSV = "csv"
    PGM = "pgm"
    BIN = "bin"


def _real(kernel: Kernel2D | np.ndarray) -> np.ndarray:
    if isinstance(kernel, Kernel2D):
        return kernel.real
    return np.ascontiguousarray(np.real(kernel), dtype=np.float64)


def kernel_digest(kernel: Kernel2D | np.ndarray) -> str:
    """BLAKE3 hex digest of the real part as little-endian float64, row-major."""
    return blake3.blake3(_real(kernel).astype("<f8").tobytes()).hexdigest()


def to_csv(kernel: Kernel2D | np.ndarray) -> str:
    """One line per row, values in shortest round-trip decimal form."""
    return "".join(",".join(repr(float(v)) for v in row) + "\n" for row in _real(kernel))


def to_pgm(kernel: Kernel2D | np.ndarray) -> str:
    """
    Plain PGM heatmap, min-max scaled to 0..255; row 0 of the kernel is the
    top image row. A constant kernel maps to all zeros.
    """
    values = _real(kernel)
    low, high = float(values.min()), float(values.max())
    span = high - low
    if span > 0:
        gray = np.rint((values - low) / span * PGM_MAX_GRAY).astype(int)
    else:
        gray = np.zeros(values.shape, dtype=int)
    l1, l2 = values.shape
    lines = [
        "P2",
        f"# ssm2d kernel {l1}x{l2}, linear scale: 0 = {low!r}, {PGM_MAX_GRAY} = {high!r}",
        f"{l2} {l1}",
        str(PGM_MAX_GRAY),
    ]
    lines.extend(" ".join(str(g) for g in row) for row in gray)
    return "\n".join(lines) + "\n"


def to_bytes(kernel: Kernel2D | np.ndarray) -> bytes:
    """Binary kernel file contents."""
    values = _real(kernel)
    l1, l2 = values.shape
    return _HEADER.pack(KERNEL_MAGIC, l1, l2) + values.astype("<f8").tobytes()


def from_bytes(data: bytes) -> np.ndarray:
    """Parse binary kernel file contents into an (L1, L2) float64 array."""
    if len(data) < _HEADER.size:
        raise TruncatedPayload(f"kernel header needs {_HEADER.size} bytes, got {len(data)}")
    magic, l1, l2 = _HEADER.unpack_from(data)
    if magic != KERNEL_MAGIC:
        raise BadMagic(KERNEL_MAGIC, magic)
    if l1 < 1 or l2 < 1:
        raise FormatError(f"kernel extents must be >= 1, got {l1}x{l2}")
    expected = _HEADER.size + 8 * l1 * l2
    if len(data) != expected:
        raise TruncatedPayload(f"kernel file should be {expected} bytes, got {len(data)}")
    return np.frombuffer(data, dtype="<f8", offset=_HEADER.size).reshape(l1, l2).astype(np.float64)


def parse_csv(text: str) -> np.ndarray:
    """Parse to_csv output back into a float64 array."""
    rows = [line.split(",") for line in text.splitlines() if line.strip()]
    return np.array([[float(v) for v in row] for row in rows], dtype=np.float64)


def write_kernel(kernel: Kernel2D | np.ndarray, fmt: KernelFormat | str, path: Path) -> None:
    """Write a kernel to path in the given format."""
    fmt = KernelFormat(fmt)
    path = Path(path)
    if fmt is KernelFormat.BIN:
        path.write_bytes(to_bytes(kernel))
    elif fmt is KernelFormat.CSV:
        path.write_text(to_csv(kernel), encoding="utf-8")
    else:
        path.write_text(to_pgm(kernel), encoding="utf-8")


def read_kernel_bin(path: Path) -> np.ndarray:
    """Read a binary kernel file."""
    return from_bytes(Path(path).read_bytes())
