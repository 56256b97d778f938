"""Causal 2-D convolution by FFT, plus a direct-summation oracle.

    y[i, j] = sum_{p <= i, q <= j} K[i - p, j - q] * u[p, q]

Both operands are zero-padded to at least (2 L1 - 1) x (2 L2 - 1), so the
circular FFT product holds the full linear convolution; the causal output is
the leading L1 x L2 window. A kernel reversed along an axis is read from the
window that starts at L - 1 on that axis, which makes it act anti-causally.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sp_fft

from ssm2d.exceptions import EmptyGrid, ExtentMismatch
from ssm2d.models.kernel import Kernel2D
from ssm2d.utils import require_finite


def fft_shape(l1: int, l2: int) -> tuple[int, int]:
    """Padded transform extents: next fast sizes >= 2L - 1 per axis."""
    return (
        sp_fft.next_fast_len(2 * l1 - 1, real=True),
        sp_fft.next_fast_len(2 * l2 - 1, real=True),
    )


def window_offsets(shape: tuple[int, int], flip_axes: tuple[int, ...]) -> tuple[int, int]:
    """Start of the output window for a kernel reversed along flip_axes."""
    return tuple(shape[ax] - 1 if ax in flip_axes else 0 for ax in (0, 1))  # type: ignore[return-value]


def _operands(u: np.ndarray, k: Kernel2D | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = np.asarray(u, dtype=np.float64)
    values = k.values if isinstance(k, Kernel2D) else np.asarray(k)
    if u.ndim != 2 or u.shape[0] < 1 or u.shape[1] < 1:
        raise EmptyGrid(f"input grid must be 2-D with extents >= 1, got shape {u.shape}")
    if values.shape != u.shape:
        raise ExtentMismatch(u.shape, values.shape)
    require_finite("u", u)
    require_finite("kernel", values)
    return u, values


def conv2d_fft(
    u: np.ndarray,
    k: Kernel2D | np.ndarray,
    flip_axes: tuple[int, ...] = (),
    *,
    workers: int | None = None,
) -> np.ndarray:
    """
    Linear causal convolution of a real grid with a kernel of equal extents.

    Complex kernels are transformed with the full complex FFT and the real
    part is taken after truncation.
    """
    u, values = _operands(u, k)
    l1, l2 = u.shape
    shape = fft_shape(l1, l2)
    o1, o2 = window_offsets(u.shape, flip_axes)
    if np.iscomplexobj(values):
        spectrum = sp_fft.fft2(u, s=shape, workers=workers) * sp_fft.fft2(
            values, s=shape, workers=workers
        )
        full = sp_fft.ifft2(spectrum, s=shape, workers=workers)
        return np.real(full[o1:o1 + l1, o2:o2 + l2])
    spectrum = sp_fft.rfft2(u, s=shape, workers=workers) * sp_fft.rfft2(
        values, s=shape, workers=workers
    )
    full = sp_fft.irfft2(spectrum, s=shape, workers=workers)
    return full[o1:o1 + l1, o2:o2 + l2]


def conv2d_direct(u: np.ndarray, k: Kernel2D | np.ndarray) -> np.ndarray:
    """Causal convolution by the explicit double sum over kernel taps."""
    u, values = _operands(u, k)
    values = np.real(values)
    l1, l2 = u.shape
    y = np.zeros((l1, l2))
    for p in range(l1):
        for q in range(l2):
            if values[p, q] != 0.0:
                y[p:, q:] += values[p, q] * u[: l1 - p, : l2 - q]
    return y


def conv2d_direct_flipped(
    u: np.ndarray, k: Kernel2D | np.ndarray, flip_axes: tuple[int, ...]
) -> np.ndarray:
    """
    Oracle for a kernel already reversed along flip_axes: undo the reversal
    and convolve anti-causally along those axes.
    """
    u, values = _operands(u, k)
    if not flip_axes:
        return conv2d_direct(u, values)
    original = np.flip(values, axis=flip_axes)
    return np.flip(conv2d_direct(np.flip(u, axis=flip_axes), original), axis=flip_axes)
