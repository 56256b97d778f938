"""Utility functions for ssm2d."""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from ssm2d.exceptions import NonFiniteValues

_SEED_MASK = (1 << 64) - 1


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Deterministic generator for a 64-bit seed and optional sub-stream ids.

    Negative seeds are taken modulo 2**64 so every 64-bit value is accepted.
    """
    return np.random.default_rng([seed & _SEED_MASK, *stream])


def sigmoid(x: np.ndarray) -> np.ndarray:
    """Logistic function."""
    return expit(np.asarray(x, dtype=np.float64))


def unit_open(x: np.ndarray, margin: float = 0.0) -> np.ndarray:
    """sigmoid(x) clipped into the open interval (0, 1 - margin)."""
    high = np.nextafter(1.0 - margin, 0.0)
    return np.clip(sigmoid(x), np.nextafter(0.0, 1.0), high)


def sigmoid_grad(x: np.ndarray) -> np.ndarray:
    """Derivative of the logistic function."""
    s = sigmoid(x)
    return s * (1.0 - s)


def require_finite(name: str, values: np.ndarray) -> None:
    """Raise NonFiniteValues naming `name` if any entry is NaN or Inf."""
    if not np.all(np.isfinite(values)):
        raise NonFiniteValues(name)


def parse_size(text: str) -> tuple[int, int]:
    """Parse "L1xL2" (or a single "L" for a square grid) into extents."""
    parts = text.lower().split("x")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2:
        raise ValueError(f"size must look like L1xL2, got {text!r}")
    l1, l2 = (int(p) for p in parts)
    return l1, l2


def format_size(l1: int, l2: int) -> str:
    """Inverse of parse_size."""
    return f"{l1}x{l2}"


def max_relative_error(actual: np.ndarray, expected: np.ndarray, floor: float = 1.0) -> float:
    """max|actual - expected| scaled by max(max|expected|, floor)."""
    scale = max(float(np.max(np.abs(expected), initial=0.0)), floor)
    return float(np.max(np.abs(actual - expected), initial=0.0)) / scale
