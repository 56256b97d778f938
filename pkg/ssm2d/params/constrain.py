"""Constraint maps and initialization for SSM parameters.

Real field: every A eigenvalue is sigmoid(raw), B and C pass through. The
sigmoid is clipped so saturated raws still land strictly inside (0, 1).
Complex field: A and B are radius * exp(i * angle) with radius = sigmoid(raw_r)
and angle = 2*pi*sigmoid(raw_theta); C uses the raw radius as is.
D is always a real pass-through.
"""

from __future__ import annotations

import numpy as np

from ssm2d.constants import INIT_HIGH, INIT_LOW, RADIUS_MARGIN
from ssm2d.models.config import LayerConfig
from ssm2d.models.params import RawParams, ScalarField, SsmParams
from ssm2d.utils import make_rng, sigmoid, unit_open


def polar(radius: np.ndarray, angle_raw: np.ndarray) -> np.ndarray:
    """radius * (cos t + i sin t) with t = 2*pi*sigmoid(angle_raw)."""
    angle = 2.0 * np.pi * sigmoid(angle_raw)
    return radius * (np.cos(angle) + 1j * np.sin(angle))


def constrain(raw: RawParams, field: ScalarField | None = None) -> SsmParams:
    """
    Map raw parameters into the stable region.

    Args:
        raw: Unconstrained parameters (already validated finite on construction)
        field: Scalar field; must match raw.field when given

    Returns:
        Constrained SsmParams
    """
    field = raw.field if field is None else ScalarField(field)
    if field is not raw.field:
        raise ValueError(f"raw parameters are {raw.field.value}, requested {field.value}")

    if field is ScalarField.REAL:
        return SsmParams(field=field, a=unit_open(raw.a), b=raw.b, c=raw.c, d=raw.d)

    return SsmParams(
        field=field,
        a=polar(unit_open(raw.a[:, 0], RADIUS_MARGIN), raw.a[:, 1]),
        b=polar(unit_open(raw.b[:, 0], RADIUS_MARGIN), raw.b[:, 1]),
        c=polar(raw.c[:, 0], raw.c[:, 1]),
        d=raw.d,
    )


def init_raw(seed: int, cfg: LayerConfig, group: int = 0, direction: int = 0) -> RawParams:
    """
    Draw raw parameters for one (group, direction) uniformly from [-1, 1].

    Deterministic in (seed, cfg, group, direction).
    """
    rng = make_rng(seed, group, direction)
    inner = (2, cfg.n) if cfg.field is ScalarField.COMPLEX else (cfg.n,)
    return RawParams(
        field=cfg.field,
        a=rng.uniform(INIT_LOW, INIT_HIGH, size=(4, *inner)),
        b=rng.uniform(INIT_LOW, INIT_HIGH, size=(2, *inner)),
        c=rng.uniform(INIT_LOW, INIT_HIGH, size=(2, *inner)),
        d=rng.uniform(INIT_LOW, INIT_HIGH, size=(cfg.group_size,)),
    )


def init_layer(seed: int, cfg: LayerConfig) -> list[list[RawParams]]:
    """Raw parameters for every group and independent direction set."""
    return [
        [init_raw(seed, cfg, group, direction) for direction in range(cfg.param_sets_per_group)]
        for group in range(cfg.n_ssm)
    ]


def count_parameters(cfg: LayerConfig) -> int:
    """
    Learned scalars of one layer.

    Each parameter set holds A1..A4, B1, B2, C1, C2 diagonals (8N values,
    doubled for radius/angle pairs in the complex field); D adds one per channel.
    """
    width = 2 if cfg.field is ScalarField.COMPLEX else 1
    per_set = 8 * cfg.n * width
    return cfg.n_ssm * cfg.param_sets_per_group * per_set + cfg.h
