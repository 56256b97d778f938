"""Layer configuration model."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ssm2d.constants import DIRECTION_FLIPS
from ssm2d.models.params import Mode, ScalarField


class LayerConfig(BaseModel):
    """
    Static shape and mode configuration of one 2-D SSM layer.

    Channels are split into n_ssm contiguous groups; channel c uses group
    c * n_ssm // h and all channels of a group share one kernel.

    Example:
        cfg = LayerConfig(l1=32, l2=32, h=64, n=16, n_ssm=8)
        cfg.group_of(9)  # -> 1
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    l1: int = Field(ge=1)
    l2: int = Field(ge=1)
    h: int = Field(default=1, ge=1)
    n: int = Field(default=1, ge=1)
    n_ssm: int = Field(default=1, ge=1)
    field: ScalarField = ScalarField.REAL
    mode: Mode = Mode.NORMALIZED_RELAXED
    directions: int = 1
    share_directions: bool = True

    @field_validator("directions")
    @classmethod
    def _known_directions(cls, value: int) -> int:
        if value not in DIRECTION_FLIPS:
            raise ValueError(f"directions must be one of {sorted(DIRECTION_FLIPS)}")
        return value

    @model_validator(mode="after")
    def _groups_divide_channels(self) -> LayerConfig:
        if self.h % self.n_ssm != 0:
            raise ValueError(f"n_ssm={self.n_ssm} does not divide h={self.h}")
        return self

    @property
    def l_tot(self) -> int:
        """Total number of cells."""
        return self.l1 * self.l2

    @property
    def l_max(self) -> int:
        """Longest grid extent."""
        return max(self.l1, self.l2)

    @property
    def grid(self) -> tuple[int, int]:
        return (self.l1, self.l2)

    @property
    def group_size(self) -> int:
        """Channels per group."""
        return self.h // self.n_ssm

    @property
    def param_sets_per_group(self) -> int:
        """Independent parameter sets per group (1 when directions share)."""
        return 1 if self.share_directions else self.directions

    def group_of(self, channel: int) -> int:
        """Group index of a channel."""
        if not 0 <= channel < self.h:
            raise IndexError(f"channel {channel} out of range for h={self.h}")
        return channel * self.n_ssm // self.h
