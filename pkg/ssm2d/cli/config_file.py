"""Parameter files: UTF-8 `key = value` text.

    field = real
    n = 1
    mode = unnormalized
    a1 = 1
    a1_raw = 0.3, -0.2

Blank lines and `#` comments are ignored. Array keys hold n_ssm * N
comma-separated decimals, group-major; complex `_raw` arrays hold, per group,
N radius values then N angle values, and complex constrained arrays N real
parts then N imaginary parts. `d` / `d_raw` hold H values.

Each parameter comes from its `_raw` key (passed through constrain) or its
constrained key (used as is). A parameter with neither is drawn by init_raw
when `seed` is set; D defaults to zero otherwise.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ssm2d.exceptions import ConfigError, ConfigParseError
from ssm2d.models.config import LayerConfig
from ssm2d.models.params import PARAM_BLOCKS, Mode, RawParams, ScalarField, SsmParams
from ssm2d.params.constrain import constrain, init_raw

PARAM_NAMES: tuple[str, ...] = tuple(name for _, rows in PARAM_BLOCKS for name in rows)
ARRAY_KEYS: tuple[str, ...] = tuple(
    key for name in (*PARAM_NAMES, "d") for key in (f"{name}_raw", name)
)

FloatArray = tuple[float, ...] | None


def parse_param_text(text: str) -> dict[str, str]:
    """Split parameter file text into raw `key -> value` strings."""
    entries: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigParseError(f"line {lineno}", f"line {lineno}: expected `key = value`")
        if key in entries:
            raise ConfigParseError(key, f"duplicate key {key!r} on line {lineno}")
        entries[key] = value.strip()
    return entries


class ParamFile(BaseModel):
    """
    Validated contents of a parameter file.

    Example:
        pf = load_param_file(Path("pascal.cfg"))
        cfg, params = pf.build(5, 5)
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    field: ScalarField = ScalarField.REAL
    n: int = Field(default=1, ge=1)
    mode: Mode = Mode.NORMALIZED_RELAXED
    h: int = Field(default=1, ge=1)
    n_ssm: int = Field(default=1, ge=1)
    directions: int = 1
    seed: int | None = None

    a1_raw: FloatArray = None
    a1: FloatArray = None
    a2_raw: FloatArray = None
    a2: FloatArray = None
    a3_raw: FloatArray = None
    a3: FloatArray = None
    a4_raw: FloatArray = None
    a4: FloatArray = None
    b1_raw: FloatArray = None
    b1: FloatArray = None
    b2_raw: FloatArray = None
    b2: FloatArray = None
    c1_raw: FloatArray = None
    c1: FloatArray = None
    c2_raw: FloatArray = None
    c2: FloatArray = None
    d_raw: FloatArray = None
    d: FloatArray = None

    @field_validator(*ARRAY_KEYS, mode="before")
    @classmethod
    def _split_decimals(cls, value: Any) -> Any:
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(",") if part.strip())
        return value

    @classmethod
    def from_text(cls, text: str) -> ParamFile:
        """Parse and validate parameter file text."""
        entries = parse_param_text(text)
        try:
            return cls.model_validate(entries)
        except ValidationError as exc:
            error = exc.errors()[0]
            key = str(error["loc"][0]) if error["loc"] else "<file>"
            if error["type"] == "extra_forbidden":
                raise ConfigParseError(key, f"unknown key {key!r}") from exc
            raise ConfigParseError(key, f"invalid value for key {key!r}: {error['msg']}") from exc

    def layer_config(self, l1: int, l2: int, mode: Mode | str | None = None) -> LayerConfig:
        """LayerConfig for a grid, optionally overriding the file's mode."""
        try:
            return LayerConfig(
                l1=l1,
                l2=l2,
                h=self.h,
                n=self.n,
                n_ssm=self.n_ssm,
                field=self.field,
                mode=self.mode if mode is None else Mode(mode),
                directions=self.directions,
            )
        except ValidationError as exc:
            raise ConfigError(f"invalid layer configuration: {exc.errors()[0]['msg']}") from exc

    def _array(self, key: str, per_group: int, groups: int) -> np.ndarray | None:
        values = getattr(self, key)
        if values is None:
            return None
        if len(values) != per_group * groups:
            raise ConfigParseError(
                key, f"key {key!r} needs {per_group * groups} values, got {len(values)}"
            )
        return np.asarray(values, dtype=np.float64).reshape(groups, per_group)

    def _source(self, name: str) -> str | None:
        raw_key = f"{name}_raw"
        has_raw = getattr(self, raw_key) is not None
        has_value = getattr(self, name) is not None
        if has_raw and has_value:
            raise ConfigParseError(name, f"give either {raw_key!r} or {name!r}, not both")
        if has_raw:
            return raw_key
        return name if has_value else None

    def build(
        self, l1: int, l2: int, mode: Mode | str | None = None
    ) -> tuple[LayerConfig, list[SsmParams]]:
        """
        Layer configuration and one constrained parameter set per group.

        Raises:
            ConfigParseError: naming the key that is missing or malformed
        """
        cfg = self.layer_config(l1, l2, mode)
        complex_field = cfg.field is ScalarField.COMPLEX
        width = 2 * cfg.n if complex_field else cfg.n
        groups = cfg.n_ssm

        sources = {name: self._source(name) for name in (*PARAM_NAMES, "d")}
        for name in PARAM_NAMES:
            if sources[name] is None and self.seed is None:
                raw_key = f"{name}_raw"
                raise ConfigParseError(raw_key, f"missing key {raw_key!r} (or {name!r}, or a seed)")

        arrays = {
            name: self._array(key, width, groups)
            for name, key in sources.items()
            if key is not None and name != "d"
        }
        d_key = sources["d"]
        d_all = self._array(d_key, cfg.group_size, groups) if d_key is not None else None

        params = []
        for group in range(groups):
            drawn = init_raw(self.seed, cfg, group) if self.seed is not None else None
            raw_blocks: dict[str, list[np.ndarray]] = {}
            explicit: dict[str, dict[int, np.ndarray]] = {}
            for attr, rows in PARAM_BLOCKS:
                raw_rows, fixed = [], {}
                for index, name in enumerate(rows):
                    source = sources[name]
                    if source is not None and source.endswith("_raw"):
                        row = arrays[name][group]
                        raw_rows.append(row.reshape(2, cfg.n) if complex_field else row)
                    else:
                        raw_rows.append(
                            getattr(drawn, attr)[index] if drawn is not None
                            else np.zeros((2, cfg.n) if complex_field else cfg.n)
                        )
                        if source is not None:
                            row = arrays[name][group]
                            fixed[index] = row[: cfg.n] + 1j * row[cfg.n:] if complex_field else row
                raw_blocks[attr] = raw_rows
                explicit[attr] = fixed

            if d_all is not None:
                d = d_all[group]
            elif drawn is not None:
                d = drawn.d
            else:
                d = np.zeros(cfg.group_size)

            raw = RawParams(
                field=cfg.field,
                a=np.stack(raw_blocks["a"]),
                b=np.stack(raw_blocks["b"]),
                c=np.stack(raw_blocks["c"]),
                d=d,
            )
            constrained = constrain(raw)
            changes = {}
            for attr, fixed in explicit.items():
                if fixed:
                    block = np.array(getattr(constrained, attr))
                    for index, row in fixed.items():
                        block[index] = row
                    changes[attr] = block
            params.append(constrained.with_values(**changes) if changes else constrained)
        return cfg, params


def load_param_file(path: Path) -> ParamFile:
    """Read and validate a parameter file (OSError propagates)."""
    return ParamFile.from_text(Path(path).read_text(encoding="utf-8"))
