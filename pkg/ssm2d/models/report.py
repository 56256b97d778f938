"""Run report model printed by the command-line tools."""

from __future__ import annotations

from dataclasses import dataclass, field

import blake3

from ssm2d.exceptions import VerificationFailed


def format_value(value: object) -> str:
    """Render a report value deterministically."""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


@dataclass
class RunReport:
    """
    Outcome of one CLI command.

    Rendered as UTF-8 `key: value` lines. Timings are wall-clock seconds per
    phase; everything else is deterministic given the command's arguments,
    and `digest` is a BLAKE3 hash over those deterministic lines.
    """
    command: str
    seed: int | None = None
    passed: int = 0
    failed: int = 0
    max_error: float = 0.0
    timings: dict[str, float] = field(default_factory=dict)
    values: dict[str, object] = field(default_factory=dict)
    failures: list[tuple[str, float, float]] = field(default_factory=list)

    def add(self, key: str, value: object) -> None:
        """Record a deterministic value."""
        self.values[key] = value

    def add_timing(self, phase: str, seconds: float) -> None:
        """Record a wall-clock timing in seconds."""
        if seconds < 0:
            raise ValueError(f"negative timing for {phase}")
        self.timings[phase] = seconds

    def record_check(self, name: str, error: float, tolerance: float) -> bool:
        """Record one property check; returns whether it passed."""
        ok = error <= tolerance
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append((name, error, tolerance))
        self.max_error = max(self.max_error, error)
        self.values[f"{name}.max_error"] = error
        self.values[f"{name}.status"] = "pass" if ok else "FAIL"
        return ok

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def raise_on_failure(self) -> None:
        """Raise VerificationFailed for the first failed check, if any."""
        if self.failures:
            raise VerificationFailed(*self.failures[0])

    def deterministic_lines(self) -> list[str]:
        lines = [f"command: {self.command}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        if self.passed or self.failed:
            lines.append(f"passed: {self.passed}")
            lines.append(f"failed: {self.failed}")
            lines.append(f"max_error: {format_value(self.max_error)}")
        lines.extend(f"{key}: {format_value(value)}" for key, value in self.values.items())
        return lines

    @property
    def digest(self) -> str:
        """BLAKE3 hex digest over the deterministic lines."""
        return blake3.blake3("\n".join(self.deterministic_lines()).encode("utf-8")).hexdigest()

    def to_text(self, include_timings: bool = True) -> str:
        lines = self.deterministic_lines()
        if include_timings:
            lines.extend(
                f"time.{phase}_s: {seconds:.6f}" for phase, seconds in self.timings.items()
            )
        lines.append(f"digest: {self.digest}")
        return "\n".join(lines) + "\n"
