"""Exceptions for ssm2d."""


class Ssm2dError(Exception):
    """Base exception for all ssm2d errors."""
    pass


# Parameter errors
class ParameterError(Ssm2dError):
    """SSM parameters are invalid."""
    pass


class NonFiniteValues(ParameterError):
    """An array holds NaN or Inf entries."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"{name} contains non-finite values")


class ShapeMismatch(ParameterError):
    """Array shapes are inconsistent with each other or with the layer config."""

    def __init__(self, name: str, expected: tuple[int, ...], actual: tuple[int, ...]):
        self.name = name
        self.expected = expected
        self.actual = actual
        super().__init__(f"{name}: expected shape {expected}, got {actual}")


class GroupMismatch(ParameterError):
    """Parameter groups do not match the layer's n_ssm / directions."""
    pass


# Configuration errors
class ConfigError(Ssm2dError):
    """Layer or file configuration is invalid."""
    pass


class ConfigParseError(ConfigError):
    """A parameter file line or value could not be parsed."""

    def __init__(self, key: str, message: str | None = None):
        self.key = key
        super().__init__(message or f"invalid value for key {key!r}")


# Grid errors
class GridError(Ssm2dError):
    """Grid extents are invalid."""
    pass


class EmptyGrid(GridError):
    """A grid has an extent smaller than one."""
    pass


class ExtentMismatch(GridError):
    """Two grids that must agree in extent do not."""

    def __init__(self, expected: tuple[int, ...], actual: tuple[int, ...]):
        self.expected = expected
        self.actual = actual
        super().__init__(f"extent mismatch: expected {expected}, got {actual}")


# Cache errors
class CacheError(Ssm2dError):
    """Coefficient cache could not be built or used."""
    pass


class CoefficientOverflow(CacheError):
    """An unnormalized path count is too large to be exact in double precision."""

    def __init__(self, cell: tuple[int, int], count: float):
        self.cell = cell
        self.count = count
        super().__init__(
            f"path count {count:.3e} at cell {cell} exceeds 2**53; "
            "use a normalized mode for grids this large"
        )


# File format errors
class FormatError(Ssm2dError):
    """A binary kernel or tensor file is malformed."""
    pass


class BadMagic(FormatError):
    """File does not start with the expected magic bytes."""

    def __init__(self, expected: bytes, actual: bytes):
        self.expected = expected
        self.actual = actual
        super().__init__(f"bad magic: expected {expected!r}, got {actual!r}")


class TruncatedPayload(FormatError):
    """File payload is shorter or longer than its header declares."""
    pass


# Verification
class VerificationFailed(Ssm2dError):
    """A verified property did not hold."""

    def __init__(self, check: str, error: float, tolerance: float):
        self.check = check
        self.error = error
        self.tolerance = tolerance
        super().__init__(f"{check}: error {error:.3e} exceeds tolerance {tolerance:.1e}")
