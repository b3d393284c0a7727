"""Exception hierarchy shared across the package.

The CLI maps these onto its exit codes: ConfigError -> 2, DataError -> 3,
NumericalError -> 4.
"""


class PointfuseError(Exception):
    """Base class for all package errors."""


class ConfigError(PointfuseError):
    """Invalid or inconsistent configuration (bad enum, missing depth map, ...)."""


class DataError(PointfuseError):
    """Malformed input data (shape mismatch, byte-length mismatch, bad labels)."""


class NumericalError(PointfuseError):
    """Non-finite value encountered where a finite one is required."""
