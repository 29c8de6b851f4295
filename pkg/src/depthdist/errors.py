"""Exception types raised by depthdist."""


class DepthDistError(Exception):
    """Base class for all errors raised by this package."""


class PermutationError(DepthDistError, ValueError):
    """Malformed permutation text or a sequence that is not a bijection."""


class PathError(DepthDistError, ValueError):
    """Malformed Motzkin path text or a step sequence violating balance."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class CeilingError(DepthDistError, ValueError):
    """A request exceeds a practical size ceiling and no override was given."""


class SeriesError(DepthDistError, ValueError):
    """Incompatible truncation boxes or a non-invertible series."""


class VerificationError(DepthDistError, AssertionError):
    """An internal cross-check failed. Always indicates a bug."""
