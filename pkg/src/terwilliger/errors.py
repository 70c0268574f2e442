from typing import Any, Dict, Optional


class TerwilligerError(Exception):
    """Root of every error raised by the toolkit."""


class ParameterError(TerwilligerError, ValueError):
    """Invalid argument: out-of-range index, invalid triple, non-prime p, ..."""


class FieldError(TerwilligerError, ValueError):
    """Arithmetic between elements of different coefficient fields."""


class OracleLimitError(TerwilligerError):
    """The scheme is too large for the brute-force oracle."""

    def __init__(self, point_count: int, max_points: int):
        super().__init__(
            f"brute-force oracle refuses |X| = {point_count} (cap is {max_points}); "
            "raise it with --max-points or TERWILLIGER_MAX_POINTS"
        )
        self.point_count = point_count
        self.max_points = max_points


class NotNilpotentError(TerwilligerError):
    """The powers of a span stabilised at a nonzero subspace."""


class VerificationError(TerwilligerError):
    """A closed-form result disagrees with its certificate."""

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.detail = detail or {}
