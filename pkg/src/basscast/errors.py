"""Exception hierarchy shared by every basscast module."""


class BasscastError(Exception):
    """Base class for all library errors."""


class EmptyInputError(BasscastError):
    """A series or file contained no data rows."""


class ValidationError(BasscastError):
    """Input data violated a structural invariant (lengths, ordering, signs)."""


class FormatError(BasscastError):
    """A file or cell could not be parsed; carries the offending row number."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class ParameterError(BasscastError):
    """A function argument was outside its documented range."""


class InsufficientDataError(BasscastError):
    """Too few observations to fit the model."""


class SingularFitError(BasscastError):
    """The regression design matrix is rank deficient."""

    def __init__(self, message: str, columns: tuple[str, ...] = ()):
        self.columns = columns
        super().__init__(message)


class NonDiffusionShapeError(BasscastError):
    """Fitted coefficients do not describe a diffusion curve (c >= 0 or a <= 0)."""


class NoRealMarketSizeError(BasscastError):
    """The market-size quadratic has no real positive root."""


class DivergenceError(BasscastError):
    """Simulated cumulative demand blew past the overflow guard."""

    def __init__(self, message: str, period: int | None = None):
        self.period = period
        super().__init__(message)


class ShapeError(BasscastError):
    """Two sequences that must align have different lengths."""


class UndefinedBaselineError(BasscastError):
    """Improvement percentage is undefined for a non-positive baseline SSE."""


class DegeneratePlotError(BasscastError):
    """Too few points to draw a comparison chart."""
