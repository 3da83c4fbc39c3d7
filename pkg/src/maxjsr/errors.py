"""Exception hierarchy.

Everything raised on purpose derives from :class:`MaxAlgebraError`, so callers
can catch domain failures without swallowing programming errors.
"""

from __future__ import annotations


class MaxAlgebraError(Exception):
    """Base class for all library errors."""


class InvalidEntryError(MaxAlgebraError, ValueError):
    """Input data violates the nonnegative/finite/shape invariants."""


class DimensionMismatchError(MaxAlgebraError, ValueError):
    """Operands have incompatible dimensions."""


class DivergenceError(MaxAlgebraError):
    """Kleene star requested for a matrix with cycle mean above one."""


class IrreducibilityError(MaxAlgebraError):
    """An operation requiring an irreducible matrix got a reducible one.

    Carries the communicating-class decomposition of the offending matrix in
    ``form`` when it is available.
    """

    def __init__(self, message: str, form=None, step: int | None = None):
        super().__init__(message)
        self.form = form
        self.step = step


class DegenerateSpectrumError(MaxAlgebraError):
    """The spectral radius is zero where a positive one is required."""


class NonUniqueCriticalError(MaxAlgebraError):
    """Gradient requested at a matrix without a unique critical cycle."""


class BudgetError(MaxAlgebraError):
    """An enumeration guard (product budget, dimension cap) was exceeded."""


class ToleranceError(MaxAlgebraError):
    """An internal re-verification failed; a looser tolerance may help."""


class GenerationError(MaxAlgebraError):
    """Rejection sampling exhausted its retry budget."""


class SetFileError(MaxAlgebraError, ValueError):
    """A matrix-set file failed to parse; ``location`` pinpoints the datum."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class CertificateError(MaxAlgebraError):
    """A certificate failed re-verification."""

    def __init__(self, message: str, problems: list[str] | None = None):
        super().__init__(message)
        self.problems = problems or []
