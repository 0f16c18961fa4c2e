"""Exception hierarchy.

Every error raised by this package derives from :class:`PhiEntropyError`,
so callers can catch one type at an API boundary.  Semantic subclasses are
raised instead of bare ``ValueError`` throughout.
"""


class PhiEntropyError(Exception):
    """Base class for all errors raised by phientropy."""


class DomainError(PhiEntropyError):
    """Argument outside a function's mathematical domain (e.g. x <= 0)."""


class ParamError(PhiEntropyError):
    """Family or model parameters out of their admissible range."""


class FamilyError(PhiEntropyError):
    """Operation requested for a logarithm family it is not defined for."""


class RangeError(PhiEntropyError):
    """Hypothesis of an inequality violated (e.g. total variation too large)."""


class SupportError(PhiEntropyError):
    """Zero probabilities where a functional requires a finite limit."""


class NonDifferentiableError(PhiEntropyError):
    """Derivative requested at a point where one-sided values differ."""


class QuadratureError(PhiEntropyError):
    """Numerical integration failed."""


class NoConvergence(QuadratureError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are attached.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BracketError(PhiEntropyError):
    """Root bracketing failed: target provably outside the function's range."""


class InfeasibleEpsilon(PhiEntropyError):
    """No positive tolerance radius exists for the requested epsilon."""


class NegativeWeight(PhiEntropyError):
    """A probability weight is negative."""

    def __init__(self, index, value):
        super().__init__(f"weight at index {index} is negative: {value}")
        self.index = index
        self.value = value


class SumError(PhiEntropyError):
    """Weights do not sum to one within tolerance."""

    def __init__(self, actual_sum, tol):
        super().__init__(f"weights sum to {actual_sum!r}, expected 1 within {tol}")
        self.actual_sum = actual_sum
        self.tol = tol


class LengthMismatch(PhiEntropyError):
    """Two distributions have different lengths; pad first."""


class IdenticalPdfs(PhiEntropyError):
    """Operation requires two distinct distributions."""


class ShrinkError(PhiEntropyError):
    """Padding cannot shrink a distribution."""


class ZeroProbability(PhiEntropyError):
    """A model produced a zero probability where positivity is required."""


class StepTooLarge(PhiEntropyError):
    """Parameter displacement pushes a model out of its valid domain."""
