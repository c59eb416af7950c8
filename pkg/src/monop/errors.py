"""Semantic exception hierarchy shared by every module."""


class MonopError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MonopError, ValueError):
    """A numeric argument lies outside its mathematical domain."""


class ParseError(MonopError, ValueError):
    """Expression text could not be parsed.

    Carries the character offset and the set of tokens that would have
    been accepted at that position.
    """

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at offset {position}")
        self.position = position
        self.expected = tuple(expected)


class EvalError(MonopError, ArithmeticError):
    """Expression evaluation failed."""


class PoleError(EvalError):
    """Division by a near-zero denominator; carries the source span."""

    def __init__(self, message, span=None):
        super().__init__(message)
        self.span = span


class QuadratureNoConvergence(MonopError, RuntimeError):
    """Adaptive quadrature could not certify the requested accuracy."""

    def __init__(self, message, error_estimate=None):
        super().__init__(message)
        self.error_estimate = error_estimate


class ExponentOutOfRange(MonopError, ValueError):
    """Monomial exponent not an integer in the allowed range."""


class BetaRangeError(MonopError, ValueError):
    """The symbol map produced a point outside the half-plane."""


class EigenFailure(MonopError, RuntimeError):
    """Eigenvalue computation did not converge."""


class NotInterpolable(MonopError, ValueError):
    """Interpolation data fails the positivity test; carries the verdict."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class DegenerateNodes(MonopError, ValueError):
    """Coincident interpolation nodes."""


class UnknownBuiltin(MonopError, KeyError):
    """No built-in operator with that name."""


class TabulatedWeightError(MonopError, ValueError):
    """Tabulated weight queried off the integers without an interpolant."""


class ReTauNegative(MonopError, ValueError):
    """Flat shift with negative real part: never bounded, route to the
    feasibility test instead."""


class TailBoundViolated(MonopError, ValueError):
    """Sampled tail of a boundary profile exceeds its declared decay."""
