"""Exception hierarchy.

Every error carries a stable ``exit_code`` used by the command line front end.
"""


class TrapGaussError(Exception):
    exit_code = 1


class SignatureMismatch(TrapGaussError, ValueError):
    exit_code = 2


class DegenerateSpan(TrapGaussError, ValueError):
    """Gram-Schmidt met a (near) light-like intermediate vector."""

    exit_code = 10


class DivisionNearZero(TrapGaussError, ZeroDivisionError):
    exit_code = 11


class DomainError(TrapGaussError, ValueError):
    exit_code = 12

    def __init__(self, message, subexpression=None):
        super().__init__(message)
        self.subexpression = subexpression


class DegreeExhausted(TrapGaussError, ValueError):
    exit_code = 13


class ExpressionSyntaxError(TrapGaussError, ValueError):
    exit_code = 20

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExpressionSyntaxError):
    exit_code = 21


class NotSpacelike(TrapGaussError, ValueError):
    exit_code = 30


class OffShell(TrapGaussError, ValueError):
    exit_code = 31


class NotLightlikeMeanCurvature(TrapGaussError, ValueError):
    exit_code = 32


class DegenerateBasis(TrapGaussError, ValueError):
    exit_code = 33


class RankDeficient(TrapGaussError, ValueError):
    exit_code = 40

    def __init__(self, message, null_dim, residual=None):
        super().__init__(message)
        self.null_dim = null_dim
        self.residual = residual


class AllHarmonic(TrapGaussError, ValueError):
    exit_code = 41


class HypothesisViolated(TrapGaussError, ValueError):
    exit_code = 42


class EmptyInterior(TrapGaussError, ValueError):
    exit_code = 50


class NoConvergence(TrapGaussError, RuntimeError):
    exit_code = 51


class DegenerateProjection(TrapGaussError, ValueError):
    exit_code = 60


class ConfigError(TrapGaussError, ValueError):
    exit_code = 2
