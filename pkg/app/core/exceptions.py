# app/core/exceptions.py
"""
Error hierarchy shared by every engine module.
Library code raises these; app/main.py maps them to exit code 1.
"""
from typing import Sequence


class LGError(Exception):
    """Base class for all engine errors"""


# ========================================
# Algebra
# ========================================

class NotZeroDimensional(LGError):
    """The quotient by an ideal is infinite-dimensional"""


class NotInIdeal(LGError):
    """A polynomial has nonzero normal form modulo the ideal"""


class NotLocal(LGError):
    """The Jacobian ideal has critical points away from the origin"""


# ========================================
# Homological algebra
# ========================================

class NotStabilized(LGError):
    """Spectral pages still change at the requested r_max"""


class InvalidSupport(LGError):
    """Double complex support is neither first-quadrant nor a horizontal strip"""


class PreconditionFailed(LGError):
    """A morphism of double complexes violates a comparison hypothesis"""


class InvariantViolation(LGError):
    """An exact internal identity failed to hold"""


# ========================================
# Factorizations and categories
# ========================================

class NotAFactorization(LGError):
    """The block matrices do not multiply to W times the identity"""


class MismatchedPotential(LGError):
    """Objects factor different potentials or live in different rings"""


class BackendUnavailable(LGError):
    """The requested backend cannot handle this input"""


class NotACocycle(LGError):
    """A morphism is not closed under the defect differential"""


class ReductionFailed(LGError):
    """A truncated model could not express a cocycle in its chosen basis"""


class NotInvolutive(LGError):
    """The supplied involution does not square to the identity"""


# ========================================
# Problem files
# ========================================

class ProblemSyntaxError(LGError):
    """Malformed problem file"""

    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = list(expected)
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{hint}")


class SemanticError(LGError):
    """Well-formed problem file with inconsistent content"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")
