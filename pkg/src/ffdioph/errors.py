"""Exception hierarchy shared by all ffdioph modules."""


class FFDiophError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(FFDiophError, ZeroDivisionError):
    """Division by the zero polynomial / zero series."""


class AmbiguousZero(FFDiophError):
    """A quantity's degree cannot be resolved at the stored precision.

    Raised when every listed coefficient of a Laurent series is zero but
    the series is not known to be exact: its degree could be anything
    below the valuation floor, so degree-dependent queries must fail
    rather than guess.
    """


class PrecisionExhausted(FFDiophError):
    """An operation needs coefficients below the known valuation floor."""


class RankDeficient(FFDiophError):
    """Lattice reduction entered with (or reduced to) a rank-deficient basis."""


class InvalidWeights(FFDiophError, ValueError):
    """Weight vector violates the balance condition or sign constraints."""


class BudgetExceeded(FFDiophError):
    """An enumeration would exceed its configured operation budget."""


class CoefficientOutOfRange(FFDiophError, ValueError):
    """Literal coefficient outside [0, p) or wrong basis-tuple length."""


class LiteralSyntaxError(FFDiophError, ValueError):
    """Malformed Laurent/polynomial literal; carries the failing position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class AllFlagged(FFDiophError):
    """Every profile entry was precision-flagged; no estimate is possible."""
