"""Exception types shared across the package."""


class OperationalCalcError(Exception):
    """Base class for all opcalc errors."""


class BasisMismatch(OperationalCalcError):
    """Two series with different basis orders (nu) were combined."""


class TruncationExceeded(OperationalCalcError):
    """A coefficient beyond the known truncation window was requested."""


class DomainError(OperationalCalcError):
    """Evaluation requested outside the defined domain."""


class NegativeValuation(OperationalCalcError):
    """A series with negative valuation cannot be evaluated pointwise."""


class DegreeZero(OperationalCalcError):
    """Root finding requires degree >= 1."""


class NonConvergence(OperationalCalcError):
    """The iterative root finder failed to converge."""


class DegenerateOperator(OperationalCalcError):
    """The leading operator coefficient is (numerically) zero."""


class NonHomogeneous(OperationalCalcError):
    """Operation defined for homogeneous equations only."""


class InfiniteResidual(OperationalCalcError):
    """A residual series with unbounded support has no rational transform."""


class ProblemFormatError(OperationalCalcError):
    """A problem or series file failed validation."""
