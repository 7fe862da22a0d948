"""Exception types shared across the package.

Everything numerical derives from NumericalError so callers (the CLI in
particular) can map failures onto a single exit code.
"""


class NumericalError(ArithmeticError):
    """Base class for numerical failures."""


class PoleError(NumericalError, ValueError):
    """Argument sits on a pole of the function being evaluated."""


class DomainError(NumericalError, ValueError):
    """Argument outside the supported domain."""


class NonConvergenceError(NumericalError):
    """A series, iteration or quadrature failed to converge."""


class MaxDepthError(NonConvergenceError):
    """Adaptive quadrature hit its recursion limit."""


class PrecisionLossError(NumericalError):
    """No available evaluation path meets the precision budget."""


class NonFiniteError(NumericalError):
    """An integrand or intermediate value came back NaN or infinite."""


class RangeOverflowError(NumericalError, OverflowError):
    """A log-space result does not fit in double precision."""


class UnderflowWarning(RuntimeWarning):
    """A result underflowed to zero."""
