"""Exception hierarchy shared by every module."""


class ErsError(Exception):
    """Base class for all ERS errors."""


class ParameterError(ErsError, ValueError):
    """A parameter is outside its admissible range."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class DomainError(ErsError, ValueError):
    """A special-function argument lies outside the function's domain."""


class UnsupportedOperationError(ErsError):
    """The operation is not defined for the given law or regime."""


class ConvergenceError(ErsError, ArithmeticError):
    """An iterative evaluation did not converge within its iteration cap."""


class NumericDivergenceError(ErsError, ArithmeticError):
    """The integrated state became non-finite."""

    def __init__(self, time: float, message: str = "state became non-finite"):
        self.time = time
        super().__init__(f"{message} at t={time:.6g}")


class StructuralError(ErsError, ValueError):
    """Problem data have inconsistent dimensions or violate a structural invariant."""


class IllConditionedError(ErsError, ArithmeticError):
    """A linear system is too close to singular to be solved reliably."""

    def __init__(self, condition: float, time: float | None = None):
        self.condition = condition
        self.time = time
        where = f" at t={time:.6g}" if time is not None else ""
        super().__init__(f"condition estimate {condition:.3e} exceeds limit{where}")
