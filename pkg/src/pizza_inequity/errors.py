"""Exception hierarchy shared by all modules."""


class PizzaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PizzaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidOffset(DomainError):
    pass


class InvalidSliceCount(DomainError):
    pass


class EvenN(InvalidSliceCount):
    pass


class NEqualsOne(InvalidSliceCount):
    pass


class InvalidCoefficientIndex(DomainError):
    pass


class ZeroFrequency(DomainError):
    pass


class NearSingular(DomainError):
    """Offset too close to 1 for the series bounds to be usable."""


class NonConvergence(PizzaError, ArithmeticError):
    """Adaptive quadrature ran out of its evaluation budget."""


class BudgetExhausted(PizzaError, ArithmeticError):
    """A series needed more terms than the truncation policy allows."""
