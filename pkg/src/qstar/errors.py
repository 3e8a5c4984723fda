"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class BudgetError(RuntimeError):
    """An enumeration or sampling request exceeds its caller-supplied budget."""
