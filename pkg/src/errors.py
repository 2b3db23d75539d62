"""
Exceptions raised by the lattice, group and representation layers
"""


class MclError(Exception):
    """Base class for all toolkit errors"""


class ShapeMismatchError(MclError, ValueError):
    """Operands live over different moduli, index sets or matrix sizes"""


class PreconditionError(MclError, ValueError):
    """An operation was called outside its domain"""


class BudgetExceededError(MclError):
    """An enumeration would exceed the configured budget"""

    def __init__(self, what: str, size: int, budget: int):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: size {size} exceeds budget {budget}")


def check_budget(what: str, size: int, budget: int):
    """Raise BudgetExceededError when size is over budget"""
    if size > budget:
        raise BudgetExceededError(what, size, budget)
