"""Exception types shared across the package."""

from __future__ import annotations


class AlgebraError(ValueError):
    """Base class for every structural error raised by mrlab."""


class AxiomError(AlgebraError):
    """A table fails a ring or monoid axiom; ``triple`` names the offending elements."""

    def __init__(self, axiom: str, triple: tuple[int, ...], structure: str = ""):
        self.axiom = axiom
        self.triple = tuple(triple)
        self.structure = structure
        where = f" in {structure}" if structure else ""
        super().__init__(f"{axiom} fails{where} at {self.triple}")


class SizeCapError(AlgebraError):
    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} would have {size} elements, cap is {cap}")


class NotAnIdealError(AlgebraError):
    pass


class CornerError(AlgebraError):
    pass


class IdentityRequired(AlgebraError):
    """An operation needs a multiplicative identity but the structure is a rng."""


class MixedOperandsError(AlgebraError):
    pass


class NotIdempotentError(AlgebraError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured budget.

    Raised instead of returning a partial result that could be mistaken for
    a complete one.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
