"""Exact arithmetic in R[M] on finite-support elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, MixedOperandsError, NotIdempotentError
from .monoids import Monoid, NatAdd
from .rings import FiniteRing

ENUMERATION_BUDGET = 2_000_000


@dataclass(frozen=True, eq=False)
class MonoidRingElement:
    """sum of a_g * g with no zero coefficients and support sorted ascending."""

    ring: FiniteRing
    monoid: Monoid
    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_terms(cls, ring: FiniteRing, monoid: Monoid, pairs: Iterable[tuple[int, int]]) -> "MonoidRingElement":
        acc: dict[int, int] = {}
        add = ring.add
        for g, a in pairs:
            if not 0 <= a < ring.size:
                raise MixedOperandsError(f"{a} is not an element of {ring.name}")
            if monoid.finite and not 0 <= g < monoid.size:
                raise MixedOperandsError(f"{g} is not an element of {monoid.name}")
            if not monoid.finite and g < 0:
                raise MixedOperandsError("NatAdd exponents are nonnegative")
            acc[g] = add[acc[g]][a] if g in acc else a
        return cls(ring, monoid, tuple((g, a) for g, a in sorted(acc.items()) if a != ring.zero))

    @classmethod
    def from_coefficients(
        cls, ring: FiniteRing, monoid: Monoid, support: Sequence[int], coeffs: Sequence[int]
    ) -> "MonoidRingElement":
        if len(set(support)) != len(support):
            raise ValueError("support elements must be distinct")
        return cls.from_terms(ring, monoid, zip(support, coeffs))

    @classmethod
    def zero(cls, ring: FiniteRing, monoid: Monoid) -> "MonoidRingElement":
        return cls(ring, monoid, ())

    @classmethod
    def constant(cls, ring: FiniteRing, monoid: Monoid, a: int) -> "MonoidRingElement":
        return cls.from_terms(ring, monoid, [(monoid.identity, a)])

    def canonical(self) -> "MonoidRingElement":
        return MonoidRingElement.from_terms(self.ring, self.monoid, self.terms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.terms)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.terms)

    def coefficient(self, g: int) -> int:
        for h, a in self.terms:
            if h == g:
                return a
        return self.ring.zero

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MonoidRingElement") -> None:
        if not isinstance(other, MonoidRingElement):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if not (self.ring == other.ring and self.monoid == other.monoid):
            raise MixedOperandsError(
                f"operands live in {self.ring.name}[{self.monoid.name}] and {other.ring.name}[{other.monoid.name}]"
            )

    def __add__(self, other: "MonoidRingElement") -> "MonoidRingElement":
        self._check(other)
        return MonoidRingElement.from_terms(self.ring, self.monoid, self.terms + other.terms)

    def __neg__(self) -> "MonoidRingElement":
        neg = self.ring.neg
        return MonoidRingElement(self.ring, self.monoid, tuple((g, neg[a]) for g, a in self.terms))

    def __sub__(self, other: "MonoidRingElement") -> "MonoidRingElement":
        return self + (-other)

    def __mul__(self, other: "MonoidRingElement") -> "MonoidRingElement":
        self._check(other)
        mul, add, op = self.ring.mul, self.ring.add, self.monoid.op
        acc: dict[int, int] = {}
        for g, a in self.terms:
            row = mul[a]
            for h, b in other.terms:
                w = op(g, h)
                p = row[b]
                acc[w] = add[acc[w]][p] if w in acc else p
        z = self.ring.zero
        return MonoidRingElement(self.ring, self.monoid, tuple((w, c) for w, c in sorted(acc.items()) if c != z))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonoidRingElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def shifted(self, g: int) -> "MonoidRingElement":
        """Right translation of the support: sum a_i (g_i * g)."""
        return MonoidRingElement.from_terms(self.ring, self.monoid, ((self.monoid.op(h, g), a) for h, a in self.terms))

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{self.ring.label(a)}*{self.monoid.label(g)}" for g, a in self.terms)

    def __repr__(self) -> str:
        return f"<{self.ring.name}[{self.monoid.name}] {self.render()}>"

    def to_dict(self) -> dict:
        return {"terms": [[g, a] for g, a in self.terms], "rendered": self.render()}


def enumerate_mr_elements(
    ring: FiniteRing, monoid: Monoid, support: Sequence[int], budget: int = ENUMERATION_BUDGET
) -> Iterator[MonoidRingElement]:
    """Every coefficient assignment on ``support``, in lex order of the coefficient tuple."""
    if len(set(support)) != len(support):
        raise ValueError("support elements must be distinct")
    count = ring.size ** len(support)
    if count > budget:
        raise BudgetExceeded(f"{ring.name}^{len(support)} assignments", count, budget)
    for coeffs in itertools.product(range(ring.size), repeat=len(support)):
        yield MonoidRingElement.from_coefficients(ring, monoid, support, coeffs)


def trailing_idempotent(f: MonoidRingElement) -> int:
    """Coefficient of the least support element of an idempotent f in R[NatAdd]."""
    if not isinstance(f.monoid, NatAdd):
        raise TypeError("trailing_idempotent needs the ordered monoid NatAdd")
    if f * f != f:
        raise NotIdempotentError(f"{f.render()} is not idempotent")
    ring = f.ring
    if f.is_zero():
        return ring.zero
    f1 = f.terms[0][1]
    assert ring.mul[f1][f1] == f1, f"trailing coefficient {ring.label(f1)} is not idempotent"
    return f1
