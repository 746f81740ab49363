"""The default collection of named rings and monoids."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .monoids import Cyclic, Monoid, MonoidSpec, NamedMonoid, NatAddSpec, NullAdjoined, construct_monoid
from .rings import (
    FiniteRing,
    Matrix,
    Named,
    Product,
    Quaternion,
    RingSpec,
    Subring,
    UpperTriangular,
    Zn,
    construct_ring,
)

# E11 and E12 of T2(Z2) in the (a, b, d) coordinate order used by UpperTriangular.
_T2Z2_E11 = 4
_T2Z2_E12 = 2

RING_SPECS: dict[str, RingSpec] = {
    "Z2": Zn(2),
    "Z3": Zn(3),
    "Z4": Zn(4),
    "Z6": Zn(6),
    "Z8": Zn(8),
    "Z2xZ2": Product(Zn(2), Zn(2)),
    "T2_Z2": UpperTriangular(Zn(2), 2),
    "T2_Z3": UpperTriangular(Zn(3), 2),
    "M2_Z2": Matrix(Zn(2), 2),
    "H_Z2": Quaternion(Zn(2)),
    "Ex27_Z4": Subring(Matrix(Zn(4), 2), predicate="scalar_mod_2"),
    "I_T2_Z2": Subring(UpperTriangular(Zn(2), 2), generators=(_T2Z2_E11, _T2Z2_E12), unital=False),
}

FIELDS = ("Z2", "Z3")

MONOID_SPECS: dict[str, MonoidSpec] = {
    "C1": Cyclic(1),
    "C2": Cyclic(2),
    "C3": Cyclic(3),
    "C4": Cyclic(4),
    "C5": Cyclic(5),
    "N1": NullAdjoined(1),
    "N2": NullAdjoined(2),
    "NatAdd": NatAddSpec(),
}

MONOID_ALIASES = {"trivial": "C1"}


@dataclass
class Catalog:
    rings: dict[str, FiniteRing] = field(default_factory=dict)
    monoids: dict[str, Monoid] = field(default_factory=dict)
    fields: tuple[str, ...] = FIELDS

    def ring(self, name: str) -> FiniteRing:
        try:
            return self.rings[name]
        except KeyError:
            raise KeyError(f"unknown ring {name!r}; known: {', '.join(self.rings)}") from None

    def monoid(self, name: str) -> Monoid:
        name = MONOID_ALIASES.get(name, name)
        try:
            return self.monoids[name]
        except KeyError:
            raise KeyError(f"unknown monoid {name!r}; known: {', '.join(self.monoids)}") from None

    def finite_monoids(self, min_size: int = 1) -> list[Monoid]:
        return [m for m in self.monoids.values() if m.finite and m.size >= min_size]

    def rings_up_to(self, size: int, unital: Optional[bool] = None) -> list[FiniteRing]:
        out = [r for r in self.rings.values() if r.size <= size]
        if unital is not None:
            out = [r for r in out if (r.one is not None) == unital]
        return out

    def extended(self, rings: dict[str, FiniteRing], monoids: dict[str, Monoid]) -> "Catalog":
        return Catalog({**self.rings, **rings}, {**self.monoids, **monoids}, self.fields)


_default: Optional[Catalog] = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        cache: dict = {}
        rings = {name: construct_ring(Named(name, spec), _cache=cache) for name, spec in RING_SPECS.items()}
        monoids = {name: construct_monoid(NamedMonoid(name, spec)) for name, spec in MONOID_SPECS.items()}
        _default = Catalog(rings, monoids)
    return _default
