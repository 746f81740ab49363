"""Finite Cayley-table monoids and the additive monoid of naturals."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .errors import AxiomError, BudgetExceeded

UP_SWEEP_CAP = 12
ORDER_SEARCH_CAP = 4


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class NullAdjoined:
    """S with all products equal to a zero z, plus an adjoined identity e."""

    k: int


@dataclass(frozen=True)
class MonoidTable:
    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class NatAddSpec:
    pass


@dataclass(frozen=True)
class NamedMonoid:
    name: str
    spec: "MonoidSpec"


MonoidSpec = Union[Cyclic, NullAdjoined, MonoidTable, NatAddSpec, NamedMonoid]


def monoid_spec_to_dict(spec: MonoidSpec) -> dict:
    if isinstance(spec, Cyclic):
        return {"cyclic": spec.n}
    if isinstance(spec, NullAdjoined):
        return {"null_adjoined": spec.k}
    if isinstance(spec, MonoidTable):
        out: dict = {"table": [list(r) for r in spec.table]}
        if spec.labels is not None:
            out["labels"] = list(spec.labels)
        return out
    if isinstance(spec, NatAddSpec):
        return {"nat_add": True}
    if isinstance(spec, NamedMonoid):
        return {"named": {"name": spec.name, "spec": monoid_spec_to_dict(spec.spec)}}
    raise TypeError(f"not a monoid spec: {spec!r}")


def monoid_spec_from_dict(data: dict) -> MonoidSpec:
    if "table" in data:
        labels = data.get("labels")
        return MonoidTable(tuple(tuple(r) for r in data["table"]), tuple(labels) if labels else None)
    if len(data) != 1:
        raise ValueError(f"monoid spec must have exactly one constructor, got {sorted(data)}")
    (kind, arg), = data.items()
    if kind == "cyclic":
        return Cyclic(int(arg))
    if kind == "null_adjoined":
        return NullAdjoined(int(arg))
    if kind == "nat_add":
        return NatAddSpec()
    if kind == "named":
        return NamedMonoid(arg["name"], monoid_spec_from_dict(arg["spec"]))
    raise ValueError(f"unknown monoid constructor {kind!r}")


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    name: str
    size: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    labels: tuple[str, ...]
    spec: Optional[MonoidSpec] = field(default=None, repr=False)

    finite = True

    def op(self, g: int, h: int) -> int:
        return self.table[g][h]

    def label(self, g: int) -> str:
        return self.labels[g]

    @property
    def elements(self) -> range:
        return range(self.size)

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(repr((self.identity, self.table)).encode()).hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self.digest == other.digest

    def __hash__(self) -> int:
        return hash(self.digest)

    def power(self, g: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.table[r][g]
        return r


@dataclass(frozen=True, eq=False)
class NatAdd:
    """(N u {0}, +) with its usual order; elements are Python ints."""

    name: str = "NatAdd"
    spec: MonoidSpec = field(default_factory=NatAddSpec, repr=False)

    finite = False
    identity = 0

    def op(self, g: int, h: int) -> int:
        return g + h

    def label(self, g: int) -> str:
        return f"x^{g}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NatAdd)

    def __hash__(self) -> int:
        return hash("NatAdd")


Monoid = Union[FiniteMonoid, NatAdd]


def from_table(table: Sequence[Sequence[int]], name: str = "M", labels=None, spec=None) -> FiniteMonoid:
    t = tuple(tuple(int(v) for v in row) for row in table)
    n = len(t)
    if n == 0 or any(len(row) != n for row in t):
        raise AxiomError("table is square and nonempty", (n,), name)
    for g, row in enumerate(t):
        for h, v in enumerate(row):
            if not 0 <= v < n:
                raise AxiomError("table is total", (g, h), name)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise AxiomError("associativity", (a, b, c), name)
    ids = [u for u in range(n) if all(t[u][x] == x and t[x][u] == x for x in range(n))]
    if not ids:
        raise AxiomError("identity exists", (), name)
    if labels and len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} elements")
    labels = tuple(labels) if labels else tuple(str(i) for i in range(n))
    return FiniteMonoid(name=name, size=n, table=t, identity=ids[0], labels=labels, spec=spec)


def construct_monoid(spec: MonoidSpec) -> Monoid:
    if isinstance(spec, NamedMonoid):
        inner = construct_monoid(spec.spec)
        if isinstance(inner, NatAdd):
            return NatAdd(name=spec.name, spec=spec)
        return FiniteMonoid(spec.name, inner.size, inner.table, inner.identity, inner.labels, spec)
    if isinstance(spec, NatAddSpec):
        return NatAdd(spec=spec)
    if isinstance(spec, Cyclic):
        n = spec.n
        if n < 1:
            raise ValueError("cyclic(n) needs n >= 1")
        labels = ["e", "g"] + [f"g^{i}" for i in range(2, n)]
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return from_table(table, name=f"C{n}", labels=labels[:n], spec=spec)
    if isinstance(spec, NullAdjoined):
        k = spec.k
        if k < 1:
            raise ValueError("null_adjoined(k) needs k >= 1")
        # index 0 = e, index 1 = z, then s1 .. s_{k-1}
        n = k + 1
        table = [[b if a == 0 else (a if b == 0 else 1) for b in range(n)] for a in range(n)]
        labels = ["e", "z"] + [f"s{i}" for i in range(1, k)]
        return from_table(table, name=f"N{k}", labels=labels, spec=spec)
    if isinstance(spec, MonoidTable):
        return from_table(spec.table, labels=spec.labels, spec=spec)
    raise TypeError(f"not a monoid spec: {spec!r}")


def submonoid(monoid: FiniteMonoid, elems: Iterable[int], name: Optional[str] = None) -> FiniteMonoid:
    members = sorted(set(elems))
    if monoid.identity not in members:
        raise ValueError("a submonoid must contain the identity")
    pos = {g: i for i, g in enumerate(members)}
    try:
        table = [[pos[monoid.table[a][b]] for b in members] for a in members]
    except KeyError:
        raise ValueError(f"{members} is not closed under the operation") from None
    labels = [monoid.labels[g] for g in members]
    sname = name or f"{monoid.name}[{','.join(labels)}]"
    sub = from_table(table, name=sname, labels=labels)
    return FiniteMonoid(sub.name, sub.size, sub.table, sub.identity, sub.labels, MonoidTable(sub.table, tuple(labels)))


def enumerate_submonoids(monoid: FiniteMonoid) -> list[tuple[int, ...]]:
    """Element tuples of all submonoids, sorted by size then lexicographically."""
    if monoid.size > UP_SWEEP_CAP:
        raise BudgetExceeded(f"submonoid sweep of {monoid.name}", 2**monoid.size, 2**UP_SWEEP_CAP)
    out = []
    others = [g for g in range(monoid.size) if g != monoid.identity]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = set(combo) | {monoid.identity}
            if all(monoid.table[a][b] in s for a in s for b in s):
                out.append(tuple(sorted(s)))
    return sorted(out, key=lambda s: (len(s), s))


# --------------------------------------------------------------------------
# Scans
# --------------------------------------------------------------------------


def cancellativity_witness(monoid: FiniteMonoid) -> Optional[tuple[int, int, int, str]]:
    """Lex-first (m, g, h, side) with g < h and mg = mh (left) or gm = hm (right)."""
    t = monoid.table
    n = monoid.size
    for m in range(n):
        for g in range(n):
            for h in range(g + 1, n):
                if t[m][g] == t[m][h]:
                    return m, g, h, "left"
                if t[g][m] == t[h][m]:
                    return m, g, h, "right"
    return None


def rows_and_columns_are_permutations(monoid: FiniteMonoid) -> bool:
    n = monoid.size
    t = monoid.table
    return all(len(set(t[m])) == n for m in range(n)) and all(len({t[g][m] for g in range(n)}) == n for m in range(n))


def unique_product_violation(monoid: FiniteMonoid, cap: int = UP_SWEEP_CAP) -> Optional[tuple[list[int], list[int]]]:
    """First pair (A, B) of nonempty subsets (ordered by bitmask) with no uniquely presented product."""
    n = monoid.size
    if n > cap:
        raise BudgetExceeded(f"unique-product sweep of {monoid.name}", 4**n, 4**cap)
    t = monoid.table
    subsets = [[g for g in range(n) if mask >> g & 1] for mask in range(1, 1 << n)]
    for A in subsets:
        for B in subsets:
            counts = [0] * n
            for a in A:
                row = t[a]
                for b in B:
                    counts[row[b]] += 1
            if 1 not in counts:
                return A, B
    return None


def is_group(monoid: FiniteMonoid) -> bool:
    e = monoid.identity
    return all(any(monoid.table[g][h] == e and monoid.table[h][g] == e for h in range(monoid.size)) for g in range(monoid.size))


def element_order(monoid: FiniteMonoid, g: int) -> int:
    k, p = 1, g
    while p != monoid.identity:
        p = monoid.table[p][g]
        k += 1
        if k > monoid.size:
            raise ValueError(f"{monoid.label(g)} has no finite order")
    return k


def torsion_free_violation(monoid: FiniteMonoid) -> Optional[tuple[int, int, int]]:
    """(g, h, k) with g != h and g^k = h^k, or None if the monoid is torsion-free."""
    t = monoid.table
    for g in range(monoid.size):
        for h in range(g + 1, monoid.size):
            pg, ph, k = g, h, 1
            seen = set()
            while (pg, ph) not in seen:
                if pg == ph:
                    return g, h, k
                seen.add((pg, ph))
                pg, ph, k = t[pg][g], t[ph][h], k + 1
    return None


def _order_is_strict(monoid: FiniteMonoid, perm: Sequence[int]) -> bool:
    rank = {g: i for i, g in enumerate(perm)}
    t = monoid.table
    n = monoid.size
    for g in range(n):
        for g2 in range(n):
            if rank[g] < rank[g2]:
                for h in range(n):
                    if not (rank[t[g][h]] < rank[t[g2][h]] and rank[t[h][g]] < rank[t[h][g2]]):
                        return False
    return True


def strict_total_order_search(monoid: FiniteMonoid, cap: int = ORDER_SEARCH_CAP) -> Optional[tuple[int, ...]]:
    """Brute force over all total orders; returns a compatible strict order or None."""
    if monoid.size > cap:
        raise BudgetExceeded(f"order search on {monoid.name}", monoid.size, cap)
    for perm in itertools.permutations(range(monoid.size)):
        if _order_is_strict(monoid, perm):
            return perm
    return None


def strict_total_order_exists(monoid: Monoid) -> bool:
    # g > e would force e < g < g^2 < ..., impossible in a finite monoid.
    if isinstance(monoid, NatAdd):
        return True
    return monoid.size == 1


@dataclass
class MonoidReport:
    name: str
    size: Optional[int]
    axiomatic: bool
    cancellative: bool
    cancellative_witness: Optional[dict]
    unique_product: Optional[bool]
    unique_product_witness: Optional[dict]
    is_group: Optional[bool]
    torsion_elements: Optional[list[int]]
    torsion_free: bool
    strict_total_order_exists: bool
    order_search_agrees: Optional[bool]
    labels: Optional[list[str]]
    notes: list[str]

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["type"] = "monoid_report"
        return d


def monoid_scan(monoid: Monoid, up_cap: int = UP_SWEEP_CAP) -> MonoidReport:
    if isinstance(monoid, NatAdd):
        return MonoidReport(
            name=monoid.name,
            size=None,
            axiomatic=True,
            cancellative=True,
            cancellative_witness=None,
            unique_product=True,
            unique_product_witness=None,
            is_group=False,
            torsion_elements=None,
            torsion_free=True,
            strict_total_order_exists=True,
            order_search_agrees=None,
            labels=None,
            notes=["(N u {0}, +) properties are axiomatic, not enumerated"],
        )
    notes = []
    cw = cancellativity_witness(monoid)
    if (cw is None) != rows_and_columns_are_permutations(monoid):
        raise AssertionError("cancellativity checks disagree")
    up: Optional[bool]
    try:
        viol = unique_product_violation(monoid, up_cap)
        up = viol is None
        up_w = {"A": viol[0], "B": viol[1]} if viol else None
    except BudgetExceeded as exc:
        up, up_w = None, None
        notes.append(str(exc))
    group = is_group(monoid)
    torsion = [g for g in range(monoid.size) if g != monoid.identity] if group else None
    if group:
        # in a finite group every element has finite order
        for g in range(monoid.size):
            element_order(monoid, g)
    sto = strict_total_order_exists(monoid)
    agrees: Optional[bool] = None
    if monoid.size <= ORDER_SEARCH_CAP:
        agrees = (strict_total_order_search(monoid) is not None) == sto
    return MonoidReport(
        name=monoid.name,
        size=monoid.size,
        axiomatic=False,
        cancellative=cw is None,
        cancellative_witness=None if cw is None else {"m": cw[0], "g": cw[1], "h": cw[2], "side": cw[3]},
        unique_product=up,
        unique_product_witness=up_w,
        is_group=group,
        torsion_elements=torsion,
        torsion_free=torsion_free_violation(monoid) is None,
        strict_total_order_exists=sto,
        order_search_agrees=agrees,
        labels=list(monoid.labels),
        notes=notes,
    )
