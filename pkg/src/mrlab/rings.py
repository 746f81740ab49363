"""Finite rings (and rngs) given by Cayley tables.

Elements are dense indices ``0..size-1``.  Structured constructors (matrix,
upper triangular, quaternion, products) compute their tables once; every
constructed ring is checked against the ring axioms before it is returned.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import (
    AxiomError,
    BudgetExceeded,
    CornerError,
    IdentityRequired,
    NotAnIdealError,
    SizeCapError,
)

RING_SIZE_CAP = 4096
IDEAL_ENUMERATION_CAP = 64
# Above this size the O(n^3) axiom scan is replaced by a seeded sample.
FULL_VALIDATION_LIMIT = 512
SAMPLED_TRIPLES = 200_000

Table = tuple[tuple[int, ...], ...]


# --------------------------------------------------------------------------
# Ring specs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Zn:
    n: int


@dataclass(frozen=True)
class Product:
    left: "RingSpec"
    right: "RingSpec"


@dataclass(frozen=True)
class Matrix:
    base: "RingSpec"
    k: int


@dataclass(frozen=True)
class UpperTriangular:
    base: "RingSpec"
    k: int


@dataclass(frozen=True)
class Quaternion:
    base: "RingSpec"


@dataclass(frozen=True)
class Subring:
    """Closure of ``generators`` (and/or the elements selected by ``predicate``).

    ``predicate`` is either the name of a registered predicate (serializable)
    or a callable ``(ring, index) -> bool`` for programmatic use.
    """

    parent: "RingSpec"
    generators: tuple[int, ...] = ()
    predicate: Union[str, Callable[["FiniteRing", int], bool], None] = None
    unital: bool = True


@dataclass(frozen=True)
class Quotient:
    parent: "RingSpec"
    ideal: tuple[int, ...]


@dataclass(frozen=True)
class Corner:
    parent: "RingSpec"
    idempotent: int


@dataclass(frozen=True)
class Tables:
    add: Table
    mul: Table
    labels: Optional[tuple[str, ...]] = None


@dataclass(frozen=True)
class Named:
    """Attach a display name to another spec."""

    name: str
    spec: "RingSpec"


RingSpec = Union[Zn, Product, Matrix, UpperTriangular, Quaternion, Subring, Quotient, Corner, Tables, Named]


def _scalar_mod_2(ring: "FiniteRing", x: int) -> bool:
    # 2x2 matrices over Z_n with a = d and b = c = 0 modulo 2.
    if ring.coords is None or len(ring.coords[x]) != 4:
        raise ValueError("scalar_mod_2 applies to 2x2 matrix rings over Z_n")
    a, b, c, d = ring.coords[x]
    return (a - d) % 2 == 0 and b % 2 == 0 and c % 2 == 0


PREDICATES: dict[str, Callable[["FiniteRing", int], bool]] = {
    "scalar_mod_2": _scalar_mod_2,
}


def spec_to_dict(spec: RingSpec) -> dict:
    """Serialize a spec to plain JSON-ready data; callable predicates are rejected."""
    if isinstance(spec, Zn):
        return {"zn": spec.n}
    if isinstance(spec, Product):
        return {"product": [spec_to_dict(spec.left), spec_to_dict(spec.right)]}
    if isinstance(spec, Matrix):
        return {"matrix": {"base": spec_to_dict(spec.base), "k": spec.k}}
    if isinstance(spec, UpperTriangular):
        return {"upper_triangular": {"base": spec_to_dict(spec.base), "k": spec.k}}
    if isinstance(spec, Quaternion):
        return {"quaternion": spec_to_dict(spec.base)}
    if isinstance(spec, Subring):
        if spec.predicate is not None and not isinstance(spec.predicate, str):
            raise ValueError("subring with a callable predicate is not serializable")
        out: dict = {"parent": spec_to_dict(spec.parent), "generators": list(spec.generators), "unital": spec.unital}
        if spec.predicate is not None:
            out["predicate"] = spec.predicate
        return {"subring": out}
    if isinstance(spec, Quotient):
        return {"quotient": {"parent": spec_to_dict(spec.parent), "ideal": list(spec.ideal)}}
    if isinstance(spec, Corner):
        return {"corner": {"parent": spec_to_dict(spec.parent), "idempotent": spec.idempotent}}
    if isinstance(spec, Tables):
        out = {"add": [list(r) for r in spec.add], "mul": [list(r) for r in spec.mul]}
        if spec.labels is not None:
            out["labels"] = list(spec.labels)
        return {"tables": out}
    if isinstance(spec, Named):
        return {"named": {"name": spec.name, "spec": spec_to_dict(spec.spec)}}
    raise TypeError(f"not a ring spec: {spec!r}")


def spec_from_dict(data: dict) -> RingSpec:
    if len(data) != 1:
        raise ValueError(f"ring spec must have exactly one constructor, got {sorted(data)}")
    (kind, arg), = data.items()
    if kind == "zn":
        return Zn(int(arg))
    if kind == "product":
        return Product(spec_from_dict(arg[0]), spec_from_dict(arg[1]))
    if kind == "matrix":
        return Matrix(spec_from_dict(arg["base"]), int(arg["k"]))
    if kind == "upper_triangular":
        return UpperTriangular(spec_from_dict(arg["base"]), int(arg["k"]))
    if kind == "quaternion":
        return Quaternion(spec_from_dict(arg))
    if kind == "subring":
        return Subring(
            spec_from_dict(arg["parent"]),
            tuple(arg.get("generators", ())),
            arg.get("predicate"),
            bool(arg.get("unital", True)),
        )
    if kind == "quotient":
        return Quotient(spec_from_dict(arg["parent"]), tuple(arg["ideal"]))
    if kind == "corner":
        return Corner(spec_from_dict(arg["parent"]), int(arg["idempotent"]))
    if kind == "tables":
        labels = arg.get("labels")
        return Tables(
            tuple(tuple(r) for r in arg["add"]),
            tuple(tuple(r) for r in arg["mul"]),
            tuple(labels) if labels is not None else None,
        )
    if kind == "named":
        return Named(arg["name"], spec_from_dict(arg["spec"]))
    raise ValueError(f"unknown ring constructor {kind!r}")


# --------------------------------------------------------------------------
# FiniteRing
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteRing:
    name: str
    size: int
    add: Table
    mul: Table
    zero: int
    neg: tuple[int, ...]
    one: Optional[int] = None
    labels: tuple[str, ...] = ()
    coords: Optional[tuple[tuple[int, ...], ...]] = field(default=None, repr=False)
    spec: Optional[RingSpec] = field(default=None, repr=False)
    validation: str = "full"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self.digest == other.digest

    def __hash__(self) -> int:
        return hash(self.digest)

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.size, self.zero, self.one, self.add, self.mul)).encode())
        return h.hexdigest()[:16]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no element labelled {label!r}") from None

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def renamed(self, name: str) -> "FiniteRing":
        spec = Named(name, self.spec) if self.spec is not None else None
        return _replace(self, name=name, spec=spec)

    def require_one(self, what: str) -> int:
        if self.one is None:
            raise IdentityRequired(f"{what} needs a multiplicative identity; {self.name} is a rng")
        return self.one

    def power(self, x: int, k: int) -> int:
        r = x
        for _ in range(k - 1):
            r = self.mul[r][x]
        return r

    # cached structural subsets -------------------------------------------------

    @cached_property
    def center(self) -> frozenset[int]:
        mul = self.mul
        return frozenset(x for x in range(self.size) if all(mul[x][y] == mul[y][x] for y in range(self.size)))

    @cached_property
    def is_commutative(self) -> bool:
        return len(self.center) == self.size

    @cached_property
    def idempotents(self) -> frozenset[int]:
        return frozenset(x for x in range(self.size) if self.mul[x][x] == x)

    @cached_property
    def nilpotents(self) -> frozenset[int]:
        out = set()
        for x in range(self.size):
            p, seen = x, set()
            while p != self.zero and p not in seen:
                seen.add(p)
                p = self.mul[p][x]
            if p == self.zero:
                out.add(x)
        return frozenset(out)

    @cached_property
    def units(self) -> frozenset[int]:
        one = self.require_one("units")
        mul = self.mul
        out = set()
        for x in range(self.size):
            if any(mul[x][y] == one and mul[y][x] == one for y in range(self.size)):
                out.add(x)
        return frozenset(out)

    @cached_property
    def jacobson_radical(self) -> frozenset[int]:
        if self.one is None:
            return radical_by_nilpotent_ideals(self)
        units, one = self.units, self.one
        return frozenset(
            x
            for x in range(self.size)
            if all(self.sub(one, self.mul[r][x]) in units for r in range(self.size))
        )

    @cached_property
    def additive_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        group = frozenset({self.zero})
        for x in range(self.size):
            if x not in group:
                gens.append(x)
                group = additive_closure(self, list(group) + [x])
        return tuple(gens)

    @cached_property
    def nil_is_additive(self) -> bool:
        nil = self.nilpotents
        return all(self.add[a][b] in nil for a in nil for b in nil)


def _replace(ring: FiniteRing, **changes) -> FiniteRing:
    data = {f: getattr(ring, f) for f in ring.__dataclass_fields__}
    data.update(changes)
    return FiniteRing(**data)


# --------------------------------------------------------------------------
# Subgroup / ideal helpers
# --------------------------------------------------------------------------


def additive_closure(ring: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    """Additive subgroup generated by ``gens``."""
    add = ring.add
    gens = [g for g in dict.fromkeys(gens) if g != ring.zero]
    out = {ring.zero}
    frontier = [ring.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add[x][g]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def ideal_generated(ring: FiniteRing, gens: Iterable[int]) -> frozenset[int]:
    gens = list(gens)
    mul, n = ring.mul, ring.size
    seeds = set(gens)
    for x in gens:
        for r in range(n):
            rx = mul[r][x]
            seeds.add(rx)
            seeds.add(mul[x][r])
            for s in range(n):
                seeds.add(mul[rx][s])
    return additive_closure(ring, sorted(seeds))


def is_two_sided_ideal(ring: FiniteRing, elems: Iterable[int]) -> bool:
    s = frozenset(elems)
    if ring.zero not in s:
        return False
    add, mul = ring.add, ring.mul
    if any(add[a][b] not in s for a in s for b in s):
        return False
    return all(mul[r][a] in s and mul[a][r] in s for a in s for r in range(ring.size))


def is_right_ideal(ring: FiniteRing, elems: Iterable[int]) -> bool:
    s = frozenset(elems)
    if ring.zero not in s:
        return False
    add, mul = ring.add, ring.mul
    if any(add[a][b] not in s for a in s for b in s):
        return False
    return all(mul[a][r] in s for a in s for r in range(ring.size))


def ideal_power_is_zero(ring: FiniteRing, ideal: frozenset[int]) -> bool:
    current = ideal
    for _ in range(ring.size + 1):
        if current == {ring.zero}:
            return True
        nxt = additive_closure(ring, {ring.mul[a][b] for a in current for b in ideal})
        if nxt == current:
            return False
        current = nxt
    return current == {ring.zero}


def radical_by_nilpotent_ideals(ring: FiniteRing) -> frozenset[int]:
    """Largest nilpotent ideal: x such that the ideal generated by x is nilpotent.

    For a finite ring this is the Jacobson radical and also the prime radical;
    it needs no identity element.
    """
    nil = ring.nilpotents
    return frozenset(x for x in range(ring.size) if x in nil and ideal_power_is_zero(ring, ideal_generated(ring, [x])))


def right_annihilator(ring: FiniteRing, subset: Iterable[int]) -> frozenset[int]:
    s = sorted(set(subset))
    if not s:
        raise ValueError("right annihilator of the empty set is not defined here")
    mul, z = ring.mul, ring.zero
    result = frozenset(x for x in range(ring.size) if all(mul[a][x] == z for a in s))
    assert is_right_ideal(ring, result), "annihilator is not a right ideal"
    return result


def principal_right_ideal(ring: FiniteRing, e: int) -> frozenset[int]:
    """eR, which for an idempotent e equals {x : ex = x}."""
    return frozenset(ring.mul[e][x] for x in range(ring.size))


def enumerate_ideals(ring: FiniteRing, cap: int = IDEAL_ENUMERATION_CAP) -> list[frozenset[int]]:
    """All two-sided ideals, sorted by size and then by element tuple."""
    if ring.size > cap:
        raise BudgetExceeded(f"ideal enumeration of {ring.name}", ring.size, cap)
    principal = [ideal_generated(ring, [x]) for x in range(ring.size)]
    add = ring.add
    seen = {frozenset({ring.zero})}
    queue = [frozenset({ring.zero})]
    while queue:
        nxt = []
        for ideal in queue:
            for x in range(ring.size):
                if x in ideal:
                    continue
                joined = frozenset(add[a][b] for a in ideal for b in principal[x])
                if joined not in seen:
                    seen.add(joined)
                    nxt.append(joined)
        queue = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


# --------------------------------------------------------------------------
# Validation
# --------------------------------------------------------------------------


def _first_bad(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(v) for v in np.argwhere(mask)[0])


def validate_tables(
    add: Table, mul: Table, name: str = "", one: Optional[int] = None, full_limit: int = FULL_VALIDATION_LIMIT
) -> tuple[int, tuple[int, ...], str]:
    """Check every ring axiom; returns ``(zero, neg, mode)`` or raises AxiomError."""
    n = len(add)
    A = np.asarray(add, dtype=np.int64)
    M = np.asarray(mul, dtype=np.int64)
    if A.shape != (n, n) or M.shape != (n, n) or n == 0:
        raise AxiomError("tables are square", (n,), name)
    for T, what in ((A, "addition"), (M, "multiplication")):
        bad = (T < 0) | (T >= n)
        if bad.any():
            raise AxiomError(f"{what} table is total", _first_bad(bad), name)
    idx = np.arange(n)
    zeros = [z for z in range(n) if (A[z] == idx).all() and (A[:, z] == idx).all()]
    if not zeros:
        raise AxiomError("additive identity exists", (), name)
    zero = zeros[0]
    bad = A != A.T
    if bad.any():
        raise AxiomError("addition is commutative", _first_bad(bad), name)
    neg = []
    for x in range(n):
        inv = np.nonzero(A[x] == zero)[0]
        if len(inv) == 0:
            raise AxiomError("additive inverse exists", (x,), name)
        neg.append(int(inv[0]))
    if one is not None:
        bad = (M[one] != idx) | (M[:, one] != idx)
        if bad.any():
            raise AxiomError("identity law", (one, int(np.nonzero(bad)[0][0])), name)

    if n <= full_limit:
        for a in range(n):
            for label, lhs, rhs in (
                ("addition is associative", A[A[a]][:, idx], A[a][A]),
                ("multiplication is associative", M[M[a]][:, idx], M[a][M]),
                ("left distributivity", M[a][A], A[M[a][:, None], M[a][None, :]]),
                ("right distributivity", M[A[a]], A[M[a][None, :], M]),
            ):
                bad = lhs != rhs
                if bad.any():
                    b, c = _first_bad(bad)
                    raise AxiomError(label, (a, b, c), name)
        mode = "full"
    else:
        rng = np.random.default_rng(0)
        a, b, c = (rng.integers(0, n, SAMPLED_TRIPLES) for _ in range(3))
        for label, lhs, rhs in (
            ("addition is associative", A[A[a, b], c], A[a, A[b, c]]),
            ("multiplication is associative", M[M[a, b], c], M[a, M[b, c]]),
            ("left distributivity", M[a, A[b, c]], A[M[a, b], M[a, c]]),
            ("right distributivity", M[A[a, b], c], A[M[a, c], M[b, c]]),
        ):
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                i = bad[0]
                raise AxiomError(label, (int(a[i]), int(b[i]), int(c[i])), name)
        mode = "sampled"
    return zero, tuple(neg), mode


def _find_identity(mul: Table) -> Optional[int]:
    n = len(mul)
    for u in range(n):
        if all(mul[u][x] == x and mul[x][u] == x for x in range(n)):
            return u
    return None


def from_tables(
    add: Sequence[Sequence[int]],
    mul: Sequence[Sequence[int]],
    name: str = "R",
    labels: Optional[Sequence[str]] = None,
    coords=None,
    spec: Optional[RingSpec] = None,
    one: Optional[int] = None,
    detect_one: bool = True,
) -> FiniteRing:
    add_t = tuple(tuple(int(v) for v in row) for row in add)
    mul_t = tuple(tuple(int(v) for v in row) for row in mul)
    zero, neg, mode = validate_tables(add_t, mul_t, name, one)
    if labels is not None and len(labels) != len(add_t):
        raise ValueError(f"{len(labels)} labels for {len(add_t)} elements")
    if one is None and detect_one:
        one = _find_identity(mul_t)
    n = len(add_t)
    return FiniteRing(
        name=name,
        size=n,
        add=add_t,
        mul=mul_t,
        zero=zero,
        neg=neg,
        one=one,
        labels=tuple(labels) if labels is not None else tuple(str(i) for i in range(n)),
        coords=coords,
        spec=spec,
        validation=mode,
    )


# --------------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------------


def _tables_from_coords(base: FiniteRing, coords: np.ndarray, mul_fn) -> tuple[np.ndarray, np.ndarray]:
    """Build add/mul tables for elements given by coordinate vectors over ``base``."""
    n, d = coords.shape
    q = base.size
    weights = q ** np.arange(d - 1, -1, -1)
    index = coords @ weights
    inverse = np.full(q**d, -1, dtype=np.int64)
    inverse[index] = np.arange(n)
    BA = np.asarray(base.add, dtype=np.int64)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        s = BA[coords[a][None, :], coords]
        add[a] = inverse[s @ weights]
        p = mul_fn(coords[a], coords)
        mul[a] = inverse[p @ weights]
    if (add < 0).any() or (mul < 0).any():
        raise AxiomError("carrier is closed under the operations", (), "structured ring")
    return add, mul


def _matrix_mul_fn(base: FiniteRing, k: int, positions: list[tuple[int, int]]):
    BA = np.asarray(base.add, dtype=np.int64)
    BM = np.asarray(base.mul, dtype=np.int64)
    pos = {p: i for i, p in enumerate(positions)}
    z = base.zero

    def fn(a: np.ndarray, bs: np.ndarray) -> np.ndarray:
        out = np.full((bs.shape[0], len(positions)), z, dtype=np.int64)
        for (r, c), t in pos.items():
            acc = np.full(bs.shape[0], z, dtype=np.int64)
            for m in range(k):
                if (r, m) in pos and (m, c) in pos:
                    acc = BA[acc, BM[a[pos[(r, m)]], bs[:, pos[(m, c)]]]]
            out[:, t] = acc
        return out

    return fn


def _quaternion_mul_fn(base: FiniteRing):
    BA = np.asarray(base.add, dtype=np.int64)
    BM = np.asarray(base.mul, dtype=np.int64)
    NEG = np.asarray(base.neg, dtype=np.int64)
    z = base.zero
    # basis 1, i, j, k: u_x * u_y = sign * u_(target)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def fn(a: np.ndarray, bs: np.ndarray) -> np.ndarray:
        out = np.full((bs.shape[0], 4), z, dtype=np.int64)
        for (x, y), (sign, t) in table.items():
            p = BM[a[x], bs[:, y]]
            if sign < 0:
                p = NEG[p]
            out[:, t] = BA[out[:, t], p]
        return out

    return fn


def _quaternion_label(base: FiniteRing, c: Sequence[int]) -> str:
    parts = []
    one_label = base.label(base.one) if base.one is not None else None
    for coef, unit in zip(c, ("", "i", "j", "k")):
        if coef == base.zero:
            continue
        lab = base.label(coef)
        if unit == "":
            parts.append(lab)
        elif lab == one_label:
            parts.append(unit)
        else:
            parts.append(f"{lab}{unit}")
    return "+".join(parts) if parts else base.label(base.zero)


def _structured(base: FiniteRing, coords: list[tuple[int, ...]], mul_fn, name, labels, spec, cap) -> FiniteRing:
    n = len(coords)
    if n > cap:
        raise SizeCapError(name, n, cap)
    arr = np.asarray(coords, dtype=np.int64).reshape(n, -1)
    add, mul = _tables_from_coords(base, arr, mul_fn)
    return from_tables(add.tolist(), mul.tolist(), name=name, labels=labels, coords=tuple(coords), spec=spec)


def predicted_size(spec: RingSpec, sizes: Callable[[RingSpec], int]) -> Optional[int]:
    if isinstance(spec, Zn):
        return spec.n
    if isinstance(spec, Product):
        return sizes(spec.left) * sizes(spec.right)
    if isinstance(spec, Matrix):
        return sizes(spec.base) ** (spec.k * spec.k)
    if isinstance(spec, UpperTriangular):
        return sizes(spec.base) ** (spec.k * (spec.k + 1) // 2)
    if isinstance(spec, Quaternion):
        return sizes(spec.base) ** 4
    if isinstance(spec, Tables):
        return len(spec.add)
    return None


def construct_ring(spec: RingSpec, cap: int = RING_SIZE_CAP, _cache: Optional[dict] = None) -> FiniteRing:
    """Build and validate the ring described by ``spec``."""
    cache = {} if _cache is None else _cache

    def build(s: RingSpec) -> FiniteRing:
        try:
            key = s
            hash(key)
        except TypeError:
            key = id(s)
        if key not in cache:
            cache[key] = _construct(s, cap, build)
        return cache[key]

    return build(spec)


def _construct(spec: RingSpec, cap: int, build) -> FiniteRing:
    if isinstance(spec, Named):
        inner = build(spec.spec)
        return _replace(inner, name=spec.name, spec=spec)

    if isinstance(spec, Zn):
        n = spec.n
        if n < 1:
            raise ValueError("Z_n needs n >= 1")
        if n > cap:
            raise SizeCapError(f"Z{n}", n, cap)
        add = [[(a + b) % n for b in range(n)] for a in range(n)]
        mul = [[(a * b) % n for b in range(n)] for a in range(n)]
        return from_tables(add, mul, name=f"Z{n}", spec=spec, one=0 if n == 1 else 1)

    if isinstance(spec, Product):
        L, R = build(spec.left), build(spec.right)
        n = L.size * R.size
        if n > cap:
            raise SizeCapError("product", n, cap)
        pairs = list(itertools.product(range(L.size), range(R.size)))
        add = [[L.add[p[0]][q[0]] * R.size + R.add[p[1]][q[1]] for q in pairs] for p in pairs]
        mul = [[L.mul[p[0]][q[0]] * R.size + R.mul[p[1]][q[1]] for q in pairs] for p in pairs]
        labels = [f"({L.label(a)},{R.label(b)})" for a, b in pairs]
        one = L.one * R.size + R.one if L.one is not None and R.one is not None else None
        return from_tables(add, mul, name=f"{L.name}x{R.name}", labels=labels, coords=tuple(pairs), spec=spec, one=one)

    if isinstance(spec, (Matrix, UpperTriangular)):
        base = build(spec.base)
        k = spec.k
        if k < 1:
            raise ValueError("matrix size must be >= 1")
        triangular = isinstance(spec, UpperTriangular)
        positions = [(r, c) for r in range(k) for c in range(k) if not triangular or r <= c]
        size = base.size ** len(positions)
        tag = "T" if triangular else "M"
        name = f"{tag}{k}({base.name})"
        if size > cap:
            raise SizeCapError(name, size, cap)
        coords = list(itertools.product(range(base.size), repeat=len(positions)))
        pos = {p: i for i, p in enumerate(positions)}

        def label(c):
            rows = []
            for r in range(k):
                rows.append(
                    "[" + ",".join(base.label(c[pos[(r, cc)]]) if (r, cc) in pos else base.label(base.zero) for cc in range(k)) + "]"
                )
            return "[" + ",".join(rows) + "]"

        labels = [label(c) for c in coords]
        ring = _structured(base, coords, _matrix_mul_fn(base, k, positions), name, labels, spec, cap)
        return ring

    if isinstance(spec, Quaternion):
        base = build(spec.base)
        size = base.size**4
        name = f"H({base.name})"
        if size > cap:
            raise SizeCapError(name, size, cap)
        coords = list(itertools.product(range(base.size), repeat=4))
        labels = [_quaternion_label(base, c) for c in coords]
        return _structured(base, coords, _quaternion_mul_fn(base), name, labels, spec, cap)

    if isinstance(spec, Subring):
        parent = build(spec.parent)
        pred = PREDICATES[spec.predicate] if isinstance(spec.predicate, str) else spec.predicate
        seeds = set(spec.generators)
        for g in seeds:
            if not 0 <= g < parent.size:
                raise ValueError(f"generator {g} is not an element of {parent.name}")
        if pred is not None:
            seeds.update(x for x in range(parent.size) if pred(parent, x))
        if spec.unital and parent.one is not None:
            seeds.add(parent.one)
        elems = _multiplicative_additive_closure(parent, seeds)
        return substructure(parent, elems, name=f"sub({parent.name})", spec=spec)

    if isinstance(spec, Quotient):
        return quotient(build(spec.parent), spec.ideal, spec=spec)

    if isinstance(spec, Corner):
        return corner(build(spec.parent), spec.idempotent, spec=spec)

    if isinstance(spec, Tables):
        if len(spec.add) > cap:
            raise SizeCapError("explicit ring", len(spec.add), cap)
        return from_tables(spec.add, spec.mul, name="R", labels=spec.labels, spec=spec)

    raise TypeError(f"not a ring spec: {spec!r}")


def _multiplicative_additive_closure(ring: FiniteRing, seeds: Iterable[int]) -> frozenset[int]:
    add, mul = ring.add, ring.mul
    elems = set(seeds) | {ring.zero}
    frontier = list(elems)
    while frontier:
        current = list(elems)
        nxt = []
        for x in frontier:
            for y in current:
                for z in (add[x][y], mul[x][y], mul[y][x], ring.neg[x]):
                    if z not in elems:
                        elems.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(elems)


def substructure(parent: FiniteRing, elems: Iterable[int], name: str, spec: Optional[RingSpec] = None) -> FiniteRing:
    """Re-index a subset closed under +, -, * as a ring of its own."""
    members = sorted(set(elems))
    pos = {x: i for i, x in enumerate(members)}
    try:
        add = [[pos[parent.add[a][b]] for b in members] for a in members]
        mul = [[pos[parent.mul[a][b]] for b in members] for a in members]
    except KeyError as exc:
        raise AxiomError("subset is closed under the ring operations", (int(exc.args[0]),), name) from None
    coords = tuple(parent.coords[x] for x in members) if parent.coords is not None else None
    labels = [parent.label(x) for x in members]
    return from_tables(add, mul, name=name, labels=labels, coords=coords, spec=spec)


def quotient(ring: FiniteRing, ideal: Iterable[int], spec: Optional[RingSpec] = None) -> FiniteRing:
    ideal = frozenset(ideal)
    if not is_two_sided_ideal(ring, ideal):
        raise NotAnIdealError(f"{sorted(ideal)} is not a two-sided ideal of {ring.name}")
    add = ring.add
    rep_of = [min(add[x][i] for i in ideal) for x in range(ring.size)]
    reps = sorted(set(rep_of))
    pos = {r: k for k, r in enumerate(reps)}
    add_t = [[pos[rep_of[add[a][b]]] for b in reps] for a in reps]
    mul_t = [[pos[rep_of[ring.mul[a][b]]] for b in reps] for a in reps]
    labels = [f"[{ring.label(r)}]" for r in reps]
    one = pos[rep_of[ring.one]] if ring.one is not None else None
    return from_tables(add_t, mul_t, name=f"{ring.name}/I{len(ideal)}", labels=labels, spec=spec, one=one)


def corner(ring: FiniteRing, f: int, spec: Optional[RingSpec] = None) -> FiniteRing:
    """fR for a central idempotent f; its identity is f."""
    if not 0 <= f < ring.size:
        raise CornerError(f"{f} is not an element of {ring.name}")
    if ring.mul[f][f] != f:
        raise CornerError(f"{ring.label(f)} is not idempotent in {ring.name}")
    if f not in ring.center:
        raise CornerError(f"{ring.label(f)} is not central in {ring.name}")
    elems = principal_right_ideal(ring, f)
    sub = substructure(ring, elems, name=f"{ring.label(f)}*{ring.name}", spec=spec)
    expected_one = sorted(elems).index(f)
    if sub.one != expected_one:
        raise CornerError(f"corner at {ring.label(f)} has unexpected identity")
    return sub


def complement_idempotent(ring: FiniteRing, f: int) -> int:
    return ring.sub(ring.require_one("1 - f"), f)


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------


@dataclass
class StructureReport:
    name: str
    size: int
    has_identity: bool
    commutative: bool
    center: list[int]
    idempotents: list[int]
    nilpotents: list[int]
    units: Optional[list[int]]
    jacobson_radical: list[int]
    prime_radical: list[int]
    radical_method: str
    validation: str
    labels: list[str]

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["type"] = "structure_report"
        d["prime_radical_note"] = "finite ring: prime radical taken equal to the Jacobson radical"
        return d


def ring_scan(ring: FiniteRing) -> StructureReport:
    units = sorted(ring.units) if ring.one is not None else None
    radical = sorted(ring.jacobson_radical)
    return StructureReport(
        name=ring.name,
        size=ring.size,
        has_identity=ring.one is not None,
        commutative=ring.is_commutative,
        center=sorted(ring.center),
        idempotents=sorted(ring.idempotents),
        nilpotents=sorted(ring.nilpotents),
        units=units,
        jacobson_radical=radical,
        prime_radical=radical,
        radical_method="unit criterion" if ring.one is not None else "largest nilpotent ideal",
        validation=ring.validation,
        labels=list(ring.labels),
    )
