"""Ring predicates and bounded Armendariz-type checks with reproducible witnesses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterator, Optional, Sequence, Union

from .errors import IdentityRequired
from .kernel import Echelon
from .monoid_ring import MonoidRingElement
from .monoids import FiniteMonoid, Monoid, NatAdd, monoid_spec_to_dict
from .rings import (
    FiniteRing,
    additive_closure,
    principal_right_ideal,
    radical_by_nilpotent_ideals,
    right_annihilator,
    spec_to_dict,
)

PARALLEL_THRESHOLD = 4096
DEFAULT_MAX_ALPHAS = 2_000_000


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    HOLDS_UP_TO_BOUND = "HoldsUpToBound"
    BUDGET_EXHAUSTED = "BudgetExhausted"


class Kind(str, Enum):
    PLAIN = "plain"
    CENTRAL = "central"
    NIL = "nil"


CLASSICAL = ("reduced", "central_reduced", "abelian", "two_primal", "right_pp", "baer", "commutative")


@dataclass(frozen=True)
class Bounds:
    """Quantification domain for the Armendariz checks.

    ``positions`` defaults to every element of a finite monoid, or to
    ``0..degree`` for NatAdd.  ``alpha_terms``/``beta_terms`` cap how many
    nonzero coefficients alpha and beta may carry (None means no cap).
    """

    degree: int = 3
    alpha_terms: Optional[int] = None
    beta_terms: Optional[int] = None
    positions: Optional[tuple[int, ...]] = None
    max_alphas: int = DEFAULT_MAX_ALPHAS

    @classmethod
    def nat_default(cls) -> "Bounds":
        return cls(degree=3, alpha_terms=3, beta_terms=3)

    def positions_for(self, monoid: Monoid) -> tuple[int, ...]:
        if self.positions is not None:
            pos = tuple(sorted(set(self.positions)))
            if monoid.finite and any(not 0 <= p < monoid.size for p in pos):
                raise ValueError(f"positions {pos} are not elements of {monoid.name}")
            return pos
        if monoid.finite:
            return tuple(range(monoid.size))
        return tuple(range(self.degree + 1))


# --------------------------------------------------------------------------
# Verdicts and witnesses
# --------------------------------------------------------------------------


def ring_ref(ring: FiniteRing) -> dict:
    out: dict = {"name": ring.name, "digest": ring.digest}
    if ring.spec is not None:
        try:
            out["spec"] = spec_to_dict(ring.spec)
        except ValueError:
            pass
    return out


def monoid_ref(monoid: Monoid) -> dict:
    out: dict = {"name": monoid.name}
    if monoid.spec is not None:
        out["spec"] = monoid_spec_to_dict(monoid.spec)
    if isinstance(monoid, FiniteMonoid):
        out["digest"] = monoid.digest
    return out


@dataclass
class Witness:
    kind: Kind
    alpha: MonoidRingElement
    beta: MonoidRingElement
    i: int
    j: int
    product: int
    partner: Optional[int] = None

    @property
    def ring(self) -> FiniteRing:
        return self.alpha.ring

    @property
    def a(self) -> int:
        return self.alpha.terms[self.i][1]

    @property
    def b(self) -> int:
        return self.beta.terms[self.j][1]

    def to_dict(self) -> dict:
        R = self.ring
        return {
            "type": "armendariz_witness",
            "kind": self.kind.value,
            "ring": ring_ref(R),
            "monoid": monoid_ref(self.alpha.monoid),
            "alpha": self.alpha.to_dict(),
            "beta": self.beta.to_dict(),
            "i": self.i,
            "j": self.j,
            "g": self.alpha.monoid.label(self.alpha.terms[self.i][0]),
            "h": self.alpha.monoid.label(self.beta.terms[self.j][0]),
            "a": R.label(self.a),
            "b": R.label(self.b),
            "product": self.product,
            "product_label": R.label(self.product),
            "partner": self.partner,
            "partner_label": R.label(self.partner) if self.partner is not None else None,
        }

    def render(self) -> str:
        R = self.ring
        s = f"alpha = {self.alpha.render()}, beta = {self.beta.render()}; a_{self.i}*b_{self.j} = {R.label(self.product)}"
        if self.partner is not None:
            r = self.partner
            s += f" does not commute with {R.label(r)}"
        elif self.kind is Kind.PLAIN:
            s += " != 0"
        else:
            s += " is not nilpotent"
        return s


@dataclass
class ClassicalWitness:
    prop: str
    elements: dict[str, int]
    sets: dict[str, list[int]] = field(default_factory=dict)
    detail: str = ""
    ring: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "type": "classical_witness",
            "prop": self.prop,
            "elements": dict(self.elements),
            "sets": {k: list(v) for k, v in self.sets.items()},
            "detail": self.detail,
        }
        if self.ring is not None:
            out["ring"] = self.ring
        return out

    def render(self) -> str:
        return self.detail


@dataclass
class Verdict:
    prop: str
    ring: str
    status: Status
    monoid: Optional[str] = None
    bound: dict = field(default_factory=dict)
    witness: Optional[Union[Witness, ClassicalWitness]] = None
    stats: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status in (Status.HOLDS, Status.HOLDS_UP_TO_BOUND)

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def to_dict(self) -> dict:
        return {
            "type": "verdict",
            "prop": self.prop,
            "ring": self.ring,
            "monoid": self.monoid,
            "status": self.status.value,
            "bound": self.bound,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "stats": self.stats,
            "notes": list(self.notes),
        }


# --------------------------------------------------------------------------
# Classical predicates
# --------------------------------------------------------------------------


def _noncommuting_partner(ring: FiniteRing, x: int) -> Optional[int]:
    mul = ring.mul
    return next((r for r in range(ring.size) if mul[x][r] != mul[r][x]), None)


def nilpotency_index(ring: FiniteRing, x: int) -> Optional[int]:
    p, k = x, 1
    seen = set()
    while p != ring.zero:
        if p in seen:
            return None
        seen.add(p)
        p = ring.mul[p][x]
        k += 1
    return k


def annihilator_lattice(ring: FiniteRing) -> dict[frozenset[int], tuple[int, ...]]:
    """Right annihilators of nonempty subsets, each with a generating subset.

    r(W) is the intersection of the r(w), so the family is the
    intersection-closure of the singleton annihilators.
    """
    found: dict[frozenset[int], tuple[int, ...]] = {}
    for a in range(ring.size):
        found.setdefault(right_annihilator(ring, [a]), (a,))
    frontier = list(found.items())
    while frontier:
        nxt = []
        singles = [(right_annihilator(ring, [a]), a) for a in range(ring.size)]
        for ann, gens in frontier:
            for ann_a, a in singles:
                meet = ann & ann_a
                if meet not in found:
                    found[meet] = tuple(sorted(set(gens) | {a}))
                    nxt.append((meet, found[meet]))
        frontier = nxt
    return found


def check_classical(ring: FiniteRing, prop: str) -> Verdict:
    if prop not in CLASSICAL:
        raise ValueError(f"unknown ring property {prop!r}; expected one of {CLASSICAL}")
    R = ring
    witness: Optional[ClassicalWitness] = None
    notes: list[str] = []

    if prop == "commutative":
        for x in range(R.size):
            r = _noncommuting_partner(R, x)
            if r is not None:
                witness = ClassicalWitness(prop, {"x": x, "y": r}, detail=f"{R.label(x)}*{R.label(r)} != {R.label(r)}*{R.label(x)}")
                break

    elif prop == "reduced":
        x = next((x for x in sorted(R.nilpotents) if x != R.zero), None)
        if x is not None:
            k = nilpotency_index(R, x)
            witness = ClassicalWitness(prop, {"x": x, "index": k}, detail=f"{R.label(x)} is nonzero with {R.label(x)}^{k} = 0")

    elif prop == "central_reduced":
        for x in sorted(R.nilpotents):
            r = _noncommuting_partner(R, x)
            if r is not None:
                witness = ClassicalWitness(
                    prop, {"x": x, "partner": r}, detail=f"nilpotent {R.label(x)} does not commute with {R.label(r)}"
                )
                break

    elif prop == "abelian":
        for f in sorted(R.idempotents):
            r = _noncommuting_partner(R, f)
            if r is not None:
                witness = ClassicalWitness(
                    prop, {"f": f, "partner": r}, detail=f"idempotent {R.label(f)} does not commute with {R.label(r)}"
                )
                break

    elif prop == "two_primal":
        prime = R.jacobson_radical
        nil = R.nilpotents
        notes.append("prime radical computed as the Jacobson radical (finite ring)")
        diff = sorted(prime ^ nil)
        if diff:
            x = diff[0]
            witness = ClassicalWitness(
                prop,
                {"x": x},
                sets={"prime_radical": sorted(prime), "nilpotents": sorted(nil)},
                detail=f"{R.label(x)} is nilpotent but outside the prime radical",
            )

    elif prop in ("right_pp", "baer"):
        if R.one is None:
            raise IdentityRequired(f"{prop} needs a multiplicative identity; {R.name} is a rng")
        generated = {principal_right_ideal(R, e): e for e in sorted(R.idempotents, reverse=True)}
        if prop == "right_pp":
            for a in range(R.size):
                ann = right_annihilator(R, [a])
                if ann not in generated:
                    witness = ClassicalWitness(
                        prop,
                        {"a": a},
                        sets={"annihilator": sorted(ann)},
                        detail=f"r({R.label(a)}) has {len(ann)} elements and is not eR for any idempotent e",
                    )
                    break
        else:
            lattice = annihilator_lattice(R)
            for ann in sorted(lattice, key=lambda s: (len(s), sorted(s))):
                if ann not in generated:
                    gens = lattice[ann]
                    witness = ClassicalWitness(
                        prop,
                        {},
                        sets={"subset": list(gens), "annihilator": sorted(ann)},
                        detail=f"r({{{', '.join(R.label(g) for g in gens)}}}) is not eR for any idempotent e",
                    )
                    break
            notes.append(f"annihilator lattice has {len(lattice)} members")

    if witness is not None:
        witness.ring = ring_ref(R)
    status = Status.FAILS if witness is not None else Status.HOLDS
    return Verdict(prop=prop, ring=R.name, status=status, witness=witness, notes=notes, bound={"exhaustive": True})


def recheck_classical(ring: FiniteRing, w: ClassicalWitness) -> bool:
    """Re-derive a classical failure from the witness alone."""
    R, e, mul = ring, w.elements, ring.mul
    if w.prop == "commutative":
        return mul[e["x"]][e["y"]] != mul[e["y"]][e["x"]]
    if w.prop == "reduced":
        return e["x"] != R.zero and R.power(e["x"], e["index"]) == R.zero
    if w.prop == "central_reduced":
        x, r = e["x"], e["partner"]
        return R.power(x, R.size) == R.zero and mul[x][r] != mul[r][x]
    if w.prop == "abelian":
        f, r = e["f"], e["partner"]
        return mul[f][f] == f and mul[f][r] != mul[r][f]
    if w.prop == "two_primal":
        return radical_by_nilpotent_ideals(R) != R.nilpotents
    if w.prop in ("right_pp", "baer"):
        subset = [e["a"]] if w.prop == "right_pp" else w.sets["subset"]
        ann = right_annihilator(R, subset)
        return all(principal_right_ideal(R, f) != ann for f in range(R.size) if mul[f][f] == f)
    return False


# --------------------------------------------------------------------------
# Armendariz-type checks
# --------------------------------------------------------------------------


def count_sparse(size: int, length: int, max_nonzero: Optional[int]) -> int:
    m = length if max_nonzero is None else min(max_nonzero, length)
    return sum(comb(length, r) * (size - 1) ** r for r in range(m + 1))


def sparse_vectors(size: int, length: int, max_nonzero: Optional[int], zero: int, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    """Vectors in range(size)^length with at most max_nonzero entries != zero, lex order."""
    used = sum(1 for v in prefix if v != zero)
    budget = length if max_nonzero is None else max_nonzero
    if used > budget:
        return
    if budget - used >= length - len(prefix):
        for tail in itertools.product(range(size), repeat=length - len(prefix)):
            yield prefix + tail
        return
    cur = list(prefix)

    def rec(pos: int, left: int) -> Iterator[tuple[int, ...]]:
        if pos == length:
            yield tuple(cur)
            return
        for v in range(size):
            if v == zero:
                cur.append(v)
                yield from rec(pos + 1, left)
                cur.pop()
            elif left > 0:
                cur.append(v)
                yield from rec(pos + 1, left - 1)
                cur.pop()

    yield from rec(len(prefix), budget - used)


class _Problem:
    """The (alpha, beta) search space for one ring, monoid, kind and bound."""

    def __init__(self, ring: FiniteRing, monoid: Monoid, kind: Kind, positions: Sequence[int], m: Optional[int], n: Optional[int]):
        self.ring = ring
        self.monoid = monoid
        self.kind = kind
        self.P = tuple(positions)
        self.k = len(self.P)
        self.m = m
        self.n = n
        op = monoid.op
        self.W = sorted({op(p, q) for p in self.P for q in self.P})
        widx = {w: i for i, w in enumerate(self.W)}
        self.prod_index = [[widx[op(p, q)] for q in self.P] for p in self.P]
        if kind is Kind.PLAIN:
            self.good = frozenset({ring.zero})
        elif kind is Kind.CENTRAL:
            self.good = ring.center
        else:
            self.good = ring.nilpotents
        self.nil = ring.nilpotents
        self.nil_subgroup = kind is Kind.NIL and ring.nil_is_additive
        if n is None or n >= self.k:
            self.beta_supports = [tuple(range(self.k))]
        else:
            self.beta_supports = list(itertools.combinations(range(self.k), n))

    def image_ok(self, img: Sequence[int]) -> bool:
        if self.kind is Kind.NIL:
            return all(c in self.nil for c in img)
        z = self.ring.zero
        return all(c == z for c in img)

    def product_image(self, alpha: Sequence[int], beta: Sequence[int]) -> list[int]:
        R = self.ring
        img = [R.zero] * len(self.W)
        for pi, a in enumerate(alpha):
            if a == R.zero:
                continue
            row = R.mul[a]
            for qi, b in enumerate(beta):
                if b == R.zero:
                    continue
                w = self.prod_index[pi][qi]
                img[w] = R.add[img[w]][row[b]]
        return img

    def bad_set(self, alpha: Sequence[int]) -> frozenset[int]:
        R = self.ring
        good = self.good
        nz = [a for a in alpha if a != R.zero]
        return frozenset(b for b in range(R.size) if any(R.mul[a][b] not in good for a in nz))

    def kernel(self, alpha: Sequence[int], support: Sequence[int]) -> Echelon:
        """beta restricted to ``support`` with alpha*beta = 0 (or in Nil(R)[M])."""
        R = self.ring
        w = len(self.W)
        t = len(support)
        ech = Echelon(R, w + t)
        nz = [(pi, a) for pi, a in enumerate(alpha) if a != R.zero]
        for si, q in enumerate(support):
            for b in R.additive_generators:
                img = [R.zero] * w
                for pi, a in nz:
                    wi = self.prod_index[pi][q]
                    img[wi] = R.add[img[wi]][R.mul[a][b]]
                beta = [R.zero] * t
                beta[si] = b
                ech.insert(tuple(img) + tuple(beta))
        if self.kind is Kind.NIL:
            nil_gens = _generators_of(R, self.nil)
            for wi in range(w):
                for g in nil_gens:
                    vec = [R.zero] * (w + t)
                    vec[wi] = g
                    ech.insert(tuple(vec))
        return ech.tail(w)

    def _expand(self, support: Sequence[int], vec: Sequence[int]) -> tuple[int, ...]:
        full = [self.ring.zero] * self.k
        for si, q in enumerate(support):
            full[q] = vec[si]
        return tuple(full)

    def first_beta(self, alpha: Sequence[int], bad: frozenset[int]) -> Optional[tuple[int, ...]]:
        """Lex-first beta in the domain with alpha*beta in the target and some coefficient in ``bad``."""
        if self.kind is Kind.NIL and not self.nil_subgroup:
            for beta in sparse_vectors(self.ring.size, self.k, self.n, self.ring.zero):
                if any(b in bad for b in beta) and self.image_ok(self.product_image(alpha, beta)):
                    return beta
            return None
        best = None
        for support in self.beta_supports:
            hit = self.kernel(alpha, support).first_hitting(bad)
            if hit is not None:
                full = self._expand(support, hit)
                if best is None or full < best:
                    best = full
        return best

    def witness_for(self, alpha: tuple[int, ...]) -> Optional[tuple[tuple[int, ...], int, int]]:
        R = self.ring
        if all(a == R.zero for a in alpha):
            return None
        bad = self.bad_set(alpha)
        if not bad:
            return None
        beta = self.first_beta(alpha, bad)
        if beta is None:
            return None
        a_terms = [a for a in alpha if a != R.zero]
        b_terms = [b for b in beta if b != R.zero]
        for i, a in enumerate(a_terms):
            for j, b in enumerate(b_terms):
                if R.mul[a][b] not in self.good:
                    return beta, i, j
        raise AssertionError("beta was selected for a violating coefficient")  # pragma: no cover

    def make_witness(self, alpha: tuple[int, ...], beta: tuple[int, ...], i: int, j: int) -> Witness:
        R, M = self.ring, self.monoid
        A = MonoidRingElement.from_coefficients(R, M, self.P, alpha)
        B = MonoidRingElement.from_coefficients(R, M, self.P, beta)
        prod = R.mul[A.terms[i][1]][B.terms[j][1]]
        partner = _noncommuting_partner(R, prod) if self.kind is Kind.CENTRAL else None
        return Witness(self.kind, A, B, i, j, prod, partner)

    def scan(self, prefix: tuple[int, ...] = (), limit: Optional[int] = None) -> tuple[int, Optional[tuple]]:
        """Walk alphas (with the given prefix) in lex order; returns (alphas visited, first hit)."""
        count = 0
        for alpha in sparse_vectors(self.ring.size, self.k, self.m, self.ring.zero, prefix):
            if limit is not None and count >= limit:
                return count, None
            count += 1
            hit = self.witness_for(alpha)
            if hit is not None:
                return count, (alpha,) + hit
        return count, None


def _generators_of(ring: FiniteRing, subgroup: frozenset[int]) -> list[int]:
    gens: list[int] = []
    span = frozenset({ring.zero})
    for x in sorted(subgroup):
        if x not in span:
            gens.append(x)
            span = additive_closure(ring, list(span) + [x])
    return gens


def _scan_chunk(args) -> tuple[int, Optional[tuple]]:
    ring, monoid, kind, positions, m, n, prefix = args
    return _Problem(ring, monoid, kind, positions, m, n).scan(prefix)


def check_armendariz(
    ring: FiniteRing,
    monoid: Monoid,
    kind: Union[Kind, str] = Kind.CENTRAL,
    bounds: Optional[Bounds] = None,
    workers: int = 1,
    shortcuts: bool = True,
) -> Verdict:
    """Search for alpha, beta with alpha*beta = 0 (or in Nil(R)[M] for ``nil``)
    and a coefficient product outside {0}, C(R) or Nil(R) respectively.

    The first witness in lexicographic order of (alpha, beta, i, j) is
    returned, independent of ``workers``.
    """
    kind = Kind(kind)
    if bounds is None:
        bounds = Bounds() if monoid.finite else Bounds.nat_default()
    positions = bounds.positions_for(monoid)
    k = len(positions)
    m, n = bounds.alpha_terms, bounds.beta_terms
    exhaustive = (
        monoid.finite
        and k == monoid.size
        and (m is None or m >= k)
        and (n is None or n >= k)
    )
    domain = count_sparse(ring.size, k, m)
    bound = {
        "monoid": monoid.name,
        "positions": [monoid.label(p) for p in positions],
        "alpha_max_terms": m,
        "beta_max_terms": n,
        "exhaustive": exhaustive,
    }
    if not monoid.finite:
        bound["degree"] = max(positions) if positions else 0
    prop = f"{kind.value}_armendariz"
    verdict = Verdict(prop=prop, ring=ring.name, monoid=monoid.name, status=Status.HOLDS, bound=bound)
    verdict.stats["alpha_domain"] = domain
    decided = Status.HOLDS if exhaustive else Status.HOLDS_UP_TO_BOUND

    if shortcuts and kind is Kind.CENTRAL and ring.is_commutative:
        verdict.status = decided
        verdict.notes.append("decided without enumeration: ring is commutative, so every product is central")
        verdict.stats["alphas_scanned"] = 0
        return verdict

    problem = _Problem(ring, monoid, kind, positions, m, n)
    limit = bounds.max_alphas
    if workers > 1 and domain >= PARALLEL_THRESHOLD and domain <= limit and k > 0:
        from .parallel import ordered_map

        chunks = [(ring, monoid, kind, positions, m, n, (v,)) for v in range(ring.size)]
        scanned, hit = 0, None
        for count, chunk_hit in ordered_map(_scan_chunk, chunks, workers):
            scanned += count
            if chunk_hit is not None:
                hit = chunk_hit
                break
    else:
        scanned, hit = problem.scan(limit=limit)

    verdict.stats["alphas_scanned"] = scanned
    if hit is not None:
        alpha, beta, i, j = hit
        verdict.status = Status.FAILS
        verdict.witness = problem.make_witness(alpha, beta, i, j)
    elif scanned < domain:
        verdict.status = Status.BUDGET_EXHAUSTED
        verdict.notes.append(f"stopped after {scanned} of {domain} alphas")
    else:
        verdict.status = decided
    return verdict


def check_armendariz_naive(
    ring: FiniteRing, monoid: Monoid, kind: Union[Kind, str] = Kind.CENTRAL, bounds: Optional[Bounds] = None
) -> Optional[tuple[tuple[int, ...], tuple[int, ...], int, int]]:
    """Double loop over (alpha, beta); returns the lex-first raw witness or None."""
    kind = Kind(kind)
    if bounds is None:
        bounds = Bounds() if monoid.finite else Bounds.nat_default()
    positions = bounds.positions_for(monoid)
    pb = _Problem(ring, monoid, kind, positions, bounds.alpha_terms, bounds.beta_terms)
    R = ring
    betas = list(sparse_vectors(R.size, pb.k, pb.n, R.zero))
    for alpha in sparse_vectors(R.size, pb.k, pb.m, R.zero):
        for beta in betas:
            if not pb.image_ok(pb.product_image(alpha, beta)):
                continue
            a_terms = [a for a in alpha if a != R.zero]
            b_terms = [b for b in beta if b != R.zero]
            for i, a in enumerate(a_terms):
                for j, b in enumerate(b_terms):
                    if R.mul[a][b] not in pb.good:
                        return alpha, beta, i, j
    return None


def zero_product_pairs(ring: FiniteRing, monoid: Monoid, positions: Optional[Sequence[int]] = None) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (alpha, beta) over the positions with alpha*beta = 0, lex order, via the kernel echelon."""
    pos = tuple(positions) if positions is not None else Bounds().positions_for(monoid)
    pb = _Problem(ring, monoid, Kind.PLAIN, pos, None, None)
    full = tuple(range(pb.k))
    for alpha in itertools.product(range(ring.size), repeat=pb.k):
        for beta in pb.kernel(alpha, full).iter_lex():
            yield alpha, beta


def zero_product_pairs_naive(ring: FiniteRing, monoid: Monoid, positions: Optional[Sequence[int]] = None) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    pos = tuple(positions) if positions is not None else Bounds().positions_for(monoid)
    pb = _Problem(ring, monoid, Kind.PLAIN, pos, None, None)
    betas = list(itertools.product(range(ring.size), repeat=pb.k))
    for alpha in itertools.product(range(ring.size), repeat=pb.k):
        for beta in betas:
            if pb.image_ok(pb.product_image(alpha, beta)):
                yield alpha, beta


def recheck_witness(w: Witness) -> bool:
    """Independent replay: multiply in R[M] and test the offending product directly."""
    R = w.alpha.ring
    prod = w.alpha * w.beta
    if w.kind is Kind.NIL:
        if not all(R.power(c, R.size + 1) == R.zero for c in prod.coefficients):
            return False
    elif not prod.is_zero():
        return False
    p = R.mul[w.alpha.terms[w.i][1]][w.beta.terms[w.j][1]]
    if p != w.product:
        return False
    if w.kind is Kind.PLAIN:
        return p != R.zero
    if w.kind is Kind.CENTRAL:
        r = w.partner
        return r is not None and R.mul[p][r] != R.mul[r][p]
    return R.power(p, R.size + 1) != R.zero
