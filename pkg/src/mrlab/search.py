"""Counterexample search: evaluate a property expression over generated rings.

Target expressions combine ring properties with ``not``/``and``/``or``
(also written ``¬ ! ~``, ``∧ &``, ``∨ |``).  Atoms are the classical
properties (``abelian``, ``right_pp`` ...) or Armendariz checks such as
``central_armendariz(NatAdd, d=1)`` or ``plain_armendariz(cyclic(2))``.
An Armendariz atom without a monoid argument is evaluated against each
monoid of the monoid family in turn.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .catalog import Catalog, default_catalog
from .errors import AlgebraError, BudgetExceeded, IdentityRequired
from .monoids import Cyclic, Monoid, NatAddSpec, NullAdjoined, construct_monoid
from .properties import CLASSICAL, Bounds, Kind, Status, Verdict, check_armendariz, check_classical
from .replay import ring_ref
from .rings import (
    FiniteRing,
    Matrix,
    Product,
    Quaternion,
    RingSpec,
    Subring,
    UpperTriangular,
    Zn,
    _multiplicative_additive_closure,
    construct_ring,
    substructure,
)

ARMENDARIZ_ATOMS = {"plain_armendariz": Kind.PLAIN, "central_armendariz": Kind.CENTRAL, "nil_armendariz": Kind.NIL}
DEFAULT_MAX_STRUCTURES = 10_000


class ExpressionError(AlgebraError):
    pass


# --------------------------------------------------------------------------
# tokens
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()=,{}¬!~∧&∨|]))")
_ALIASES = {"¬": "not", "!": "not", "~": "not", "∧": "and", "&": "and", "∨": "or", "|": "or"}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        if m.group("num"):
            out.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            word = m.group("name")
            kind = "op" if word in ("not", "and", "or") else "name"
            out.append((kind, word, m.start("name")))
        else:
            op = m.group("op")
            out.append(("op", _ALIASES.get(op, op), m.start("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, value: Optional[str] = None) -> bool:
        if self.i >= len(self.toks):
            return False
        return value is None or self.toks[self.i][1] == value

    def take(self, value: Optional[str] = None) -> tuple[str, str, int]:
        if self.i >= len(self.toks):
            raise ExpressionError(f"unexpected end of {self.text!r}" + (f", expected {value!r}" if value else ""))
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ExpressionError(f"expected {value!r} at column {tok[2] + 1}, found {tok[1]!r}")
        self.i += 1
        return tok

    def done(self) -> None:
        if self.i < len(self.toks):
            tok = self.toks[self.i]
            raise ExpressionError(f"unexpected {tok[1]!r} at column {tok[2] + 1}")

    # generic call terms: name | num | name(term, ..., key=term)
    def term(self):
        kind, value, col = self.take()
        if kind == "num":
            return int(value)
        if kind != "name":
            raise ExpressionError(f"expected a name at column {col + 1}, found {value!r}")
        if not self.peek("("):
            return value
        self.take("(")
        args: list = []
        kwargs: dict = {}
        while not self.peek(")"):
            if self.i + 1 < len(self.toks) and self.toks[self.i][0] == "name" and self.toks[self.i + 1][1] == "=":
                key = self.take()[1]
                self.take("=")
                kwargs[key] = self.term()
            else:
                args.append(self.term())
            if not self.peek(")"):
                self.take(",")
        self.take(")")
        return (value, tuple(args), tuple(sorted(kwargs.items())))


# --------------------------------------------------------------------------
# target expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str
    monoid: Optional[object] = None
    degree: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None

    def text(self, monoid_name: Optional[str] = None) -> str:
        if self.name not in ARMENDARIZ_ATOMS:
            return self.name
        parts = [monoid_name or _term_text(self.monoid) or "M"]
        for key in ("degree", "m", "n"):
            v = getattr(self, key)
            if v is not None:
                parts.append(f"{'d' if key == 'degree' else key}={v}")
        return f"{self.name}({', '.join(parts)})"


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr = Union[Atom, Not, And, Or]


def _term_text(t) -> Optional[str]:
    if t is None:
        return None
    if isinstance(t, (str, int)):
        return str(t)
    name, args, kwargs = t
    inner = [_term_text(a) for a in args] + [f"{k}={_term_text(v)}" for k, v in kwargs]
    return f"{name}({', '.join(inner)})"


def parse_target(text: str) -> Expr:
    p = _Parser(text)

    def disj() -> Expr:
        e = conj()
        while p.peek("or"):
            p.take()
            e = Or(e, conj())
        return e

    def conj() -> Expr:
        e = unary()
        while p.peek("and"):
            p.take()
            e = And(e, unary())
        return e

    def unary() -> Expr:
        if p.peek("not"):
            p.take()
            return Not(unary())
        if p.peek("("):
            p.take("(")
            e = disj()
            p.take(")")
            return e
        t = p.term()
        if isinstance(t, str):
            if t in CLASSICAL:
                return Atom(t)
            if t in ARMENDARIZ_ATOMS:
                return Atom(t)
            raise ExpressionError(f"unknown property {t!r}")
        if isinstance(t, int):
            raise ExpressionError("a number is not a property")
        name, args, kw = t
        kwargs = dict(kw)
        if name not in ARMENDARIZ_ATOMS:
            raise ExpressionError(f"{name!r} takes no arguments or is unknown")
        if len(args) > 1:
            raise ExpressionError(f"{name} takes at most one monoid argument")
        unknown = set(kwargs) - {"d", "m", "n"}
        if unknown:
            raise ExpressionError(f"unknown argument(s) {sorted(unknown)} to {name}")
        for k, v in kwargs.items():
            if not isinstance(v, int) or v < 0:
                raise ExpressionError(f"{k} must be a nonnegative integer")
        return Atom(name, args[0] if args else None, kwargs.get("d"), kwargs.get("m"), kwargs.get("n"))

    if not p.toks:
        raise ExpressionError("empty target expression")
    e = disj()
    p.done()
    return e


def atoms_of(e: Expr) -> list[Atom]:
    if isinstance(e, Atom):
        return [e]
    if isinstance(e, Not):
        return atoms_of(e.arg)
    return atoms_of(e.left) + atoms_of(e.right)


def evaluate(e: Expr, values: dict[Atom, Optional[bool]]) -> Optional[bool]:
    """Three-valued (Kleene) evaluation; None means undecided within budget."""
    if isinstance(e, Atom):
        return values[e]
    if isinstance(e, Not):
        v = evaluate(e.arg, values)
        return None if v is None else not v
    lv, rv = evaluate(e.left, values), evaluate(e.right, values)
    if isinstance(e, And):
        if lv is False or rv is False:
            return False
        return None if lv is None or rv is None else True
    if lv is True or rv is True:
        return True
    return None if lv is None or rv is None else False


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------


def resolve_monoid(term, catalog: Catalog) -> Monoid:
    if isinstance(term, str):
        if term.lower() in ("nat_add", "natadd", "nat"):
            return catalog.monoid("NatAdd")
        return catalog.monoid(term)
    if isinstance(term, tuple):
        name, args, _ = term
        if name == "cyclic" and len(args) == 1 and isinstance(args[0], int):
            return construct_monoid(Cyclic(args[0]))
        if name == "null_adjoined" and len(args) == 1 and isinstance(args[0], int):
            return construct_monoid(NullAdjoined(args[0]))
        if name == "nat_add" and not args:
            return construct_monoid(NatAddSpec())
    raise ExpressionError(f"cannot read {_term_text(term)!r} as a monoid")


def _ring_spec(term, catalog: Catalog) -> Union[RingSpec, FiniteRing]:
    if isinstance(term, str):
        if term in catalog.rings:
            return catalog.rings[term]
        m = re.fullmatch(r"Z(\d+)", term)
        if m:
            return Zn(int(m.group(1)))
        m = re.fullmatch(r"([MT])(\d+)_Z(\d+)", term)
        if m:
            base = Zn(int(m.group(3)))
            return (Matrix if m.group(1) == "M" else UpperTriangular)(base, int(m.group(2)))
        raise ExpressionError(f"unknown ring {term!r}")
    if isinstance(term, tuple):
        name, args, _ = term

        def spec_of(t) -> RingSpec:
            s = _ring_spec(t, catalog)
            if isinstance(s, FiniteRing):
                if s.spec is None:
                    raise ExpressionError(f"{s.name} cannot be used inside a constructor")
                return s.spec
            return s

        if name == "zn" and len(args) == 1:
            return Zn(int(args[0]))
        if name in ("matrix", "upper_triangular") and len(args) == 2:
            cls = Matrix if name == "matrix" else UpperTriangular
            return cls(spec_of(args[0]), int(args[1]))
        if name == "quaternion" and len(args) == 1:
            return Quaternion(spec_of(args[0]))
        if name == "product" and len(args) == 2:
            return Product(spec_of(args[0]), spec_of(args[1]))
    raise ExpressionError(f"cannot read {_term_text(term)!r} as a ring")


def _build(term, catalog: Catalog) -> FiniteRing:
    s = _ring_spec(term, catalog)
    if isinstance(s, FiniteRing):
        return s
    return construct_ring(s).renamed(_term_text(term) or "R")


def subring_family(parent: FiniteRing, k: int = 1) -> Iterator[FiniteRing]:
    """Unital subrings generated by k-element subsets, first occurrence order, deduplicated."""
    seen: set[frozenset[int]] = set()
    for gens in itertools.combinations(range(parent.size), k):
        seeds = set(gens)
        if parent.one is not None:
            seeds.add(parent.one)
        elems = frozenset(_multiplicative_additive_closure(parent, seeds))
        if elems in seen:
            continue
        seen.add(elems)
        name = f"sub({parent.name}; {', '.join(parent.label(g) for g in gens)})"
        spec = Subring(parent.spec, tuple(gens)) if parent.spec is not None else None
        yield substructure(parent, elems, name=name, spec=spec)


def ring_family(text: str, catalog: Catalog) -> Iterator[FiniteRing]:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    if text in ("catalog", "all"):
        yield from catalog.rings.values()
        return
    p = _Parser(text)
    terms = []
    while p.peek():
        terms.append(p.term())
        if p.peek():
            p.take(",")
    for t in terms:
        if isinstance(t, tuple) and t[0] == "subrings":
            _, args, kw = t
            kwargs = dict(kw)
            if not args:
                raise ExpressionError("subrings needs a parent ring")
            k = int(args[1]) if len(args) > 1 else int(kwargs.get("k", 1))
            yield from subring_family(_build(args[0], catalog), k)
        else:
            yield _build(t, catalog)


# --------------------------------------------------------------------------
# search
# --------------------------------------------------------------------------


@dataclass
class Finding:
    ring: FiniteRing
    monoid: Optional[str]
    atoms: dict[str, dict]

    def to_dict(self) -> dict:
        return {"type": "finding", "ring": ring_ref(self.ring), "monoid": self.monoid, "atoms": self.atoms}

    def render(self) -> str:
        parts = []
        for text, info in self.atoms.items():
            line = f"  {text} = {info['value']}"
            w = info.get("witness_text")
            if w:
                line += f"  [{w}]"
            parts.append(line)
        head = self.ring.name + (f" with M = {self.monoid}" if self.monoid else "")
        return "\n".join([head] + parts)


@dataclass
class SearchResult:
    target: str
    family: str
    monoids: list[str]
    findings: list[Finding] = field(default_factory=list)
    examined: int = 0
    partial: bool = False
    undecided: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "type": "search_result",
            "target": self.target,
            "family": self.family,
            "monoids": self.monoids,
            "examined": self.examined,
            "partial": self.partial,
            "findings": [f.to_dict() for f in self.findings],
            "undecided": self.undecided,
            "notes": self.notes,
        }


def _atom_bounds(atom: Atom, monoid: Monoid, max_alphas: int) -> Bounds:
    if monoid.finite:
        return Bounds(alpha_terms=atom.m, beta_terms=atom.n, max_alphas=max_alphas)
    d = atom.degree if atom.degree is not None else 1
    return Bounds(degree=d, alpha_terms=atom.m, beta_terms=atom.n, max_alphas=max_alphas)


def _decide(atom: Atom, ring: FiniteRing, monoid: Optional[Monoid], max_alphas: int, workers: int) -> tuple[Optional[bool], Verdict]:
    if atom.name in CLASSICAL:
        v = check_classical(ring, atom.name)
    else:
        assert monoid is not None
        v = check_armendariz(ring, monoid, ARMENDARIZ_ATOMS[atom.name], _atom_bounds(atom, monoid, max_alphas), workers=workers)
    if v.status is Status.BUDGET_EXHAUSTED:
        return None, v
    return v.holds, v


def counterexample_search(
    target: str,
    family: str = "catalog",
    monoids: Optional[list[str]] = None,
    catalog: Optional[Catalog] = None,
    max_structures: int = DEFAULT_MAX_STRUCTURES,
    max_alphas: int = 200_000,
    workers: int = 1,
) -> SearchResult:
    cat = catalog or default_catalog()
    expr = parse_target(target)
    atoms = list(dict.fromkeys(atoms_of(expr)))
    needs_family = any(a.name in ARMENDARIZ_ATOMS and a.monoid is None for a in atoms)
    monoid_names = list(monoids) if monoids else ["C2"]
    family_monoids: list[Optional[Monoid]] = [cat.monoid(n) for n in monoid_names] if needs_family else [None]
    fixed = {a: resolve_monoid(a.monoid, cat) for a in atoms if a.monoid is not None}
    result = SearchResult(target, family, monoid_names if needs_family else [])

    gen = ring_family(family, cat)
    while True:
        if result.examined >= max_structures:
            if next(gen, None) is not None:
                result.partial = True
                result.notes.append(f"stopped after {max_structures} structures")
            break
        try:
            ring = next(gen)
        except StopIteration:
            break
        except (BudgetExceeded, AlgebraError) as exc:
            result.partial = True
            result.notes.append(f"family generator stopped: {exc}")
            break
        result.examined += 1
        for fm in family_monoids:
            values: dict[Atom, Optional[bool]] = {}
            info: dict[str, dict] = {}
            for a in atoms:
                monoid = fixed.get(a, fm)
                text = a.text(monoid.name if monoid is not None and a.name in ARMENDARIZ_ATOMS else None)
                try:
                    val, v = _decide(a, ring, monoid, max_alphas, workers)
                except IdentityRequired as exc:
                    val, v = None, None
                    info[text] = {"value": None, "error": str(exc)}
                else:
                    entry = {"value": val, "verdict": v.to_dict()}
                    if v.witness is not None:
                        entry["witness_text"] = v.witness.render()
                    info[text] = entry
                values[a] = val
            outcome = evaluate(expr, values)
            if outcome is True:
                result.findings.append(Finding(ring, fm.name if fm is not None else None, info))
            elif outcome is None:
                result.partial = True
                result.undecided.append({"ring": ring.name, "monoid": fm.name if fm is not None else None})
    return result
