"""Reader for the structure-definition file format.

The format is a small key/value language; see docs/config.md for the
grammar.  Example::

    ring "R6" { zn = 6 }
    ring "T"  { upper_triangular = { base = "Z3", k = 2 } }
    monoid "G2" { cyclic = 2 }
    budget { degree = 2, support = [2, 2], workers = 2 }
    output { format = "json" }
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, Optional

from .catalog import Catalog, default_catalog
from .errors import AlgebraError, AxiomError, SizeCapError
from .monoids import (
    Cyclic,
    Monoid,
    MonoidTable,
    NamedMonoid,
    NatAddSpec,
    NullAdjoined,
    construct_monoid,
)
from .rings import (
    PREDICATES,
    RING_SIZE_CAP,
    Corner,
    FiniteRing,
    Matrix,
    Named,
    Product,
    Quaternion,
    Quotient,
    RingSpec,
    Subring,
    Tables,
    UpperTriangular,
    Zn,
    construct_ring,
)


class ConfigError(AlgebraError):
    def __init__(self, message: str, line: int = 0, col: int = 0, key: Optional[str] = None):
        self.message = message
        self.line = line
        self.col = col
        self.key = key
        where = f"line {line}, column {col}" if line else "config"
        super().__init__(f"{where}: {message}" + (f" (key {key!r})" if key else ""))


@dataclass
class Node:
    value: Any
    line: int
    col: int


# --------------------------------------------------------------------------
# lexer and parser
# --------------------------------------------------------------------------

_PUNCT = set("{}[]=,")


def _lex(text: str) -> list[tuple[str, Any, int, int]]:
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            toks.append(("nl", None, line, col))
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i, col = i + 1, col + 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = (line, col)
        if c in _PUNCT:
            toks.append(("punct", c, *start))
            i, col = i + 1, col + 1
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ConfigError("unterminated string", *start)
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= n:
                raise ConfigError("unterminated string", *start)
            toks.append(("str", "".join(buf), *start))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), *start))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in ("true", "false"):
                toks.append(("bool", word == "true", *start))
            else:
                toks.append(("ident", word, *start))
            col += j - i
            i = j
            continue
        raise ConfigError(f"unexpected character {c!r}", *start)
    toks.append(("eof", None, line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    def peek(self, skip_nl: bool = True):
        if skip_nl:
            while self.toks[self.i][0] == "nl":
                self.i += 1
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None, value: Any = None):
        tok = self.peek()
        if (kind is not None and tok[0] != kind) or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ConfigError(f"expected {want}, found {found}", tok[2], tok[3])
        self.i += 1
        return tok

    def statements(self) -> list[tuple[str, Optional[Node], Node, int, int]]:
        out = []
        while self.peek()[0] != "eof":
            kw = self.take("ident")
            name = None
            if kw[1] in ("ring", "monoid"):
                s = self.take("str")
                name = Node(s[1], s[2], s[3])
            elif kw[1] not in ("budget", "output"):
                raise ConfigError(f"unknown statement {kw[1]!r}; expected ring, monoid, budget or output", kw[2], kw[3])
            body = self.table()
            out.append((kw[1], name, body, kw[2], kw[3]))
        return out

    def table(self) -> Node:
        open_ = self.take("punct", "{")
        items: dict[str, tuple[Node, Node]] = {}
        while True:
            tok = self.peek()
            if tok[0] == "punct" and tok[1] == "}":
                self.i += 1
                break
            if tok[0] == "punct" and tok[1] == ",":
                self.i += 1
                continue
            key = self.take("ident")
            if key[1] in items:
                raise ConfigError("duplicate key", key[2], key[3], key[1])
            self.take("punct", "=")
            items[key[1]] = (Node(key[1], key[2], key[3]), self.value())
        return Node(items, open_[2], open_[3])

    def value(self) -> Node:
        tok = self.peek()
        if tok[0] in ("int", "str", "bool"):
            self.i += 1
            return Node(tok[1], tok[2], tok[3])
        if tok[0] == "punct" and tok[1] == "{":
            return self.table()
        if tok[0] == "punct" and tok[1] == "[":
            self.i += 1
            items = []
            while True:
                t = self.peek()
                if t[0] == "punct" and t[1] == "]":
                    self.i += 1
                    break
                if t[0] == "punct" and t[1] == "," and items:
                    self.i += 1
                    continue
                items.append(self.value())
            return Node(items, tok[2], tok[3])
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ConfigError(f"expected a value, found {found}", tok[2], tok[3])


# --------------------------------------------------------------------------
# validated configuration
# --------------------------------------------------------------------------


@dataclass
class Budget:
    degree: Optional[int] = None
    support: Optional[tuple[int, int]] = None
    workers: int = 1
    ring_cap: int = RING_SIZE_CAP
    max_alphas: int = 2_000_000

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "support": list(self.support) if self.support else None,
            "ring_cap": self.ring_cap,
            "max_alphas": self.max_alphas,
        }


@dataclass
class Output:
    format: str = "text"
    path: Optional[str] = None


@dataclass
class Config:
    rings: dict[str, FiniteRing] = field(default_factory=dict)
    monoids: dict[str, Monoid] = field(default_factory=dict)
    budget: Budget = field(default_factory=Budget)
    output: Output = field(default_factory=Output)
    source_digest: Optional[str] = None

    def catalog(self, base: Optional[Catalog] = None) -> Catalog:
        return (base or default_catalog()).extended(self.rings, self.monoids)


def _expect(node: Node, typ, what: str, key: str):
    if typ is int and isinstance(node.value, bool):
        raise ConfigError(f"{what} must be an integer", node.line, node.col, key)
    if not isinstance(node.value, typ):
        raise ConfigError(f"{what} must be {_TYPE_NAMES.get(typ, typ.__name__)}", node.line, node.col, key)
    return node.value


_TYPE_NAMES = {int: "an integer", str: "a string", bool: "true or false", list: "an array", dict: "a table"}


def _positive(node: Node, key: str, allow_zero: bool = False) -> int:
    v = _expect(node, int, key, key)
    if v < 0 or (v == 0 and not allow_zero):
        raise ConfigError(f"{key} must be {'nonnegative' if allow_zero else 'positive'}", node.line, node.col, key)
    return v


def _only_keys(table: Node, allowed: set[str], required: set[str] = frozenset(), where: str = "") -> dict[str, Node]:
    items = table.value
    for k, (kn, _) in items.items():
        if k not in allowed:
            raise ConfigError(f"unknown key{where}; expected one of {sorted(allowed)}", kn.line, kn.col, k)
    for k in sorted(required):
        if k not in items:
            raise ConfigError(f"missing required key {k!r}{where}", table.line, table.col, k)
    return {k: v for k, (_, v) in items.items()}


RING_CONSTRUCTORS = ("zn", "product", "matrix", "upper_triangular", "quaternion", "subring", "quotient", "corner", "tables")
MONOID_CONSTRUCTORS = ("cyclic", "null_adjoined", "table", "nat_add")


class _Builder:
    def __init__(self, catalog: Catalog, cap: int):
        self.catalog = catalog
        self.cap = cap
        self.rings: dict[str, FiniteRing] = {}
        self.monoids: dict[str, Monoid] = {}
        self.cache: dict = {}

    def build(self, spec: RingSpec, node: Node) -> FiniteRing:
        try:
            return construct_ring(spec, cap=self.cap, _cache=self.cache)
        except AxiomError as exc:
            name = spec.name if isinstance(spec, Named) else "ring"
            raise ConfigError(f"axiom failure in {name}: {exc.axiom} fails at {exc.triple}", node.line, node.col) from None
        except SizeCapError as exc:
            raise ConfigError(str(exc), node.line, node.col) from None
        except (AlgebraError, ValueError) as exc:
            raise ConfigError(str(exc), node.line, node.col) from None

    def ring_ref(self, node: Node, key: str) -> tuple[RingSpec, FiniteRing]:
        if isinstance(node.value, str):
            name = node.value
            ring = self.rings.get(name) or self.catalog.rings.get(name)
            if ring is None:
                raise ConfigError(f"unknown ring {name!r}", node.line, node.col, key)
            if ring.spec is None:
                raise ConfigError(f"ring {name!r} has no spec to build on", node.line, node.col, key)
            return ring.spec, ring
        if isinstance(node.value, dict):
            spec = self.ring_spec(node)
            return spec, self.build(spec, node)
        raise ConfigError("expected a ring name or an inline ring table", node.line, node.col, key)

    def element(self, ring: FiniteRing, node: Node, key: str) -> int:
        v = node.value
        if isinstance(v, bool):
            raise ConfigError("element must be an index or a label", node.line, node.col, key)
        if isinstance(v, int):
            if not 0 <= v < ring.size:
                raise ConfigError(f"index {v} is not an element of {ring.name} (size {ring.size})", node.line, node.col, key)
            return v
        if isinstance(v, str):
            try:
                return ring.index_of(v)
            except (KeyError, ValueError):
                raise ConfigError(f"{v!r} is not a label of {ring.name}", node.line, node.col, key) from None
        raise ConfigError("element must be an index or a label", node.line, node.col, key)

    def int_matrix(self, node: Node, key: str) -> tuple[tuple[int, ...], ...]:
        rows = _expect(node, list, key, key)
        out = []
        for r in rows:
            cells = _expect(r, list, f"each row of {key}", key)
            out.append(tuple(_expect(c, int, f"entries of {key}", key) for c in cells))
        return tuple(out)

    def ring_spec(self, table: Node) -> RingSpec:
        items = _only_keys(table, set(RING_CONSTRUCTORS), where=" in ring definition")
        if len(items) != 1:
            raise ConfigError(f"a ring needs exactly one constructor out of {list(RING_CONSTRUCTORS)}", table.line, table.col)
        (kind, arg), = items.items()
        if kind == "zn":
            return Zn(_positive(arg, kind))
        if kind == "product":
            parts = _expect(arg, list, "product", kind)
            if len(parts) != 2:
                raise ConfigError("product takes exactly two rings", arg.line, arg.col, kind)
            return Product(self.ring_ref(parts[0], kind)[0], self.ring_ref(parts[1], kind)[0])
        if kind in ("matrix", "upper_triangular"):
            _expect(arg, dict, kind, kind)
            f = _only_keys(arg, {"base", "k"}, {"base", "k"}, where=f" in {kind}")
            base = self.ring_ref(f["base"], "base")[0]
            cls = Matrix if kind == "matrix" else UpperTriangular
            return cls(base, _positive(f["k"], "k"))
        if kind == "quaternion":
            return Quaternion(self.ring_ref(arg, kind)[0])
        if kind == "subring":
            _expect(arg, dict, kind, kind)
            f = _only_keys(arg, {"parent", "generators", "predicate", "unital"}, {"parent"}, where=" in subring")
            pspec, parent = self.ring_ref(f["parent"], "parent")
            gens: tuple[int, ...] = ()
            if "generators" in f:
                gens = tuple(self.element(parent, g, "generators") for g in _expect(f["generators"], list, "generators", "generators"))
            pred = None
            if "predicate" in f:
                pred = _expect(f["predicate"], str, "predicate", "predicate")
                if pred not in PREDICATES:
                    raise ConfigError(f"unknown predicate {pred!r}; known: {sorted(PREDICATES)}", f["predicate"].line, f["predicate"].col, "predicate")
            unital = _expect(f["unital"], bool, "unital", "unital") if "unital" in f else True
            return Subring(pspec, gens, pred, unital)
        if kind == "quotient":
            _expect(arg, dict, kind, kind)
            f = _only_keys(arg, {"parent", "ideal"}, {"parent", "ideal"}, where=" in quotient")
            pspec, parent = self.ring_ref(f["parent"], "parent")
            ideal = tuple(sorted({self.element(parent, x, "ideal") for x in _expect(f["ideal"], list, "ideal", "ideal")}))
            return Quotient(pspec, ideal)
        if kind == "corner":
            _expect(arg, dict, kind, kind)
            f = _only_keys(arg, {"parent", "idempotent"}, {"parent", "idempotent"}, where=" in corner")
            pspec, parent = self.ring_ref(f["parent"], "parent")
            return Corner(pspec, self.element(parent, f["idempotent"], "idempotent"))
        # tables
        _expect(arg, dict, kind, kind)
        f = _only_keys(arg, {"add", "mul", "labels"}, {"add", "mul"}, where=" in tables")
        labels = None
        if "labels" in f:
            labels = tuple(_expect(x, str, "labels", "labels") for x in _expect(f["labels"], list, "labels", "labels"))
        return Tables(self.int_matrix(f["add"], "add"), self.int_matrix(f["mul"], "mul"), labels)

    def monoid_spec(self, table: Node):
        items = _only_keys(table, set(MONOID_CONSTRUCTORS) | {"labels"}, where=" in monoid definition")
        kinds = [k for k in items if k != "labels"]
        if len(kinds) != 1:
            raise ConfigError(f"a monoid needs exactly one constructor out of {list(MONOID_CONSTRUCTORS)}", table.line, table.col)
        kind = kinds[0]
        arg = items[kind]
        if "labels" in items and kind != "table":
            n = items["labels"]
            raise ConfigError("labels are only accepted with an explicit table", n.line, n.col, "labels")
        if kind == "cyclic":
            return Cyclic(_positive(arg, kind))
        if kind == "null_adjoined":
            return NullAdjoined(_positive(arg, kind))
        if kind == "nat_add":
            if _expect(arg, bool, kind, kind) is not True:
                raise ConfigError("nat_add must be true", arg.line, arg.col, kind)
            return NatAddSpec()
        labels = None
        if "labels" in items:
            labels = tuple(_expect(x, str, "labels", "labels") for x in _expect(items["labels"], list, "labels", "labels"))
        return MonoidTable(self.int_matrix(arg, "table"), labels)


def parse_config(text: str, catalog: Optional[Catalog] = None) -> Config:
    cat = catalog or default_catalog()
    stmts = _Parser(text).statements()
    budget = Budget()
    output = Output()
    seen_blocks: set[str] = set()
    # budget first, so the size cap applies to every definition
    for kind, _, body, line, col in stmts:
        if kind in ("budget", "output"):
            if kind in seen_blocks:
                raise ConfigError(f"duplicate {kind} block", line, col)
            seen_blocks.add(kind)
        if kind == "budget":
            f = _only_keys(body, {"degree", "support", "workers", "ring_cap", "max_alphas"}, where=" in budget")
            if "degree" in f:
                budget.degree = _positive(f["degree"], "degree", allow_zero=True)
            if "support" in f:
                sup = _expect(f["support"], list, "support", "support")
                if len(sup) != 2:
                    raise ConfigError("support takes [m, n]", f["support"].line, f["support"].col, "support")
                budget.support = (_positive(sup[0], "support"), _positive(sup[1], "support"))
            if "workers" in f:
                budget.workers = _positive(f["workers"], "workers")
            if "ring_cap" in f:
                budget.ring_cap = _positive(f["ring_cap"], "ring_cap")
            if "max_alphas" in f:
                budget.max_alphas = _positive(f["max_alphas"], "max_alphas")
        elif kind == "output":
            f = _only_keys(body, {"format", "path"}, where=" in output")
            if "format" in f:
                fmt = _expect(f["format"], str, "format", "format")
                if fmt not in ("text", "json"):
                    raise ConfigError("format must be \"text\" or \"json\"", f["format"].line, f["format"].col, "format")
                output.format = fmt
            if "path" in f:
                output.path = _expect(f["path"], str, "path", "path")

    b = _Builder(cat, budget.ring_cap)
    for kind, name, body, line, col in stmts:
        if name is None:
            continue
        if not name.value:
            raise ConfigError("names must be nonempty", name.line, name.col)
        if name.value in b.rings or name.value in b.monoids:
            raise ConfigError(f"name {name.value!r} is already defined", name.line, name.col)
        if (kind == "ring" and name.value in cat.rings) or (kind == "monoid" and name.value in cat.monoids):
            raise ConfigError(f"name {name.value!r} is already used by the catalog", name.line, name.col)
        if kind == "ring":
            spec = Named(name.value, b.ring_spec(body))
            b.rings[name.value] = b.build(spec, body)
        else:
            mspec = NamedMonoid(name.value, b.monoid_spec(body))
            try:
                b.monoids[name.value] = construct_monoid(mspec)
            except (AlgebraError, ValueError) as exc:
                raise ConfigError(f"axiom failure: {exc}", body.line, body.col) from None
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return Config(b.rings, b.monoids, budget, output, digest)


def load_config(path: str, catalog: Optional[Catalog] = None) -> Config:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), catalog)
