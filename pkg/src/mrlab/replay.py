"""Rebuild structures from serialized references and re-check recorded witnesses.

Everything here works from the JSON form alone, so a report written by one
process can be audited by another.
"""

from __future__ import annotations

import json
from typing import Iterator, Optional

from .errors import AlgebraError
from .monoid_ring import MonoidRingElement
from .monoids import Monoid, construct_monoid, monoid_spec_from_dict
from .properties import (
    Bounds,
    ClassicalWitness,
    Kind,
    Witness,
    check_armendariz_naive,
    count_sparse,
    monoid_ref,
    recheck_classical,
    recheck_witness,
    ring_ref,
)
from .rings import FiniteRing, construct_ring, spec_from_dict

REPLAY_PAIR_BUDGET = 5_000_000

WITNESS_TYPES = ("armendariz_witness", "classical_witness", "product_witness", "exhaustive_holds")


class ReplayError(AlgebraError):
    pass


_rebuilt: dict[str, FiniteRing] = {}


def ring_from_ref(ref: dict) -> FiniteRing:
    if "spec" not in ref:
        raise ReplayError(f"ring {ref.get('name')!r} carries no constructible spec")
    key = json.dumps(ref["spec"], sort_keys=True)
    if key not in _rebuilt:
        _rebuilt[key] = construct_ring(spec_from_dict(ref["spec"]))
    ring = _rebuilt[key]
    if "digest" in ref and ring.digest != ref["digest"]:
        raise ReplayError(f"rebuilt ring {ring.name!r} has digest {ring.digest}, report says {ref['digest']}")
    return ring


def monoid_from_ref(ref: dict) -> Monoid:
    if "spec" not in ref:
        raise ReplayError(f"monoid {ref.get('name')!r} carries no constructible spec")
    monoid = construct_monoid(monoid_spec_from_dict(ref["spec"]))
    digest = getattr(monoid, "digest", None)
    if "digest" in ref and digest != ref["digest"]:
        raise ReplayError(f"rebuilt monoid {monoid.name!r} does not match the report")
    return monoid


def element_from_terms(ring: FiniteRing, monoid: Monoid, terms) -> MonoidRingElement:
    return MonoidRingElement.from_terms(ring, monoid, [(int(g), int(a)) for g, a in terms])


def product_witness(
    alpha: MonoidRingElement,
    beta: MonoidRingElement,
    claim: str,
    i: Optional[int] = None,
    j: Optional[int] = None,
    partner: Optional[int] = None,
) -> dict:
    """Serialize an explicit pair together with its product and the claim about it."""
    ring = alpha.ring
    prod = alpha * beta
    out = {
        "type": "product_witness",
        "ring": ring_ref(ring),
        "monoid": monoid_ref(alpha.monoid),
        "alpha": alpha.to_dict(),
        "beta": beta.to_dict(),
        "product": prod.to_dict(),
        "claim": claim,
    }
    if i is not None and j is not None:
        c = ring.mul[alpha.terms[i][1]][beta.terms[j][1]]
        out["coefficient_product"] = {
            "i": i,
            "j": j,
            "value": c,
            "label": ring.label(c),
            "partner": partner,
            "partner_label": ring.label(partner) if partner is not None else None,
        }
    return out


def exhaustive_holds(ring: FiniteRing, monoid: Monoid, kind: Kind) -> dict:
    return {"type": "exhaustive_holds", "ring": ring_ref(ring), "monoid": monoid_ref(monoid), "kind": Kind(kind).value}


def _recheck_product(obj: dict) -> tuple[bool, str]:
    R = ring_from_ref(obj["ring"])
    M = monoid_from_ref(obj["monoid"])
    alpha = element_from_terms(R, M, obj["alpha"]["terms"])
    beta = element_from_terms(R, M, obj["beta"]["terms"])
    prod = alpha * beta
    recorded = element_from_terms(R, M, obj["product"]["terms"])
    if prod != recorded:
        return False, f"recomputed product {prod.render()} differs from the recorded {recorded.render()}"
    claim = obj["claim"]
    if claim == "zero" and not prod.is_zero():
        return False, f"product {prod.render()} is not zero"
    if claim == "nonzero" and prod.is_zero():
        return False, "product is zero"
    if claim == "idempotent" and prod != alpha:
        return False, f"{alpha.render()} squares to {prod.render()}"
    cp = obj.get("coefficient_product")
    if cp is not None:
        c = R.mul[alpha.terms[cp["i"]][1]][beta.terms[cp["j"]][1]]
        if c != cp["value"]:
            return False, "coefficient product does not match"
        r = cp.get("partner")
        if r is not None and R.mul[c][r] == R.mul[r][c]:
            return False, f"{R.label(c)} commutes with the recorded partner {R.label(r)}"
    return True, f"product {prod.render()} confirmed ({claim})"


def _recheck_armendariz(obj: dict) -> tuple[bool, str]:
    R = ring_from_ref(obj["ring"])
    M = monoid_from_ref(obj["monoid"])
    alpha = element_from_terms(R, M, obj["alpha"]["terms"])
    beta = element_from_terms(R, M, obj["beta"]["terms"])
    w = Witness(Kind(obj["kind"]), alpha, beta, int(obj["i"]), int(obj["j"]), int(obj["product"]), obj.get("partner"))
    ok = recheck_witness(w)
    return ok, ("witness confirmed: " if ok else "witness rejected: ") + w.render()


def _recheck_classical(obj: dict, ring: FiniteRing) -> tuple[bool, str]:
    w = ClassicalWitness(obj["prop"], dict(obj["elements"]), dict(obj.get("sets", {})), obj.get("detail", ""))
    ok = recheck_classical(ring, w)
    return ok, ("confirmed: " if ok else "rejected: ") + w.detail


def _recheck_holds(obj: dict) -> tuple[bool, str]:
    R = ring_from_ref(obj["ring"])
    M = monoid_from_ref(obj["monoid"])
    if not M.finite:
        return False, "exhaustive claims need a finite monoid"
    pairs = count_sparse(R.size, M.size, None) ** 2
    if pairs > REPLAY_PAIR_BUDGET:
        return False, f"naive replay needs {pairs} pairs, over the budget of {REPLAY_PAIR_BUDGET}"
    hit = check_armendariz_naive(R, M, obj["kind"], Bounds())
    if hit is not None:
        return False, f"naive double loop found a counterexample {hit}"
    return True, f"naive double loop over {pairs} pairs finds no counterexample"


def recheck(obj: dict, context_ring: Optional[FiniteRing] = None) -> tuple[bool, str]:
    kind = obj.get("type")
    try:
        if kind == "product_witness":
            return _recheck_product(obj)
        if kind == "armendariz_witness":
            return _recheck_armendariz(obj)
        if kind == "exhaustive_holds":
            return _recheck_holds(obj)
        if kind == "classical_witness":
            ring = context_ring
            if "ring" in obj:
                ring = ring_from_ref(obj["ring"])
            if ring is None:
                return False, "classical witness without a ring reference"
            return _recheck_classical(obj, ring)
    except (KeyError, ValueError, TypeError, AlgebraError) as exc:
        return False, f"replay error: {exc}"
    return False, f"unknown witness type {kind!r}"


def iter_witnesses(data, path: str = "$") -> Iterator[tuple[str, dict]]:
    """Every witness object in a JSON tree, depth first in key order."""
    if isinstance(data, dict):
        if data.get("type") in WITNESS_TYPES:
            yield path, data
            return
        for key in sorted(data):
            yield from iter_witnesses(data[key], f"{path}.{key}")
    elif isinstance(data, list):
        for i, item in enumerate(data):
            yield from iter_witnesses(item, f"{path}[{i}]")
