from __future__ import annotations

import dataclasses

import pytest

from mrlab.monoid_ring import MonoidRingElement
from mrlab.properties import (
    Bounds,
    Kind,
    Status,
    check_armendariz,
    check_armendariz_naive,
    check_classical,
    recheck_classical,
    recheck_witness,
)

SMALL = ["Z2", "Z3", "Z4", "Z6", "Z2xZ2", "I_T2_Z2", "T2_Z2"]


@pytest.mark.parametrize("rname", SMALL)
@pytest.mark.parametrize("mname", ["C2", "N1"])
@pytest.mark.parametrize("kind", list(Kind))
def test_kernel_search_matches_naive_oracle(cat, rname, mname, kind):
    R, M = cat.ring(rname), cat.monoid(mname)
    v = check_armendariz(R, M, kind, shortcuts=False)
    raw = check_armendariz_naive(R, M, kind)
    if raw is None:
        assert v.status is Status.HOLDS
        return
    assert v.status is Status.FAILS
    w = v.witness
    alpha = tuple(w.alpha.coefficient(g) for g in range(M.size))
    beta = tuple(w.beta.coefficient(g) for g in range(M.size))
    assert (alpha, beta, w.i, w.j) == raw
    assert recheck_witness(w)


@pytest.mark.parametrize("rname", SMALL + ["M2_Z2", "H_Z2"])
def test_plain_implies_central(cat, rname):
    R = cat.ring(rname)
    for mname in ("C2", "C3", "N1"):
        M = cat.monoid(mname)
        plain = check_armendariz(R, M, Kind.PLAIN)
        central = check_armendariz(R, M, Kind.CENTRAL)
        if plain.holds:
            assert central.holds


def test_commutative_rings_are_central(cat):
    for R in cat.rings.values():
        if R.is_commutative and R.size <= 8:
            v = check_armendariz(R, cat.monoid("C3"), Kind.CENTRAL, shortcuts=False)
            assert v.status is Status.HOLDS


def test_shortcut_is_noted(cat):
    v = check_armendariz(cat.ring("Ex27_Z4"), cat.monoid("C2"), Kind.CENTRAL)
    assert v.status is Status.HOLDS and v.stats["alphas_scanned"] == 0
    assert any("commutative" in n for n in v.notes)


def test_tampered_witness_is_rejected(cat):
    v = check_armendariz(cat.ring("T2_Z2"), cat.monoid("C2"), Kind.CENTRAL)
    w = v.witness
    assert recheck_witness(w)
    R = w.ring
    bad_beta = MonoidRingElement.from_terms(R, w.beta.monoid, [(0, R.one)])
    assert not recheck_witness(dataclasses.replace(w, beta=bad_beta))


def test_bounded_and_budget(cat):
    nat = cat.monoid("NatAdd")
    v = check_armendariz(cat.ring("Z4"), nat, Kind.PLAIN, Bounds(degree=2))
    assert v.status is Status.HOLDS_UP_TO_BOUND
    v = check_armendariz(cat.ring("T2_Z2"), nat, Kind.PLAIN, Bounds(degree=1))
    assert v.status is Status.FAILS and recheck_witness(v.witness)
    v = check_armendariz(cat.ring("Z3"), nat, Kind.PLAIN, Bounds(degree=2))
    assert v.status is Status.HOLDS_UP_TO_BOUND
    v = check_armendariz(cat.ring("M2_Z2"), cat.monoid("C5"), Kind.PLAIN, Bounds(max_alphas=10), shortcuts=False)
    assert v.status in (Status.FAILS, Status.BUDGET_EXHAUSTED)
    v = check_armendariz(cat.ring("Z3"), cat.monoid("C3"), Kind.CENTRAL, Bounds(max_alphas=10), shortcuts=False)
    assert v.status is Status.BUDGET_EXHAUSTED


def test_parallel_matches_serial(cat):
    R, M = cat.ring("H_Z2"), cat.monoid("C3")
    a = check_armendariz(R, M, Kind.PLAIN, workers=1)
    b = check_armendariz(R, M, Kind.PLAIN, workers=3)
    assert a.to_dict() == b.to_dict()


@pytest.mark.parametrize(
    "rname,expected",
    [
        ("Z2", {"reduced": True, "abelian": True, "right_pp": True, "baer": True, "two_primal": True}),
        ("Z4", {"reduced": False, "central_reduced": True, "abelian": True, "right_pp": False, "two_primal": True}),
        ("T2_Z2", {"reduced": False, "central_reduced": False, "abelian": False, "right_pp": True, "baer": True}),
        ("M2_Z2", {"abelian": False, "right_pp": True, "baer": True, "two_primal": False}),
        ("H_Z2", {"reduced": False, "abelian": True, "right_pp": False, "commutative": True}),
    ],
)
def test_classical_properties(cat, rname, expected):
    R = cat.ring(rname)
    for prop, want in expected.items():
        v = check_classical(R, prop)
        assert v.holds is want, prop
        if not want:
            assert recheck_classical(R, v.witness)
