from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mrlab.catalog import default_catalog
from mrlab.errors import MixedOperandsError, NotIdempotentError
from mrlab.monoid_ring import MonoidRingElement, enumerate_mr_elements, trailing_idempotent
from mrlab.monoids import NatAdd

CAT = default_catalog()
PAIRS = [("T2_Z2", "C3"), ("Z6", "N2"), ("M2_Z2", "C2"), ("H_Z2", "C4"), ("I_T2_Z2", "N1"), ("T2_Z3", "NatAdd")]


def element(draw, R, M):
    width = M.size if M.finite else 4
    pairs = draw(st.lists(st.tuples(st.integers(0, width - 1), st.integers(0, R.size - 1)), max_size=5))
    return MonoidRingElement.from_terms(R, M, pairs)


@st.composite
def triple(draw):
    rname, mname = draw(st.sampled_from(PAIRS))
    R, M = CAT.ring(rname), CAT.monoid(mname)
    return element(draw, R, M), element(draw, R, M), element(draw, R, M)


@settings(max_examples=150, deadline=None)
@given(triple())
def test_ring_axioms_in_rm(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + (-a) == MonoidRingElement.zero(a.ring, a.monoid)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@settings(max_examples=50, deadline=None)
@given(triple())
def test_identity_of_rm(t):
    a, _, _ = t
    R = a.ring
    if R.one is None:
        return
    one = MonoidRingElement.constant(R, a.monoid, R.one)
    assert one * a == a == a * one


def test_canonical_form_drops_zeros():
    R, M = CAT.ring("Z4"), CAT.monoid("C2")
    x = MonoidRingElement.from_terms(R, M, [(1, 2), (1, 2), (0, 1)])
    assert x.terms == ((0, 1),)


def test_mixed_operands_rejected():
    a = MonoidRingElement.constant(CAT.ring("Z2"), CAT.monoid("C2"), 1)
    b = MonoidRingElement.constant(CAT.ring("Z3"), CAT.monoid("C2"), 1)
    with pytest.raises(MixedOperandsError):
        a * b


def test_trailing_idempotent():
    R = CAT.ring("Z6")
    nat = NatAdd()
    found = 0
    for f in enumerate_mr_elements(R, nat, (0, 1, 2)):
        if f * f == f:
            found += 1
            e = trailing_idempotent(f)
            assert R.mul[e][e] == e
    assert found >= 4
    with pytest.raises(NotIdempotentError):
        trailing_idempotent(MonoidRingElement.from_terms(R, nat, [(1, 1)]))
