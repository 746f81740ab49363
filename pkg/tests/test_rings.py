from __future__ import annotations

import itertools

import pytest

from mrlab.errors import AxiomError, CornerError, NotAnIdealError, SizeCapError
from mrlab.rings import (
    Matrix,
    Product,
    Quaternion,
    Subring,
    UpperTriangular,
    Zn,
    complement_idempotent,
    construct_ring,
    corner,
    enumerate_ideals,
    from_tables,
    quotient,
    ring_scan,
    spec_from_dict,
    spec_to_dict,
)


def axioms_hold(R) -> bool:
    add, mul = R.add, R.mul
    for a, b, c in itertools.product(range(R.size), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            return False
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            return False
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            return False
    return True


@pytest.mark.parametrize(
    "spec,size",
    [
        (Zn(6), 6),
        (Product(Zn(2), Zn(3)), 6),
        (UpperTriangular(Zn(2), 2), 8),
        (Matrix(Zn(2), 2), 16),
        (Quaternion(Zn(2)), 16),
    ],
)
def test_constructed_rings_satisfy_axioms(spec, size):
    R = construct_ring(spec)
    assert R.size == size
    assert R.validation == "full"
    assert axioms_hold(R)
    assert R.one is not None


def test_basic_invariants_of_t2(cat):
    T = cat.ring("T2_Z2")
    assert not T.is_commutative
    assert len(T.center) == 2
    assert len(T.idempotents) == 6
    assert len(T.nilpotents) == 2
    assert len(T.units) == 2
    assert T.jacobson_radical == T.nilpotents


def test_radical_of_rng_uses_nilpotent_ideals(cat):
    rep = ring_scan(cat.ring("I_T2_Z2"))
    assert not rep.has_identity and rep.units is None
    assert rep.radical_method == "largest nilpotent ideal"
    assert len(rep.jacobson_radical) == 2


def test_zn_nilpotents_and_units():
    R = construct_ring(Zn(8))
    assert sorted(R.nilpotents) == [0, 2, 4, 6]
    assert sorted(R.units) == [1, 3, 5, 7]
    assert sorted(R.jacobson_radical) == [0, 2, 4, 6]


def test_table_validation_reports_triple():
    # Z2 addition with a nonassociative-style multiplication: 1*1 = 1 but 1*0 = 1
    with pytest.raises(AxiomError) as exc:
        from_tables([[0, 1], [1, 0]], [[0, 1], [0, 1]])
    assert exc.value.triple


def test_quotient_and_corner(cat):
    Z6 = cat.ring("Z6")
    ideal = frozenset(x for x in range(6) if x % 3 == 0)
    Q = quotient(Z6, ideal)
    assert Q.size == 3 and Q.is_commutative
    with pytest.raises(NotAnIdealError):
        quotient(Z6, [0, 1])
    f = 3  # central idempotent of Z6
    C = corner(Z6, f)
    assert C.size == 2 and C.one is not None
    assert complement_idempotent(Z6, f) == 4
    T = cat.ring("T2_Z2")
    nc = next(x for x in T.idempotents if x not in T.center)
    with pytest.raises(CornerError):
        corner(T, nc)


def test_enumerate_ideals_of_z8():
    R = construct_ring(Zn(8))
    assert sorted(len(i) for i in enumerate_ideals(R)) == [1, 2, 4, 8]


def test_subring_by_predicate_is_commutative(cat):
    R = cat.ring("Ex27_Z4")
    assert R.size == 32
    assert R.is_commutative


def test_size_cap():
    with pytest.raises(SizeCapError):
        construct_ring(Matrix(Zn(3), 3))


def test_spec_round_trip(cat):
    for R in cat.rings.values():
        d = spec_to_dict(R.spec)
        again = construct_ring(spec_from_dict(d))
        assert again.digest == R.digest


def test_nonunital_subring(cat):
    I = construct_ring(Subring(UpperTriangular(Zn(2), 2), generators=(4, 2), unital=False))
    assert I.size == 4 and I.one is None
