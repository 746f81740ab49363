from __future__ import annotations

import pytest

from mrlab.errors import AxiomError
from mrlab.monoids import (
    Cyclic,
    NatAdd,
    NullAdjoined,
    cancellativity_witness,
    construct_monoid,
    enumerate_submonoids,
    from_table,
    is_group,
    monoid_scan,
    strict_total_order_exists,
    strict_total_order_search,
    submonoid,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cyclic_groups(n):
    M = construct_monoid(Cyclic(n))
    rep = monoid_scan(M)
    assert rep.cancellative and rep.is_group
    assert rep.unique_product is (n == 1)
    assert rep.torsion_free is (n == 1)
    assert rep.strict_total_order_exists is (n == 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_null_adjoined(k):
    M = construct_monoid(NullAdjoined(k))
    assert M.size == k + 1
    w = cancellativity_witness(M)
    assert w is not None
    m, g, h, side = w
    if side == "left":
        assert M.op(m, g) == M.op(m, h) and g != h
    else:
        assert M.op(g, m) == M.op(h, m) and g != h
    assert not is_group(M)


def test_natadd_is_axiomatic():
    rep = monoid_scan(NatAdd())
    assert rep.axiomatic and rep.cancellative and rep.unique_product and rep.strict_total_order_exists


def test_order_search_agrees_on_small_tables():
    for spec in (Cyclic(1), Cyclic(2), Cyclic(3), Cyclic(4), NullAdjoined(1), NullAdjoined(2), NullAdjoined(3)):
        M = construct_monoid(spec)
        assert (strict_total_order_search(M) is not None) == strict_total_order_exists(M)


def test_from_table_rejects_nonassociative():
    with pytest.raises(AxiomError):
        from_table([[0, 1, 2], [1, 2, 0], [2, 2, 2]])


def test_from_table_needs_identity():
    with pytest.raises(AxiomError):
        from_table([[0, 0], [0, 0]])


def test_submonoids_of_c4():
    M = construct_monoid(Cyclic(4))
    subs = enumerate_submonoids(M)
    assert sorted(len(s) for s in subs) == [1, 2, 4]
    N = submonoid(M, subs[1] if len(subs[1]) == 2 else subs[0])
    assert N.identity == 0 or N.size >= 1
