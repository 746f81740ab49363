from __future__ import annotations

import pytest

from mrlab.search import ExpressionError, atoms_of, counterexample_search, evaluate, parse_target, ring_family


def test_parse_and_atoms():
    expr = parse_target("abelian ∧ ¬central_armendariz(NatAdd, d=1) or reduced")
    names = sorted(a.name for a in atoms_of(expr))
    assert names == ["abelian", "central_armendariz", "reduced"]


@pytest.mark.parametrize("bad", ["", "abelian and", "(abelian", "abelian )", "foo(", "abelian reduced"])
def test_parse_errors(bad):
    with pytest.raises(ExpressionError):
        parse_target(bad)


def test_three_valued_logic():
    expr = parse_target("abelian and not baer")
    atoms = {a.name: a for a in atoms_of(expr)}

    def val(va, vb):
        return evaluate(expr, {atoms["abelian"]: va, atoms["baer"]: vb})

    assert val(True, False) is True
    assert val(False, None) is False
    assert val(True, None) is None


def test_non_abelian_finds_matrix_rings(cat):
    res = counterexample_search("¬abelian", "{T2_Z2, M2_Z2}", catalog=cat)
    assert [f.ring.name for f in res.findings] == ["T2_Z2", "M2_Z2"]
    assert not res.partial


def test_reduced_noncommutative_is_empty(cat):
    res = counterexample_search("reduced ∧ ¬commutative", "catalog", catalog=cat)
    assert res.findings == [] and not res.partial


def test_commutative_not_armendariz(cat):
    res = counterexample_search("commutative ∧ ¬plain_armendariz(cyclic(2))", "Z2", catalog=cat)
    assert len(res.findings) == 1
    info = res.findings[0].atoms
    wit = next(v for k, v in info.items() if k.startswith("plain"))
    assert wit["value"] is False


def test_families(cat):
    assert [r.name for r in ring_family("Z2,Z3", cat)] == ["Z2", "Z3"]
    subs = list(ring_family("subrings(T2_Z2, 1)", cat))
    assert subs and all(r.size <= 8 for r in subs)
    with pytest.raises((KeyError, ExpressionError)):
        list(ring_family("NoSuchRing", cat))


def test_max_structures_marks_partial(cat):
    res = counterexample_search("commutative", "catalog", catalog=cat, max_structures=2)
    assert res.partial and res.examined == 2
