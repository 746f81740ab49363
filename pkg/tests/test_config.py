from __future__ import annotations

import pytest

from mrlab.config import ConfigError, parse_config

FULL = """
# every constructor at least once
ring "R6"   { zn = 6 }
ring "P"    { product = ["Z2", "Z3"] }
ring "M"    { matrix = { base = "Z2", k = 2 } }
ring "T3"   { upper_triangular = { base = "Z3", k = 2 } }
ring "Hq"   { quaternion = "Z2" }
ring "Sub"  { subring = { parent = "T2_Z2", generators = [4, 2], unital = false } }
ring "Q"    { quotient = { parent = "R6", ideal = [0, 3] } }
ring "Cor"  { corner = { parent = "R6", idempotent = 3 } }
ring "F2"   { tables = { add = [[0, 1], [1, 0]], mul = [[0, 0], [0, 1]], labels = ["o", "l"] } }
monoid "G3" { cyclic = 3 }
monoid "Z1" { null_adjoined = 1 }
monoid "Tm" { table = [[0, 1], [1, 1]], labels = ["e", "z"] }
monoid "X"  { nat_add = true }
budget { degree = 2, support = [2, 3], workers = 2, max_alphas = 1000 }
output { format = "json" }
"""


def test_full_config():
    cfg = parse_config(FULL)
    sizes = {n: r.size for n, r in cfg.rings.items()}
    assert sizes == {"R6": 6, "P": 6, "M": 16, "T3": 27, "Hq": 16, "Sub": 4, "Q": 3, "Cor": 2, "F2": 2}
    assert cfg.rings["Sub"].one is None
    assert {n: (m.size if m.finite else None) for n, m in cfg.monoids.items()} == {"G3": 3, "Z1": 2, "Tm": 2, "X": None}
    assert cfg.budget.support == (2, 3) and cfg.budget.workers == 2
    assert cfg.output.format == "json"
    cat = cfg.catalog()
    assert cat.ring("Q").name == "Q" and cat.ring("Z2").size == 2


def klein_bilinear(products):
    """Tables on the Klein group from products of the basis e1 = 1, e2 = 2."""
    coords = [(0, 0), (1, 0), (0, 1), (1, 1)]
    index = {c: i for i, c in enumerate(coords)}
    add = [[index[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in coords] for a in coords]
    mul = []
    for a in coords:
        row = []
        for b in coords:
            acc = (0, 0)
            for i in range(2):
                for j in range(2):
                    if a[i] and b[j]:
                        p = coords[products[i][j]]
                        acc = ((acc[0] + p[0]) % 2, (acc[1] + p[1]) % 2)
            row.append(index[acc])
        mul.append(row)
    return add, mul


def test_nonassociative_bilinear_table_reports_triple():
    # e1 e1 = e1, e1 e2 = e2, e2 e1 = 0, e2 e2 = e1: bilinear but (e2 e2) e2 != e2 (e2 e2)
    add, mul = klein_bilinear([[1, 2], [0, 1]])
    text = f'ring "K" {{ tables = {{ add = {add}, mul = {mul} }} }}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert "associative fails at (2, 1, 2)" in str(exc.value) and "K" in str(exc.value)
    assert exc.value.line == 1


def test_associative_klein_table_accepted():
    add, mul = klein_bilinear([[1, 0], [0, 2]])  # F2 x F2
    cfg = parse_config(f'ring "K" {{ tables = {{ add = {add}, mul = {mul} }} }}')
    assert cfg.rings["K"].is_commutative and cfg.rings["K"].one is not None


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('ring "X" { zn = 3, foo = 1 }', "unknown key"),
        ('ring "X" { zn = 3 }\nring "X" { zn = 4 }', "already defined"),
        ('ring "Z2" { zn = 2 }', "already used by the catalog"),
        ('ring "X" { zn = 0 }', "positive"),
        ('ring "X" { matrix = { base = "Nope", k = 2 } }', "unknown ring"),
        ('ring "X" { quotient = { parent = "Z6", ideal = [1] } }', "ideal"),
        ('monoid "M" { table = [[0, 1], [1, 0]], labels = ["e"] }', "label"),
        ('monoid "M" { cyclic = 2, labels = ["a", "b"] }', "labels are only accepted"),
        ('budget { workers = 0 }', "positive"),
        ('budget { degree = 1 }\nbudget { degree = 2 }', "duplicate budget"),
        ('output { format = "xml" }', "format"),
        ('ring "X" { zn = "six" }', "integer"),
        ('ring "X" { zn = 3', "expected"),
        ('ring "X" { zn = 3 } @', "unexpected character"),
        ('frobnicate "X" { }', "unknown statement"),
    ],
)
def test_config_errors(text, fragment):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert fragment in str(exc.value)
    assert exc.value.line >= 1
