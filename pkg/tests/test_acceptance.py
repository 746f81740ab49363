"""Acceptance criteria, one test each.

Every test prints a single ``[acceptance] criterion N: PASS|FAIL`` line (shown
even without ``-s``) and then asserts.  Criteria are checked as stated; see the
decisions ledger for the one criterion that does not hold as written.
"""

from __future__ import annotations

import itertools
import time

import pytest

from mrlab.catalog import default_catalog
from mrlab.cli import run_command
from mrlab.monoid_ring import MonoidRingElement
from mrlab.monoids import (
    Cyclic,
    NullAdjoined,
    cancellativity_witness,
    construct_monoid,
    monoid_scan,
    strict_total_order_exists,
    strict_total_order_search,
)
from mrlab.properties import (
    Bounds,
    Kind,
    Status,
    check_armendariz,
    check_classical,
    recheck_classical,
    recheck_witness,
    zero_product_pairs,
    zero_product_pairs_naive,
)
from mrlab.replay import recheck
from mrlab.rings import Quaternion, Zn, complement_idempotent, construct_ring, corner, enumerate_ideals, quotient
from mrlab.suite import run_entry


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[acceptance] criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def cat():
    return default_catalog()


def el(R, M, pairs):
    return MonoidRingElement.from_terms(R, M, pairs)


def noncentral(R):
    return [x for x in range(R.size) if x not in R.center]


def central_holds(R, M) -> bool:
    v = check_armendariz(R, M, Kind.CENTRAL, Bounds())
    assert v.status in (Status.HOLDS, Status.FAILS)
    return v.status is Status.HOLDS


def test_criterion_01_quaternions_over_z2(verdict):
    t0 = time.perf_counter()
    H = construct_ring(Quaternion(Zn(2)))
    C2 = construct_monoid(Cyclic(2))
    problems = []
    if H.size != 16 or H.validation != "full":
        problems.append(f"H(Z2) has {H.size} elements, validation {H.validation}")
    a, b = H.index_of("1+i"), H.index_of("1+j")
    alpha = el(H, C2, [(0, a), (1, b)])
    if not (alpha * alpha).is_zero():
        problems.append("alpha^2 != 0")
    if H.mul[a][b] == H.zero:
        problems.append("(1+i)(1+j) = 0")
    plain = check_armendariz(H, C2, Kind.PLAIN)
    if plain.status is not Status.FAILS or not recheck_witness(plain.witness):
        problems.append(f"plain check: {plain.status.value}")
    else:
        w = plain.witness
        found = (tuple(w.alpha.coefficient(g) for g in (0, 1)), tuple(w.beta.coefficient(g) for g in (0, 1)))
        stated = ((a, b), (a, b))
        if found > stated:
            problems.append(f"plain witness {w.render()} is lex-later than the stated one")
    central = check_armendariz(H, C2, Kind.CENTRAL, shortcuts=False)
    if central.status is not Status.HOLDS or not central.bound["exhaustive"] or central.stats["alphas_scanned"] != 256:
        problems.append(f"central check: {central.status.value}")
    pp = check_classical(H, "right_pp")
    if pp.status is not Status.FAILS or not recheck_classical(H, pp.witness):
        problems.append(f"right_pp: {pp.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(1, not problems, "; ".join(problems) or f"plain witness {plain.witness.render()}, {elapsed:.2f}s")


def test_criterion_02_cyclic_group_construction(cat, verdict):
    t0 = time.perf_counter()
    problems, cases = [], 0
    for R in [r for r in cat.rings.values() if not r.is_commutative]:
        for n in (2, 3, 4):
            M = construct_monoid(Cyclic(n))
            for a in noncentral(R):
                if R.one is not None:
                    bs = [R.one]
                else:
                    # no identity: b(e - g) still kills a(e + g + ... + g^{n-1})
                    bs = [b for b in range(R.size) if R.mul[a][b] not in R.center][:1]
                for b in bs:
                    alpha = el(R, M, [(k, a) for k in range(n)])
                    beta = el(R, M, [(0, b), (1, R.neg[b])])
                    cases += 1
                    if not (alpha * beta).is_zero() or R.mul[a][b] in R.center:
                        problems.append(f"{R.name} C{n} a={R.label(a)}")
            if R.one is None and not any(R.mul[a][b] not in R.center for a in noncentral(R) for b in range(R.size)):
                problems.append(f"{R.name}: no noncentral product to expose")
            v = check_armendariz(R, M, Kind.CENTRAL)
            if v.status is not Status.FAILS or not recheck_witness(v.witness):
                problems.append(f"{R.name} over C{n}: checker {v.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 5.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(2, not problems and cases > 0, "; ".join(problems) or f"{cases} constructed pairs, {elapsed:.2f}s")


def test_criterion_03_non_cancellative_monoids(cat, verdict):
    t0 = time.perf_counter()
    problems, pairs = [], 0
    for M in cat.finite_monoids():
        cw = cancellativity_witness(M)
        if cw is None:
            continue
        m, g, h, side = cw
        for R in [r for r in cat.rings.values() if not r.is_commutative]:
            pairs += 1
            for r in noncentral(R):
                bs = [R.one] if R.one is not None else [b for b in range(R.size) if R.mul[r][b] not in R.center][:1]
                for b in bs:
                    rm = el(R, M, [(m, r)])
                    diff = el(R, M, [(g, b), (h, R.neg[b])])
                    alpha, beta = (rm, diff) if side == "left" else (diff, rm)
                    prod = R.mul[r][b] if side == "left" else R.mul[b][r]
                    if not (alpha * beta).is_zero() or prod in R.center:
                        problems.append(f"{R.name} over {M.name}: r={R.label(r)}")
            v = check_armendariz(R, M, Kind.CENTRAL)
            if v.status is not Status.FAILS or not recheck_witness(v.witness):
                problems.append(f"{R.name} over {M.name}: checker {v.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 5.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(3, not problems and pairs > 0, "; ".join(problems) or f"{pairs} ring/monoid pairs, {elapsed:.2f}s")


def test_criterion_04_idempotent_splitting(cat, verdict):
    t0 = time.perf_counter()
    problems = []
    monoids = cat.finite_monoids(min_size=2)
    literal_total, literal_nonzero = 0, []
    for R in cat.rings.values():
        abelian = check_classical(R, "abelian").holds
        for M in monoids:
            holds = central_holds(R, M)
            if holds and not abelian:
                problems.append(f"{R.name} over {M.name} is central Armendariz but not Abelian")
            if R.one is None:
                continue
            for f in sorted(R.idempotents & R.center):
                fc = complement_idempotent(R, f)
                split = central_holds(corner(R, f), M) and central_holds(corner(R, fc), M)
                if split != holds:
                    problems.append(f"{R.name} over {M.name}: corners at {R.label(f)} disagree")
        if abelian or R.one is None:
            continue
        for f in [x for x in sorted(R.idempotents) if x not in R.center]:
            fc = complement_idempotent(R, f)
            for r in range(R.size):
                x = R.mul[R.mul[f][r]][fc]
                if x == R.zero:
                    continue
                nx = R.neg[x]
                for M in monoids:
                    g = next(y for y in range(M.size) if y != M.identity)
                    left = el(R, M, [(M.identity, f), (g, nx)])
                    right = el(R, M, [(M.identity, fc), (g, nx)])
                    literal_total += 1
                    exposed = R.mul[f][nx]
                    if exposed in R.center:
                        problems.append(f"{R.name}: exposed product {R.label(exposed)} is central")
                    if not (left * right).is_zero():
                        literal_nonzero.append(f"{R.name} over {M.name}")
    if literal_nonzero:
        first = sorted(set(literal_nonzero))
        problems.append(
            f"the stated witness has nonzero product in {len(literal_nonzero)} of {literal_total} cases ({', '.join(first)})"
        )
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(4, not problems, "; ".join(problems) or f"{literal_total} witness instances, {elapsed:.2f}s")


def test_criterion_05_right_pp_bounded(cat, verdict):
    t0 = time.perf_counter()
    nat = cat.monoid("NatAdd")
    b = Bounds(degree=3, alpha_terms=2, beta_terms=2)
    problems, checked = [], []
    for R in cat.rings_up_to(8):
        if R.one is None or not check_classical(R, "right_pp").holds:
            continue
        central = check_armendariz(R, nat, Kind.CENTRAL, b)
        if central.status is Status.BUDGET_EXHAUSTED:
            problems.append(f"{R.name}: budget")
            continue
        checked.append(R.name)
        if central.holds:
            plain = check_armendariz(R, nat, Kind.PLAIN, b)
            if plain.status is not Status.HOLDS_UP_TO_BOUND:
                problems.append(f"{R.name}: central holds, plain {plain.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(5, not problems and checked, "; ".join(problems) or f"right p.p. rings {checked}, {elapsed:.2f}s")


def test_criterion_06_reduced_ideal_lift(cat, verdict):
    t0 = time.perf_counter()
    nat = cat.monoid("NatAdd")
    b = Bounds(degree=2)
    problems, instances = [], 0
    for R in cat.rings_up_to(16):
        whole = None
        for ideal in enumerate_ideals(R):
            if ideal & R.nilpotents != {R.zero}:
                continue
            instances += 1
            qv = check_armendariz(quotient(R, ideal), nat, Kind.CENTRAL, b)
            if qv.status is Status.BUDGET_EXHAUSTED:
                problems.append(f"{R.name}: budget on quotient")
                continue
            if not qv.holds:
                continue
            whole = whole or check_armendariz(R, nat, Kind.CENTRAL, b)
            if not whole.holds:
                problems.append(f"{R.name} / ideal of size {len(ideal)}: quotient holds, ring {whole.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(6, not problems and instances > 0, "; ".join(problems) or f"{instances} reduced ideals, {elapsed:.2f}s")


def _poly(coeffs, p=2):
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(f, g):
    n = max(len(f), len(g))
    return _poly([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def _pmul(f, g):
    out = [0] * (len(f) + len(g))
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _poly(out)


def test_criterion_07_triangular_map_and_ideal(cat, verdict):
    t0 = time.perf_counter()
    T = cat.ring("T2_Z2")
    nat = cat.monoid("NatAdd")

    def phi(x: MonoidRingElement):
        # matrix of polynomials (p11, p12, p22)
        return tuple(_poly([T.coords[x.coefficient(k)][s] for k in range(max(x.support, default=0) + 1)]) for s in range(3))

    def mmul(p, q):
        return (_pmul(p[0], q[0]), _padd(_pmul(p[0], q[1]), _pmul(p[1], q[2])), _pmul(p[2], q[2]))

    def madd(p, q):
        return tuple(_padd(u, v) for u, v in zip(p, q))

    domain = [el(T, nat, [(0, c0), (1, c1)]) for c0 in range(T.size) for c1 in range(T.size)]
    problems = []
    pairs = 0
    for x, y in itertools.product(domain, repeat=2):
        pairs += 1
        if phi(x * y) != mmul(phi(x), phi(y)) or phi(x + y) != madd(phi(x), phi(y)):
            problems.append(f"map fails at {x.render()}, {y.render()}")
            break
    if len({phi(x) for x in domain}) != len(domain):
        problems.append("map is not injective on the domain")
    I = cat.ring("I_T2_Z2")
    top_row = {x for x in range(T.size) if T.coords[x][2] == 0}
    if I.size != len(top_row):
        problems.append("I is not the top-row ideal")
    iv = check_armendariz(I, nat, Kind.PLAIN, Bounds(degree=2))
    if iv.status is not Status.HOLDS_UP_TO_BOUND:
        problems.append(f"I plain over NatAdd d=2: {iv.status.value}")
    tv = check_armendariz(T, nat, Kind.CENTRAL, Bounds(degree=2))
    if tv.status is not Status.FAILS or not recheck_witness(tv.witness):
        problems.append(f"T2_Z2 central: {tv.status.value}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(7, not problems and pairs == 64 ** 2, "; ".join(problems) or f"{pairs} pairs, {elapsed:.2f}s")


def test_criterion_08_trailing_idempotents(cat, verdict):
    t0 = time.perf_counter()
    nat = cat.monoid("NatAdd")
    support = (0, 1, 2, 3)
    problems, total = [], 0
    for R in cat.rings_up_to(8):
        for coeffs in itertools.product(range(R.size), repeat=len(support)):
            f = MonoidRingElement.from_coefficients(R, nat, support, coeffs)
            if f.is_zero() or f * f != f:
                continue
            total += 1
            c = f.terms[0][1]
            if R.mul[c][c] != c:
                problems.append(f"{R.name}: {f.render()}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(8, not problems and total > 0, "; ".join(problems[:5]) or f"{total} nonzero idempotents, {elapsed:.2f}s")


def test_criterion_09_monoid_facts(cat, verdict):
    t0 = time.perf_counter()
    problems = []
    for n in range(2, 7):
        rep = monoid_scan(construct_monoid(Cyclic(n)))
        if rep.unique_product is not False:
            problems.append(f"cyclic({n}) u.p. = {rep.unique_product}")
    for k in (1, 2):
        if monoid_scan(construct_monoid(NullAdjoined(k))).cancellative:
            problems.append(f"null_adjoined({k}) is cancellative")
    for M in cat.finite_monoids(min_size=2):
        if strict_total_order_exists(M):
            problems.append(f"{M.name} reports a strict total order")
        if M.size <= 4 and strict_total_order_search(M) is not None:
            problems.append(f"brute force orders {M.name}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 10.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(9, not problems, "; ".join(problems) or f"{elapsed:.2f}s")


def test_criterion_10_torsion_probe(cat, verdict):
    t0 = time.perf_counter()
    problems = []
    v = check_armendariz(cat.ring("Z2"), cat.monoid("C2"), Kind.CENTRAL, shortcuts=False)
    if v.status is not Status.HOLDS:
        problems.append(f"Z2 over C2: {v.status.value}")
    first = run_entry("prop_2_17_probe", cat)
    second = run_entry("prop_2_17_probe", cat)
    if not first.anomaly:
        problems.append("probe does not flag the anomaly")
    if first.to_dict() != second.to_dict():
        problems.append("probe is not deterministic")
    for inst in first.instances:
        if inst.result == "anomaly":
            ok, msg = recheck(inst.witness)
            if not ok:
                problems.append(f"anomaly witness rejected: {msg}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s")
    verdict(10, not problems, "; ".join(problems) or f"anomaly flagged, {elapsed:.2f}s")


def test_criterion_11_workers_determinism(verdict):
    c1, _, one = run_command(["suite", "run", "--json", "--workers", "1"])
    c8, _, eight = run_command(["suite", "run", "--json", "--workers", "8"])
    ok = one == eight and c1 == c8 and one.startswith("{")
    verdict(11, ok, f"{len(one.encode())} bytes, identical" if ok else "envelopes differ")


def test_criterion_12_oracle_agreement(cat, verdict):
    C2 = cat.monoid("C2")
    problems, rings, pairs = [], [], 0
    for R in cat.rings_up_to(6):
        fast = list(zero_product_pairs(R, C2))
        slow = list(zero_product_pairs_naive(R, C2))
        rings.append(R.name)
        pairs += len(slow)
        if fast != slow:
            problems.append(f"{R.name}: {len(fast)} vs {len(slow)} pairs")
    verdict(12, not problems and rings, "; ".join(problems) or f"{pairs} zero-product pairs over {rings}")
