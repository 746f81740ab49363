from __future__ import annotations

import pytest

from mrlab.replay import iter_witnesses, recheck
from mrlab.suite import ENTRIES, Instance, TheoremReport, UnknownEntry, polynomial_central_witness, run_entry

FAST = [e for e in ENTRIES if e not in ("thm_2_3", "remark_2_2")]


@pytest.mark.parametrize("thm", FAST)
def test_entry_outcomes(cat, thm):
    rep = run_entry(thm, cat)
    expected = "anomaly" if thm in ("prop_2_5", "prop_2_17_probe") else "pass"
    assert rep.outcome == expected, [i.label for i in rep.failures()]
    for path, obj in iter_witnesses(rep.to_dict()):
        ok, msg = recheck(obj)
        assert ok, (path, msg)


def test_literal_witness_anomaly_is_characteristic_three(cat):
    rep = run_entry("prop_2_5", cat)
    anomalies = [i for i in rep.instances if i.result == "anomaly"]
    assert anomalies and all(i.label.startswith("T2_Z3") for i in anomalies)
    corrected = [i for i in rep.instances if "(f e + x g)" in i.label]
    assert corrected and all(i.result == "pass" for i in corrected)


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        run_entry("nope")


def test_anomaly_requires_witness():
    with pytest.raises(ValueError):
        Instance("x", "anomaly")
    rep = TheoremReport("t", "s")
    rep.add("a", "pass")
    rep.add("b", "budget")
    assert rep.outcome == "budget"
    rep.add("c", "fail")
    assert rep.outcome == "fail"


def test_runtime_excluded_without_timing(cat):
    rep = run_entry("lem_2_14", cat)
    assert "runtime" not in rep.to_dict()
    assert rep.to_dict(timing=True)["runtime"] is not None


def test_polynomial_oracle_agrees_with_checker(cat):
    from mrlab.properties import Bounds, Kind, check_armendariz

    nat = cat.monoid("NatAdd")
    for name in ("Z4", "T2_Z2", "I_T2_Z2"):
        R = cat.ring(name)
        v = check_armendariz(R, nat, Kind.CENTRAL, Bounds(degree=1), shortcuts=False)
        assert (polynomial_central_witness(R, 1) is not None) == v.fails
