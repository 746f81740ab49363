from __future__ import annotations

import copy
import json
import subprocess
import sys

import pytest

from mrlab.cli import SCHEMA, dumps, main, run_command
from mrlab.monoid_ring import MonoidRingElement
from mrlab.replay import product_witness, recheck


@pytest.fixture(scope="module")
def suite_report(tmp_path_factory):
    path = tmp_path_factory.mktemp("suite") / "suite.json"
    code, env, _ = run_command(["suite", "run", "--json", "--out", str(path)])
    return code, env, path


def test_catalog_list():
    code, env, text = run_command(["catalog", "list", "--json"])
    assert code == 0 and env["schema"] == SCHEMA
    names = [r["name"] for r in env["results"][0]["rings"]]
    assert {"Z2", "T2_Z2", "M2_Z2", "H_Z2", "I_T2_Z2"} <= set(names)
    assert json.loads(text) == env


def test_scans():
    code, env, text = run_command(["ring", "scan", "T2_Z2"])
    assert code == 0 and "J(R) = P(R)" in text
    code, env, text = run_command(["monoid", "scan", "N1", "--json"])
    assert code == 0 and env["results"][0]["cancellative"] is False


def test_check_central_t2(cat):
    code, env, text = run_command(["check", "central_armendariz", "--ring", "T2_Z2", "--monoid", "C2", "--json"])
    assert code == 1
    verdict = env["results"][0]
    assert verdict["status"] == "Fails"
    ok, msg = recheck(verdict["witness"])
    assert ok, msg
    # the commonly quoted pair E12 e + E12 g, 1 e + 1 g is also a valid witness
    R, M = cat.ring("T2_Z2"), cat.monoid("C2")
    e12 = R.index_of("[[0,1],[0,0]]")
    alpha = MonoidRingElement.from_terms(R, M, [(0, e12), (1, e12)])
    beta = MonoidRingElement.from_terms(R, M, [(0, R.one), (1, R.one)])
    partner = next(r for r in range(R.size) if R.mul[e12][r] != R.mul[r][e12])
    ok, msg = recheck(product_witness(alpha, beta, "zero", 0, 0, partner))
    assert ok, msg


def test_check_exit_codes():
    assert run_command(["check", "nil_armendariz", "--ring", "Z6", "--monoid", "NatAdd", "--degree", "2"])[0] == 0
    assert run_command(["check", "reduced", "--ring", "Z4"])[0] == 1
    assert run_command(["check", "reduced", "--ring", "Z4", "--monoid", "C2"])[0] == 2
    assert run_command(["check", "plain_armendariz", "--ring", "Z4", "--monoid", "C2", "--degree", "1"])[0] == 2
    assert run_command(["check", "plain_armendariz", "--ring", "Nope", "--monoid", "C2"])[0] == 2
    assert run_command(["check", "plain_armendariz", "--ring", "Z4"])[0] == 2
    assert run_command(["check", "bogus", "--ring", "Z4"])[0] == 2
    budget = run_command(["check", "central_armendariz", "--ring", "Z3", "--monoid", "C3", "--no-shortcuts", "--max-alphas", "5"])
    assert budget[0] == 3


def test_search_exit_codes():
    assert run_command(["search", "--target", "¬abelian", "--family", "{T2_Z2, M2_Z2}"])[0] == 0
    assert run_command(["search", "--target", "commutative", "--max-structures", "1"])[0] == 3
    assert run_command(["search", "--target", "abelian and"])[0] == 2


def test_suite_subset_and_unknown():
    code, env, _ = run_command(["suite", "run", "--only", "lem_2_14,ex_2_9", "--json"])
    assert code == 0 and [r["id"] for r in env["results"]] == ["lem_2_14", "ex_2_9"]
    assert run_command(["suite", "run", "--only", "nope"])[0] == 2
    code, env, _ = run_command(["suite", "run", "--only", "prop_2_17_probe", "--json"])
    assert code == 1 and env["results"][0]["anomaly"]


def test_full_suite_witnesses_verify(suite_report, tmp_path):
    code, env, path = suite_report
    assert code == 1  # the two anomalies
    c, venv, _ = run_command(["verify-witness", str(path), "--json"])
    res = venv["results"][0]
    assert c == 0 and res["all_confirmed"] and res["checked"] > 100
    types = {chk["type"] for chk in res["checks"]}
    assert types == {"armendariz_witness", "classical_witness", "product_witness", "exhaustive_holds"}

    bad = copy.deepcopy(env)
    for rep in bad["results"]:
        for inst in rep["instances"]:
            w = inst["witness"]
            if w and w["type"] == "armendariz_witness":
                w["beta"]["terms"] = [[0, w["beta"]["terms"][0][1]]]
                break
        else:
            continue
        break
    tampered = tmp_path / "bad.json"
    tampered.write_text(dumps(bad))
    assert run_command(["verify-witness", str(tampered)])[0] == 1
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert run_command(["verify-witness", str(garbage)])[0] == 2
    assert run_command(["verify-witness", str(tmp_path / "missing.json")])[0] == 2


def test_envelope_is_deterministic_and_timing_optional():
    argv = ["suite", "run", "--only", "ex_2_13", "--json"]
    a, b = run_command(argv)[2], run_command(argv)[2]
    assert a == b and "wall_clock" not in a and "runtime" not in a
    env = run_command(argv + ["--timing"])[1]
    assert "wall_clock" in env and "runtime" in env["results"][0]
    assert run_command(argv + ["--workers", "2"])[2] == a


def test_config_file(tmp_path):
    cfg = tmp_path / "ex.cfg"
    cfg.write_text('ring "T3" { upper_triangular = { base = "Z3", k = 2 } }\nbudget { workers = 1 }\noutput { format = "json" }\n')
    code, env, text = run_command(["check", "abelian", "--ring", "T3", "--config", str(cfg)])
    assert code == 1 and json.loads(text)["results"][0]["status"] == "Fails"
    capped = tmp_path / "capped.cfg"
    capped.write_text("budget { support = [1, 1] }\n")
    code, env, _ = run_command(["check", "central_armendariz", "--ring", "T2_Z2", "--monoid", "C2", "--config", str(capped), "--json"])
    assert code == 1 and env["results"][0]["bound"]["exhaustive"]  # NatAdd-only defaults leave finite checks exhaustive
    bad = tmp_path / "bad.cfg"
    bad.write_text('ring "X" { zn = 0 }')
    code, _, text = run_command(["catalog", "list", "--config", str(bad)])
    assert code == 2 and "line 1" in text


def test_out_file(tmp_path):
    out = tmp_path / "r.json"
    code, env, _ = run_command(["check", "abelian", "--ring", "T2_Z2", "--out", str(out)])
    assert code == 1 and json.loads(out.read_text()) == env


def test_main_and_module_entry(capsys):
    assert main(["check", "commutative", "--ring", "Z2"]) == 0
    assert "commutative for Z2: Holds" in capsys.readouterr().out
    proc = subprocess.run([sys.executable, "-m", "mrlab.cli", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "T2_Z2" in proc.stdout
