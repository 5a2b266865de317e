import json
import os
import subprocess
import sys

import pytest


def run(*args, env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "dlq", *args], capture_output=True, text=True, env=full_env)


def ok_json(*args):
    res = run(*args)
    assert res.returncode == 0, res.stderr
    return json.loads(res.stdout)


def test_pieces_b3():
    out = ok_json("pieces", "--group", "B3", "--I", "1", "--w", "3,2,1,2", "--J", "1,2")
    nonempty = [(p["x_word"], p["status"]) for p in out if p["nonempty"]]
    assert nonempty == [([3, 2], "Case1"), ([3, 2, 1, 2, 3], "Case2")]
    assert [(p["length"], p["x_word"]) for p in out] == sorted((p["length"], p["x_word"]) for p in out)


def test_pieces_coxeter_a3():
    out = ok_json("pieces", "--group", "A3", "--I", "", "--w", "1,2,3", "--J", "")
    assert [p["x_word"] for p in out if p["nonempty"]] == [[1, 2, 1, 3, 2, 1]]


def test_output_is_deterministic():
    args = ("pieces", "--group", "B3", "--I", "1", "--w", "3,2,1,2", "--J", "1,2")
    assert run(*args).stdout == run(*args).stdout


def test_spec_file_and_flag_override(tmp_path):
    spec = tmp_path / "p.json"
    spec.write_text(json.dumps({"group": "B3", "I": [1], "w": [3, 2, 1, 2], "J": [1]}))
    with_file = ok_json("pieces", "--spec", str(spec))
    overridden = ok_json("pieces", "--spec", str(spec), "--J", "1,2")
    assert overridden == ok_json("pieces", "--group", "B3", "--I", "1", "--w", "3,2,1,2", "--J", "1,2")
    assert with_file != overridden


@pytest.mark.parametrize("args,msg", [
    (("pieces", "--group", "A3", "--w", "1,5"), "invalid simple index"),
    (("pieces", "--group", "B3", "--I", "1", "--w", "1,2", "--J", "1,2"), "w not I-reduced"),
    (("pieces", "--group", "2A3", "--w", "2", "--J", "1"), "J not F-stable"),
    (("cohom-bn", "--n", "1"), "n must be at least 2"),
    (("frobnicate",), "invalid choice"),
])
def test_errors_exit_2_with_one_line(args, msg):
    res = run(*args)
    assert res.returncode == 2
    assert res.stdout == ""
    lines = res.stderr.strip().splitlines()
    assert len(lines) == 1 and msg in lines[0]


def test_max_rank_env():
    res = run("pieces", "--group", "A4", "--w", "1", env={"DLQ_MAX_RANK": "3"})
    assert res.returncode == 2 and "DLQ_MAX_RANK" in res.stderr


def test_deodhar_rank_one():
    out = ok_json("deodhar", "--group", "A1", "--w", "1", "--x", "1", "--w-prime", "")
    assert [(c["n_gamma"], c["m_gamma"]) for c in out["cells"]] == [(0, 1)]
    assert out["mass_polynomial"] == [-1, 1]
    agg = ok_json("deodhar", "--group", "A1", "--w", "1", "--x", "1")
    assert agg["mass_polynomial"] == [0, 1]


def test_deodhar_incompatible_w_prime_is_empty():
    out = ok_json("deodhar", "--group", "A2", "--w", "1", "--w-prime", "2")
    assert out["cells"] == [] and out["mass_polynomial"] == [0]


def test_deodhar_aggregate_mass_is_q_power():
    out = ok_json("deodhar", "--group", "B2", "--w", "1,2,1", "--x", "2")
    assert out["mass_polynomial"] == [0, 0, 0, 1]


def test_cohom_bn():
    triv = ok_json("cohom-bn", "--n", "2", "--coeff", "triv")
    assert triv["table"] == [
        {"degree": 3, "q_exponent": 1, "character": "[-;2]"},
        {"degree": 6, "q_exponent": 3, "character": "[2;-]"},
    ]
    st = ok_json("cohom-bn", "--n", "2", "--coeff", "St")
    assert st["table"] == [
        {"degree": 3, "q_exponent": 0, "character": "[-;(1,1)]"},
        {"degree": 4, "q_exponent": 2, "character": "[(1,1);-]"},
    ]


def test_cohom_certificate():
    out = ok_json("cohom-bn", "--n", "3", "--coeff", "triv", "--certificate")
    assert out["x2_e"] == 1
    assert [c["admissible"] for c in out["certificates"]] == [True, False]


def test_coxeter_and_classify_and_chain():
    cox = ok_json("coxeter", "--group", "A3", "--J", "1,2")
    assert cox["gm_exponent"] == 1 and cox["v_is_coxeter"]
    cl = ok_json("classify", "--group", "B3", "--I", "1", "--w", "3,2,1,2", "--J", "1,2", "--x", "3,2")
    assert cl["status"] == "Case1" and cl["v_word"] == [2, 1]
    chain = json.dumps({"terms": [{"I": [1], "w": [3, 2, 1, 2], "gamma": 3}], "x": [[3, 2, 1, 2, 3]]})
    ch = ok_json("chain", "--group", "B3", "--J", "1,2", "--chain", chain)
    assert ch["verdicts"][0]["ok"] and ch["summary"]["d"] == 1


def test_cartan_flag_matches_label():
    a = ok_json("pieces", "--cartan", "[[2,-2],[-1,2]]", "--w", "2,1,2", "--J", "1")
    b = ok_json("pieces", "--group", "B2", "--w", "2,1,2", "--J", "1")
    assert a == b
