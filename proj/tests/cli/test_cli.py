import json
import os
import subprocess

import pytest

BIN = os.environ.get("HOMDOM_BIN", "homdom")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("HOMDOM_SEED", None)
    full_env.update(env or {})
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)
    return proc.returncode, proc.stdout, proc.stderr


def report(*args, env=None):
    code, out, err = run(*args, env=env)
    assert code == 0, err
    return json.loads(out)


def test_exponent_examples():
    assert report("exponent", "K4-e", "K3")["result"]["lower"] == "2"
    assert report("exponent", "P5", "P13")["result"]["upper"] == "17/39"
    code, out, _ = run("exponent", "C3", "C4")
    assert code == 3
    assert json.loads(out)["result"]["upper"] == "nonexistent"


def test_exponent_header_carries_config():
    doc = report("exponent", "C6", "C4", "--seed", "11")
    assert doc["config"]["command"] == "exponent"
    assert doc["config"]["global"]["seed"] == 11
    assert doc["result"]["lower"] == "12/7"


def test_usage_errors():
    assert run("exponent", "nonsense!", "K3")[0] == 2
    assert run("exponent", "K3")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("cone")[0] == 2


def test_lp_and_cone():
    doc = report("lp", "--kr", "2")["result"]
    assert doc["optimum"] == "3" and doc["certificate_valid"]
    doc = report("cone", "--even", "3")["result"]
    assert doc["equality"] is True
    assert len(doc["rays"]) == 3


def test_verify_exit_codes():
    assert run("verify", "--g", "C5", "--h", "C3", "--c", "11/5", "--exhaustive", "5")[0] == 0
    code, out, _ = run("verify", "--g", "K2", "--h", "K3", "--c", "1/2", "--constructions")
    assert code == 1
    assert json.loads(out)["result"]["violations"]


def test_seed_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "construct", "family": "gnp", "params": "n=8", "seed": 3}))
    by_config = report("--config", str(cfg))
    assert by_config["config"]["global"]["seed_source"] == "config"
    by_env = report("--config", str(cfg), env={"HOMDOM_SEED": "5"})
    assert by_env["config"]["global"]["seed"] == 5
    by_flag = report("--config", str(cfg), "--seed", "3", env={"HOMDOM_SEED": "5"})
    assert by_flag["config"]["global"]["seed"] == 3
    assert by_flag["result"] == by_config["result"]


def test_construct_emit_and_estimate():
    code, out, _ = run("construct", "--family", "graph", "--graph", "K3", "--emit")
    assert code == 0 and out.strip() == "Bw"
    assert run("construct", "--family", "path_blowup", "--params", "k=2,l=1,n=4", "--emit")[0] == 2
    doc = report("estimate", "--g", "C4", "--h", "C3", "--family", "projective:k=2", "--sizes", "5,7")
    assert [p["size"] for p in doc["result"]["points"]] == [5, 7]


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run("lp", "--kr", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["optimum"] == "5"
