import json
import subprocess
import sys

import pytest

from capelli.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf_examples(capsys):
    assert run(capsys, "nf", "--algebra", "weyl:1x1", "--expr", "d[1,1]*x[1,1]") == (0, "x[1,1]*d[1,1] + 1\n", "")
    code, out, _ = run(capsys, "nf", "--algebra", "gl:2", "--expr", "comm(E[1,2],E[2,1])")
    assert (code, out) == (0, "-E[2,2] + E[1,1]\n")


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "--algebra", "poly", "--expr", "(a+1)^2", "--format", "json")
    assert code == 0
    assert json.loads(out)["normalForm"] == "a^2 + 2*a + 1"


@pytest.mark.parametrize(
    "argv",
    [
        ["nf", "--algebra", "weyl:2x1", "--expr", "x[3,1]"],
        ["nf", "--algebra", "weyl:1x1", "--expr", "x[1,1] +"],
        ["nf", "--algebra", "banana", "--expr", "1"],
        ["verify", "--pair", "gl", "--k", "1"],
        ["verify", "--pair", "gl", "--n", "2", "--k", "1", "--identity", "spo.f2"],
        ["verify", "--pair", "gl", "--n", "2", "--k", "1", "--seed", "-1"],
        ["verify", "--pair", "gl", "--n", "2", "--k", "1", "--t", "x"],
        ["calibrate", "--template", "spo", "--params", "N"],
        ["orbits", "--pair", "gl", "--n", "3", "--k", "2", "--lift"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_verify_pass_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--pair", "gl", "--n", "2", "--k", "1", "--t", "0", "--suite", "gl-all")
    assert code == 0
    assert out.strip().endswith("summary: 8 pass, 0 fail")


def test_verify_failure_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "--pair", "gl", "--n", "2", "--k", "1", "--normalized", "--alpha", "1")
    assert code == 1
    assert "FAIL  gl.normalized_quadratic" in out


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--pair", "spo", "--N", "4", "--k", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == ["suite", "parameters", "reports", "summary"]
    assert doc["suite"] == "spo-all"
    assert doc["summary"] == {"pass": len(doc["reports"]), "fail": 0}
    fields = {"identityId", "parameters", "convention", "status", "witness", "elapsedMs"}
    for rep in doc["reports"]:
        assert fields <= set(rep)
        assert rep["elapsedMs"] is None


def test_identical_seeds_give_identical_bytes(capsys, monkeypatch):
    argv = ["verify", "--pair", "gl", "--n", "3", "--k", "1", "--t", "1", "--format", "json", "--seed", "99"]
    first = run(capsys, *argv)
    second = run(capsys, *argv, "--jobs", "2")
    assert first == second
    monkeypatch.setenv("CAPELLI_SEED", "99")
    from_env = run(capsys, *argv[:-2])
    assert from_env == first
    other = run(capsys, *argv[:-1], "100")
    assert other[1] != first[1]


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "verify", "--pair", "spo", "--N", "4", "--k", "1", "--identity", "spo.f2",
                    "--format", "json", "--timings")
    (rep,) = json.loads(out)["reports"]
    assert isinstance(rep["elapsedMs"], float)


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--lift", "--pair", "spo", "--N", "6", "--k", "1")
    assert code == 0
    assert "(2,2,1,1)" in out.splitlines()[-1]
    code, out, _ = run(capsys, "orbits", "--lift", "--pair", "gl", "--n", "5", "--k", "2", "--format", "json")
    assert json.loads(out)["lift"]["target"]["partition"] == [2, 2, 1]


def test_calibrate(capsys):
    code, out, _ = run(capsys, "calibrate", "--template", "gl.normalized", "--params", "n=4,k=1,alpha=1",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["match"] is False and doc["residual_zero"] is True
    assert doc["solved_constants"] == {"c1": "-3", "c0": "5/4", "trace": "-1"}


def test_generators(capsys):
    code, out, _ = run(capsys, "generators", "--pair", "spo", "--N", "4", "--k", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["polynomial"] == ["0", "-1", "1"]
    assert doc["generators"][-1]["name"] == "Pf(1, 2, 3, 4)"
    code, _, err = run(capsys, "generators", "--pair", "gl", "--n", "3", "--k", "2")
    assert code == 0 and "stable range" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "capelli", "nf", "--algebra", "weyl:1x1", "--expr", "d[1,1]*x[1,1]"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "x[1,1]*d[1,1] + 1\n"
