from __future__ import annotations

import io
import json

import pytest

from cogrowth.algebra.poly import BivariatePoly
from cogrowth.analytic import SingularityReport
from cogrowth.cli import (
    EXIT_CAPACITY, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main, render_bfile,
    sequence_from_json, sequence_to_json,
)
from cogrowth.groups import z2_zn
from cogrowth.oracle import cogrowth_sequence
from cogrowth.verify import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def _write(tmp_path, text, name="spec.json"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- count ---------------------------------------------------------------------------

def test_count_text_and_bfile():
    code, out = run("count", "--z2zn", "4", "-N", "8")
    assert code == EXIT_OK and out == "1, 0, 1, 0, 2, 0, 7, 0, 22\n"
    code, out = run("count", "--cyclic", "2", "2", "-N", "10", "--format", "bfile")
    assert code == EXIT_OK
    assert out.splitlines() == [f"{n} {a}" for n, a in enumerate([1, 0, 2, 0, 6, 0, 20, 0, 70, 0, 252])]
    code, out = run("count", "--cyclic", "2", "2", "-N", "2", "--format", "bfile", "--offset", "5")
    assert out == "5 1\n6 0\n7 2\n"


def test_count_json_round_trip():
    code, out = run("count", "--z2zn", "3", "--symmetric", "-N", "9", "--format", "json")
    assert code == EXIT_OK
    seq = sequence_from_json(json.loads(out))
    assert seq == cogrowth_sequence(z2_zn(3, symmetric=True), 9)
    assert sequence_from_json(json.loads(json.dumps(sequence_to_json(seq)))) == seq


def test_count_from_spec_file(tmp_path):
    path = _write(tmp_path, json.dumps({"factors": [{"kind": "cyclic", "order": 3, "gens": ["x", "x^-1"]}, {"kind": "Z"}]}))
    code, out = run("count", "--spec", path, "-N", "4")
    assert code == EXIT_OK and out == "1, 0, 4, 2, 28\n"
    path = _write(tmp_path, json.dumps({"factors": [{"kind": "cyclic", "order": 1, "gens": []}]}), "trivial.json")
    assert run("count", "--spec", path, "-N", "3") == (EXIT_OK, "1, 0, 0, 0\n")


def test_render_bfile():
    assert render_bfile([1, 0, 2], 1) == "1 1\n2 0\n3 2\n"


# -- minpoly / radius -----------------------------------------------------------------

def test_minpoly_text():
    code, out = run("minpoly", "--cyclic", "2", "3")
    assert code == EXIT_OK
    assert "9*t^2*z^2 - z^2 - z + 2" in out and "divides annihilator: yes" in out


def test_minpoly_json():
    code, out = run("minpoly", "--z2zn", "3", "--format", "json")
    assert code == EXIT_OK
    obj = json.loads(out)
    L = BivariatePoly.from_json(obj["annihilator"])
    m = BivariatePoly.from_json(obj["minimal"])
    assert m.deg_z() == 3 and L.deg_z() >= 3 and obj["notice"] is None


@pytest.mark.parametrize("argv,want", [
    (("--cyclic", "2", "3"), 0.35355339059327),
    (("--z2zn", "3"), 0.5072330945238),
    (("--cyclic", "2", "2"), 0.5),
])
def test_radius_values(argv, want):
    code, out = run("radius", *argv, "--format", "json")
    assert code == EXIT_OK
    rep = SingularityReport.from_json(json.loads(out)["report"])
    assert abs(rep.rho - want) <= 1e-9
    code, out = run("radius", *argv)
    assert out.startswith("radius: ") and abs(float(out.split()[1]) - want) <= 1e-9


def test_radius_closed_form_for_cyclic():
    code, out = run("radius", "--cyclic", "3", "2")
    assert code == EXIT_OK and "closed form" in out


# -- verify / grammar ----------------------------------------------------------------

@pytest.mark.parametrize("name", ["table1", "thm12"])
def test_verify_sets_pass(name):
    code, out = run("verify", name, "--format", "json")
    assert code == EXIT_OK
    rep = VerificationReport.from_json(json.loads(out))
    assert rep.passed and rep.records


def test_verify_unknown_set():
    assert run("verify", "nope")[0] == EXIT_USAGE


def test_grammar_exports():
    code, out = run("grammar", "--z2-free", "1", "1", "--symmetry")
    assert code == EXIT_OK and len(out.splitlines()) == 10
    code, out = run("grammar", "--cyclic", "3", "1", "--format", "json")
    assert code == EXIT_OK and "unknowns" in json.loads(out)
    assert run("grammar", "--cyclic", "3", "1", "--format", "bfile")[0] == EXIT_USAGE


# -- errors ----------------------------------------------------------------------------

def test_usage_errors(tmp_path, capsys):
    assert run("count")[0] == EXIT_USAGE
    assert run("count", "--cyclic", "2")[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("count", "--cyclic", "2", "2", "-N", "-1")[0] == EXIT_USAGE
    assert run("count", "--cyclic", "1", "2")[0] == EXIT_USAGE
    path = _write(tmp_path, '{"factors": [\n  {"kind": "cyclic",, "order": 2}]}')
    assert run("count", "--spec", path)[0] == EXIT_USAGE
    assert f"{path}:2:" in capsys.readouterr().err
    assert run("count", "--spec", str(tmp_path / "missing.json"))[0] == EXIT_USAGE
    path = _write(tmp_path, json.dumps({"factors": [{"kind": "dihedral"}]}), "bad.json")
    assert run("count", "--spec", path)[0] == EXIT_USAGE


def test_capacity_exit():
    assert run("count", "--cyclic", "2", "2", "-N", "40")[0] == EXIT_CAPACITY
    assert run("count", "--cyclic", "3", "3", "-N", "20", "--state-cap", "5")[0] == EXIT_CAPACITY


def test_threads_variable(monkeypatch):
    monkeypatch.setenv("COGROWTH_THREADS", "2")
    assert run("count", "--cyclic", "2", "2", "-N", "2")[0] == EXIT_OK
    for bad in ("0", "many"):
        monkeypatch.setenv("COGROWTH_THREADS", bad)
        assert run("count", "--cyclic", "2", "2", "-N", "2")[0] == EXIT_USAGE


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAPACITY) == (0, 1, 2, 3)
