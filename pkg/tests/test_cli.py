import csv
import io
import json
import math
import subprocess
import sys

import pytest

from thermorep.cli import main
from thermorep.representability import canonical_bound

SMALL = ["--points", "401"]


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_and_certify_roundtrip(tmp_path, capsys):
    state = tmp_path / "state.json"
    cert = tmp_path / "cert.json"
    code, out, _ = _run(capsys, "construct", "--ensemble", "gc-full", "--Nbar", "2.5", "--S", "1",
                        "--state-out", str(state), *SMALL)
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True and doc["parameters"]["N"] == 3 and doc["parameters"]["M"] == 5
    assert _run(capsys, "certify", str(state), "--out", str(cert))[0] == 0
    assert cert.read_text() == out


@pytest.mark.parametrize("argv", [
    ["--ensemble", "canonical", "--N", "2", "--S", "1.5", "--statistics", "boson", "--ordering", "kinetic"],
    ["--ensemble", "gc-entropy", "--S", "1", "--density", "cosine-bump:2"],
    ["--ensemble", "gc-full", "--Nbar", "1", "--S", "0.3", "--density", "exponential:1"],
])
def test_construct_variants_pass(argv, capsys):
    code, out, _ = _run(capsys, "construct", *argv, *SMALL)
    assert code == 0 and json.loads(out)["pass"] is True


def test_construct_from_csv_density(tmp_path, capsys):
    path = tmp_path / "rho.csv"
    xs = [-4 + 8 * i / 400 for i in range(401)]
    path.write_text("x,rho\n" + "".join(f"{x!r},{math.exp(-x * x / 2)!r}\n" for x in xs))
    state = tmp_path / "s.json"
    code, out, _ = _run(capsys, "construct", "--ensemble", "canonical", "--N", "2", "--S", "1",
                        "--density", str(path), "--state-out", str(state))
    assert code == 0
    assert _run(capsys, "certify", str(state))[1] == out


def test_certify_detects_tampering(tmp_path, capsys):
    state = tmp_path / "state.json"
    _run(capsys, "construct", "--ensemble", "gc-full", "--Nbar", "2.5", "--S", "1", "--state-out", str(state), *SMALL)
    doc = json.loads(state.read_text())
    doc["construction"]["targets"]["S"] = 1.2
    state.write_text(json.dumps(doc))
    code, out, _ = _run(capsys, "certify", str(state))
    assert code == 2 and json.loads(out)["pass"] is False


def test_enumerate_grand(capsys):
    code, out, _ = _run(capsys, "enumerate", "--ensemble", "grand", "--count", "3")
    assert code == 0
    lines = [json.loads(x) for x in out.splitlines()]
    assert [x["sectors"] for x in lines] == [{"1": [0]}, {"1": [1]}, {"1": [-1]}]
    assert [x["index"] for x in lines] == [1, 2, 3]


def test_enumerate_canonical_kinetic(capsys):
    code, out, _ = _run(capsys, "enumerate", "--N", "2", "--count", "50", "--ordering", "kinetic")
    sq = [json.loads(x)["sum_sq"] for x in out.splitlines()]
    assert code == 0 and sq == sorted(sq) and len(sq) == 50


def test_bounds_csv(capsys):
    code, out, _ = _run(capsys, "bounds", "--ensemble", "canonical", "--N", "1", "--start", "0", "--stop", "2",
                        "--num", "5", *SMALL)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["S", "bound"] and len(rows) == 6
    values = [float(b) for _, b in rows[1:]]
    assert values == sorted(values)
    assert float(rows[1][0]) == 0.0 and values[0] > canonical_bound(1, 0.0, "fermion", 0.0)


def test_bounds_gc_full_sweep_nbar(capsys):
    code, out, _ = _run(capsys, "bounds", "--ensemble", "gc-full", "--sweep", "Nbar", "--S", "1",
                        "--start", "0.5", "--stop", "3", "--num", "4", *SMALL)
    assert code == 0 and out.splitlines()[0] == "Nbar,bound" and len(out.splitlines()) == 5


def test_orbitals_csv(capsys):
    code, out, err = _run(capsys, "orbitals", "--kmax", "2", "--points", "4001")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["k"]) for r in rows] == [-2, -1, 0, 1, 2]
    for r in rows:
        assert float(r["kinetic"]) <= float(r["bound"])
        assert float(r["gram_offdiag"]) <= 1e-6
    assert "max off-diagonal" in err


def test_identities_small_reports_known_false_claim(capsys):
    # the ln h(l) >= 2 l^2 ln l check fails at l = 2, so the command reports failure
    code, out, _ = _run(capsys, "identities", "--Nmax", "3", "--lmax", "2")
    assert code == 2
    assert "ln_h_lower" in out


@pytest.mark.parametrize("argv", [
    ["construct", "--ensemble", "canonical", "--S", "1"],  # missing --N
    ["construct", "--ensemble", "gc-full", "--Nbar", "1", "--S", "1", "--points", "400"],  # even points
    ["construct", "--ensemble", "gc-full", "--Nbar", "1", "--S", "1", "--points", "101"],  # too few
    ["construct", "--ensemble", "gc-full", "--Nbar", "2.5", "--S", "0"],  # infeasible
    ["construct", "--ensemble", "gc-full", "--Nbar", "1", "--S", "1", "--density", "gaussian:x"],
    ["frobnicate"],
    ["enumerate", "--count", "0", "--N", "1"],
    ["certify", "/nonexistent/state.json"],
    [],
])
def test_usage_errors_exit_one(argv, capsys):
    code, _, err = _run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thermorep", "enumerate", "--N", "1", "--count", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert len(proc.stdout.splitlines()) == 2
