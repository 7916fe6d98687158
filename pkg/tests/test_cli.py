import json
import math

import numpy as np
import pytest

from mpconcurrence import bounds, cli
from mpconcurrence.bounds import Coefficient
from mpconcurrence.io import load_state, parse_state, save_state, state_to_dict
from mpconcurrence.states import (
    DctParams,
    PureState,
    basis_state,
    dct_state,
    depolarized_ghz_333,
    ghz_pair,
    random_mixed,
)
from mpconcurrence.tensor import InvalidInputError


@pytest.fixture
def write_state(tmp_path):
    def _write(state, name="state.json"):
        path = tmp_path / name
        save_state(state, path)
        return str(path)
    return _write


def test_state_file_round_trip(tmp_path):
    rho = random_mixed((2, 2, 2), 3, 0)
    save_state(rho, tmp_path / "r.json")
    back = load_state(tmp_path / "r.json")
    np.testing.assert_array_equal(back.matrix, rho.matrix)
    psi = ghz_pair((3, 3, 3), 0, 2)
    save_state(psi, tmp_path / "p.json")
    np.testing.assert_array_equal(load_state(tmp_path / "p.json").amplitudes, psi.amplitudes)


def test_state_kind_inferred():
    doc = state_to_dict(basis_state((0, 1), (2, 2)))
    del doc["kind"]
    assert isinstance(parse_state(doc), PureState)
    doc = state_to_dict(dct_state(DctParams.example1()))
    del doc["kind"]
    assert parse_state(doc).dims == (2, 2, 2)


@pytest.mark.parametrize("doc", [
    {"dims": [2, 2]},
    {"dims": [2, 2], "entries": []},
    {"dims": [2, 2], "kind": "pure", "entries": [[1, 0, 0]] * 4},
    {"dims": [2, 2], "kind": "weird", "entries": [[1, 0]] * 4},
    {"dims": [2, 2], "kind": "density", "entries": [[[1, 0]] * 4] * 4},
])
def test_state_parse_errors(doc):
    with pytest.raises(InvalidInputError):
        parse_state(doc)


def test_cmd_pure_ghz(write_state, capsys):
    assert cli.main(["pure", write_state(ghz_pair((2, 2, 2), 0, 1)), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["purity"] == pytest.approx(math.sqrt(3))
    assert out["minors"] == pytest.approx(math.sqrt(3))
    assert out["difference"] < 1e-9


def test_cmd_pure_product(write_state, capsys):
    assert cli.main(["pure", write_state(basis_state((0, 1, 1), (2, 2, 2)))]) == 0
    out = capsys.readouterr().out
    assert "minor form  0.0" in out and "purity form 0.0" in out


def test_cmd_pure_errors(tmp_path, write_state):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["pure", str(bad)]) == 1
    assert cli.main(["pure", str(tmp_path / "missing.json")]) == 1
    assert cli.main(["pure", write_state(dct_state(DctParams.example1()))]) == 1


def test_cmd_bound_dct(write_state, capsys):
    assert cli.main(["bound", write_state(dct_state(DctParams.example1())), "--method", "theorem2"]) == 0
    out = capsys.readouterr().out
    assert "0.38490017945975" in out


def test_cmd_bound_depolarized_json_round_trip(write_state, capsys):
    path = write_state(depolarized_ghz_333(1.0))
    assert cli.main(["bound", path, "--method", "hierarchy", "--m", "2", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["value"] >= math.sqrt(1.5) - 1e-12
    assert rep["value"] == math.sqrt(rep["value_squared"])
    assert rep["coefficient"]["numerator"] == 1 and rep["coefficient"]["denominator"] == 2
    nonzero = [t for t in rep["per_substate"] if t["value_squared"] > 0]
    assert [t["selector"] for t in nonzero] == [[[0, 2], [0, 2], [0, 2]]]


def test_cmd_bound_degenerate_hierarchy(write_state, capsys):
    path = write_state(random_mixed((2, 2, 2), 2, 3))
    cli.main(["bound", path, "--method", "theorem2", "--json"])
    t2 = json.loads(capsys.readouterr().out)["value"]
    cli.main(["bound", path, "--method", "hierarchy", "--m", "2", "--json"])
    assert json.loads(capsys.readouterr().out)["value"] == t2


def test_cmd_bound_weights(write_state, capsys):
    path = write_state(depolarized_ghz_333(0.6))
    assert cli.main(["bound", path, "--weights", "2:1.0", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["method"] == "convex" and rep["components"][0]["m"] == 2
    assert cli.main(["bound", path, "--weights", "2:0.3"]) == 1
    assert cli.main(["bound", path, "--weights", "two"]) == 1


def test_cmd_bound_incompatible_dims(write_state):
    assert cli.main(["bound", write_state(depolarized_ghz_333(0.5)), "--method", "theorem2"]) == 1


def test_cmd_bound_text_lists_contributions(write_state, capsys):
    cli.main(["bound", write_state(depolarized_ghz_333(0.5)), "--parallel"])
    out = capsys.readouterr().out
    assert "coefficient 1/2" in out and "({0,2},{0,2},{0,2})" in out


def test_cmd_bound_numerical_failure_exit_code(write_state, monkeypatch):
    def broken(rho):
        raise np.linalg.LinAlgError("SVD did not converge")
    monkeypatch.setattr(cli, "three_qubit_bound", broken)
    assert cli.main(["bound", write_state(dct_state(DctParams.example1())), "--method", "theorem2"]) == 2


def test_sweep_depol_shape(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["sweep", "depol333", "--steps", "30", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,bound,pt_sum,realign_sum"
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    assert len(rows) == 30
    xs = [r[0] for r in rows]
    assert xs[0] == 0.0 and xs[-1] == 1.0 and all(a < b for a, b in zip(xs, xs[1:]))
    after = [r[1] for r in rows if r[0] > 2 / 29]
    assert all(r[1] == 0 for r in rows if r[0] < 2 / 29)
    assert all(b > 0 for b in after) and all(a < b for a, b in zip(after, after[1:]))


def test_sweep_two_steps_and_dct(tmp_path, capsys):
    assert cli.main(["sweep", "dct", "--steps", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    x, bound = map(float, lines[2].split(",")[:2])
    assert x == 1.0 and bound == pytest.approx(math.sqrt(3))


def test_sweep_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "depol333", "--start", "0.05", "--stop", "1", "--steps", "12"]
    cli.main(args + ["--output", str(a)])
    cli.main(args + ["--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_sweep_errors(tmp_path):
    assert cli.main(["sweep", "depol333", "--steps", "1"]) == 1
    assert cli.main(["sweep", "depol333", "--start", "1", "--stop", "0"]) == 1
    assert cli.main(["sweep", "depol333", "--output", str(tmp_path / "no" / "dir.csv")]) == 1
    assert cli.main(["sweep", "depol333", "--method", "theorem2", "--steps", "2"]) == 1


def test_verify_default_passes(capsys):
    assert cli.main(["verify", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 5


def test_verify_minimal():
    assert cli.main(["verify", "--trials", "1"]) == 0
    assert cli.main(["verify", "--trials", "0"]) == 1


def test_verify_faulty_coefficient(monkeypatch, capsys):
    def faulty(N, m, n=3):
        return Coefficient(10, 1, N, m, n)
    monkeypatch.setattr(bounds, "substate_coefficient", faulty)
    assert cli.main(["verify", "--trials", "5", "--seed", "4"]) == 3
    out = capsys.readouterr().out
    assert "FAIL pure-hierarchy" in out and "seed=(4, 3, 0, 0)" in out
