import json

import pytest
from gmpy2 import mpq

from phylon import io
from phylon.cli import main
from phylon.group import PairInstance, act_on_pair
from phylon.normalization import verify_witness
from phylon.random_instances import make_rng, random_pair, square_pivot_map
from phylon.series import TruncatedSeries


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def q_pair(dim, b0, nf=4, nb=2):
    return PairInstance(TruncatedSeries.quadratic_form(dim, nf), TruncatedSeries.constant(dim, nb, b0))


def test_invariants_command(tmp_path, capsys):
    p = write(tmp_path / "a.json", io.pair_to_json(q_pair(2, 1)))
    code, out = run(capsys, ["invariants", p, "--orders", "2"])
    assert code == 0
    assert [v["rational_part"] for v in out["invariants"]] == ["1", "0", "0"]
    assert out["invariants"][0]["prefactor"] == {"two_pi_exp": "1", "det_f": "4"}
    code, red = run(capsys, ["invariants", p, "--orders", "2", "--reduced"])
    assert red == out
    code, pairings = run(capsys, ["invariants", p, "--orders", "2", "--route", "pairings"])
    assert pairings == out


def test_equiv_rejects(tmp_path, capsys):
    a = write(tmp_path / "a.json", io.pair_to_json(q_pair(2, 1)))
    c = write(tmp_path / "c.json", io.pair_to_json(q_pair(2, 2)))
    code, out = run(capsys, ["equiv", a, c, "--degree", "2"])
    assert code == 1 and out["failure_order"] == 0 and not out["equivalent"]


def test_act_then_equiv(tmp_path, capsys):
    rng = make_rng(5)
    pair = random_pair(rng, 2, 5, 3)
    psi = square_pivot_map(rng, pair, 5)
    a = write(tmp_path / "a.json", io.pair_to_json(pair, psi))
    moved = tmp_path / "moved.json"
    code, _ = run(capsys, ["act", a, "-o", str(moved)])
    assert code == 0
    wpath = tmp_path / "w.json"
    code, out = run(capsys, ["equiv", a, str(moved), "--degree", "3", "--witness", str(wpath)])
    assert code == 0 and out["equivalent"]
    witness = io.map_from_json(json.loads(wpath.read_text()))
    target, _ = io.pair_from_json(json.loads(moved.read_text()))
    assert verify_witness(witness, pair, target, 3)


def test_one_dim_commands(tmp_path, capsys):
    f = TruncatedSeries(1, 4, {(2,): 3, (3,): 1})
    b = TruncatedSeries(1, 2, {(0,): 1, (1,): 1})
    a = write(tmp_path / "a.json", io.pair_to_json(PairInstance(f, b)))
    code, out = run(capsys, ["lambda1d", a, "--orders", "2"])
    assert code == 0 and out["radicand"] == "3"
    assert out["values"][0] == {"a": "0", "b": "1/3"}
    code, out = run(capsys, ["morse", a])
    assert out["map"]["radicand"] == "3"
    c = write(tmp_path / "c.json", io.pair_to_json(PairInstance(f, TruncatedSeries(1, 2, {(0,): 1, (1,): -1}))))
    code, out = run(capsys, ["equiv1d", a, c, "--degree", "2"])
    assert code == 1 and out["failure_order"] == 1


def test_morse_float_and_verify(tmp_path, capsys):
    f = TruncatedSeries(2, 4, {(2, 0): 2, (0, 2): 1, (3, 0): 1, (4, 0): 1})
    a = write(tmp_path / "a.json", io.pair_to_json(PairInstance(f, TruncatedSeries.constant(2, 2, 1))))
    code, out = run(capsys, ["morse", a])
    assert code == 2 and "rational square" in out["error"]
    code, out = run(capsys, ["morse", a, "--float", "--bits", "100"])
    assert code == 0 and float(out["residual"]) < 1e-25
    code, out = run(capsys, ["verify", a, "--orders", "0", "--n", "10,100"])
    assert code == 0 and len(out["residuals"]) == 2 and isinstance(out["fitted_slope"], str)


@pytest.mark.parametrize("bad", [
    {"f": {"dim": 1, "trunc": 2, "terms": [{"alpha": [2], "coeff": 1}]}, "b": {"dim": 1, "trunc": 0, "terms": []}},
    {"f": {"dim": 1, "trunc": 2, "terms": [{"alpha": [2], "coeff": "-1"}]},
     "b": {"dim": 1, "trunc": 0, "terms": [{"alpha": [0], "coeff": "1"}]}},
    {"f": {"dim": 1, "trunc": 2, "terms": [{"alpha": [2], "coeff": "1"}]},
     "b": {"dim": 1, "trunc": 0, "terms": []}},
    {"f": {"dim": 1, "trunc": 2, "terms": [{"alpha": [3], "coeff": "1"}]},
     "b": {"dim": 1, "trunc": 0, "terms": [{"alpha": [0], "coeff": "1"}]}},
    {"b": {}},
])
def test_invalid_inputs_exit_2(tmp_path, capsys, bad):
    p = write(tmp_path / "bad.json", bad)
    code, out = run(capsys, ["invariants", p, "--orders", "0"])
    assert code == 2 and "error" in out


def test_missing_file(capsys):
    code, out = run(capsys, ["invariants", "/nonexistent/x.json"])
    assert code == 2


@pytest.mark.parametrize("seed", range(3))
def test_serialisation_roundtrip(seed):
    rng = make_rng(seed)
    pair = random_pair(rng, 2, 4, 3)
    psi = square_pivot_map(rng, pair, 4)
    obj = io.pair_to_json(pair, psi)
    back, psi_back = io.pair_from_json(json.loads(io.dump_json(obj)))
    assert back == pair and psi_back == psi
    assert io.pair_to_json(back, psi_back) == obj
