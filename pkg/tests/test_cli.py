import json
import subprocess
import sys

import numpy as np
import pytest

from stiffblow.cli import load_graph, load_weights, run
from stiffblow.errors import InvalidArgument
from stiffblow.graphs import Graph, complete_bipartite, complete_graph, generalized_star
from stiffblow.optimizer import Certificate
from stiffblow.spectra import Spectrum


@pytest.fixture
def k2_files(tmp_path):
    g = tmp_path / "k2.json"
    g.write_text(json.dumps({"n": 2, "edges": [[0, 1]]}))
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"d": 1, "coords": [[0.0], [1.0]]}))
    return str(g), str(p)


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_star_output(capsys):
    code, out, _ = call(["star", "--n", "4", "--d", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["values"] == [0.0, 1.0, 1.0, 4.0]
    assert doc["match"] is True


def test_blowup_verify_identity(k2_files, capsys):
    g, p = k2_files
    code, out, _ = call(["blowup-verify", "--graph", g, "--a", "1,1", "--p", p], capsys)
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_blowup_verify_failure_exit_code(tmp_path, capsys):
    # a tolerance below rounding error cannot be met, so verification reports failure
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"d": 2, "coords": [[0.1, 0.2], [0.9, 0.3], [0.4, 0.8]]}))
    code, out, err = call(["blowup-verify", "--graph", "K3", "--a", "2,3,2", "--p", str(p), "--tol", "1e-300"],
                          capsys)
    assert code == 1
    assert json.loads(out)["equal"] is False
    assert "verification failed" in err


def test_blowup_rhs_and_gap_bound(k2_files, capsys):
    g, p = k2_files
    code, out, _ = call(["blowup-rhs", "--graph", g, "--a", "2,3", "--p", p], capsys)
    assert code == 0
    assert json.loads(out)["values"] == pytest.approx([0, 2, 2, 3, 5])
    code, out, _ = call(["gap-bound", "--graph", g, "--a", "2,3", "--p", p], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["valid"] and doc["bound"] <= doc["blowup_gap"] + 1e-12


def test_spectrum_and_csv(k2_files, capsys):
    g, p = k2_files
    code, out, _ = call(["spectrum", "--graph", g, "--p", p, "--f", "4,9"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["values"] == pytest.approx([0, 13]) and doc["spectral_gap"] == pytest.approx(13)
    code, out, _ = call(["lower-spectrum", "--graph", g, "--p", p, "--csv"], capsys)
    assert code == 0 and out.strip() == "2"


def test_knm_bound(capsys):
    code, out, _ = call(["knm-bound", "--n", "100", "--m", "100", "--d", "2"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["bound"] == pytest.approx(1.39 * 19) and doc["certificate_ok"]
    code, _, err = call(["knm-bound", "--n", "5", "--m", "100", "--d", "2"], capsys)
    assert code == 2 and "invalid argument" in err


def test_k33_commands(capsys):
    code, out, _ = call(["k33-optimal"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["lam"] - 0.6903845) <= 1e-6
    assert abs(doc["limit_lambda1"] - 0.6192309) <= 1e-6
    code, out, _ = call(["k33", "--alpha", "0.5", "--beta", "0.4", "--c", "1e6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["limit_entry_distance"] < 1e-4
    code, _, _ = call(["k33", "--alpha", "2", "--beta", "0.4", "--c", "1"], capsys)
    assert code == 2


def test_midpoint(capsys):
    code, out, _ = call(["midpoint-spectrum", "--scale", "3"], capsys)
    assert code == 0 and json.loads(out)["match"]


def test_optimize_respects_env_seed(capsys, monkeypatch):
    argv = ["optimize", "--graph", "K4", "--d", "2", "--restarts", "1", "--max-iters", "100"]
    monkeypatch.setenv("RIG_SEED", "5")
    _, out1, _ = call(argv, capsys)
    _, out2, _ = call(argv + ["--seed", "5"], capsys)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["seed"] == 5
    assert Certificate.from_dict(doc).verify()


def test_output_is_deterministic(capsys):
    argv = ["optimize", "--graph", "K3,3", "--d", "2", "--restarts", "1", "--max-iters", "200", "--seed", "2"]
    assert call(argv, capsys)[1] == call(argv, capsys)[1]


def test_json_round_trips(k2_files, capsys):
    g, p = k2_files
    _, out, _ = call(["spectrum", "--graph", g, "--p", p], capsys)
    doc = json.loads(out)
    S = Spectrum.from_dict(doc)
    assert S.values.tolist() == doc["values"]
    assert json.loads(json.dumps(S.to_dict())) == S.to_dict()


def test_argument_errors(capsys):
    assert call(["nonsense"], capsys)[0] == 2
    code, _, err = call([], capsys)
    assert code == 2 and "usage" in err
    assert call(["star", "--n", "x", "--d", "1"], capsys)[0] == 2
    assert call(["star", "--n", "2", "--d", "2"], capsys)[0] == 2
    assert call(["star", "--n", "4", "--d", "1", "--tol", "-1"], capsys)[0] == 2
    assert call(["spectrum", "--graph", "missing.json", "--p", "missing.json"], capsys)[0] == 2


def test_load_graph_shorthand():
    assert load_graph("K5") == complete_graph(5)
    assert load_graph("K3,3") == complete_bipartite(3, 3)
    assert load_graph("S6,2") == generalized_star(6, 2)
    with pytest.raises(InvalidArgument):
        load_graph("S6")


def test_load_weights(tmp_path):
    assert load_weights("1,2.5").tolist() == [1.0, 2.5]
    f = tmp_path / "w.json"
    f.write_text(json.dumps({"values": [3, 4]}))
    assert np.array_equal(load_weights(str(f)), [3.0, 4.0])
    with pytest.raises(InvalidArgument):
        load_weights("a,b")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "stiffblow.cli", "star", "--n", "3", "--d", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["match"] is True


def test_graph_file_round_trip(tmp_path, capsys):
    G = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    path = tmp_path / "g.json"
    path.write_text(G.to_json())
    assert load_graph(str(path)) == G
