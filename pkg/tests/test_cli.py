import json
import math

import pytest

from localuid.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def p3_file(tmp_path):
    return write(tmp_path / "p3.json", {"num_nodes": 3, "edges": [[0, 1], [1, 2]]})


def test_color_and_verify(tmp_path, p3_file, capsys):
    out = tmp_path / "c.json"
    assert main(["color", "--graph", p3_file, "--d", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["num_colors"] == 3 and data["colors"] == [0, 1, 2] and data["d"] == 1
    assert data["schema"] == "localuid/1"
    assert main(["verify", "--graph", p3_file, "--coloring", str(out), "--d", "1"]) == 0


def test_verify_reports_violation(tmp_path, p3_file, capsys):
    bad = write(tmp_path / "bad.json", {"d": 1, "num_colors": 2, "colors": [0, 1, 0]})
    report = tmp_path / "r.json"
    assert main(["verify", "--graph", p3_file, "--coloring", bad, "--d", "1", "--out", str(report)]) == 1
    out = capsys.readouterr().out
    assert "node 1" in out
    data = json.loads(report.read_text())
    assert data["violation"] == {"center": 1, "nodes": [0, 2], "color": 0}
    assert data["dhop_unique"] is False and data["proper_2d_hop"] is False


def test_bound_sample_complexity(capsys):
    argv = ["bound", "--p", "1", "--colors", "1", "--theta-emb", "1", "--theta-merge", "1", "--depth", "1",
            "--delta", "0.7357588823", "--epsilon", "1"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "2"
    assert "natural" in lines[1]
    assert main(argv + ["--json-stdout"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["sample_complexity"] == 2 and obj["log_base"] == "natural"


def test_bound_gap(capsys):
    argv = ["bound", "--p", "1", "--colors", "1", "--theta-emb", "1", "--theta-merge", "1", "--depth", "1",
            "--delta", str(2 / math.e), "--n", "1"]
    assert main(argv) == 0
    assert float(capsys.readouterr().out.splitlines()[0]) == pytest.approx(math.sqrt(1.5))


def test_bound_needs_exactly_one_target():
    base = ["bound", "--p", "1", "--colors", "1", "--theta-emb", "1", "--theta-merge", "1", "--depth", "1",
            "--delta", "0.5"]
    with pytest.raises(SystemExit) as exc:
        main(base)
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(base + ["--n", "3", "--epsilon", "0.1"])
    assert exc.value.code == 2
    assert main(base + ["--n", "0"]) == 1


def test_exit_codes(tmp_path, p3_file):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["color", "--graph", str(broken), "--d", "1"]) == 2
    loop = write(tmp_path / "loop.json", {"num_nodes": 2, "edges": [[0, 0]]})
    assert main(["color", "--graph", loop, "--d", "1"]) == 1
    assert main(["color", "--graph", p3_file, "--d", "0"]) == 1
    # parameters are validated before any file is read
    assert main(["color", "--graph", str(tmp_path / "missing.json"), "--d", "0"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_power(tmp_path, p3_file):
    out = tmp_path / "p.json"
    assert main(["power", "--graph", p3_file, "--k", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["edges"] == [[0, 1], [0, 2], [1, 2]]


def test_pipeline_encode_color_verify_augment(tmp_path):
    ilp = write(tmp_path / "ilp.json", {"n": 2, "m": 1, "c": [1, -1], "b": [3], "A": [[0, 0, 1], [0, 1, 2]]})
    g = tmp_path / "g.json"
    c = tmp_path / "c.json"
    f = tmp_path / "f.json"
    assert main(["encode", "--ilp", ilp, "--out", str(g)]) == 0
    gd = json.loads(g.read_text())
    assert gd["edges"] == [[0, 2], [1, 2, 2.0]] and gd["bipartite"] == {"n": 2, "m": 1}
    assert main(["color", "--graph", str(g), "--d", "1", "--out", str(c)]) == 0
    assert main(["verify", "--graph", str(g), "--coloring", str(c), "--d", "1"]) == 0
    assert main(["augment", "--graph", str(g), "--scheme", "coloruid", "--coloring", str(c), "--out", str(f)]) == 0
    fd = json.loads(f.read_text())
    assert fd["dim"] == 2 and [row[-1] for row in fd["features"]] == [0.0, 0.5, 1.0]
    assert main(["augment", "--graph", str(g), "--scheme", "position", "--out", str(f)]) == 0
    assert [row[-1] for row in json.loads(f.read_text())["features"]] == [0.0, 1.0, 0.0]
    assert main(["augment", "--graph", str(g), "--scheme", "uniform", "--out", str(f)]) == 1


def test_forward_cli(tmp_path, p3_file):
    feats = write(tmp_path / "x.json", {"scheme": "none", "dim": 1, "features": [[1], [1], [1]]})
    params = write(
        tmp_path / "params.json",
        {"emb_tables": {"0": [[1.0]]}, "merge": [{"w1": [[1.0], [1.0]], "b1": [0.0], "w2": [[1.0]], "b2": [0.0]}]},
    )
    cfg = write(tmp_path / "cfg.json", {"depth": 1, "in_dim": 1, "hidden_dim": 1, "out_dim": 1})
    out = tmp_path / "o.json"
    argv = ["forward", "--graph", p3_file, "--features", feats, "--params", params, "--config", cfg, "--out", str(out)]
    assert main(argv) == 0
    assert json.loads(out.read_text())["outputs"] == [[2.0], [3.0], [2.0]]
    col = write(tmp_path / "col.json", {"d": 1, "num_colors": 3, "colors": [0, 1, 2]})
    assert main(argv + ["--mode", "colorgnn", "--coloring", col]) == 1  # tables 1 and 2 missing


def test_wl_and_distinguish(tmp_path, capsys):
    tri = write(tmp_path / "tri.json", {"num_nodes": 6, "edges": [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]})
    hexa = write(tmp_path / "hex.json", {"num_nodes": 6, "edges": [[i, (i + 1) % 6] for i in range(6)]})
    out = tmp_path / "wl.json"
    assert main(["wl", "--graph", tri, "--mode", "anonymous", "--rounds", "3", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["rounds"] == 3 and len(rep["node_hashes"]) == 6 and len(rep["graph_hash"]) == 16
    assert main(["wl", "--graph", tri, "--mode", "colored", "--rounds", "1"]) == 1
    capsys.readouterr()
    assert main(["distinguish", "--graph1", tri, "--graph2", hexa, "--scheme", "anonymous", "--rounds", "4"]) == 0
    assert capsys.readouterr().out.strip() == "false"
    assert main(["distinguish", "--graph1", tri, "--graph2", hexa, "--scheme", "local_uid", "--d", "2",
                 "--rounds", "2"]) == 0
    assert capsys.readouterr().out.strip() == "true"


def test_reconstruct_and_mis(tmp_path, p3_file):
    col = write(tmp_path / "col.json", {"d": 1, "num_colors": 3, "colors": [0, 1, 2]})
    out = tmp_path / "views.json"
    assert main(["reconstruct", "--graph", p3_file, "--coloring", col, "--d", "1", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["oracle_mismatches"] == []
    assert data["views"][1] == {"center": 1, "d": 1, "vertices": [[0, 0, 1], [1, 1, 0], [2, 2, 1]],
                                "edges": [[0, 1], [1, 2]]}
    mis = tmp_path / "mis.json"
    assert main(["mis", "--graph", p3_file, "--coloring", col, "--out", str(mis)]) == 0
    assert json.loads(mis.read_text())["nodes"] == [0, 2]
    bad = write(tmp_path / "bad.json", {"d": 1, "num_colors": 2, "colors": [0, 1, 0]})
    assert main(["reconstruct", "--graph", p3_file, "--coloring", bad, "--d", "1"]) == 1


def test_topm_and_mse(tmp_path, capsys):
    sol = write(tmp_path / "s.json", {"y": [0, 1, 1], "yhat": [0.9, 0.2, 0.8], "orbits": [[0, 1, 2]]})
    assert main(["topm", "--solution", sol, "--m", "100"]) == 0
    assert float(capsys.readouterr().out) == 0.0
    plain = write(tmp_path / "p.json", {"y": [0, 1, 1], "yhat": [0.9, 0.2, 0.8]})
    assert main(["topm", "--solution", plain, "--m", "100"]) == 0
    assert float(capsys.readouterr().out) == 2.0
    assert main(["topm", "--solution", plain, "--m", "0"]) == 1
    m = write(tmp_path / "m.json", {"y": [1, 2, 3], "yhat": [1, 2, 4]})
    assert main(["mse", "--solution", m]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1 / 3)


def test_gen(tmp_path):
    g = tmp_path / "er.json"
    assert main(["gen", "--kind", "er", "--n", "30", "--p", "0.1", "--seed", "3", "--out", str(g)]) == 0
    assert json.loads(g.read_text())["num_nodes"] == 30
    b = tmp_path / "bpp.json"
    assert main(["gen", "--kind", "bpp", "--seed", "1", "--out", str(b)]) == 0
    d = json.loads(b.read_text())
    assert (d["n"], d["m"]) == (420, 40)
    with pytest.raises(SystemExit):
        main(["gen", "--kind", "er", "--n", "30", "--p", "0.1"])  # seed is mandatory


@pytest.mark.parametrize(
    "argv",
    [
        ["color", "--graph", "{g}", "--d", "1", "--out", "{o}", "--stats", "{o2}"],
        ["power", "--graph", "{g}", "--k", "2", "--out", "{o}"],
        ["wl", "--graph", "{g}", "--mode", "coloruid", "--d", "1", "--rounds", "2", "--out", "{o}"],
        ["augment", "--graph", "{g}", "--scheme", "uniform", "--seed", "5", "--out", "{o}"],
        ["gen", "--kind", "er", "--n", "40", "--avg-degree", "3", "--seed", "9", "--out", "{o}"],
    ],
)
def test_idempotent_outputs(tmp_path, argv):
    g = write(tmp_path / "g.json", {"num_nodes": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]],
                                    "node_labels": [[1], [2], [3], [4], [5]]})
    paths = {"g": g, "o": str(tmp_path / "o.json"), "o2": str(tmp_path / "o2.json")}
    args = [a.format(**paths) for a in argv]
    assert main(args) == 0
    first = [(tmp_path / n).read_bytes() for n in ("o.json", "o2.json") if (tmp_path / n).exists()]
    assert main(args) == 0
    second = [(tmp_path / n).read_bytes() for n in ("o.json", "o2.json") if (tmp_path / n).exists()]
    assert first == second


def test_help_lists_formats(capsys):
    with pytest.raises(SystemExit):
        main(["color", "--help"])
    assert "localuid/1" in capsys.readouterr().out
