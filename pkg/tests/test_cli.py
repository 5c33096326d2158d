import json

from click.testing import CliRunner

from homlab.cli import main
from homlab.graphs import read_graph
from homlab.tournaments import read_tournament


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_construct_gnp_writes_graph_format(tmp_path):
    out = tmp_path / "g.txt"
    result = invoke("--seed", "5", "--out", str(out), "construct", "--kind", "gnp",
                    "--n", "12", "--p", "1/3")
    assert result.exit_code == 0
    g = read_graph(out.read_text())
    assert g.n == 12


def test_construct_is_seed_deterministic():
    a = invoke("--seed", "7", "construct", "--kind", "gnp", "--n", "10")
    b = invoke("--seed", "7", "construct", "--kind", "gnp", "--n", "10")
    c = invoke("--seed", "8", "construct", "--kind", "gnp", "--n", "10")
    assert a.output == b.output != c.output


def test_construct_tournament_and_dist(tmp_path):
    out = tmp_path / "t.txt"
    assert invoke("--seed", "3", "--out", str(out), "construct", "--kind", "tournament",
                  "--n", "8").exit_code == 0
    t = read_tournament(out.read_text())
    result = invoke("tournament", "dist", str(out))
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["n"] == t.n == 8
    assert doc["dist"] >= 0 and len(doc["ordering"]) == 8


def test_construct_overlay_requires_eps():
    result = invoke("construct", "--kind", "overlay", "--n", "50")
    assert result.exit_code == 2


def test_hom_exact_and_eps_mode(tmp_path):
    out = tmp_path / "g.txt"
    invoke("--seed", "1", "--out", str(out), "construct", "--kind", "gnp", "--n", "15")
    exact = invoke("hom", str(out))
    assert exact.exit_code == 0
    doc = json.loads(exact.output)
    assert doc["kind"] in ("clique", "independent")
    eps = invoke("hom", str(out), "--eps", "1/4", "--mode", "degree")
    assert eps.exit_code == 0
    assert json.loads(eps.output)["validated"] is True


def test_hom_missing_file_is_input_error():
    assert invoke("hom", "does-not-exist.txt").exit_code == 2


def test_containers_verify_ok(tmp_path):
    out = tmp_path / "g.txt"
    invoke("--seed", "2", "--out", str(out), "construct", "--kind", "gnp", "--n", "10")
    result = invoke("containers", "verify", str(out), "--eps", "1/2", "--u", "4", "--k", "5")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["ok"] is True
    assert doc["exact_count"] <= doc["bound"] or not doc["precondition"]


def test_containers_verify_bad_params_exit_2(tmp_path):
    out = tmp_path / "g.txt"
    invoke("--seed", "2", "--out", str(out), "construct", "--kind", "gnp", "--n", "10")
    # ell forced too small for the shrinkage requirement
    result = invoke("containers", "verify", str(out), "--eps", "1/2", "--u", "1",
                    "--k", "2", "--ell", "1")
    assert result.exit_code == 2


def test_params_chain_json():
    result = invoke("params", "--eps", "1/128")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["all_passed"] is True
    assert len(doc["chain"]) == 4


def test_params_out_of_range_exit_2():
    assert invoke("params", "--eps", "1/2").exit_code == 2


def test_experiment_run_csv_and_violation_exit(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "triangle-scan", "grid": {"m": 5, "samples": 3},
                               "seeds": [0]}))
    result = invoke("experiment", "run", str(cfg))
    assert result.exit_code == 0
    assert result.output.splitlines()[0].startswith("experiment,instance_id")

    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert invoke("experiment", "run", str(bad)).exit_code == 2


def test_experiment_threads_flag_identical_output(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "hypergraph-container-sample",
                               "grid": {"n": [8], "p": ["4/5"], "eps": ["1/8"], "count": 2},
                               "seeds": [0, 1]}))
    one = invoke("--threads", "1", "experiment", "run", str(cfg))
    four = invoke("--threads", "4", "experiment", "run", str(cfg))
    assert one.exit_code == four.exit_code == 0
    assert one.output == four.output
