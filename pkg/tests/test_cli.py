import json

import pytest

from factorlab.cli import run
from factorlab.graphs import parse_graph
from factorlab.theorems import HOLDS, REGISTRY, TheoremEntry


@pytest.fixture()
def petersen_file(tmp_path):
    path = tmp_path / "p.el"
    assert run(["gen", "--family", "petersen", "--graph-out", str(path),
                "--out", str(tmp_path / "gen.json")]) == 0
    return str(path)


def _result(path):
    with open(path) as fh:
        payload = json.load(fh)
    assert payload["schema"] == 1
    return payload["result"]


def test_toughness_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "t.json")
    assert run(["toughness", "--input", petersen_file, "--mode", "exact", "--out", out]) == 0
    res = _result(out)
    assert res["value"] == "4/3" and len(res["witness"]) == 4


def test_toughness_from_graph6_file(tmp_path):
    g6 = tmp_path / "petersen.g6"
    g6.write_text("IheA@GUAo\n")  # format inferred from the suffix
    out = str(tmp_path / "t6.json")
    assert run(["toughness", "--input", str(g6), "--out", out]) == 0
    assert _result(out)["value"] == "4/3"


def test_iso_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "i.json")
    assert run(["iso", "--input", petersen_file, "--out", out]) == 0
    assert _result(out)["value"] == "3/2"
    assert run(["iso", "--input", petersen_file, "--mode", "check",
                "--t-const", "3/2", "--out", out]) == 0
    assert _result(out)["ok"] is True


def test_strong_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "s.json")
    assert run(["strong", "--input", petersen_file, "--m", "1", "--out", out]) == 0
    assert _result(out)["value"] == "4/3"


def test_indep_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "ind.json")
    assert run(["indep", "--input", petersen_file, "--phi-const", "1", "--out", out]) == 0
    res = _result(out)
    assert res["caro_wei"] == "5/2" and len(res["set"]) >= 3


def test_criterion_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "c.json")
    assert run(["criterion", "--input", petersen_file, "--kind", "one-factor",
                "--out", out]) == 0
    assert _result(out)["ok"] is True


def test_factor_subcommand_emits_validating_file(petersen_file, tmp_path):
    out = str(tmp_path / "f.json")
    emitted = str(tmp_path / "factor.el")
    assert run(["factor", "--input", petersen_file, "--kind", "near",
                "--f-const", "1", "--emit-factor", emitted, "--out", out]) == 0
    res = _result(out)
    assert res["found"] is True
    with open(emitted) as fh:
        factor = parse_graph(fh.read(), "edgelist")
    assert factor.deg == (1,) * 10


def test_treepack_and_mtc(petersen_file, tmp_path):
    out = str(tmp_path / "tp.json")
    assert run(["treepack", "--input", petersen_file, "--m", "2", "--out", out]) == 0
    res = _result(out)
    assert res["packed"] is False
    assert len(res["certificate"]["parts"]) == 10
    assert run(["mtc", "--input", petersen_file, "--m", "2", "--out", out]) == 0
    assert _result(out)["omega_m"] == "5/2"


def test_eulerian_and_factor24(petersen_file, tmp_path):
    out = str(tmp_path / "e.json")
    assert run(["eulerian", "--input", petersen_file, "--mode", "exhaustive",
                "--out", out]) == 0
    assert _result(out)["found"] is False
    assert run(["factor24", "--input", petersen_file, "--mode", "exhaustive",
                "--out", out]) == 0
    assert _result(out)["found"] is False


def test_audit_subcommand(petersen_file, tmp_path):
    out = str(tmp_path / "a.json")
    assert run(["audit", "--input", petersen_file, "--theorem", "T-A:r=1", "--out", out]) == 0
    assert _result(out)["verdict"] in ("PASS", "VACUOUS")


def test_campaign_subcommand(tmp_path):
    out = str(tmp_path / "camp.json")
    code = run(["campaign", "--corpus", "all_connected:4", "--theorems", "T-A:r=2",
                "--theorems", "T-1F", "--out", out])
    assert code == 0
    res = _result(out)
    counts = res["summary"]["counts"]
    assert counts["T-A"].get("COUNTEREXAMPLE", 0) == 0
    assert sum(counts["T-1F"].values()) == 10


def test_campaign_counterexample_exit_code(tmp_path):
    fake = TheoremEntry("T-FAKE2", "planted", "never finds", "implication",
                        lambda g, p, b: HOLDS, lambda g, p, b: (False, None))
    REGISTRY["T-FAKE2"] = fake
    try:
        out = str(tmp_path / "cx.json")
        code = run(["campaign", "--corpus", "named:k3", "--theorems", "T-FAKE2",
                    "--out", out])
        assert code == 3
        assert _result(out)["summary"]["counts"]["T-FAKE2"]["COUNTEREXAMPLE"] == 1
    finally:
        del REGISTRY["T-FAKE2"]


def test_gen_lowerbound_with_metadata_sidecar(tmp_path):
    graph_path = str(tmp_path / "lb.el")
    out = str(tmp_path / "lb.json")
    code = run(["gen", "--family", "lowerbound", "--r", "1", "--h", "2", "--n", "1",
                "--graph-out", graph_path, "--out", out])
    assert code == 0
    assert _result(out)["vertices"] == [91]
    with open(graph_path) as fh:
        g = parse_graph(fh.read(), "edgelist")
    assert g.n == 91
    with open(graph_path + ".meta.json") as fh:
        meta = json.load(fh)
    assert meta["p"] == 3 and len(meta["u_sets"]) == 3


def test_usage_error_exit_code():
    assert run(["toughness"]) == 1
    assert run(["factor", "--input", "/nonexistent", "--kind", "f", "--f-const", "1"]) == 1


def test_scale_exceeded_exit_code(tmp_path, monkeypatch):
    monkeypatch.setenv("FACTORLAB_BUDGET_SUBSET_N", "3")
    graph_path = str(tmp_path / "p.el")
    run(["gen", "--family", "petersen", "--graph-out", graph_path,
         "--out", str(tmp_path / "g.json")])
    assert run(["toughness", "--input", graph_path]) == 2


def test_falsify_requires_seed(petersen_file):
    assert run(["toughness", "--input", petersen_file, "--mode", "falsify"]) == 1


def test_seeded_reports_are_byte_identical(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    argv = ["campaign", "--corpus", "gnp:7:1/2:5", "--theorems", "T-MT:r=2,n=1",
            "--seed", "11", "--dump-cases"]
    assert run(argv + ["--out", a]) == 0
    assert run(argv + ["--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_registry_subcommand(tmp_path, capsys):
    assert run(["registry"]) == 0
    listed = json.loads(capsys.readouterr().out)["result"]["theorems"]
    assert "T-A" in listed and "T-24" in listed


def test_budget_flag_overrides(tmp_path):
    graph_path = str(tmp_path / "p.el")
    run(["gen", "--family", "petersen", "--graph-out", graph_path,
         "--out", str(tmp_path / "g.json")])
    assert run(["toughness", "--input", graph_path, "--budget-subset-n", "3"]) == 2
    assert run(["toughness", "--input", graph_path, "--budget-subset-n", "10",
                "--out", str(tmp_path / "ok.json")]) == 0


def test_gen_multiple_graphs_as_graph6_corpus(tmp_path):
    graph_path = str(tmp_path / "batch.g6")
    out = str(tmp_path / "b.json")
    assert run(["gen", "--family", "gnp", "--n", "7", "--p", "1/2", "--count", "5",
                "--seed", "2", "--graph-out", graph_path, "--out", out]) == 0
    from factorlab.constructions import corpus

    items = list(corpus(f"g6file:{graph_path}"))
    assert len(items) == 5 and all(g.n == 7 for _, g in items)


def test_counterexample_report_carries_graph_dump(tmp_path):
    fake = TheoremEntry("T-FAKE3", "planted", "never finds", "implication",
                        lambda g, p, b: HOLDS, lambda g, p, b: (False, None))
    REGISTRY["T-FAKE3"] = fake
    try:
        out = str(tmp_path / "cx.json")
        assert run(["campaign", "--corpus", "named:c4", "--theorems", "T-FAKE3",
                    "--out", out]) == 3
        cx = _result(out)["summary"]["counterexamples"]
        assert len(cx) == 1
        dumped = parse_graph(cx[0]["graph_dump"], "edgelist")
        assert dumped.n == 4 and len(dumped.edges) == 4
    finally:
        del REGISTRY["T-FAKE3"]
