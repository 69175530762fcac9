# tests/test_cli.py
import json
from pathlib import Path

import pytest

from app import run_cli
from core.config import HOGNNConfig
from core.graph import complete_graph, cycle_graph, disjoint_union
from hogdm.structures import build_simplicial_complex
from io_ops.documents import read_document, write_document
from io_ops.reports import read_report


@pytest.fixture
def docs(tmp_path):
    paths = {
        "k3": write_document(complete_graph(3), tmp_path / "k3.json"),
        "c6": write_document(cycle_graph(6), tmp_path / "c6.json"),
        "2k3": write_document(disjoint_union(complete_graph(3), complete_graph(3))[0], tmp_path / "2k3.json"),
        "bad_sc": write_document(build_simplicial_complex(3, [[0, 1, 2]]), tmp_path / "bad_sc.json"),
    }
    return {name: str(path) for name, path in paths.items()}


def report(path):
    return read_report(Path(path).read_text(encoding="utf-8"))


# ----------------------------------------------------------------------------
# Usage
# ----------------------------------------------------------------------------


def test_help_and_usage_errors(capsys):
    assert run_cli(["--help"]) == 0
    assert "lift" in capsys.readouterr().out
    assert run_cli(["wire", "--bogus"]) == 2
    assert run_cli([]) == 2
    assert run_cli(["lift", "--kind", "sphere", "--input", "x.json"]) == 2


def test_input_errors_exit_with_two(docs, tmp_path, capsys):
    assert run_cli(["validate", "--input", str(tmp_path / "missing.json")]) == 2
    assert run_cli(["wl-test", "--test", "kwl:4", "--a", docs["c6"], "--b", docs["2k3"]]) == 2
    err = capsys.readouterr().err
    assert "missing.json" in err
    assert "k <= 3" in err


# ----------------------------------------------------------------------------
# Wiring and counting
# ----------------------------------------------------------------------------


def test_wire_then_count(docs, tmp_path):
    channels = tmp_path / "damp.csv"
    assert run_cli(["wire", "--scheme", "damp", "--inclusive", "--input", docs["k3"], "--seed", "4", "--out", str(channels)]) == 0
    assert channels.read_text(encoding="utf-8").startswith("# seed=4\n")
    assert len(report(channels)) == 54

    counts = tmp_path / "counts.csv"
    assert run_cli(["count", "--channels", str(channels), "--out", str(counts)]) == 0
    assert dict(zip(report(counts)["tag"], report(counts)["count"])) == {"down": 36, "self-loop": 18, "total": 54}


def test_count_straight_from_a_structure(docs, tmp_path):
    out = tmp_path / "imp.csv"
    assert run_cli(["count", "--scheme", "imp", "--input", docs["k3"], "--out", str(out)]) == 0
    assert report(out)["count"].tolist() == [6, 6, 12]
    assert run_cli(["count"]) == 2


def test_trace_lines_go_to_stderr(docs, capsys):
    assert run_cli(["wire", "--scheme", "imp", "--input", docs["k3"], "--trace"]) == 0
    captured = capsys.readouterr()
    assert "12 channels" in captured.err
    assert captured.out.splitlines()[1].startswith("src,dst,tag")
    assert not HOGNNConfig.TRACE_ENABLED


def test_trace_records_the_run_config(docs, capsys):
    assert run_cli(["count", "--scheme", "imp", "--input", docs["k3"], "--seed", "6", "--trace"]) == 0
    line = next(l for l in capsys.readouterr().err.splitlines() if '"cli.config"' in l)
    record = json.loads(line[len("[HOGNN] "):])["payload"]
    assert (record["command"], record["seed"], record["out"]) == ("count", 6, None)
    assert record["params"]["scheme"] == "imp"
    assert record["budgets"]["max_tuple_n"] == HOGNNConfig.MAX_TUPLE_N


# ----------------------------------------------------------------------------
# Lifting, validation and forward passes
# ----------------------------------------------------------------------------


def test_lift_and_validate(docs, tmp_path):
    lifted = tmp_path / "k3_cqc.json"
    assert run_cli(["lift", "--kind", "cqc", "--input", docs["k3"], "--out", str(lifted)]) == 0
    assert read_document(lifted).kind == "sc"
    assert run_cli(["validate", "--input", str(lifted)]) == 0

    problems = tmp_path / "problems.csv"
    assert run_cli(["validate", "--input", docs["bad_sc"], "--out", str(problems)]) == 2
    assert len(report(problems)) == 3


def test_forward_pass_is_reproducible(docs, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        assert run_cli(["mp-run", "--model", "hgconv", "--input", docs["c6"], "--seed", "5", "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert list(report(first).columns) == ["index", "value"]


def test_forward_pass_reads_the_graph_flag(docs, tmp_path):
    via_input, via_graph = tmp_path / "input.csv", tmp_path / "graph.csv"
    assert run_cli(["mp-run", "--model", "graph-mp", "--input", docs["c6"], "--out", str(via_input)]) == 0
    assert run_cli(["mp-run", "--model", "graph-mp", "--graph", docs["c6"], "--out", str(via_graph)]) == 0
    assert via_input.read_bytes() == via_graph.read_bytes()


def test_classify_reports_the_flavor(tmp_path):
    out = tmp_path / "flavor.csv"
    assert run_cli(["mp-run", "--model", "hat", "--classify", "--out", str(out)]) == 0
    row = report(out).iloc[0]
    assert row["flavor"] == row["declared"] == "Attentional"


# ----------------------------------------------------------------------------
# Refinement tests
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("test, verdict", [("wl1", "Inconclusive"), ("kwl:3", "Distinguished"), ("lifted:cell", "Distinguished")])
def test_wl_test_verdicts(docs, tmp_path, test, verdict):
    out = tmp_path / "verdict.csv"
    assert run_cli(["wl-test", "--test", test, "--a", docs["c6"], "--b", docs["2k3"], "--out", str(out)]) == 0
    row = report(out).iloc[0]
    assert (row["test"], row["graph_a"], row["graph_b"], row["verdict"]) == (test, "c6", "2k3", verdict)


def test_lifted_refinement_on_lifted_documents(docs, tmp_path):
    for name in ("c6", "2k3"):
        assert run_cli(["lift", "--kind", "cqc", "--input", docs[name], "--out", str(tmp_path / f"{name}_sc.json")]) == 0
    out = tmp_path / "verdict.csv"
    args = ["wl-test", "--test", "lifted:cqc", "--a", str(tmp_path / "c6_sc.json"), "--b", str(tmp_path / "2k3_sc.json")]
    assert run_cli(args + ["--out", str(out)]) == 0
    assert report(out)["verdict"].tolist() == ["Distinguished"]


def test_corpus_and_batch_battery(tmp_path):
    listing = tmp_path / "corpus.csv"
    assert run_cli(["corpus", "--n-max", "4", "--dir", str(tmp_path / "graphs"), "--out", str(listing)]) == 0
    assert len(report(listing)) == 18
    assert len(list((tmp_path / "graphs").glob("*.json"))) == 18

    summary, table = tmp_path / "summary.csv", tmp_path / "containment.csv"
    args = ["battery", "--corpus", str(tmp_path / "graphs"), "--tests", "wl1,kwl:2", "--batch"]
    assert run_cli(args + ["--out", str(summary), "--containment", str(table)]) == 0
    assert report(summary)["pairs"].tolist() == [153, 153]
    assert report(table)["equal"].all()


def test_sampled_battery_with_oracle(tmp_path):
    out = tmp_path / "battery.csv"
    assert run_cli(["battery", "--sample", "4", "--n-max", "5", "--tests", "wl1", "--oracle", "--seed", "2", "--out", str(out)]) == 0
    frame = report(out)
    assert len(frame) == 4
    assert frame["isomorphic"].tolist()[:2] == [True, True]
    assert frame["verdict"].tolist()[:2] == ["Inconclusive", "Inconclusive"]
    assert run_cli(["battery", "--sample", "4", "--tests", "wl1", "--batch"]) == 2


def test_sampled_battery_at_a_fixed_size(tmp_path):
    out = tmp_path / "fixed.csv"
    args = ["battery", "--sample", "4", "--n-min", "6", "--n-max", "6", "--tests", "wl1", "--oracle", "--seed", "3"]
    assert run_cli(args + ["--out", str(out)]) == 0
    frame = report(out)
    assert frame["isomorphic"].tolist()[:2] == [True, True]
    assert frame["verdict"].tolist()[:2] == ["Inconclusive", "Inconclusive"]
    assert run_cli(["battery", "--sample", "4", "--n-min", "8", "--n-max", "6", "--tests", "wl1"]) == 2
