import json
import subprocess
import sys
from itertools import combinations

import pytest

from hypertree.cli import RunReport, main
from hypertree.hypergraph import Hypergraph, complete_hypergraph, parse, serialize


@pytest.fixture
def write(tmp_path):
    def _write(name, graph_or_text):
        text = graph_or_text if isinstance(graph_or_text, str) else serialize(graph_or_text)
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def strip_timing(report):
    d = dict(report)
    d.pop("wall_ms")
    return d


# ---------------------------------------------------------
# decide
# ---------------------------------------------------------


def test_decide_minimal_instance(capsys, write):
    code, rep, err = run(capsys, "decide", write("one.shg", "shg 3 3 1\ne 1 2 3\n"))
    assert code == 0
    assert rep["verdict"] == "YES"
    assert rep["witness"]["determinant"] != 0
    assert rep["parameters"]["q"] >= 2**20
    assert err.startswith("decide YES")


def test_decide_even_instance(capsys, write):
    code, rep, _ = run(capsys, "decide", write("even.shg", complete_hypergraph(4, 3)))
    assert code == 1
    assert rep["verdict"] == "NO_CERTAIN"


def test_decide_no_hypertree_reports_bound(capsys, write):
    g = Hypergraph(3, 5, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])
    code, rep, _ = run(capsys, "decide", write("none.shg", g), "--epsilon-exp", "12")
    assert code == 1
    assert rep["verdict"] == "NO_PROBABLE"
    num, den = map(int, rep["error_bound"].split("/"))
    assert num * 2**12 <= den


@pytest.mark.parametrize("content", ["garbage\n", "shg 3 3 1\ne 1 2\n", "shg 3 3 2\ne 1 2 3\n", ""])
def test_decide_garbage_file(capsys, write, content):
    code, rep, err = run(capsys, "decide", write("bad.shg", content))
    assert code == 2
    assert rep["error"]
    assert err.startswith("error:")


def test_decide_missing_file_and_graph_input(capsys, write, tmp_path):
    code, rep, _ = run(capsys, "decide", str(tmp_path / "absent.shg"))
    assert code == 2 and "cannot read" in rep["error"]
    code, rep, _ = run(capsys, "decide", write("k4.shg", complete_hypergraph(4, 2)))
    assert code == 2


def test_decide_strategy_and_q_flags(capsys, write):
    path = write("k5.shg", complete_hypergraph(5, 3))
    code, rep, _ = run(capsys, "decide", path, "--strategy", "repeated", "--epsilon-exp", "8")
    assert code == 0
    assert rep["parameters"]["mode"] == "REPEATED" and rep["parameters"]["q"] == 5
    code, rep, _ = run(capsys, "decide", path, "--q", "101")
    assert rep["parameters"]["q"] == 101 and rep["parameters"]["trials"] == 20
    code, rep, _ = run(capsys, "decide", path, "--q", "4")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["decide"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["decide", "x", "--strategy", "never"]) == 2
    capsys.readouterr()


def test_same_seed_same_report(capsys, write):
    path = write("k7.shg", complete_hypergraph(7, 3))
    reports = [run(capsys, "decide", path, "--seed", "9")[1] for _ in range(2)]
    assert strip_timing(reports[0]) == strip_timing(reports[1])
    other = run(capsys, "decide", path, "--seed", "10")[1]
    assert other["witness"] != reports[0]["witness"]


def test_seed_from_environment(capsys, write, monkeypatch):
    path = write("k7.shg", complete_hypergraph(7, 3))
    monkeypatch.setenv("HYPERTREE_SEED", "33")
    from_env = run(capsys, "decide", path)[1]
    assert from_env["parameters"]["seed"] == 33
    flag = run(capsys, "decide", path, "--seed", "4")[1]
    assert flag["parameters"]["seed"] == 4
    monkeypatch.setenv("HYPERTREE_SEED", "x")
    assert run(capsys, "decide", path)[0] == 2


def test_report_round_trip(capsys, write):
    _, rep, _ = run(capsys, "decide", write("k5.shg", complete_hypergraph(5, 3)))
    report = RunReport(**rep)
    assert RunReport.from_json(report.to_json()) == report
    assert json.loads(report.to_json()) == rep


# ---------------------------------------------------------
# oracle
# ---------------------------------------------------------


def test_oracle_counts(capsys, write):
    code, rep, _ = run(capsys, "oracle", write("k5.shg", complete_hypergraph(5, 3)))
    assert code == 0
    assert rep["result"]["count"] == 15
    assert len(rep["result"]["hypertrees"]) == 15
    assert [[1, 2, 3], [1, 4, 5]] in rep["result"]["hypertrees"]
    code, rep, _ = run(capsys, "oracle", write("none.shg", Hypergraph(3, 5, [(1, 2, 3), (1, 2, 4)])))
    assert code == 1
    assert rep["result"]["count"] == 0


def test_oracle_listing_too_large(capsys, write):
    path = write("k9.shg", complete_hypergraph(9, 3))
    code, rep, _ = run(capsys, "oracle", path)
    assert code == 2
    assert "--count-only" in rep["error"]
    code, rep, _ = run(capsys, "oracle", path, "--count-only")
    assert code == 0
    assert rep["result"]["count"] == 76545
    assert "hypertrees" not in rep["result"]


def test_oracle_guard(capsys, write):
    code, rep, _ = run(capsys, "oracle", write("k11.shg", complete_hypergraph(11, 3)), "--count-only")
    assert code == 2
    assert "guard" in rep["error"]


# ---------------------------------------------------------
# verify
# ---------------------------------------------------------


def test_verify_small(capsys):
    code, rep, err = run(capsys, "verify", "--max-n", "3")
    assert code == 0
    assert rep["verdict"] == "PASS"
    assert {p["name"] for p in rep["result"]["properties"]} >= {
        "pfaffian_hypertree_theorem",
        "sign_exterior_equals_conjugation",
        "root_independence",
        "pfaffian_squared_equals_det",
    }
    assert "pass" in err


def test_verify_reduced_defaults(capsys):
    code, rep, _ = run(capsys, "verify", "--instances", "20", "--trials", "5")
    assert code == 0
    assert all(p["passed"] and p["checked"] > 0 for p in rep["result"]["properties"])


def test_verify_negative_control(capsys):
    code, rep, err = run(capsys, "verify", "--max-n", "5", "--instances", "5", "--trials", "3",
                         "--inject-fault", "sign-flip")
    assert code == 1
    assert rep["verdict"] == "FAIL"
    failed = {p["name"] for p in rep["result"]["properties"] if not p["passed"]}
    assert "pfaffian_hypertree_theorem" in failed
    assert "FAIL" in err


# ---------------------------------------------------------
# reduce
# ---------------------------------------------------------


def test_reduce_k4(capsys, write, tmp_path):
    out = tmp_path / "lift.shg"
    code, rep, _ = run(capsys, "reduce", write("k4.shg", complete_hypergraph(4, 2)), "-o", str(out))
    assert code == 0
    lifted = parse(rep["result"]["lifted_instance"])
    assert (lifted.k, lifted.num_vertices, lifted.num_edges) == (3, 5, 6)
    assert lifted.edges == [(i, j, 5) for i, j in combinations(range(1, 5), 2)]
    assert out.read_text() == rep["result"]["lifted_instance"]


def test_reduce_decide(capsys, write):
    code, rep, _ = run(capsys, "reduce", write("k4.shg", complete_hypergraph(4, 2)), "--decide")
    assert code == 0 and rep["verdict"] == "YES"
    code, rep, _ = run(capsys, "reduce", write("p3.shg", Hypergraph(2, 3, [(1, 2), (2, 3)])), "--decide")
    assert code == 1 and rep["verdict"] == "NO_CERTAIN"


def test_reduce_rejects_three_uniform(capsys, write):
    code, rep, _ = run(capsys, "reduce", write("k5.shg", complete_hypergraph(5, 3)))
    assert code == 2


# ---------------------------------------------------------
# bench
# ---------------------------------------------------------


def test_bench_empty_and_even(capsys):
    code, rep, _ = run(capsys, "bench", "--sizes", "")
    assert code == 0
    assert rep["result"]["rows"] == [] and rep["result"]["ratios"] == []
    code, rep, err = run(capsys, "bench", "--sizes", "10,21,31")
    assert code == 0
    rows = rep["result"]["rows"]
    assert rows[0]["seconds"] is None and "skipped" in rows[0]["note"]
    assert [r["verdict"] for r in rows[1:]] == ["YES", "YES"]
    assert len(rep["result"]["ratios"]) == 1
    assert "ratios" in err


def test_bench_bad_sizes(capsys):
    assert main(["bench", "--sizes", "a,b"]) == 2
    capsys.readouterr()


# ---------------------------------------------------------
# entry points
# ---------------------------------------------------------


def test_module_entry_point(tmp_path):
    path = tmp_path / "one.shg"
    path.write_text("shg 3 3 1\ne 1 2 3\n")
    proc = subprocess.run([sys.executable, "-m", "hypertree", "decide", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "YES"
    again = subprocess.run([sys.executable, "-m", "hypertree", "decide", str(path)], capture_output=True, text=True)
    assert strip_timing(json.loads(again.stdout)) == strip_timing(json.loads(proc.stdout))


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.strip()
