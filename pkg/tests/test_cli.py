import csv
import io
import json
import subprocess
import sys

import pytest

from qmantel import cli
from qmantel import verify as vf
from qmantel.constructions import c5_star, cycle, order_extremal
from qmantel.enumeration import canonical_form
from qmantel.graph import to_graph6

C5 = to_graph6(cycle(5))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_qindex_c5_plain(capsys):
    code, out, _ = run(capsys, "qindex", C5)
    assert code == cli.EXIT_OK
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["q"] == "4"
    assert lines["bound_lower_4m_over_n"] == "4"
    assert lines["bound_edge_degree_sum"] == "4"
    assert lines["bound_degree_avg_neighbor"] == "4"


def test_qindex_json(capsys):
    code, out, _ = run(capsys, "qindex", to_graph6(c5_star(7)), "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["n"] == 7 and rec["m"] == 7
    assert rec["q"] > 5
    assert len(rec["perron_vector"]) == 7


def test_rho(capsys):
    code, out, _ = run(capsys, "rho", C5, "--format", "json")
    assert code == 0 and json.loads(out)["rho"] == pytest.approx(2.0)


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "order-extremal", "6", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["canonical_graph6"] == canonical_form(order_extremal(6))
    assert rec["m"] == 7


def test_quotient_default_and_explicit(capsys):
    g6 = to_graph6(c5_star(7))
    code, out, _ = run(capsys, "quotient", g6, "0,1;2,4;5,6;3", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["equitable"] is True
    assert rec["charpoly"] == [4, -27, 30, -10, 1]
    assert rec["difference"] < 1e-8
    code, out, _ = run(capsys, "quotient", g6, "--format", "json")
    assert json.loads(out)["equitable"] is True


def test_poly_cubic(capsys):
    code, out, _ = run(capsys, "poly", "cubic", "--n", "7", "--format", "json")
    rec = json.loads(out)
    assert rec["coefficients"] == [-4, 19, -9, 1]
    assert 5.857 < rec["largest_root"] < 6.857
    assert rec["bracket_certified"] is True


def test_poly_quartic_quintic(capsys):
    _, out, _ = run(capsys, "poly", "quartic", "--m", "6", "--format", "json")
    assert json.loads(out)["coefficients"] == [4, -22, 25, -9, 1]
    _, out, _ = run(capsys, "poly", "quintic", "--n1", "1", "--n2", "1", "--format", "json")
    assert json.loads(out)["largest_root"] == pytest.approx(4.0)


def test_verify_order_json(capsys):
    code, out, _ = run(capsys, "verify", "order", "--n", "6", "--format", "json")
    rec = json.loads(out)
    assert code == cli.EXIT_OK
    assert list(rec) == ["constraint", "count_examined", "max_q", "maximizers", "predicted_graph",
                         "predicted_q", "verdict", "tolerance", "seed", "runtime_ms"]
    assert rec["verdict"] == "match"
    assert rec["maximizers"] == [canonical_form(order_extremal(6))]
    assert rec["runtime_ms"] is None


def test_verify_json_round_trip(capsys):
    _, out, _ = run(capsys, "verify", "size", "--m", "5", "6", "7", "--format", "json")
    recs = json.loads(out)
    assert isinstance(recs, list) and len(recs) == 3
    assert json.loads(json.dumps(recs)) == recs
    assert recs[2]["maximizers"] == [canonical_form(c5_star(7))]


def test_verify_csv_schema(capsys):
    code, out, _ = run(capsys, "verify", "order", "--n", "5", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == cli.CSV_COLUMNS
    assert [r["n"] for r in rows] == ["5", "6"]
    assert rows[1]["m"] == "7"
    assert all(r["verdict"] == "match" for r in rows)


def test_verify_misc(capsys):
    code, out, _ = run(capsys, "verify", "mantel", "--n", "5", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["max_triangle_free_size"] == 6
    code, out, _ = run(capsys, "verify", "erdos", "--n", "6", "--format", "json")
    assert code == 0 and json.loads(out)["max_non_bipartite_size"] == 7
    code, out, _ = run(capsys, "verify", "rotation", "--trials", "20", "--seed", "4", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["successes"] == 20


def test_verify_adjacency(capsys):
    code, out, _ = run(capsys, "verify", "adjacency", "--n-max", "6", "--m-max", "7", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 + 3 + 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "order", "--n", "5", "--format", "json", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "match"


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "order", "--n", "5", "--format", "json", "--timing")
    assert isinstance(json.loads(out)["runtime_ms"], float)


class TestExitCodes:
    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as e:
            cli.main(["frobnicate"])
        assert e.value.code == cli.EXIT_USAGE
        with pytest.raises(SystemExit) as e:
            cli.main(["verify", "order", "--n", "x"])
        assert e.value.code == cli.EXIT_USAGE

    def test_bad_graph6(self, capsys):
        code, _, err = run(capsys, "qindex", "D?")
        assert code == cli.EXIT_GRAPH6
        assert "graph6" in err and err.count("\n") == 1

    def test_cap(self, capsys):
        code, _, err = run(capsys, "verify", "order", "--n", "10")
        assert code == cli.EXIT_CAP
        code, _, _ = run(capsys, "verify", "order", "--n", "6", "--max-order", "11")
        assert code == cli.EXIT_CAP
        code, _, _ = run(capsys, "verify", "mantel", "--n", "9")
        assert code == cli.EXIT_CAP

    def test_invalid(self, capsys):
        code, _, _ = run(capsys, "verify", "order", "--n", "4")
        assert code == cli.EXIT_INVALID
        code, _, _ = run(capsys, "poly", "cubic")
        assert code == cli.EXIT_INVALID
        code, _, _ = run(capsys, "construct", "cycle", "2")
        assert code == cli.EXIT_INVALID
        code, _, _ = run(capsys, "quotient", C5, "0,1;1,2,3,4")
        assert code == cli.EXIT_INVALID

    def test_mismatch(self, capsys, monkeypatch):
        real = vf.verify_order_theorem

        def broken(n, *a, **k):
            r = real(n, *a, **k)
            r.verdict = "mismatch"
            return r

        monkeypatch.setattr(vf, "verify_order_theorem", broken)
        code, out, _ = run(capsys, "verify", "order", "--n", "5")
        assert code == cli.EXIT_MISMATCH and "mismatch" in out


def test_byte_identical_runs(capsys):
    argv = ["verify", "size", "--m", "5", "6", "7", "8", "--format", "json"]
    vf.clear_caches()
    _, first, _ = run(capsys, *argv)
    vf.clear_caches()
    _, second, _ = run(capsys, *argv, "--workers", "2")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmantel", "poly", "cubic", "--n", "5", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["largest_root"] == pytest.approx(4.0)
