import csv
import hashlib
import http.server
import io
import json
import threading
from contextlib import redirect_stderr, redirect_stdout
from functools import partial

import pytest

from builders import complete, star
from conftest import DATA
from egostat import UndefinedMetricError, build_graph
from egostat.cli import main
from egostat.report import ReportBundle, build_report, compare


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_report_json_round_trip(karate):
    b = build_report(karate, dataset="karate", seed=1)
    again = ReportBundle.from_json(b.to_json())
    assert again == b
    assert again.table1["n"] == 34 and again.table1["m"] == 78
    assert again.table3["c_ego_rand"] == pytest.approx(2 * b.table1["c_glo"] - b.table1["c_glo"] ** 2, rel=1e-5)
    assert again.table2["p_glo"] == pytest.approx(2 * 78 / (34 * 33), rel=1e-5)


def test_report_is_byte_identical_across_runs(tmp_path):
    p = tmp_path / "k.txt"
    p.write_text((DATA / "karate.txt").read_text())
    first = run(["report", str(p), "--seed", "3"])
    second = run(["report", str(p), "--seed", "3"])
    assert first[0] == 0 and first[1] == second[1]
    prov = json.loads(first[1])["provenance"]
    assert prov["seed"] == 3 and len(prov["input_sha256"]) == 64


def test_undefined_metrics_are_null_with_reason():
    code, out, _ = run(["report", "--edges", "0 1;0 2;0 3;1 2;1 3;2 3"])
    assert code == 0
    rep = json.loads(out)
    assert rep["table1"]["r_glo"] is None
    assert rep["undefined"]["table1.r_glo"] == "zero degree variance"
    assert rep["table3"]["r_ego"] is None and "table3.r_ego" in rep["undefined"]
    assert rep["table3"]["c_ego"] == 1.0
    # a None anywhere in the tables must have a recorded reason
    for section in ("table1", "table2", "table3", "fit"):
        for k, v in rep[section].items():
            if v is None:
                assert f"{section}.{k}" in rep["undefined"], k


def test_report_skips_are_recorded(karate):
    b = build_report(karate, skip_4clique=True, skip_diameter=True)
    assert b.table3["c_ego"] is None and b.table1["eff_diameter90"] is None
    assert "skip" in b.undefined["table3.c_ego"] and "skip" in b.undefined["table1.eff_diameter90"]


def test_annd_definition_is_recorded(karate):
    a = build_report(karate, annd_def="vertex", skip_diameter=True)
    b = build_report(karate, annd_def="instance", skip_diameter=True)
    assert a.table2["annd_definition"] == "vertex" and b.table2["annd_definition"] == "instance"
    assert a.table2["annd"] == a.table2["annd_vertex"] and b.table2["annd"] == b.table2["annd_instance"]


def test_parse_error_exit_code(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 1\n1\n")
    code, _, err = run(["report", str(p)])
    assert code == 4 and "line 2" in err
    assert run(["report", str(tmp_path / "missing.txt")])[0] == 4


def test_csv_and_markdown_modes():
    code, out, _ = run(["report", "--edges", "0 1;1 2;2 0;2 3", "--csv"])
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["metric", "value", "reason"]
    assert ["table1.n", "4", ""] in rows
    code, out, _ = run(["report", "--edges", "0 1;1 2;2 0;2 3", "--md"])
    assert code == 0 and r"| Dataset | \|V\| |" in out and "C_ego^rand" in out


def test_compare_clique_and_star(tmp_path):
    code, out, err = run(["compare", "--edges", "0 1;0 2;0 3;1 2;1 3;2 3"])
    assert code == 0
    assert json.loads(err)["ks_E_T"] == 0.0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["value", "ccdf_G", "ccdf_E", "ccdf_T"]
    assert run(["compare", "--edges", "0 1;0 2;0 3"])[0] == 5

    prefix = tmp_path / "cmp"
    assert run(["compare", "--edges", "0 1;1 2;2 0;2 3", "--out", str(prefix)])[0] == 0
    assert (tmp_path / "cmp.csv").exists() and json.loads((tmp_path / "cmp.json").read_text())["points"] > 0


def test_compare_series_are_ccdfs(karate):
    c = compare(karate)
    for s in (c.ccdf_global, c.ccdf_ego, c.ccdf_theory):
        assert s[0] == 1.0 and all(a >= b for a, b in zip(s, s[1:]))
    assert 0 <= c.ks_ego_theory <= 1


def test_compare_named():
    c = compare(complete(4))
    assert c.ks_ego_theory == 0.0
    with pytest.raises(UndefinedMetricError):
        compare(star(3))
    with pytest.raises(UndefinedMetricError):
        compare(build_graph([], n=2))


@pytest.fixture
def http_dir(tmp_path):
    root = tmp_path / "srv"
    root.mkdir()
    (root / "edges.txt").write_bytes(b"0 1\n1 2\n")
    handler = partial(http.server.SimpleHTTPRequestHandler, directory=str(root))
    handler.log_message = lambda *a, **k: None
    srv = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
    t = threading.Thread(target=srv.serve_forever, daemon=True)
    t.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}", root
    srv.shutdown()


def test_fetch_ok_and_integrity(http_dir, tmp_path):
    base, root = http_dir
    digest = hashlib.sha256(b"0 1\n1 2\n").hexdigest()
    dest = tmp_path / "out" / "edges.txt"
    code, out, _ = run(["fetch", f"{base}/edges.txt", str(dest), "--sha256", digest])
    assert code == 0 and dest.read_bytes() == b"0 1\n1 2\n" and out.startswith(digest)

    bad = tmp_path / "out" / "bad.txt"
    code, _, err = run(["fetch", f"{base}/edges.txt", str(bad), "--sha256", "0" * 64])
    assert code == 3 and not bad.exists() and "mismatch" in err
    assert [p.name for p in (tmp_path / "out").iterdir()] == ["edges.txt"]


def test_fetch_unreachable(http_dir, tmp_path):
    base, _ = http_dir
    dest = tmp_path / "none.txt"
    assert run(["fetch", f"{base}/missing.txt", str(dest)])[0] == 2
    assert run(["fetch", "http://127.0.0.1:9/x.txt", str(dest), "--timeout", "2"])[0] == 2
    assert not dest.exists() and list(tmp_path.glob(".part-*")) == []
