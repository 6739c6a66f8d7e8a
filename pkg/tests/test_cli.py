import io
import json
import subprocess
import sys

import pytest

from nullcones.cli import main
from nullcones.serialize import dumps, loads


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- resolve --------------------------------------------------------------------

def test_resolve_gl_example(capsys):
    point = '{"case":"gl","a":[["1","0"]],"b":[["0"],["1"]]}'
    code, out, _ = run(capsys, "resolve", point)
    assert code == 0
    res = loads(out)
    assert res["status"] == "unique" and res["variant"] == "nc"
    e2 = {"ambient_dim": 2, "dim": 1, "basis": [["0"], ["1"]]}
    assert res["preimage"]["u1"] == e2 and res["preimage"]["u2"] == e2


def test_resolve_rank_deficient_os_point(capsys):
    point = '{"case":"os","t":[["1","0"],["1*i","0"],["0","0"],["0","0"]]}'
    code, out, _ = run(capsys, "resolve", point, "--seed", "3")
    assert code == 3
    res = loads(out)
    assert res["status"] == "not-unique"
    w1, w2 = res["witnesses"]
    assert w1 != w2
    assert w1["t"] == w2["t"] == loads(point)["t"]
    assert w1["u"]["dim"] == w2["u"]["dim"] == 2


def test_resolve_reads_file_and_stdin(capsys, tmp_path, monkeypatch):
    point = '{"case":"gl","a":[["1","0"]],"b":[["0"],["1"]]}'
    path = tmp_path / "p.json"
    path.write_text(point)
    code, out_file, _ = run(capsys, "resolve", str(path))
    assert code == 0
    monkeypatch.setattr(sys, "stdin", io.StringIO(point))
    code, out_stdin, _ = run(capsys, "resolve", "-")
    assert code == 0 and out_stdin == out_file


@pytest.mark.parametrize("argv", [
    ["sample", "--kind", "orth", "--n", "5", "--m", "2"],
    ["sample", "--kind", "symp", "--n", "6", "--m", "3", "--seed", "4"],
    ["sample", "--kind", "gl", "--n", "5", "--s", "2", "--m", "2"],
])
def test_sample_then_resolve_is_byte_identical(argv, capsys):
    code, sampled, _ = run(capsys, *argv)
    assert code == 0
    line = sampled.strip()
    extra = ["--kind", "symp"] if "symp" in argv else []
    code, out, _ = run(capsys, "resolve", line, *extra)
    assert code == 0
    assert dumps(loads(out)["point"]) == line


def test_sample_resolution_point(capsys):
    code, out, _ = run(capsys, "sample", "--kind", "gl", "--n", "4", "--s", "1", "--m", "2",
                       "--variant", "nc1")
    assert code == 0
    assert loads(out)["variant"] == "nc1"
    code, _, err = run(capsys, "sample", "--kind", "orth", "--n", "4", "--m", "2",
                       "--variant", "nc")
    assert code == 2 and "does not match" in err


def test_sample_is_deterministic(capsys):
    argv = ["sample", "--kind", "orth", "--n", "6", "--m", "3", "--seed", "11"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_resolve_parse_error_has_location(capsys):
    code, _, err = run(capsys, "resolve", '{"case":"os","t":[["1","q"]]}')
    assert code == 2
    assert "<argument>.t[0][1]" in err
    code, _, err = run(capsys, "resolve", '{"case":"os",')
    assert code == 2 and "line 1 column" in err


def test_resolve_non_null_point_is_usage_error(capsys):
    code, _, err = run(capsys, "resolve", '{"case":"os","t":[["1"],["0"]]}')
    assert code == 2 and "error" in err


# -- verify ---------------------------------------------------------------------

def test_verify_equivariance(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "equivariance", "--kind", "orth", "--n", "4",
                       "--m", "2", "--trials", "100", "--seed", "7", "--json", str(report))
    assert code == 0
    rep = json.loads(report.read_text())["reports"][0]
    assert rep["trials"] == rep["passes"] == 100 and rep["failures"] == []


def test_verify_diagrams_gl2(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "diagrams", "--variant", "gl2", "--trials", "20",
                       "--json", str(report))
    assert code == 0
    rep = json.loads(report.read_text())["reports"][0]
    assert rep["parameters"]["variant"] == "nc2" and rep["passes"] == 20


def test_verify_zero_trials(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "quotient", "--kind", "symp", "--n", "4", "--m", "2",
                     "--trials", "0", "--json", str(report))
    assert code == 0
    rep = json.loads(report.read_text())["reports"][0]
    assert rep["trials"] == rep["passes"] == 0


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2


def test_missing_command_is_usage_error(capsys):
    assert run(capsys)[0] == 2


def test_bad_grid_file(capsys, tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text("[1, 2]")
    code, _, err = run(capsys, "verify", "components", "--grid", str(grid))
    assert code == 2 and "parse error" in err
    code, _, err = run(capsys, "verify", "components", "--grid", str(tmp_path / "missing.json"))
    assert code == 2


def _strip_elapsed(payload):
    for r in payload["reports"]:
        r.pop("elapsed_ms")
    return payload


def test_verify_report_is_deterministic_and_job_independent(capsys, tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps([{"kind": "gl", "n": 4, "s": 1, "m": 2, "variant": "nc1"},
                                {"kind": "orth", "n": 4, "m": 2, "variant": "nc0"}]))
    payloads = []
    for jobs in ("1", "1", "2"):
        path = tmp_path / f"r{len(payloads)}.json"
        code, _, _ = run(capsys, "verify", "fiber-witnesses", "--grid", str(grid), "--trials", "6",
                         "--seed", "5", "--jobs", jobs, "--json", str(path))
        assert code == 0
        payloads.append(_strip_elapsed(json.loads(path.read_text())))
    assert payloads[0] == payloads[1] == payloads[2]


def test_failing_trial_is_replayable():
    from nullcones.suites import run_suite, run_trial

    rep = run_suite("equivariance", {"kind": "symp", "n": 4, "m": 2}, trials=3, seed=9)
    single = run_trial("equivariance", {"kind": "symp", "n": 4, "m": 2}, 9, 2)
    assert single["seed"] == "9/equivariance/" + dumps({"kind": "symp", "m": 2, "n": 4}) + "/2"
    assert rep.passes == 3 and single["ok"]


# -- dims -----------------------------------------------------------------------

def test_dims_symplectic_discrepancy(capsys, tmp_path):
    out_json = tmp_path / "d.json"
    code, out, _ = run(capsys, "dims", "--kind", "symp", "--n", "2", "--m", "1",
                       "--json", str(out_json))
    assert code == 0
    (row,) = json.loads(out_json.read_text())
    assert row["base_formula"] == 0 and row["base_oracle"] == 1
    assert row["agree"] is False


def test_dims_orthogonal_grid_agrees(capsys, tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps([{"kind": "orth", "n": n, "m": m}
                                for n in (4, 5, 6) for m in (1, 2, 3)]))
    out_json = tmp_path / "d.json"
    code, _, _ = run(capsys, "dims", "--grid", str(grid), "--json", str(out_json))
    assert code == 0
    rows = json.loads(out_json.read_text())
    assert len(rows) == 9 and all(r["agree"] for r in rows)


def test_dims_empty_grid(capsys, tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text("[]")
    out_json = tmp_path / "d.json"
    code, out, _ = run(capsys, "dims", "--grid", str(grid), "--json", str(out_json))
    assert code == 0
    assert json.loads(out_json.read_text()) == []
    assert len(out.strip().splitlines()) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nullcones", "verify", "cotangent"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("PASS") == 3
