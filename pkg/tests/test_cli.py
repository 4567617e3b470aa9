import json
import subprocess
import sys

import pytest

from geniuslab.cli import CheckReport, exit_code, load_config, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    lines = [json.loads(x) for x in out.out.splitlines() if x.strip()]
    return code, lines, out.err


def strip_time(lines):
    return [{k: v for k, v in d.items() if k != "elapsed_ms"} for d in lines]


def test_selftest(capsys):
    code, lines, _ = run(["selftest"], capsys)
    assert code == 0
    assert {d["check"] for d in lines} >= {"selftest:graphlab", "selftest:stirlconf"}


def test_report_schema(capsys):
    _, lines, _ = run(["check-conj1", "--p-max", "4"], capsys)
    assert [d["params"]["p"] for d in lines] == [2, 3, 4]
    for d in lines:
        assert set(d) == {
            "check", "params", "status", "witness", "elapsed_ms", "seed", "tool_version", "details",
        }
        assert json.loads(json.dumps(d)) == d


def test_conj1_exit_zero(capsys):
    code, lines, _ = run(["check-conj1", "--p-max", "10"], capsys)
    assert code == 0 and all(d["status"] == "pass" for d in lines)


def test_census_v14_fails_with_one_witness(capsys):
    code, lines, _ = run(["graph", "census", "--r", "3", "--v", "14", "--mode", "exhaustive"], capsys)
    assert code == 1
    (rep,) = lines
    assert rep["status"] == "fail" and len(rep["witness"]) == 1


def test_inconclusive_exit_code(capsys):
    code, lines, _ = run(["check-conj2", "--i", "4"], capsys)
    assert code == 3
    assert lines[0]["status"] == "inconclusive"


def test_exit_code_contract():
    assert exit_code(["pass", "pass"]) == 0
    assert exit_code(["pass", "inconclusive"]) == 3
    assert exit_code(["inconclusive", "fail"]) == 1
    assert exit_code([]) == 0


def test_fail_requires_witness():
    with pytest.raises(ValueError):
        CheckReport("x", {}, "fail")
    with pytest.raises(ValueError):
        CheckReport("x", {}, "maybe")


def test_usage_errors(capsys):
    assert main(["no-such-command"]) == 2
    assert main(["check-conj1", "--bogus"]) == 2
    assert main(["graph", "census", "--v", "13"]) == 2
    assert main(["check-conj2", "--i", "2", "--p-window", "2..5"]) == 2
    assert main(["pernici", "--r", "1"]) == 2
    capsys.readouterr()


def test_pernici_doubled_u_reports_fail(capsys):
    code, lines, _ = run(["pernici", "--r", "3", "--h-max", "2", "--u-factor", "2"], capsys)
    assert code == 1 and lines[0]["witness"]


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nh_max=2\nr=3  # trailing comment\nh_max=3\n")
    code, lines, err = run(["pernici", "--config", str(cfg)], capsys)
    assert code == 0
    assert lines[0]["params"]["H"] == 3 and lines[0]["params"]["r"] == "3"
    assert "duplicate key 'h_max'" in err
    # flags beat the file
    code, lines, _ = run(["pernici", "--config", str(cfg), "--h-max", "2"], capsys)
    assert lines[0]["params"]["H"] == 2


def test_config_empty_and_errors(tmp_path, capsys):
    empty = tmp_path / "empty.cfg"
    empty.write_text("")
    code, lines, _ = run(["pernici", "--config", str(empty)], capsys)
    assert code == 0 and lines[0]["params"]["H"] == 3
    bad = tmp_path / "bad.cfg"
    bad.write_text("h_max=3\nnot a pair\n")
    assert main(["pernici", "--config", str(bad)]) == 2
    assert "bad.cfg:2" in capsys.readouterr().err


def test_load_config_last_wins(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("a=1\nb = two\na=3\n")
    warnings = []
    assert load_config(str(p), warnings.append) == {"a": "3", "b": "two"}
    assert len(warnings) == 1


def test_identical_runs_identical_reports(tmp_path, capsys):
    argv = ["graph", "census", "--v", "12", "--mode", "sample", "--count", "20", "--seed", "4"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert strip_time(a) == strip_time(b)
    assert a[0]["seed"] == 4


def test_out_file_appends(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    main(["solve-f", "--p", "3", "--out", str(out)])
    main(["solve-f", "--p", "2", "--out", str(out)])
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert [d["params"]["p"] for d in lines] == [3, 2]
    assert lines[0]["details"]["F"]["3"] == "u2*d1 + 1/2*d1^2 + u3 + d2"


def test_chapman_small(capsys):
    code, lines, _ = run(["chapman", "--g-max", "4", "--symbolic-g-max", "3"], capsys)
    assert code == 0
    assert len(lines) == 6 + 3
    assert {d["params"]["mode"] for d in lines} == {"random", "symbolic"}


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "geniuslab.cli", "awesome", "--z", "1,2", "--r", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["params"]["z"] == [1, 2]
