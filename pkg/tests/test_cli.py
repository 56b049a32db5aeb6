import json
import subprocess
import sys

import pytest

from boxdimer.cli import EXIT_CEILING, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BOXDIMER_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_macmahon_csv(capsys):
    code, out, _ = run(capsys, "series", "macmahon", "--trunc", "6", "--format", "csv")
    assert code == EXIT_PASS
    assert out.strip() == "0,1\n1,1\n2,3\n3,6\n4,13\n5,24\n6,48"


def test_box_json(capsys):
    code, out, _ = run(capsys, "series", "box", "-a", "1", "-b", "1", "-c", "1",
                       "--trunc", "3")
    assert code == EXIT_PASS
    assert json.loads(out)["series"]["coeffs"] == ["1", "1", "0", "0"]


def test_zdbc_trivial(capsys):
    code, out, _ = run(capsys, "series", "zdbc", "--trunc", "0", "--format", "csv")
    assert (code, out.strip()) == (EXIT_PASS, "0,1")


def test_table(capsys):
    code, out, _ = run(capsys, "series", "x", "-a", "1", "--trunc", "2",
                       "--format", "table")
    assert code == EXIT_PASS and out.splitlines()[-1].split() == ["2", "7"]


def test_output_is_deterministic_and_cache_is_faithful(capsys):
    argv = ("series", "zddc", "-a", "1", "-b", "1", "-c", "1", "--trunc", "3")
    first = run(capsys, *argv)[1]
    cached = run(capsys, *argv)[1]
    fresh = run(capsys, *argv, "--no-cache")[1]
    assert first == cached == fresh


def test_window_series(capsys):
    code, out, _ = run(capsys, "series", "zddc", "-a", "1", "--window", "3",
                       "--trunc", "2", "--format", "csv")
    assert code == EXIT_PASS and out.startswith("0,1\n")


def test_stabilization_exit_code(capsys):
    code, out, _ = run(capsys, "series", "zddc", "-a", "1", "-b", "1", "-c", "1",
                       "--trunc", "4", "--n-ceiling", "2", "--no-cache")
    assert code == EXIT_CEILING
    partial = json.loads(out)
    assert set(partial["windows"]) == {"1", "2"}


@pytest.mark.parametrize("argv", [
    ("verify", "main", "-a", "1", "-b", "1", "-c", "1", "--trunc", "3"),
    ("verify", "main", "--trunc", "4"),
    ("verify", "bijection", "--window", "2"),
    ("verify", "stabilization", "-a", "1", "--trunc", "3"),
    ("verify", "recurrence", "--grid", "2", "--trunc", "10", "--prefactor", "first"),
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_PASS
    assert json.loads(out)["pass"] is True


def test_verify_recurrence_as_printed_reports_mismatch(capsys):
    code, out, err = run(capsys, "verify", "recurrence", "--grid", "4", "--trunc", "20")
    report = json.loads(out)
    assert code == EXIT_MISMATCH and "MISMATCH" in err
    assert (report["points"], report["passed"]) == (300, 30)


@pytest.mark.parametrize("argv", [
    ("series", "box", "-a", "-1"),
    ("series", "nope"),
    ("verify", "main", "--jobs", "0"),
    ("dump", "graph", "-a", "3", "--window", "2"),
    (),
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_dump_and_render(tmp_path, capsys):
    dump = tmp_path / "ddc.json"
    svg = tmp_path / "ddc.svg"
    assert main(["dump", "ddc-min", "-a", "2", "-b", "3", "-c", "1", "--window", "5",
                 "--out", str(dump)]) == EXIT_PASS
    assert main(["render", "ddc", str(dump), "--out", str(svg)]) == EXIT_PASS
    assert svg.read_text().startswith("<svg")


def test_render_schema_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "center": [0, 0]}))
    code, _, err = run(capsys, "render", "ddc", str(bad))
    assert code == EXIT_USAGE and "$.edges" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "boxdimer", "series", "macmahon",
                          "--trunc", "2", "--format", "csv", "--no-cache"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "0,1\n1,1\n2,3\n"
