import csv
import io
import json
import subprocess
import sys

import pytest

from parabolic_counts.cli import ConfigError, config_hash, main, parse_composition, parse_group, parse_qs


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parsers():
    assert parse_group("GL2") == ("GL", 2)
    assert parse_group("sl_3") == ("SL", 3)
    assert parse_qs("2,3,5") == [2, 3, 5]
    assert parse_composition("2,1", 3) == (2, 1)
    for bad in (lambda: parse_group("SP4"), lambda: parse_qs(""), lambda: parse_qs("6"),
                lambda: parse_qs("2,2"), lambda: parse_composition("2,2", 3)):
        with pytest.raises(ConfigError):
            bad()


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--group", "GL2", "--parabolic", "1,1", "--q", "2",
                       "--quantity", "all", "--no-timing")
    assert code == 0
    data = json.loads(out)
    assert [r["quantity"] for r in data["result"]] == ["group", "lie", "nil"]
    assert [r["brute"] for r in data["result"]] == [4, 10, 4]
    assert all(r["agree"] for r in data["result"])
    assert data["config_hash"] == config_hash(data["config"])


def test_count_is_byte_reproducible(capsys):
    argv = ("count", "--group", "GL2", "--parabolic", "2", "--q", "3", "--no-timing")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_count_csv_and_markdown(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, _, _ = run(capsys, "count", "--group", "GL2", "--parabolic", "1,1", "--q", "2,3",
                     "--format", "csv", "-o", str(path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert [(r["q"], r["brute"]) for r in rows] == [("2", "4"), ("3", "12")]
    code, out, _ = run(capsys, "count", "--group", "GL2", "--parabolic", "2", "--format", "markdown")
    assert code == 0 and out.startswith("| group |")


def test_config_errors(capsys):
    assert run(capsys, "count", "--group", "GL2", "--parabolic", "1,1", "--q", "6")[0] == 2
    assert run(capsys, "count", "--group", "GL2", "--parabolic", "3", "--q", "2")[0] == 2
    assert run(capsys, "count", "--group", "SL2", "--parabolic", "2", "--q", "2", "--quantity", "lie")[0] == 2
    assert run(capsys, "verify", "--group", "SL2", "--q", "2")[0] == 2
    assert run(capsys, "count", "--group", "GL2")[0] == 2
    assert run(capsys, "porc", "--group", "GL2", "--parabolic", "1,1", "--q", "2")[0] == 2


def test_budget_refusal(capsys, monkeypatch):
    monkeypatch.setenv("PARABOLIC_COUNTS_BUDGET", "100")
    code, _, err = run(capsys, "count", "--group", "GL3", "--parabolic", "1,1,1", "--q", "3")
    assert code == 3 and "budget" in err
    assert run(capsys, "green", "--n", "7")[0] == 3


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--group", "GL2", "--q", "2")
    assert code == 0
    results = json.loads(out)["result"]
    assert results and all(r["ok"] for r in results)
    code, out, _ = run(capsys, "verify", "--group", "SL2", "--q", "3", "--format", "markdown")
    assert code == 0 and "FAIL" not in out


def test_porc(capsys):
    code, out, _ = run(capsys, "porc", "--group", "GL2", "--parabolic", "1,1", "--q", "2,3,5,7", "--degree", "2")
    assert code == 0
    data = json.loads(out)["result"]
    assert data["porc_consistent"] and data["fits"][0]["poly"] == "2q^2-2q"


def test_green(capsys):
    code, out, _ = run(capsys, "green", "--n", "2")
    assert code == 0
    assert list(csv.reader(io.StringIO(out)))[-1] == ["[1,1]", "-q+1", "q+1"]


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "--group", "GL1", "--q", "2,3,4,5", "--degree", "1")
    assert code == 0
    fibers = json.loads(out)["result"]["fibers"]
    assert all(f["porc_consistent"] and f["polys"] == ["q"] for f in fibers)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "parabolic_counts", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
