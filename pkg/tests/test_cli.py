import csv
import io
import json
import subprocess
import sys

import pytest

from cantor_potential.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    write("geo32.json", json.dumps({"kind": "geometric", "ratio": "3/2", "alphabet": 2}))
    write("poly1.json", json.dumps({"kind": "polynomial", "degree": 1}))
    write("tern.json", json.dumps({"kind": "geometric", "ratio": "2", "alphabet": 3}))
    write("table.json", json.dumps({"kind": "table", "values": ["1"]}))
    write("single0.txt", "0\n")
    write("zero.txt", "0\n")
    write("empty.txt", "")
    write("pair.txt", "00\n01\n")
    write("bad_prefix.txt", "0\n01\n")
    write("uniform.json", json.dumps({"mass": "1", "tail": "uniform"}))
    write("quarter.json", json.dumps({"mass": "1/4", "tail": "uniform"}))
    write("atom.json", json.dumps({"mass": "1", "tail": {"point": {"head": "", "period": "0"}}}))
    return tmp_path


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_capacity_examples(files):
    assert run("capacity", "--kernel", files / "geo32.json", "--set", files / "single0.txt") == (0, "1/7\n")
    assert run("capacity", "--kernel", files / "geo32.json", "--set", files / "empty.txt") == (0, "0\n")
    code, out = run("capacity", "--kernel", files / "geo32.json", "--set", files / "pair.txt", "--oracle")
    assert code == 0 and out == "1/7\noracle 1/7: PASS\n"
    code, out = run("capacity", "--kernel", files / "geo32.json", "--set", files / "single0.txt", "--shift", "1")
    assert out == "2/21\n"


def test_enumerate_example(files):
    trace = files / "trace.csv"
    code, out = run(
        "enumerate", "--kernel", files / "geo32.json", "--order", files / "zero.txt", "--trace", trace, "--check"
    )
    assert code == 0
    assert out.splitlines()[0] == "ww 1/7"
    assert out.splitlines()[-1] == "verdict PASS"
    rows = list(csv.reader(trace.open()))
    assert rows[-1][:2] == ["summary", "PASS"] and rows[-1][3] == "1/7"


def test_realize_round_trip(files):
    m = files / "real.json"
    code, out = run("realize", "--kernel", files / "geo32.json", "--set", files / "pair.txt", "--out", m)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "1/7" and len(lines) == 4
    assert all("PASS" in line for line in lines[1:])
    for point in ("00:1", "01:0", "000:01"):
        assert run("potential", "--kernel", files / "geo32.json", "--measure", m, "--point", point) == (0, "1\n")
    assert run("potential", "--kernel", files / "geo32.json", "--measure", m, "--point", "1:0") == (0, "1/7\n")
    # energy of a realizer equals its mass, since the potential is 1 on its support
    assert run("energy", "--kernel", files / "geo32.json", "--measure", m) == (0, "1/7\n")


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("energy", "--kernel", "geo32.json", "--measure", "uniform.json"), "4"),
        (("energy", "--kernel", "geo32.json", "--measure", "atom.json"), "inf"),
        (("potential", "--kernel", "geo32.json", "--measure", "quarter.json", "--point", "01:10"), "1"),
        (("potential", "--kernel", "geo32.json", "--measure", "atom.json", "--point", ":0"), "inf"),
        (("potential", "--kernel", "geo32.json", "--measure", "uniform.json", "--point", ":0", "--shift", "1"), "6"),
        (("mutual", "--kernel", "geo32.json", "--measure", "quarter.json", "--measure2", "quarter.json"), "1/4"),
        (("riesz-energy", "--ratio", "3/2", "--measure", "uniform.json"), "2"),
        (("riesz-energy", "--ratio", "3/2", "--measure", "atom.json"), "inf"),
    ],
)
def test_value_commands(files, argv, expected):
    argv = [files / a if a.endswith(".json") else a for a in argv]
    assert run(*argv) == (0, expected + "\n")


def test_cftest(files):
    levels = files / "levels"
    levels.mkdir()
    for i in range(2):
        (levels / f"{i}.txt").write_text("λ\n")
    code, out = run("cftest", "--kernel", files / "geo32.json", "--levels", levels)
    assert code == 0 and out.endswith("verdict PASS\n")
    for i in range(2, 4):
        (levels / f"{i}.txt").write_text("λ\n")
    code, out = run("cftest", "--kernel", files / "geo32.json", "--levels", levels)
    assert code == 1 and "level 3: C = 1/4 <= 1/8: FAIL" in out


def test_cftest_missing_level(files):
    levels = files / "gappy"
    levels.mkdir()
    (levels / "0.txt").write_text("0\n")
    (levels / "2.txt").write_text("0\n")
    assert run("cftest", "--kernel", files / "geo32.json", "--levels", levels)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("capacity", "--kernel", "missing.json", "--set", "single0.txt"),
        ("capacity", "--kernel", "geo32.json", "--set", "bad_prefix.txt"),
        ("capacity", "--kernel", "table.json", "--set", "single0.txt"),
        ("enumerate", "--kernel", "geo32.json", "--order", "bad_prefix.txt", "--trace", "t.csv"),
        ("potential", "--kernel", "geo32.json", "--measure", "uniform.json", "--point", "01"),
        ("energy", "--kernel", "tern.json", "--measure", "uniform.json"),
        ("riesz-energy", "--ratio", "5/2", "--measure", "uniform.json"),
        ("riesz-energy", "--ratio", "1.5", "--measure", "uniform.json"),
        ("capacity", "--kernel", "geo32.json"),
        ("capacity", "--kernel", "geo32.json", "--set", "single0.txt", "--shift", "-1"),
    ],
)
def test_malformed_input_exits_2(files, argv, capsys):
    argv = [files / a if a.endswith((".json", ".txt")) else a for a in argv]
    assert run(*argv)[0] == 2
    assert capsys.readouterr().err


def test_bad_prefix_diagnostic_names_line(files, capsys):
    run("enumerate", "--kernel", files / "geo32.json", "--order", files / "bad_prefix.txt", "--trace", files / "t.csv")
    assert "line 2" in capsys.readouterr().err


def test_oracle_too_large_is_an_input_error(files, monkeypatch):
    monkeypatch.setenv("CANTOR_POTENTIAL_MAX_DEPTH", "1")
    code, _ = run("capacity", "--kernel", files / "geo32.json", "--set", files / "pair.txt", "--oracle")
    assert code == 2


def test_outputs_are_deterministic(files):
    first = run("enumerate", "--kernel", files / "poly1.json", "--order", files / "pair.txt", "--trace", files / "a.csv", "--check")
    second = run("enumerate", "--kernel", files / "poly1.json", "--order", files / "pair.txt", "--trace", files / "b.csv", "--check")
    assert first == second
    assert (files / "a.csv").read_bytes() == (files / "b.csv").read_bytes()


@pytest.mark.parametrize("suite", ["kernel", "measure"])
def test_verify_suites(suite):
    code, out = run("verify", "--suite", suite)
    assert code == 0
    assert out and all(line.startswith("[PASS]") for line in out.splitlines())


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "cantor_potential", "capacity", "--kernel", str(files / "geo32.json"),
         "--set", str(files / "single0.txt")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "1/7\n"
