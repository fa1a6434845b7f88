import csv
import io
import json

import pytest
from click.testing import CliRunner

from barrierbot.cli import main

FIG1 = {"length": 8, "range": 0.5, "positions": [0.3, 2.6, 2.7, 3.6, 4.3, 5.2, 7.3, 7.3]}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fig1_file(tmp_path):
    p = tmp_path / "fig1.json"
    p.write_text(json.dumps(FIG1))
    return str(p)


def test_gaps(runner, fig1_file):
    out = runner.invoke(main, ["gaps", "--instance", fig1_file])
    assert out.exit_code == 0
    assert out.output.splitlines() == ["[0.8, 2.1]", "[5.7, 6.8]", "[7.8, 8]"]


def test_solve_offline_csv(runner, fig1_file, tmp_path):
    traj = tmp_path / "t.txt"
    svg = tmp_path / "s.svg"
    out = runner.invoke(main, ["--format", "csv", "solve-offline", "--instance", fig1_file,
                               "--emit-trajectory", str(traj), "--emit-svg", str(svg)])
    assert out.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(out.output)))
    assert float(rows[0]["length"]) == pytest.approx(11.1)
    assert rows[0]["triples"] == "2"
    assert svg.read_text().startswith("<?xml")
    ok = runner.invoke(main, ["verify", "--instance", fig1_file, "--trajectory", str(traj)])
    assert ok.exit_code == 0 and "covered: True" in ok.output


def test_solve_online(runner, fig1_file):
    out = runner.invoke(main, ["solve-online", "--instance", fig1_file, "--algo", "adaptive"])
    assert out.exit_code == 0
    assert "length: 11.7" in out.output and "ratio: 1.054" in out.output
    out = runner.invoke(main, ["solve-online", "--instance", fig1_file, "--algo", "fixed-switch",
                               "--switch-point", "8"])
    assert "length: 11.7" in out.output
    out = runner.invoke(main, ["solve-online", "--instance", fig1_file, "--algo", "triple-always", "--hide-length"])
    assert "length: 11.7" in out.output


def test_online_without_length_is_an_error(runner, fig1_file):
    out = runner.invoke(main, ["solve-online", "--instance", fig1_file, "--algo", "adaptive", "--hide-length"])
    assert out.exit_code == 1


def test_oracle(runner, fig1_file, tmp_path):
    out = runner.invoke(main, ["oracle", "--instance", fig1_file])
    assert out.exit_code == 0 and "length: 11.1" in out.output
    out = runner.invoke(main, ["oracle", "--instance", fig1_file, "--max-n", "4"])
    assert out.exit_code == 1 and "limited to 4 sensors" in out.output


def test_verify_flags_bad_trajectory(runner, fig1_file):
    out = runner.invoke(main, ["verify", "--instance", fig1_file, "--trajectory", "0,2.7,1.5"])
    assert out.exit_code == 2
    out = runner.invoke(main, ["verify", "--instance", fig1_file, "--trajectory", "0,2,3"])
    assert out.exit_code == 1


def test_invalid_instance_exit_code(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"length": 10, "range": 0.5, "positions": [1.0]}))
    assert runner.invoke(main, ["gaps", "--instance", str(bad)]).exit_code == 1
    extra = tmp_path / "extra.json"
    extra.write_text(json.dumps({**FIG1, "colour": "red"}))
    assert runner.invoke(main, ["gaps", "--instance", str(extra)]).exit_code == 1


@pytest.mark.parametrize("kind", ["random", "known-l-adv", "unknown-l-adv", "fixed-switch-adv"])
def test_generate(runner, tmp_path, kind):
    out_file = tmp_path / f"{kind}.json"
    args = ["--seed", "4", "generate", "--kind", kind, "--out", str(out_file)]
    if kind == "known-l-adv":
        args += ["--length", "1000", "--range", "10", "--stack", "10"]
    out = runner.invoke(main, args)
    assert out.exit_code == 0, out.output
    data = json.loads(out_file.read_text())
    assert set(data) == {"length", "range", "positions"}
    solved = runner.invoke(main, ["verify", "--instance", str(out_file)])
    assert solved.exit_code == 0


def test_generate_is_seeded(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    runner.invoke(main, ["--seed", "9", "generate", "--kind", "random", "--out", str(a)])
    runner.invoke(main, ["--seed", "9", "generate", "--kind", "random", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_generate_rejects_degenerate(runner, tmp_path):
    out = runner.invoke(main, ["generate", "--kind", "known-l-adv", "--length", "10", "--out", str(tmp_path / "x.json")])
    assert out.exit_code == 1


def test_bench_writes_csv(runner, tmp_path):
    out_csv = tmp_path / "bench.csv"
    out = runner.invoke(main, ["bench", "--count", "30", "--no-adversaries", "--out", str(out_csv), "--assert"])
    assert out.exit_code == 0, out.output
    rows = list(csv.DictReader(out_csv.open()))
    assert len(rows) == 90
    assert "adaptive: runs 30" in out.output


def test_bench_assert_exit_code(runner, monkeypatch):
    import barrierbot.harness as harness

    # every ratio is at least 1, so a ceiling below 1 must trip
    monkeypatch.setitem(harness.CEILINGS, "adaptive", 0.9)
    out = runner.invoke(main, ["bench", "--count", "30", "--no-adversaries", "--algo", "adaptive", "--assert"])
    assert out.exit_code == 2


def test_scale(runner):
    out = runner.invoke(main, ["--format", "csv", "scale", "--sizes", "100,1000", "--trials", "2"])
    assert out.exit_code == 0
    assert out.output.splitlines()[0] == "n,seconds"
    assert len(out.output.splitlines()) == 3


def test_render(runner, fig1_file, tmp_path):
    svg = tmp_path / "f.svg"
    out = runner.invoke(main, ["render", "--instance", fig1_file, "--algo", "adaptive", "--out", str(svg)])
    assert out.exit_code == 0
    assert svg.read_text().count('class="pass"') == 7
