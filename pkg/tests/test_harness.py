import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from discspec import _parallel
from discspec.errors import ConfigError
from discspec.harness import cli, config, pipelines
from discspec.harness.report import CLOSED_FORM, EMPIRICAL, EXPLICIT, Report, fmt, parse_csv

GOLDEN = Path(pipelines.__file__).resolve().parent.parent / "golden"
FAST = ("verify", "bgk", "symbol")


def minimal(**extra):
    return {"experiment": "symbol", "seed": 1, **extra}


# --- config ----------------------------------------------------------------------

def test_defaults_filled():
    cfg = config.validate(minimal())
    assert cfg["profile"]["p"] == 2.0 and cfg["tolerances"]["slack"] == 1e-9


@pytest.mark.parametrize("raw", [
    minimal(unknown=1),
    minimal(profile={"p": 2, "tau": 0.5, "oops": 1}),
    {"experiment": "nope", "seed": 1},
    {"experiment": "symbol"},
    minimal(seed=-1),
    minimal(seed=2 ** 64),
    minimal(samples=0),
    minimal(model={"type": "abstract", "dim": 4, "grid": {"d": 2, "n": 4, "h": 1, "x": 0}}),
])
def test_schema_rejections(raw):
    with pytest.raises(ConfigError):
        config.validate(raw)


@pytest.mark.parametrize("raw", [
    minimal(profile={"tau": 1.5}),
    {"experiment": "spectrum", "seed": 1, "model": {"type": "abstract", "dim": 4}},
    minimal(model={"type": "schrodinger", "grid": {"d": 2, "n": 8, "h": 0.5}}),
    minimal(model={"type": "schrodinger", "grid": {"d": 3, "n": 20, "h": 0.5},
                   "potential": {"kind": "gaussian_complex"}}),
    minimal(profile={"p": 1.5}, model={"type": "schrodinger", "grid": {"d": 2, "n": 8, "h": 0.5},
                                        "potential": {"kind": "gaussian_complex"}}),
    minimal(model={"type": "abstract"}),
    minimal(model={"type": "abstract", "dim": 1000}),
    minimal(grids={"mu": {"r_min": 5, "r_max": 1}}),
    minimal(grids={"disk": {"r_max": 1.0}}),
    minimal(bgk={"points": [{"xi": [0.5, 0], "beta": 1}]}),
    minimal(bgk={"tau": 2}),
])
def test_semantic_rejections(raw):
    with pytest.raises(ConfigError):
        config.validate(raw)


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        config.load(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ConfigError):
        config.load(bad)
    with pytest.raises(ConfigError):
        config.bundled("nope")


def test_seed_override_and_digest():
    a = config.load(config.bundled("symbol"))
    b = config.load(config.bundled("symbol"), seed=99)
    assert b["seed"] == 99
    assert config.digest(a) != config.digest(b)
    assert config.digest(a) == config.digest(config.load(config.bundled("symbol")))


def test_as_complex():
    assert config.as_complex([1, -2]) == 1 - 2j
    assert config.as_complex(3) == 3


# --- reports ---------------------------------------------------------------------

def test_fmt():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(math.nan) == "nan" and fmt(math.inf) == "inf" and fmt(-math.inf) == "-inf"
    assert float(fmt(1 / 3)) == 1 / 3


def test_csv_layout_and_quoting():
    rep = Report()
    rep.add("plain", 1.5, 2.0, EXPLICIT, True)
    rep.add("with,comma", math.nan, None, EMPIRICAL, True)
    rep.add('quote"d', 0.0, 0.0, CLOSED_FORM, False, "numerical: x")
    text = rep.to_csv()
    assert text.endswith("\r\n") and text.count("\r\n") == 4
    rows = parse_csv(text)
    assert list(rows[0]) == ["name", "value", "bound_or_reference", "provenance", "pass"]
    assert [r["name"] for r in rows] == ["plain", "with,comma", 'quote"d']
    assert rows[1]["bound_or_reference"] == "" and rows[1]["value"] == "nan"
    assert [r["pass"] for r in rows] == ["true", "true", "false"]


def test_unknown_provenance():
    with pytest.raises(ValueError):
        Report().add("x", 1, None, "guess", True)


def test_exit_code_policy():
    rep = Report()
    rep.add("a", 1, None, EMPIRICAL, False)
    assert rep.exit_code() == 0
    rep.add("b", 1, 0, EXPLICIT, False)
    assert rep.exit_code() == 1
    rep.add("c", math.nan, None, EXPLICIT, False, "numerical: overflow")
    assert rep.exit_code() == 3


def test_json_mirror(tmp_path):
    rep = Report(metadata={"k": 1})
    rep.add("x", math.inf, 1.0)
    paths = rep.write(tmp_path, "both")
    assert sorted(p.name for p in paths) == ["report.csv", "report.json"]
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["metadata"] == {"k": 1} and doc["rows"][0]["value"] == "inf"
    assert (tmp_path / "report.csv").read_bytes().count(b"\r\n") == 2


def test_guard_contains_failures():
    from discspec.errors import NumericalError
    rep = Report()

    def boom(r):
        raise NumericalError("nope")

    def oops(r):
        raise KeyError("k")

    pipelines._guard(rep, "n", boom)
    pipelines._guard(rep, "e", oops)
    assert rep.rows[0].error.startswith("numerical:") and rep.rows[1].error.startswith("error:")
    assert rep.exit_code() == 3


# --- CLI -------------------------------------------------------------------------

@pytest.mark.parametrize("kind", FAST)
def test_cli_ok_and_metadata(kind, tmp_path):
    assert cli.main([kind, "--out", str(tmp_path), "--format", "both"]) == 0
    doc = json.loads((tmp_path / "report.json").read_text())
    meta = doc["metadata"]
    assert set(meta) == {"experiment", "seed", "config_digest", "timestamp", "backend", "version", "rows"}
    assert meta["rows"] == len(doc["rows"]) == len(parse_csv((tmp_path / "report.csv").read_text()))


def test_cli_formats(tmp_path):
    assert cli.main(["symbol", "--out", str(tmp_path / "c"), "--format", "csv"]) == 0
    assert cli.main(["symbol", "--out", str(tmp_path / "j"), "--format", "json"]) == 0
    assert [p.name for p in (tmp_path / "c").iterdir()] == ["report.csv"]
    assert [p.name for p in (tmp_path / "j").iterdir()] == ["report.json"]


def test_cli_config_errors(tmp_path, capsys):
    assert cli.main(["symbol", "--config", str(tmp_path / "missing.json")]) == 2
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"experiment": "symbol", "seed": 1, "bogus": True}))
    assert cli.main(["symbol", "--config", str(cfg)]) == 2
    # experiment kind must match the subcommand
    assert cli.main(["bgk", "--config", str(config.bundled("symbol"))]) == 2
    assert cli.main(["symbol", "--seed", "-3"]) == 2
    assert cli.main(["frobnicate"]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_seed_parsing(tmp_path):
    assert cli.main(["symbol", "--seed", "0x10", "--out", str(tmp_path), "--format", "json"]) == 0
    assert json.loads((tmp_path / "report.json").read_text())["metadata"]["seed"] == 16


def test_cli_assertion_failure_exit(monkeypatch, tmp_path):
    def failing(cfg):
        rep = Report()
        rep.add("broken_bound", 2.0, 1.0, EXPLICIT, False)
        return rep

    monkeypatch.setitem(pipelines.PIPELINES, "symbol", failing)
    assert cli.main(["symbol", "--out", str(tmp_path)]) == 1


def test_cli_numerical_failure_exit(monkeypatch, tmp_path):
    def failing(cfg):
        rep = Report()
        rep.add("quad", math.nan, None, EXPLICIT, False, "numerical: no convergence")
        return rep

    monkeypatch.setitem(pipelines.PIPELINES, "symbol", failing)
    assert cli.main(["symbol", "--out", str(tmp_path)]) == 3


def test_cli_as_subprocess(tmp_path):
    out = subprocess.run([sys.executable, "-m", "discspec", "bgk", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "rows, 0 failed" in out.stdout


# --- determinism and golden files ------------------------------------------------

@pytest.mark.parametrize("kind", FAST)
def test_repeat_runs_byte_identical(kind, tmp_path):
    cli.main([kind, "--out", str(tmp_path / "a"), "--format", "csv"])
    cli.main([kind, "--out", str(tmp_path / "b"), "--format", "csv"])
    assert (tmp_path / "a/report.csv").read_bytes() == (tmp_path / "b/report.csv").read_bytes()


def compare_to_golden(kind, produced: Path):
    got = parse_csv(produced.read_text())
    ref = parse_csv((GOLDEN / f"{kind}.csv").read_text())
    assert [r["name"] for r in got] == [r["name"] for r in ref]
    for g, r in zip(got, ref):
        assert g["pass"] == r["pass"] and g["provenance"] == r["provenance"], g["name"]
        for key in ("value", "bound_or_reference"):
            if r[key] == "" or g[key] == r[key]:
                assert g[key] == r[key]
                continue
            x, y = float(g[key]), float(r[key])
            assert math.isclose(x, y, rel_tol=1e-6, abs_tol=1e-9), (g["name"], key, x, y)


@pytest.mark.parametrize("kind", FAST)
def test_golden(kind, tmp_path):
    assert cli.main([kind, "--out", str(tmp_path), "--format", "csv"]) == 0
    compare_to_golden(kind, tmp_path / "report.csv")


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["sweep", "spectrum"])
def test_golden_slow(kind, tmp_path):
    assert cli.main([kind, "--out", str(tmp_path), "--format", "csv"]) == 0
    compare_to_golden(kind, tmp_path / "report.csv")


# --- thread cap ------------------------------------------------------------------

@pytest.mark.parametrize("raw,expected", [("1", 1), ("3", 3), ("0", None), ("x", None), ("", None)])
def test_thread_cap(monkeypatch, raw, expected):
    monkeypatch.setenv("SPECFORGE_THREADS", raw)
    assert _parallel.max_threads() == (expected or os.cpu_count() or 1)


def test_pmap_preserves_order(monkeypatch):
    for cap in ("1", "4"):
        monkeypatch.setenv("SPECFORGE_THREADS", cap)
        assert _parallel.pmap(lambda x: x * x, range(50)) == [x * x for x in range(50)]


def test_thread_cap_does_not_change_output(monkeypatch, tmp_path):
    monkeypatch.setenv("SPECFORGE_THREADS", "1")
    cli.main(["bgk", "--out", str(tmp_path / "one"), "--format", "csv"])
    monkeypatch.setenv("SPECFORGE_THREADS", "8")
    cli.main(["bgk", "--out", str(tmp_path / "many"), "--format", "csv"])
    assert (tmp_path / "one/report.csv").read_bytes() == (tmp_path / "many/report.csv").read_bytes()
