"""Command line harness tests, run in-process through main()."""

import pytest

from swarmsim.cli import main


def test_run_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["run", "experiment2", "--seed", "4", "--duration", "2.0", "--out", str(out)])
    assert code == 0
    for name in ("trace.csv", "metrics.json", "series.csv"):
        assert (out / name).exists()
    text = capsys.readouterr().out
    assert "wrote" in text
    assert "ticks: 20" in text


def test_run_accepts_yaml_path(tmp_path):
    yaml_text = """
name: tiny
platform: turtlebot3_burger
arena: {width: 6.0, height: 6.0}
robots:
  layout: line
  count: 2
  spacing: 1.0
pattern:
  kind: dispersion
  params: {dispersion_range: 1.5}
seed: 7
duration: 1.0
"""
    path = tmp_path / "tiny.yaml"
    path.write_text(yaml_text)
    out = tmp_path / "out"
    assert main(["run", str(path), "--out", str(out)]) == 0
    assert (out / "trace.csv").exists()


def test_run_default_out_dir_uses_name_and_seed(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["run", "voting-demo", "--seed", "2", "--duration", "1.0"]) == 0
    assert (tmp_path / "runs" / "voting-demo-seed2" / "trace.csv").exists()


def test_replay_matches_fresh_run(tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "experiment1-waffle", "--seed", "1", "--duration", "2.0", "--out", str(out)])
    capsys.readouterr()
    code = main(["replay", str(out / "trace.csv"), "--out", str(tmp_path / "replay")])
    assert code == 0
    assert "MATCH" in capsys.readouterr().out


def test_replay_flags_tampered_trace(tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "experiment1-waffle", "--seed", "1", "--duration", "2.0", "--out", str(out)])
    trace_path = out / "trace.csv"
    trace_path.write_bytes(trace_path.read_bytes() + b"\n")
    capsys.readouterr()
    code = main(["replay", str(trace_path), "--out", str(tmp_path / "replay")])
    assert code == 1
    assert "MISMATCH" in capsys.readouterr().out


def test_metrics_recomputes_from_trace_alone(tmp_path, capsys):
    out = tmp_path / "out"
    main(["run", "experiment2", "--seed", "6", "--duration", "25.0", "--out", str(out)])
    fresh = tmp_path / "fresh"
    capsys.readouterr()
    code = main(["metrics", str(out / "trace.csv"), "--out", str(fresh)])
    assert code == 0
    assert (fresh / "metrics.json").exists()
    assert (fresh / "series.csv").exists()
    text = capsys.readouterr().out
    assert "consensus at t=" in text
    assert (fresh / "metrics.json").read_text() == (out / "metrics.json").read_text()


def test_missing_subcommand_exits_with_usage():
    with pytest.raises(SystemExit):
        main([])
