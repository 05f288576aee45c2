import csv
import io
import math

import numpy as np
import pytest

from eqsamp import cli
from eqsamp.harness import (
    ExperimentConfig,
    TrialRecord,
    emit_outputs,
    load_config,
    mean_table,
    reconstruct,
    run_sweep,
    run_trial,
    summarize,
    trial_seed,
    write_records_csv,
)
from eqsamp.plotting import psnr_chart
from eqsamp.sampling import SamplingPlan

SMALL = dict(dof_list=(1, 2), sample_counts=(10, 14), trials=2)


def test_default_config():
    cfg = ExperimentConfig()
    assert cfg.n == 256 and cfg.band.width == 127 and cfg.trials == 7
    assert cfg.dof_list == (1, 3) and 14 in cfg.sample_counts
    assert cfg.schemes == ("FES", "RANDOM", "EES")


def test_load_config_text_and_file(tmp_path):
    text = """
    # sweep
    n = 128
    dof_list = 1, 2
    sample_counts = 4 8
    schemes = fes, ees
    plot_trials = yes
    guard = auto
    """
    cfg = load_config("\n".join(line.strip() for line in text.splitlines()))
    assert cfg.n == 128 and cfg.band_upper == 63 and cfg.dof_list == (1, 2)
    assert cfg.sample_counts == (4, 8) and cfg.schemes == ("FES", "EES")
    assert cfg.plot_trials is True and cfg.guard is None
    path = tmp_path / "c.ini"
    path.write_text(cfg.to_text())
    assert load_config(path) == cfg
    assert load_config(path, trials=3).trials == 3


@pytest.mark.parametrize("text", ["bogus = 1", "trials = 0", "sample_counts = 500",
                                  "ees_prior = flat", "plot_trials = maybe"])
def test_load_config_rejects(text):
    with pytest.raises(ValueError):
        load_config(text)


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.ini")


def test_trial_seed_is_scheme_free_and_stable():
    a = trial_seed(2009, 1, 14, 0)
    assert a == trial_seed(2009, 1, 14, 0)
    assert len({a, trial_seed(2009, 1, 14, 1), trial_seed(2009, 3, 14, 0),
                trial_seed(2010, 1, 14, 0)}) == 4


def test_run_trial_deterministic():
    cfg = ExperimentConfig()
    seed = trial_seed(cfg.base_seed, 3, 10, 0)
    a, b = run_trial(cfg, "EES", 3, 10, seed), run_trial(cfg, "ees", 3, 10, seed)
    assert a == b and a.scheme == "EES" and a.feasibility_tolerance == 1e-6


def test_paired_trials_share_scene():
    cfg = ExperimentConfig()
    seed = trial_seed(cfg.base_seed, 3, 10, 0)
    outs = [reconstruct(cfg, s, 3, 10, seed) for s in cfg.schemes]
    for o in outs[1:]:
        np.testing.assert_array_equal(o.original, outs[0].original)
    assert isinstance(outs[0].plan, SamplingPlan)


@pytest.mark.parametrize("dof", [1, 2, 3])
def test_full_band_recovery_is_exact(dof):
    cfg = ExperimentConfig()
    for k in range(3):
        seed = trial_seed(77, dof, 127, k)
        for scheme in cfg.schemes:
            assert run_trial(cfg, scheme, dof, 127, seed).psnr_db > 100


def test_single_record_csv():
    rec = TrialRecord("EES", 1, 14, 5, math.inf, 0.0, 12, True, 0.25)
    text = write_records_csv([rec])
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == 2 and "wall_time" not in rows[0]
    assert dict(zip(*rows))["psnr_db"] == "inf"


def test_summary_clips_and_counts():
    recs = [TrialRecord("FES", 1, 6, s, p, 0.0, 1, True, 0.0) for s, p in
            [(1, math.inf), (2, 20.0), (3, 140.0)]]
    (row,) = summarize(recs, 100.0)
    assert row["mean_psnr_db"] == pytest.approx(220 / 3)
    assert row["median_psnr_db"] == 100.0 and row["exact_fraction"] == pytest.approx(2 / 3)
    assert mean_table([row]) == {("FES", 1): {6: row["mean_psnr_db"]}}


def test_sweep_outputs_byte_identical(tmp_path):
    blobs = []
    for name in ("a", "b"):
        cfg = load_config(out_dir=str(tmp_path / name), **SMALL)
        records, summary = run_sweep(cfg)
        assert len(records) == 2 * 2 * 2 * 3
        paths = emit_outputs(records, cfg, summary)
        blobs.append({p.name: p.read_bytes() for p in paths if p.name not in ("timing.csv", "config.txt")})
    assert blobs[0] == blobs[1]
    assert {"records.csv", "summary.csv", "psnr_dof1.svg", "psnr_dof2.svg"} <= set(blobs[0])


def test_parallel_sweep_matches_serial():
    cfg = load_config(**SMALL)
    serial, _ = run_sweep(cfg)
    parallel, _ = run_sweep(cfg.replace(jobs=2))
    assert write_records_csv(serial) == write_records_csv(parallel)


def test_chart_series_count(tmp_path):
    rows = [{"scheme": s, "dof": 1, "sample_count": m, "mean_psnr_db": float(m)}
            for s in ("FES", "RANDOM", "EES") for m in (6, 10)]
    assert psnr_chart(rows, 1, tmp_path / "c.svg") == 3
    text = (tmp_path / "c.svg").read_text()
    assert text.startswith("<?xml") and "<svg" in text


def test_cli_plan(capsys):
    assert cli.main(["plan", "--scheme", "fes", "--samples", "14"]) == 0
    plan = SamplingPlan.from_text(capsys.readouterr().out)
    assert len(plan) == 14 and plan.selected_bins[0] == 5


def test_cli_run_and_demo(tmp_path, capsys):
    out = tmp_path / "res"
    args = ["--out-dir", str(out), "--set", "dof_list=1", "--set", "sample_counts=6",
            "--set", "trials=1", "--plot-trials"]
    assert cli.main(["run", *args]) == 0
    assert (out / "records.csv").exists() and any((out / "trials").iterdir())
    assert cli.main(["demo", "--out-dir", str(out), "--samples", "10"]) == 0
    assert (out / "demo_dof1_m10.svg").exists()
    assert "EES" in capsys.readouterr().out


def test_cli_errors(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert cli.main(["run", "--out-dir", str(blocker / "sub"), "--set", "trials=1"]) != 0
    assert cli.main(["run", "--set", "nonsense"]) != 0
    assert cli.main(["plan", "--samples", "500"]) != 0
    assert "error" in capsys.readouterr().err
