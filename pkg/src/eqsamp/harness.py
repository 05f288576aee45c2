"""Benchmark harness: paired FES / RANDOM / EES comparisons over a sweep of
sample counts and scene sparsities.

Each trial cell ``(dof, m, trial)`` draws one scene; every scheme is scored
on that same scene. Output is deterministic given the configuration.
"""
from __future__ import annotations

import configparser
import csv
import dataclasses
import io
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .metrics import psnr
from .sampling import Band, Scheme, energy_profile, make_plan
from .sensing import SensingOperator, build_dictionary, measure
from .signal_model import make_monocycle, make_scene, synthesize
from .solver import L1Problem, solve_l1
from .spectral import forward

__all__ = [
    "ExperimentConfig",
    "TrialRecord",
    "TrialOutcome",
    "load_config",
    "trial_seed",
    "reconstruct",
    "run_trial",
    "run_sweep",
    "summarize",
    "mean_table",
    "emit_outputs",
    "write_records_csv",
    "write_summary_csv",
]

DEFAULT_SAMPLE_COUNTS = (6, 8, 10, 14, 18, 24, 32)
_SCHEME_ORDER = {s: i for i, s in enumerate(Scheme)}


@dataclass
class ExperimentConfig:
    n: int = 256
    center_frequency: float = 2e9
    sample_rate: float = 16e9
    band_lower: int = 1
    band_upper: int | None = None  # None -> highest bin below Nyquist
    dof_list: tuple = (1, 3)
    sample_counts: tuple = DEFAULT_SAMPLE_COUNTS
    trials: int = 7
    base_seed: int = 2009
    schemes: tuple = ("FES", "RANDOM", "EES")
    amplitude_low: float = 0.3
    amplitude_high: float = 1.0
    guard: int | None = None  # None -> template effective support
    ees_prior: str = "template"  # or "scene"
    ees_midpoint: str = "energy"  # or "geometric"
    feasibility_tolerance: float = 1e-6
    max_iterations: int = 20_000
    psnr_ceiling_db: float = 100.0
    out_dir: str = "results"
    plot_trials: bool = False
    jobs: int = 1

    def __post_init__(self):
        self.dof_list = tuple(int(d) for d in self.dof_list)
        self.sample_counts = tuple(int(m) for m in self.sample_counts)
        self.schemes = tuple(Scheme.parse(s).value for s in self.schemes)
        if self.band_upper is None:
            self.band_upper = (self.n - 1) // 2
        band = self.band  # validates
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.dof_list or min(self.dof_list) < 1:
            raise ValueError("dof_list must hold positive integers")
        if not self.sample_counts or not all(1 <= m <= band.width for m in self.sample_counts):
            raise ValueError(f"sample_counts must lie in [1, {band.width}]")
        if not self.schemes:
            raise ValueError("at least one scheme is required")
        if self.ees_prior not in ("template", "scene"):
            raise ValueError("ees_prior must be 'template' or 'scene'")
        if self.ees_midpoint not in ("energy", "geometric"):
            raise ValueError("ees_midpoint must be 'energy' or 'geometric'")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def band(self) -> Band:
        return Band(int(self.band_lower), int(self.band_upper), int(self.n))

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_text(self) -> str:
        out = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ", ".join(str(i) for i in v)
            out.append(f"{f.name} = {v}")
        return "\n".join(out) + "\n"


def _coerce(name, raw):
    typ = {f.name: f for f in dataclasses.fields(ExperimentConfig)}[name].default
    raw = raw.strip()
    if name in ("dof_list", "sample_counts"):
        return tuple(int(v) for v in raw.replace(",", " ").split())
    if name == "schemes":
        return tuple(v for v in raw.replace(",", " ").split())
    if name in ("band_upper", "guard"):
        return None if raw.lower() in ("", "none", "auto") else int(raw)
    if isinstance(typ, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{name}: expected a boolean, got {raw!r}")
    if isinstance(typ, int):
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    if isinstance(typ, float):
        return float(raw)
    return raw


def load_config(source=None, **overrides) -> ExperimentConfig:
    """Read ``key = value`` lines (``#`` comments, optional ``[section]``).

    ``source`` is a path or a string of config text; keyword overrides win.
    """
    values = {}
    if source is not None:
        if isinstance(source, (str, os.PathLike)) and Path(source).exists():
            text = Path(source).read_text()
        elif isinstance(source, str) and "=" in source:
            text = source
        else:
            raise FileNotFoundError(f"config file not found: {source}")
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.optionxform = str
        if not text.lstrip().startswith("["):
            text = "[experiment]\n" + text
        parser.read_string(text)
        known = {f.name for f in dataclasses.fields(ExperimentConfig)}
        for section in parser.sections():
            for key, raw in parser.items(section):
                if key not in known:
                    raise ValueError(f"unknown config key: {key}")
                values[key] = _coerce(key, raw)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


@dataclass(frozen=True)
class TrialRecord:
    scheme: str
    dof: int
    sample_count: int
    seed: int
    psnr_db: float
    spectrum_l2_error: float
    solver_iterations: int
    converged: bool
    wall_time: float = field(compare=False)
    feasibility_tolerance: float = 1e-6
    max_iterations: int = 20_000


@dataclass
class TrialOutcome:
    """Intermediate products of one trial (used for plots and the demo)."""

    record: TrialRecord
    original: np.ndarray
    reconstruction: np.ndarray
    plan: object
    scene: object


def trial_seed(base_seed, dof, m, trial) -> int:
    """Scene seed for a trial cell; the scheme is deliberately excluded so
    all schemes see the same scene."""
    ss = np.random.SeedSequence([int(base_seed), int(dof), int(m), int(trial)])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def _plan_seed(scene_seed, scheme):
    ss = np.random.SeedSequence([int(scene_seed), _SCHEME_ORDER[Scheme.parse(scheme)]])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


_TEMPLATE_CACHE: dict = {}


def _template(config):
    key = (config.center_frequency, config.sample_rate, config.n)
    if key not in _TEMPLATE_CACHE:
        t = make_monocycle(config.center_frequency, config.sample_rate, config.n)
        _TEMPLATE_CACHE[key] = (t, build_dictionary(t))
    return _TEMPLATE_CACHE[key]


def reconstruct(config: ExperimentConfig, scheme, dof, sample_count, seed) -> TrialOutcome:
    t0 = time.perf_counter()
    scheme = Scheme.parse(scheme)
    template, dictionary = _template(config)
    guard = config.guard if config.guard is not None else template.duration_bins
    scene = make_scene(dof, seed, config.n, (config.amplitude_low, config.amplitude_high), guard)
    signal = synthesize(scene, template)
    band = config.band
    profile = None
    if scheme is Scheme.EES:
        src = template.waveform if config.ees_prior == "template" else signal.samples
        profile = energy_profile(forward(src), band)
    plan = make_plan(scheme, band, sample_count, profile, _plan_seed(seed, scheme),
                     config.ees_midpoint)
    op = SensingOperator(plan, dictionary)
    problem = L1Problem(op, measure(signal, plan),
                        feasibility_tolerance=config.feasibility_tolerance,
                        max_iterations=config.max_iterations)
    result = solve_l1(problem)
    rec = dictionary.synthesize(result.coefficients)
    report = psnr(signal, rec)
    record = TrialRecord(scheme.value, int(dof), int(sample_count), int(seed), report.psnr_db,
                         report.spectrum_l2_error, result.iterations, result.converged,
                         time.perf_counter() - t0, config.feasibility_tolerance,
                         config.max_iterations)
    return TrialOutcome(record, signal.samples, rec, plan, scene)


def run_trial(config: ExperimentConfig, scheme, dof, sample_count, seed) -> TrialRecord:
    """scene -> signal -> plan -> measurement -> l1 solve -> PSNR."""
    return reconstruct(config, scheme, dof, sample_count, seed).record


def _task(args):
    return run_trial(*args)


def _sort_key(r: TrialRecord):
    return (_SCHEME_ORDER[Scheme.parse(r.scheme)], r.dof, r.sample_count, r.seed)


def run_sweep(config: ExperimentConfig, progress=None):
    """Run every (scheme, dof, m, trial) cell; returns ``(records, summary)``."""
    tasks = []
    order = {}
    for dof in config.dof_list:
        for m in config.sample_counts:
            for k in range(config.trials):
                seed = trial_seed(config.base_seed, dof, m, k)
                for scheme in config.schemes:
                    order[(scheme, dof, m, seed)] = k
                    tasks.append((config, scheme, dof, m, seed))
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_task, tasks, chunksize=4))
    else:
        records = []
        for i, t in enumerate(tasks):
            records.append(_task(t))
            if progress:
                progress(i + 1, len(tasks))
    records.sort(key=lambda r: (_SCHEME_ORDER[Scheme.parse(r.scheme)], r.dof, r.sample_count,
                                order[(r.scheme, r.dof, r.sample_count, r.seed)]))
    return records, summarize(records, config.psnr_ceiling_db)


def summarize(records, ceiling_db=100.0):
    """Per-(scheme, dof, m) statistics.

    PSNR values are clipped at ``ceiling_db`` before averaging: above it a
    reconstruction is exact to solver precision and the remaining spread is
    floating-point noise.
    """
    cells: dict = {}
    for r in records:
        cells.setdefault((r.scheme, r.dof, r.sample_count), []).append(r)
    rows = []
    for (scheme, dof, m), rs in sorted(
        cells.items(), key=lambda kv: (_SCHEME_ORDER[Scheme.parse(kv[0][0])], kv[0][1], kv[0][2])
    ):
        vals = [min(r.psnr_db, ceiling_db) for r in rs]
        rows.append({
            "scheme": scheme,
            "dof": dof,
            "sample_count": m,
            "trials": len(rs),
            "mean_psnr_db": statistics.fmean(vals),
            "median_psnr_db": statistics.median(vals),
            "exact_fraction": sum(r.psnr_db >= ceiling_db for r in rs) / len(rs),
            "converged_fraction": sum(r.converged for r in rs) / len(rs),
        })
    return rows


def mean_table(summary):
    """``{(scheme, dof): {m: mean_psnr_db}}`` view of a summary."""
    out: dict = {}
    for row in summary:
        out.setdefault((row["scheme"], row["dof"]), {})[row["sample_count"]] = row["mean_psnr_db"]
    return out


_RECORD_COLUMNS = [f.name for f in dataclasses.fields(TrialRecord) if f.name != "wall_time"]
_SUMMARY_COLUMNS = ["scheme", "dof", "sample_count", "trials", "mean_psnr_db",
                    "median_psnr_db", "exact_fraction", "converged_fraction"]


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(round(v, 10))
    return str(v)


def write_records_csv(records, path=None) -> str:
    """One row per trial. ``wall_time`` goes to ``timing.csv`` instead so that
    this file is byte-identical across reruns."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(_RECORD_COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, c)) for c in _RECORD_COLUMNS])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, newline="")
    return text


def write_summary_csv(summary, path=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(_SUMMARY_COLUMNS)
    for row in summary:
        w.writerow([_fmt(row[c]) for c in _SUMMARY_COLUMNS])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, newline="")
    return text


def _write_timing(records, path):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(["scheme", "dof", "sample_count", "seed", "wall_time"])
    for r in records:
        w.writerow([r.scheme, r.dof, r.sample_count, r.seed, f"{r.wall_time:.6f}"])
    Path(path).write_text(buf.getvalue(), newline="")


def ensure_writable(out_dir) -> Path:
    """Create ``out_dir`` and prove it is writable; raises ``OSError``."""
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    probe = path / ".eqsamp-write-probe"
    probe.write_text("")
    probe.unlink()
    return path


def emit_outputs(records, config: ExperimentConfig, summary=None):
    """Write CSV tables and SVG charts to ``config.out_dir``; returns the paths."""
    if not records:
        raise ValueError("no records to write")
    from . import plotting

    out = ensure_writable(config.out_dir)
    summary = summary if summary is not None else summarize(records, config.psnr_ceiling_db)
    paths = [out / "records.csv", out / "summary.csv", out / "timing.csv", out / "config.txt"]
    write_records_csv(records, paths[0])
    write_summary_csv(summary, paths[1])
    _write_timing(records, paths[2])
    paths[3].write_text(config.to_text())
    for dof in sorted({r["dof"] for r in summary}):
        p = out / f"psnr_dof{dof}.svg"
        plotting.psnr_chart(summary, dof, p)
        paths.append(p)
    if config.plot_trials:
        trial_dir = out / "trials"
        trial_dir.mkdir(exist_ok=True)
        seen = {}
        for r in records:
            seen.setdefault((r.dof, r.sample_count, r.seed), []).append(r.scheme)
        for (dof, m, seed), schemes in seen.items():
            outcomes = [reconstruct(config, s, dof, m, seed) for s in schemes]
            p = trial_dir / f"trial_dof{dof}_m{m}_seed{seed}.svg"
            plotting.trial_overlay(outcomes, config.sample_rate, p)
            paths.append(p)
    return paths
