"""Command line entry point: ``eqsamp run | plan | demo``."""
from __future__ import annotations

import argparse
import logging
import sys

from .harness import (
    emit_outputs,
    ensure_writable,
    load_config,
    reconstruct,
    run_sweep,
    trial_seed,
)
from .sampling import Band, Scheme, energy_profile, make_plan
from .signal_model import make_monocycle
from .spectral import forward

log = logging.getLogger("eqsamp")


def _common(p):
    p.add_argument("--config", help="key = value experiment file")
    p.add_argument("--seed", type=int, dest="base_seed", help="base seed")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--plot-trials", action="store_true", default=None)
    p.add_argument("--jobs", type=int)
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override any config key (repeatable)")


def _config(args, **extra):
    text = None
    if args.set:
        lines = []
        for item in args.set:
            if "=" not in item:
                raise ValueError(f"--set expects KEY=VALUE, got {item!r}")
            lines.append(item)
        text = "\n".join(lines)
    base = load_config(args.config) if args.config else load_config()
    if text:
        # --set values are parsed with the same rules as the file
        over = load_config(text)
        keys = {item.split("=", 1)[0].strip() for item in args.set}
        base = base.replace(**{k: getattr(over, k) for k in keys})
    flags = {k: getattr(args, k, None) for k in ("base_seed", "out_dir", "plot_trials", "jobs")}
    flags.update(extra)
    return base.replace(**{k: v for k, v in flags.items() if v is not None})


def cmd_run(args):
    cfg = _config(args)
    ensure_writable(cfg.out_dir)

    def progress(i, total):
        if i % 25 == 0 or i == total:
            log.info("trial %d/%d", i, total)

    records, summary = run_sweep(cfg, progress=progress)
    for path in emit_outputs(records, cfg, summary):
        print(path)
    return 0


def cmd_plan(args):
    n = args.n
    band = Band(args.band_lower, args.band_upper if args.band_upper else (n - 1) // 2, n)
    profile = None
    scheme = Scheme.parse(args.scheme)
    if scheme is Scheme.EES:
        t = make_monocycle(args.center_frequency, args.sample_rate, n)
        profile = energy_profile(forward(t.waveform), band)
    plan = make_plan(scheme, band, args.samples, profile, args.seed, args.midpoint)
    sys.stdout.write(plan.to_text())
    return 0


def cmd_demo(args):
    from . import plotting

    cfg = _config(args, dof_list=(args.dof,), sample_counts=(args.samples,), trials=1)
    out = ensure_writable(cfg.out_dir)
    seed = trial_seed(cfg.base_seed, args.dof, args.samples, 0)
    outcomes = [reconstruct(cfg, s, args.dof, args.samples, seed) for s in cfg.schemes]
    for o in outcomes:
        r = o.record
        print(f"{r.scheme:>6}  m={r.sample_count}  dof={r.dof}  PSNR={r.psnr_db:8.2f} dB  "
              f"spectrum error={r.spectrum_l2_error:.3e}")
    path = out / f"demo_dof{args.dof}_m{args.samples}.svg"
    plotting.trial_overlay(outcomes, cfg.sample_rate, path)
    print(path)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="eqsamp", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the PSNR sweep and write CSV/SVG outputs")
    _common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("plan", help="print a sampling plan")
    p.add_argument("--scheme", default="ees", help="fes | random | ees")
    p.add_argument("--samples", type=int, default=14)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--sample-rate", type=float, default=16e9)
    p.add_argument("--center-frequency", type=float, default=2e9)
    p.add_argument("--band-lower", type=int, default=1)
    p.add_argument("--band-upper", type=int, default=None)
    p.add_argument("--midpoint", default="energy", choices=("energy", "geometric"))
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("demo", help="one paired FES/RANDOM/EES comparison with plots")
    _common(p)
    p.add_argument("--samples", type=int, default=14)
    p.add_argument("--dof", type=int, default=1)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"eqsamp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
