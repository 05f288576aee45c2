"""Static SVG charts (matplotlib, Agg-free SVG backend)."""
from __future__ import annotations

import matplotlib

matplotlib.use("svg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STYLE = {"FES": ("tab:blue", "s"), "RANDOM": ("tab:orange", "^"), "EES": ("tab:green", "o")}


def _save(fig, path):
    # fixed hash salt and no date keep the SVG byte-stable
    with matplotlib.rc_context({"svg.hashsalt": "eqsamp"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def psnr_chart(summary, dof, path):
    """Mean PSNR versus sample count, one line per scheme."""
    fig, ax = plt.subplots(figsize=(6, 4))
    schemes = []
    for row in summary:
        if row["dof"] == dof and row["scheme"] not in schemes:
            schemes.append(row["scheme"])
    for scheme in schemes:
        rows = sorted((r for r in summary if r["dof"] == dof and r["scheme"] == scheme),
                      key=lambda r: r["sample_count"])
        color, marker = _STYLE.get(scheme, (None, "x"))
        ax.plot([r["sample_count"] for r in rows], [r["mean_psnr_db"] for r in rows],
                marker=marker, color=color, label=scheme)
    ax.set_xlabel("number of frequency samples")
    ax.set_ylabel("mean PSNR (dB)")
    ax.set_title(f"l1 reconstruction, DoF = {dof}")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    _save(fig, path)
    return len(schemes)


def trial_overlay(outcomes, sample_rate, path):
    """Waveforms (top) and magnitude spectra (bottom) of one paired trial."""
    fig, (ax_t, ax_f) = plt.subplots(2, 1, figsize=(7, 6))
    orig = outcomes[0].original
    n = orig.size
    t_ns = np.arange(n) / sample_rate * 1e9
    f_ghz = np.arange(n // 2) * sample_rate / n / 1e9
    ax_t.plot(t_ns, orig, color="k", lw=2, label="original")
    ax_f.plot(f_ghz, np.abs(np.fft.fft(orig, norm="ortho"))[: n // 2], color="k", lw=2,
              label="original")
    for o in outcomes:
        r = o.record
        color, _ = _STYLE.get(r.scheme, (None, None))
        label = f"{r.scheme} ({r.psnr_db:.1f} dB)"
        ax_t.plot(t_ns, o.reconstruction, color=color, lw=1, label=label)
        ax_f.plot(f_ghz, np.abs(np.fft.fft(o.reconstruction, norm="ortho"))[: n // 2],
                  color=color, lw=1, label=r.scheme)
        ax_f.plot(f_ghz[o.plan.selected_bins], np.zeros(len(o.plan)), "|", color=color, ms=10)
    ax_t.set_xlabel("time (ns)")
    ax_t.set_ylabel("amplitude")
    ax_t.legend(fontsize=8)
    ax_f.set_xlabel("frequency (GHz)")
    ax_f.set_ylabel("|S(f)|")
    ax_f.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)
