"""Uniform, random and energy-equipartition frequency plans side by side.

For m = 14 samples the uniform plan spaces bins evenly, the random plan
draws them without replacement, and the energy plan packs them where the
monocycle spectrum is strong. Each energy subband holds about the same
share of the summed |S|.
"""
import numpy as np

from eqsamp import Band, energy_profile, forward, make_monocycle, plan_ees, plan_fes, plan_random

m = 14
template = make_monocycle(2e9, 16e9, length=256)
band = Band.full(256)
profile = energy_profile(forward(template.waveform), band)

plans = {
    "FES": plan_fes(band, m),
    "RANDOM": plan_random(band, m, rng_seed=2009),
    "EES": plan_ees(profile, band, m),
}
for name, plan in plans.items():
    ghz = ", ".join(f"{f / 1e9:.2f}" for f in plan.frequencies(16e9))
    print(f"{name:>6}: {ghz} GHz")

print("\nEES subbands (width, share of summed |S|):")
target = profile.per_band_target(m)
for a, b in plans["EES"].subband_bounds:
    share = profile.density[a - band.lower_bin:b - band.lower_bin + 1].sum()
    print(f"  {a:3d}-{b:3d}  width {b - a + 1:3d}  {share / target:5.2f} x target")

# plans serialise to a small text format and read back unchanged
text = plans["EES"].to_text()
print("\n" + text.splitlines()[0], "...", f"({len(text.splitlines())} lines)")
assert np.array_equal(type(plans["EES"]).from_text(text).selected_bins,
                      plans["EES"].selected_bins)
