"""The UWB monocycle and where its spectral energy sits.

Builds the default 2 GHz Gaussian-derivative pulse on a 256-point grid at
16 GHz, checks Parseval, and prints how the summed |S| is spread over the
band. Most of it lives in a narrow region around the centre frequency,
which is what makes uniform frequency stepping wasteful.
"""
import numpy as np

from eqsamp import Band, energy_profile, forward, make_monocycle
from eqsamp.spectral import check_parseval

template = make_monocycle(2e9, 16e9, length=256)
spec = forward(template.waveform)
time_energy, freq_energy = check_parseval(template.waveform)
print(f"pulse support: {template.duration_bins} samples")
print(f"time energy {time_energy:.6f}  frequency energy {freq_energy:.6f}")

band = Band.full(256)
profile = energy_profile(spec, band)
peak = band.lower_bin + int(np.argmax(profile.density))
print(f"peak bin {peak} -> {peak * 16e9 / 256 / 1e9:.2f} GHz")

# share of the summed |S| held by each eighth of the band
for lo in range(0, band.width, 16):
    chunk = profile.density[lo:lo + 16].sum() / profile.total
    first = band.lower_bin + lo
    print(f"bins {first:3d}-{min(first + 15, band.upper_bin):3d}: {chunk:6.1%} "
          + "#" * int(60 * chunk))
