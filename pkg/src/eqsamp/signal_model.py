"""UWB monocycle templates and sparse A-scan scenes.

An A-scan is modelled as a sum of circularly shifted, attenuated copies of a
single monocycle pulse (first derivative of a Gaussian).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Signal",
    "MonocycleTemplate",
    "SparseScene",
    "make_monocycle",
    "make_scene",
    "synthesize",
    "effective_support",
]


@dataclass(frozen=True)
class Signal:
    """Real time-domain vector with its sample rate (Hz)."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 1 or s.size < 2:
            raise ValueError("signal must be a 1-D vector of length >= 2")
        if not np.all(np.isfinite(s)):
            raise ValueError("signal contains non-finite samples")
        s = s.copy()
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class MonocycleTemplate:
    center_frequency: float
    sample_rate: float
    waveform: np.ndarray
    duration_bins: int = field(default=0)

    def __post_init__(self):
        w = np.asarray(self.waveform, dtype=float).copy()
        w.setflags(write=False)
        object.__setattr__(self, "waveform", w)
        if self.duration_bins <= 0:
            object.__setattr__(self, "duration_bins", effective_support(w))

    def __len__(self):
        return self.waveform.size


@dataclass(frozen=True)
class SparseScene:
    """Reflector list: ``events`` holds ``(shift_bin, amplitude)`` pairs."""

    events: tuple
    n: int

    def __post_init__(self):
        events = tuple((int(k), float(a)) for k, a in self.events)
        shifts = [k for k, _ in events]
        if len(set(shifts)) != len(shifts):
            raise ValueError("shift bins must be distinct")
        if any(not 0 <= k < self.n for k in shifts):
            raise ValueError("shift bin out of range")
        if any(a == 0.0 for _, a in events):
            raise ValueError("amplitudes must be nonzero")
        object.__setattr__(self, "events", events)

    @property
    def dof(self) -> int:
        return len(self.events)

    def coefficients(self) -> np.ndarray:
        """Dense length-``n`` vector of event amplitudes indexed by shift."""
        x = np.zeros(self.n)
        for k, a in self.events:
            x[k] = a
        return x


def effective_support(waveform, rel_threshold=1e-3) -> int:
    """Width in bins of the region where ``|waveform|`` exceeds
    ``rel_threshold`` times its peak."""
    w = np.abs(np.asarray(waveform, dtype=float))
    peak = w.max()
    if peak == 0:
        return 0
    idx = np.flatnonzero(w >= rel_threshold * peak)
    return int(idx[-1] - idx[0] + 1)


def make_monocycle(center_frequency, sample_rate, length=256) -> MonocycleTemplate:
    """Gaussian-derivative monocycle centred in a window of ``length`` samples.

    The Gaussian width is ``sigma = 1 / (2 pi f_c)``, which puts the peak of
    the magnitude spectrum exactly at ``center_frequency``. The waveform is
    scaled to unit peak amplitude.

    Raises
    ------
    ValueError
        If ``center_frequency`` is not strictly between 0 and Nyquist.
    """
    if not 0 < center_frequency < sample_rate / 2:
        raise ValueError(
            f"center_frequency {center_frequency:g} Hz must lie in (0, {sample_rate / 2:g}) Hz"
        )
    if length < 2:
        raise ValueError("length must be >= 2")
    sigma = 1.0 / (2 * np.pi * center_frequency)
    t = (np.arange(length) - length // 2) / sample_rate
    w = -t * np.exp(-(t**2) / (2 * sigma**2))
    w /= np.abs(w).max()
    return MonocycleTemplate(center_frequency, sample_rate, w)


def make_scene(dof, rng_seed, n=256, amplitude_range=(0.3, 1.0), guard=1,
               max_tries=1000) -> SparseScene:
    """Draw ``dof`` reflectors with circular separation of at least ``guard`` bins.

    Amplitude magnitudes are uniform on ``amplitude_range`` with a random sign.
    """
    if dof < 1:
        raise ValueError("dof must be >= 1")
    guard = max(int(guard), 1)
    if dof * guard >= n:
        raise ValueError(f"cannot fit {dof} events with guard {guard} in {n} bins")
    lo, hi = amplitude_range
    if not 0 < lo <= hi:
        raise ValueError("amplitude_range must satisfy 0 < lo <= hi")
    rng = np.random.default_rng(rng_seed)
    for _ in range(max_tries):
        shifts = np.sort(rng.choice(n, size=dof, replace=False))
        gaps = np.diff(np.r_[shifts, shifts[0] + n])
        if dof == 1 or gaps.min() >= guard:
            break
    else:
        raise RuntimeError(f"no admissible scene after {max_tries} draws")
    amps = rng.uniform(lo, hi, size=dof) * rng.choice([-1.0, 1.0], size=dof)
    return SparseScene(tuple(zip(shifts.tolist(), amps.tolist())), n)


def synthesize(scene: SparseScene, template: MonocycleTemplate) -> Signal:
    if len(template) != scene.n:
        raise ValueError("template length must equal scene length")
    out = np.zeros(scene.n)
    for k, a in scene.events:
        out += a * np.roll(template.waveform, k)
    return Signal(out, template.sample_rate)
