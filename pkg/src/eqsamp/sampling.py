"""Frequency-domain sampling plans: uniform (FES), random, and energy
equipartition (EES).

Bins are indexed on the full length-``n`` DFT grid. A :class:`Band` covers a
contiguous run of strictly positive frequencies (DC and Nyquist excluded).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "Scheme",
    "Band",
    "EnergyProfile",
    "SamplingPlan",
    "energy_profile",
    "plan_fes",
    "plan_random",
    "plan_ees",
    "make_plan",
]

# relative slack for cumulative-energy comparisons (absorbs cumsum round-off)
_CUM_SLACK = 1e-9


class Scheme(str, Enum):
    FES = "FES"
    RANDOM = "RANDOM"
    EES = "EES"

    @classmethod
    def parse(cls, name) -> "Scheme":
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper()
        aliases = {"RAN": "RANDOM", "UNIFORM": "FES"}
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class Band:
    """Inclusive bin range ``[lower_bin, upper_bin]`` on an ``n``-point grid."""

    lower_bin: int
    upper_bin: int
    n: int

    def __post_init__(self):
        if not 0 < self.lower_bin <= self.upper_bin < self.n / 2:
            raise ValueError(
                f"band [{self.lower_bin}, {self.upper_bin}] must satisfy "
                f"0 < lower <= upper < n/2 = {self.n / 2:g}"
            )

    @classmethod
    def full(cls, n) -> "Band":
        """All strictly positive frequencies below Nyquist."""
        return cls(1, (n - 1) // 2, n)

    @property
    def width(self) -> int:
        return self.upper_bin - self.lower_bin + 1

    @property
    def bins(self) -> np.ndarray:
        return np.arange(self.lower_bin, self.upper_bin + 1)

    def __contains__(self, k):
        return self.lower_bin <= k <= self.upper_bin


@dataclass(frozen=True)
class EnergyProfile:
    """``|S(f)|`` restricted to a band."""

    density: np.ndarray
    band: Band

    def __post_init__(self):
        d = np.asarray(self.density, dtype=float)
        if d.shape != (self.band.width,):
            raise ValueError("density length must equal band width")
        if np.any(d < 0) or not np.all(np.isfinite(d)):
            raise ValueError("density must be finite and non-negative")
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "density", d)

    @property
    def total(self) -> float:
        return float(self.density.sum())

    def per_band_target(self, m) -> float:
        return self.total / m


@dataclass(frozen=True)
class SamplingPlan:
    scheme: Scheme
    selected_bins: np.ndarray
    band: Band
    subband_bounds: tuple = ()
    seed: int | None = None
    midpoint: str = "energy"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        bins = np.asarray(self.selected_bins, dtype=int)
        if bins.ndim != 1 or bins.size == 0:
            raise ValueError("plan must select at least one bin")
        if np.any(np.diff(bins) <= 0):
            raise ValueError("selected bins must be strictly increasing")
        if bins[0] < self.band.lower_bin or bins[-1] > self.band.upper_bin:
            raise ValueError("selected bins fall outside the band")
        bins = bins.copy()
        bins.setflags(write=False)
        object.__setattr__(self, "selected_bins", bins)
        object.__setattr__(self, "subband_bounds",
                           tuple((int(a), int(b)) for a, b in self.subband_bounds))

    def __eq__(self, other):
        if not isinstance(other, SamplingPlan):
            return NotImplemented
        return (self.scheme is other.scheme and self.band == other.band
                and np.array_equal(self.selected_bins, other.selected_bins)
                and self.subband_bounds == other.subband_bounds
                and self.seed == other.seed and self.midpoint == other.midpoint)

    __hash__ = None

    def __len__(self):
        return self.selected_bins.size

    @property
    def n(self) -> int:
        return self.band.n

    @property
    def subband_widths(self) -> np.ndarray:
        """Width of each subband in bins (empty for random plans)."""
        return np.array([b - a + 1 for a, b in self.subband_bounds], dtype=int)

    def frequencies(self, sample_rate) -> np.ndarray:
        return self.selected_bins * (sample_rate / self.n)

    def to_text(self) -> str:
        lines = [
            f"# scheme={self.scheme.value}",
            f"# n={self.n}",
            f"# band={self.band.lower_bin},{self.band.upper_bin}",
            f"# samples={len(self)}",
            f"# seed={'' if self.seed is None else self.seed}",
        ]
        if self.scheme is Scheme.EES:
            lines.append(f"# midpoint={self.midpoint}")
        if self.subband_bounds:
            lines.append("# subbands=" + ",".join(f"{a}-{b}" for a, b in self.subband_bounds))
        lines.extend(str(int(k)) for k in self.selected_bins)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text) -> "SamplingPlan":
        header, bins = {}, []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                header[key.strip()] = value.strip()
            else:
                bins.append(int(line))
        try:
            n = int(header["n"])
            lo, hi = (int(v) for v in header["band"].split(","))
            scheme = Scheme.parse(header["scheme"])
        except KeyError as exc:
            raise ValueError(f"plan header missing {exc}") from None
        bounds = ()
        if header.get("subbands"):
            bounds = tuple(tuple(int(v) for v in item.split("-"))
                           for item in header["subbands"].split(","))
        seed = int(header["seed"]) if header.get("seed") else None
        return cls(scheme, np.array(bins), Band(lo, hi, n), bounds, seed,
                   header.get("midpoint", "energy"))


def energy_profile(spectrum_or_density, band: Band) -> EnergyProfile:
    """Restrict a spectrum (or a full-length ``|S|`` array) to ``band``."""
    dens = getattr(spectrum_or_density, "energy_density", None)
    if dens is None:
        dens = np.abs(np.asarray(spectrum_or_density))
    if dens.size != band.n:
        raise ValueError("density length must equal the band's grid size")
    return EnergyProfile(dens[band.lower_bin:band.upper_bin + 1], band)


def _check_count(m, band):
    if not 1 <= m <= band.width:
        raise ValueError(f"sample count {m} must lie in [1, {band.width}]")


def plan_fes(band: Band, m) -> SamplingPlan:
    """Uniform partition of the band into ``m`` subbands.

    Subband ``i`` (1-based) covers the continuous offset range
    ``[(i-1) L/m, i L/m)``; its sample is the bin containing the interval
    midpoint and its bin bounds come from rounding the edges half down.
    Pure integer arithmetic.
    """
    _check_count(m, band)
    L = band.width
    i = np.arange(1, m + 1)
    sel = ((2 * i - 1) * L) // (2 * m)
    # ceil(x - 1/2) for x = (i-1) L / m
    starts = -((m - 2 * (i - 1) * L) // (2 * m))
    stops = np.r_[starts[1:], L] - 1
    lo = band.lower_bin
    bounds = tuple(zip((starts + lo).tolist(), (stops + lo).tolist()))
    return SamplingPlan(Scheme.FES, sel + lo, band, bounds)


def plan_random(band: Band, m, rng_seed) -> SamplingPlan:
    _check_count(m, band)
    rng = np.random.default_rng(rng_seed)
    sel = np.sort(rng.choice(band.bins, size=m, replace=False))
    return SamplingPlan(Scheme.RANDOM, sel, band, (), rng_seed)


def _nearest_prefix(prefix, target, slack):
    """Index ``k`` minimising ``|prefix[k] - target|``; ties resolve downward."""
    k0 = int(np.searchsorted(prefix, target + slack, side="right")) - 1
    k0 = min(max(k0, 0), prefix.size - 1)
    if k0 + 1 < prefix.size and (prefix[k0 + 1] - target) < (target - prefix[k0]) - slack:
        return k0 + 1
    return k0


def plan_ees(profile: EnergyProfile, band: Band, m, midpoint="energy") -> SamplingPlan:
    """Energy-equipartition plan.

    The band is cut into ``m`` contiguous subbands that each hold (to within
    one bin weight) ``total / m`` of the summed ``|S|``. With
    ``midpoint="energy"`` each sample is the bin in which the cumulative
    energy passes ``(i - 1/2) total / m``; with ``midpoint="geometric"`` it
    is the centre bin of the subband.

    When a very peaked spectrum puts two samples on one bin, the later one
    moves up to the next free bin; if that runs past the top of the band the
    tail is shifted back down so that ``m = band.width`` still selects every
    bin.

    Raises
    ------
    ValueError
        For an all-zero profile, or when ``m`` exceeds the band width.
    """
    if profile.band != band:
        raise ValueError("profile was built for a different band")
    _check_count(m, band)
    if midpoint not in ("energy", "geometric"):
        raise ValueError("midpoint must be 'energy' or 'geometric'")
    d = profile.density
    total = profile.total
    if not total > 0:
        raise ValueError("energy profile is identically zero")
    L = band.width
    eps = total / m
    slack = _CUM_SLACK * total
    prefix = np.r_[0.0, np.cumsum(d)]  # prefix[k] = energy strictly before offset k
    prefix[-1] = max(prefix[-1], total)

    # boundary i (1..m-1): offset whose exclusive prefix is nearest to i*eps
    cuts = [_nearest_prefix(prefix, i * eps, slack) for i in range(1, m)]

    if midpoint == "energy":
        incl = prefix[1:]
        sel = []
        for i in range(1, m + 1):
            k = int(np.searchsorted(incl, (i - 0.5) * eps + slack, side="right"))
            k = min(k, L - 1)
            if sel and k <= sel[-1]:
                k = sel[-1] + 1
            sel.append(k)
        # advancing ran off the top of the band: pull the tail back down
        for i in range(m - 1, -1, -1):
            sel[i] = min(sel[i], L - 1 if i == m - 1 else sel[i + 1] - 1)
        starts = [0]
        for i, c in enumerate(cuts, start=1):
            starts.append(min(max(c, sel[i - 1] + 1), sel[i]))
    else:
        starts = [0]
        for c in cuts:
            starts.append(max(c, starts[-1] + 1))
        for i in range(m - 1, 0, -1):
            starts[i] = min(starts[i], L - m + i if i == m - 1 else starts[i + 1] - 1)
        ends = starts[1:] + [L]
        sel = [a + (b - a) // 2 for a, b in zip(starts, ends)]

    starts = np.asarray(starts)
    stops = np.r_[starts[1:], L] - 1
    lo = band.lower_bin
    bounds = tuple(zip((starts + lo).tolist(), (stops + lo).tolist()))
    return SamplingPlan(Scheme.EES, np.asarray(sel) + lo, band, bounds, None, midpoint)


def make_plan(scheme, band: Band, m, profile=None, rng_seed=None, midpoint="energy"):
    """Dispatch on ``scheme``; EES needs ``profile``, RANDOM needs ``rng_seed``."""
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.FES:
        return plan_fes(band, m)
    if scheme is Scheme.RANDOM:
        return plan_random(band, m, rng_seed)
    if profile is None:
        raise ValueError("EES requires an energy profile")
    return plan_ees(profile, band, m, midpoint)
