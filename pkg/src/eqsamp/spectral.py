"""Unitary DFT helpers and the spectral energy density used for sampling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal_model import Signal

__all__ = ["Spectrum", "forward", "inverse", "check_parseval"]


@dataclass(frozen=True)
class Spectrum:
    coefficients: np.ndarray
    bin_frequencies: np.ndarray
    sample_rate: float

    @property
    def energy_density(self) -> np.ndarray:
        """``|S(f)|`` per bin (first power, not squared)."""
        return np.abs(self.coefficients)

    def __len__(self):
        return self.coefficients.size


def forward(signal) -> Spectrum:
    """Unitary DFT (``norm="ortho"``) of a :class:`Signal` or plain array."""
    if isinstance(signal, Signal):
        x, fs = signal.samples, signal.sample_rate
    else:
        x, fs = np.asarray(signal, dtype=float), 1.0
    n = x.size
    return Spectrum(np.fft.fft(x, norm="ortho"), np.fft.fftfreq(n, d=1.0 / fs), fs)


def inverse(spectrum: Spectrum, real=True) -> Signal | np.ndarray:
    """Inverse unitary DFT.

    With ``real=True`` the imaginary round-off is discarded and a
    :class:`Signal` is returned; otherwise the raw complex array.
    """
    x = np.fft.ifft(spectrum.coefficients, norm="ortho")
    if not real:
        return x
    return Signal(x.real, spectrum.sample_rate)


def check_parseval(signal):
    """Return ``(sum |s|^2, sum |S|^2)``; equal up to round-off."""
    x = signal.samples if isinstance(signal, Signal) else np.asarray(signal, dtype=float)
    spec = forward(x)
    return float(np.sum(x * x)), float(np.sum(np.abs(spec.coefficients) ** 2))
