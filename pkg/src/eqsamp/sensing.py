"""Measurement model: shifted-monocycle dictionary, selected-bin Fourier
measurements, their composition, coherence and the sample-count bound.

One selected frequency contributes two real rows (real and imaginary part of
the unitary DFT coefficient), stacked as ``[Re S(f_1..f_M); Im S(f_1..f_M)]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampling import SamplingPlan
from .signal_model import MonocycleTemplate, Signal
from .spectral import forward

__all__ = [
    "Dictionary",
    "SensingOperator",
    "Measurement",
    "build_dictionary",
    "measure",
    "apply_delta",
    "coherence",
    "coherence_dense",
    "required_samples",
]


class Dictionary:
    """Circulant dictionary of unit-norm circular shifts of one atom.

    ``response`` holds the unnormalised FFT of atom 0, so that the unitary
    DFT of ``D @ x`` equals ``response * fft(x, norm="ortho")``.
    """

    def __init__(self, waveform, sample_rate=1.0):
        w = np.asarray(waveform, dtype=float)
        norm = np.linalg.norm(w)
        if norm == 0:
            raise ValueError("dictionary atom is identically zero")
        self.atom = w / norm
        self.atom.setflags(write=False)
        self.sample_rate = float(sample_rate)
        self.norm = float(norm)
        self.response = np.fft.fft(self.atom)
        self.response.setflags(write=False)

    @property
    def size(self) -> int:
        return self.atom.size

    @property
    def column_norms(self) -> np.ndarray:
        """Norms of the raw (unnormalised) template shifts."""
        return np.full(self.size, self.norm)

    def column(self, j) -> np.ndarray:
        return np.roll(self.atom, j)

    def synthesize(self, coefficients) -> np.ndarray:
        """``D @ x`` by circular convolution."""
        x = np.asarray(coefficients, dtype=float)
        return np.fft.irfft(np.fft.rfft(self.atom) * np.fft.rfft(x), n=self.size)

    def analyze(self, signal) -> np.ndarray:
        """``D.T @ s`` (circular cross-correlation)."""
        s = np.asarray(signal, dtype=float)
        return np.fft.irfft(np.conj(np.fft.rfft(self.atom)) * np.fft.rfft(s), n=self.size)

    def matrix(self) -> np.ndarray:
        n = self.size
        return np.stack([np.roll(self.atom, j) for j in range(n)], axis=1)


def build_dictionary(template) -> Dictionary:
    if isinstance(template, MonocycleTemplate):
        return Dictionary(template.waveform, template.sample_rate)
    return Dictionary(template)


@dataclass(frozen=True)
class Measurement:
    values: np.ndarray
    plan: SamplingPlan

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (2 * len(self.plan),):
            raise ValueError("measurement length must be twice the plan size")
        if not np.all(np.isfinite(v)):
            raise ValueError("measurement has non-finite entries")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def complex_values(self) -> np.ndarray:
        m = len(self.plan)
        return self.values[:m] + 1j * self.values[m:]


def _split(z):
    return np.concatenate([z.real, z.imag])


def measure(signal, plan: SamplingPlan) -> Measurement:
    """Real/imaginary parts of the unitary DFT at the plan's bins."""
    x = signal.samples if isinstance(signal, Signal) else np.asarray(signal, dtype=float)
    if x.size != plan.n:
        raise ValueError("signal length does not match the plan grid")
    coeffs = forward(x).coefficients
    return Measurement(_split(coeffs[plan.selected_bins]), plan)


class SensingOperator:
    """Real linear map ``A = Phi Psi`` from dictionary coefficients to
    measurements, applied in O(N log N) through the dictionary's frequency
    response.

    Because the plan's bins lie strictly between DC and Nyquist, the rows of
    ``A`` are mutually orthogonal and ``A A^T`` is the diagonal returned by
    :meth:`row_gram`.
    """

    def __init__(self, plan: SamplingPlan, dictionary: Dictionary):
        if dictionary.size != plan.n:
            raise ValueError("dictionary size does not match the plan grid")
        self.plan = plan
        self.dictionary = dictionary
        self.bins = np.asarray(plan.selected_bins)
        self._gain = dictionary.response[self.bins]
        n = dictionary.size
        self._scale = 1.0 / math.sqrt(n)

    @property
    def n(self) -> int:
        return self.dictionary.size

    @property
    def real_row_count(self) -> int:
        return 2 * self.bins.size

    @property
    def shape(self):
        return (self.real_row_count, self.n)

    def matvec(self, x) -> np.ndarray:
        X = np.fft.rfft(x)[self.bins] * self._scale
        return _split(self._gain * X)

    def rmatvec(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        m = self.bins.size
        z = (y[:m] + 1j * y[m:]) * np.conj(self._gain)
        Z = np.zeros(self.n // 2 + 1, dtype=complex)
        Z[self.bins] = z
        # Re(ifft) of a spectrum supported on interior positive bins = irfft / 2
        return np.fft.irfft(Z, n=self.n) * (0.5 * self.n * self._scale)

    def row_gram(self) -> np.ndarray:
        """Diagonal of ``A A^T`` (real rows then imaginary rows)."""
        lam = 0.5 * np.abs(self._gain) ** 2
        return np.concatenate([lam, lam])

    def to_dense(self) -> np.ndarray:
        return np.stack([self.matvec(e) for e in np.eye(self.n)], axis=1)

    def as_linear_operator(self):
        from scipy.sparse.linalg import LinearOperator

        return LinearOperator(self.shape, matvec=self.matvec, rmatvec=self.rmatvec,
                              dtype=float)


def apply_delta(coefficients, operator: SensingOperator) -> Measurement:
    return Measurement(operator.matvec(np.asarray(coefficients, dtype=float)),
                       operator.plan)


def coherence(plan: SamplingPlan, dictionary: Dictionary) -> float:
    """sqrt(N)-scaled mutual coherence of the selected DFT rows and the atoms.

    Every shift of an atom has the same DFT modulus, so the maximum over all
    row/column pairs reduces to the largest ``|fft(atom)|`` on the plan.
    """
    return float(np.abs(dictionary.response[plan.selected_bins]).max())


def coherence_dense(phi, psi) -> float:
    """Brute-force coherence of row set ``phi`` against column set ``psi``.

    Rows and columns are normalised, every pair is scanned, and the result is
    scaled by sqrt of the ambient dimension.
    """
    phi = np.atleast_2d(np.asarray(phi))
    psi = np.asarray(psi)
    if psi.ndim == 1:
        psi = psi[:, None]
    phi = phi / np.linalg.norm(phi, axis=1, keepdims=True)
    psi = psi / np.linalg.norm(psi, axis=0, keepdims=True)
    gram = np.conj(phi) @ psi
    return float(np.abs(gram).max() * math.sqrt(psi.shape[0]))


def required_samples(mu, dof, n, c) -> int:
    """Heuristic bound ``ceil(c * mu^2 * dof * ln n)``."""
    if min(mu, dof, n, c) <= 0:
        raise ValueError("all arguments must be positive")
    return int(math.ceil(c * mu * mu * dof * math.log(n)))
