"""Reconstruction quality: PSNR and magnitude-spectrum fit."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signal_model import Signal

__all__ = ["EvalReport", "psnr", "spectrum_error"]


@dataclass(frozen=True)
class EvalReport:
    psnr_db: float
    mse: float
    peak: float
    spectrum_l2_error: float


def _as_array(x):
    return x.samples if isinstance(x, Signal) else np.asarray(x, dtype=float)


def spectrum_error(original, reconstructed) -> float:
    """``|| |S_orig| - |S_rec| ||_2 / || |S_orig| ||_2`` with unitary DFTs."""
    a = np.abs(np.fft.fft(_as_array(original), norm="ortho"))
    b = np.abs(np.fft.fft(_as_array(reconstructed), norm="ortho"))
    den = np.linalg.norm(a)
    if den == 0:
        return 0.0 if not np.any(b) else math.inf
    return float(np.linalg.norm(a - b) / den)


def psnr(original, reconstructed) -> EvalReport:
    """PSNR in dB with the peak taken from the *original* signal.

    ``10 log10(peak^2 / mse)``; an exact match returns ``+inf``.
    """
    x = _as_array(original)
    y = _as_array(reconstructed)
    if x.size == 0:
        raise ValueError("signals must be non-empty")
    if x.shape != y.shape:
        raise ValueError("signals must have equal length")
    mse = float(np.mean((x - y) ** 2))
    peak = float(np.abs(x).max())
    if mse == 0:
        db = math.inf
    elif peak == 0:
        db = -math.inf
    else:
        db = 10.0 * math.log10(peak * peak / mse)
    return EvalReport(db, mse, peak, spectrum_error(x, y))
