"""Independent reference computations used by the test-suite.

Nothing here calls the production solver or the FFT-based operator; every
oracle works from explicitly materialised dense matrices.
"""
from itertools import combinations

import numpy as np


def dense_dft_rows(n, bins):
    k = np.asarray(bins)[:, None]
    t = np.arange(n)[None, :]
    return np.exp(-2j * np.pi * k * t / n) / np.sqrt(n)


def dense_dictionary(waveform):
    w = np.asarray(waveform, float)
    w = w / np.linalg.norm(w)
    n = w.size
    return np.stack([np.roll(w, j) for j in range(n)], axis=1)


def dense_delta(waveform, bins):
    """``[Re; Im]`` of (selected DFT rows) @ (shift dictionary)."""
    m = dense_dft_rows(len(waveform), bins) @ dense_dictionary(waveform)
    return np.vstack([m.real, m.imag])


def l1_support_oracle(A, b, max_support=2, feas_tol=1e-9, margin=1e-6):
    """Minimal-l1 point among all supports of size <= ``max_support``.

    Returns ``(x, unique)`` where ``unique`` is True when ``x`` is certified
    as the unique global minimiser of ``||x||_1`` s.t. ``A x = b``: the
    restricted columns are independent, no other enumerated support ties
    (the l0 search is exhaustive up to ``max_support``), and the
    least-squares dual certificate ``A_T^+T sign(x_T)`` stays strictly below
    one off the support (Fuchs' condition).
    """
    n = A.shape[1]
    bnorm = np.linalg.norm(b)
    if bnorm == 0:
        return np.zeros(n), True
    candidates = []
    for size in range(1, max_support + 1):
        for T in combinations(range(n), size):
            AT = A[:, T]
            c, *_ = np.linalg.lstsq(AT, b, rcond=None)
            if np.linalg.norm(AT @ c - b) <= feas_tol * bnorm and np.all(np.abs(c) > 1e-12):
                candidates.append((float(np.abs(c).sum()), T, c))
        if candidates:
            break  # smallest feasible support size reached (l0 solution)
    if not candidates:
        return None, False
    candidates.sort(key=lambda t: t[0])
    best_l1, T, c = candidates[0]
    x = np.zeros(n)
    x[list(T)] = c
    tie = len(candidates) > 1 and candidates[1][0] <= best_l1 * (1 + 1e-9)
    AT = A[:, list(T)]
    if np.linalg.matrix_rank(AT) < len(T) or tie:
        return x, False
    y = np.linalg.pinv(AT).T @ np.sign(c)
    off = np.setdiff1d(np.arange(n), T)
    unique = bool(np.max(np.abs(A[:, off].T @ y), initial=0.0) < 1 - margin)
    return x, unique


def binomial_band(count, p):
    """Mean and standard deviation of Binomial(count, p)."""
    return count * p, np.sqrt(count * p * (1 - p))
