import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqsamp.signal_model import SparseScene, Signal, make_monocycle, make_scene, synthesize


def test_monocycle_peak_frequency(template256):
    w = template256.waveform
    fs, n = template256.sample_rate, w.size
    mag = np.abs(np.fft.rfft(w))
    peak_hz = np.argmax(mag) * fs / n
    assert abs(peak_hz - 2e9) <= fs / n


@pytest.mark.parametrize("fc,fs,n", [(2e9, 16e9, 256), (1e9, 20e9, 128), (3e9, 10e9, 64)])
def test_monocycle_zero_mean_unit_peak(fc, fs, n):
    w = make_monocycle(fc, fs, n).waveform
    assert np.abs(w).max() == pytest.approx(1.0, abs=1e-15)
    assert abs(w.sum()) < 1e-9


@pytest.mark.parametrize("fc", [8e9, 9e9, 0.0, -1.0])
def test_monocycle_rejects_out_of_band(fc):
    with pytest.raises(ValueError):
        make_monocycle(fc, 16e9, 256)


def test_scene_cardinality_and_guard():
    s1 = make_scene(1, 3)
    assert s1.dof == 1
    s3 = make_scene(3, 3, guard=20)
    shifts = sorted(k for k, _ in s3.events)
    gaps = np.diff(shifts + [shifts[0] + 256])
    assert len(set(shifts)) == 3 and gaps.min() >= 20
    assert all(0.3 <= abs(a) <= 1.0 for _, a in s3.events)


def test_scene_determinism():
    assert make_scene(3, 42, guard=10) == make_scene(3, 42, guard=10)
    assert make_scene(3, 42, guard=10) != make_scene(3, 43, guard=10)


def test_scene_unsatisfiable():
    with pytest.raises(ValueError):
        make_scene(4, 0, n=16, guard=4)


def test_scene_rejects_bad_events():
    with pytest.raises(ValueError):
        SparseScene(((1, 1.0), (1, 0.5)), 8)
    with pytest.raises(ValueError):
        SparseScene(((1, 0.0),), 8)
    with pytest.raises(ValueError):
        SparseScene(((9, 1.0),), 8)


def test_synthesize_empty_and_identity(template256):
    assert not np.any(synthesize(SparseScene((), 256), template256).samples)
    np.testing.assert_array_equal(
        synthesize(SparseScene(((0, 1.0),), 256), template256).samples, template256.waveform
    )


@settings(max_examples=40, deadline=None)
@given(
    a=st.lists(st.tuples(st.integers(0, 255), st.floats(0.1, 2.0)), min_size=1, max_size=3,
               unique_by=lambda e: e[0]),
    k=st.integers(0, 255),
)
def test_linearity_and_shift_covariance(template256, a, k):
    half = len(a) // 2
    A, B = SparseScene(tuple(a[:half]), 256), SparseScene(tuple(a[half:]), 256)
    whole = SparseScene(tuple(a), 256)
    np.testing.assert_allclose(
        synthesize(whole, template256).samples,
        synthesize(A, template256).samples + synthesize(B, template256).samples,
        atol=1e-14,
    )
    moved = SparseScene(tuple(((s + k) % 256, v) for s, v in a), 256)
    np.testing.assert_allclose(
        synthesize(moved, template256).samples,
        np.roll(synthesize(whole, template256).samples, k),
        atol=1e-14,
    )


def test_signal_invariants():
    with pytest.raises(ValueError):
        Signal(np.array([1.0]), 1.0)
    with pytest.raises(ValueError):
        Signal(np.array([1.0, np.nan]), 1.0)
