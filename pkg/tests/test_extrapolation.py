import numpy as np
import pytest

from scatgate.oracle import (
    ScatteringAmplitudes,
    extrapolate_scalar,
    width_extrapolate,
)


def synth(widths, t_fn, r_fn, k=1.0):
    return [(w, ScatteringAmplitudes(t=t_fn(w), r=r_fn(w), k=k)) for w in widths]


class TestWidthExtrapolate:
    def test_recovers_quadratic_data(self):
        # real amplitudes with a pure w^2 trend: polynomial data, recovered to
        # machine-level accuracy
        widths = [0.2 / 2**j for j in range(5)]
        t0, r0 = 0.8, 0.6
        a, b = 0.04, -0.04 * t0 / r0  # keeps |t|^2 + |r|^2 = 1 through O(w^2)
        res = width_extrapolate(synth(widths, lambda w: t0 + a * w**2,
                                      lambda w: r0 + b * w**2))
        assert abs(res.amplitudes.t - t0) < 1e-10
        assert abs(res.amplitudes.r - r0) < 1e-10
        assert res.residual < 1e-9

    def test_recovers_complex_phase_trend(self):
        widths = [0.1 / 2**j for j in range(5)]
        t0 = 0.6 * np.exp(0.3j)
        r0 = 0.8 * np.exp(-1.1j)
        res = width_extrapolate(synth(widths,
                                      lambda w: t0 * np.exp(1j * 0.2 * w),
                                      lambda w: r0 * np.exp(-1j * 0.5 * w)))
        assert abs(res.amplitudes.t - t0) < 1e-8
        assert abs(res.amplitudes.r - r0) < 1e-8

    def test_preserves_unitarity_exactly(self):
        # per-width unitary data stays unitary after extrapolation because the
        # magnitude-squared extrapolations sum to an extrapolation of 1
        widths = [0.2 / 2**j for j in range(4)]
        def t_fn(w):
            return np.cos(0.5 + 0.8 * w) * np.exp(1j * w)
        def r_fn(w):
            return np.sin(0.5 + 0.8 * w) * np.exp(1j * (w - 0.7))
        res = width_extrapolate(synth(widths, t_fn, r_fn))
        assert abs(res.amplitudes.unitarity_defect) < 1e-12

    def test_rejects_non_decreasing_widths(self):
        widths = [0.1, 0.2, 0.05]
        with pytest.raises(ValueError, match="decreasing"):
            width_extrapolate(synth(widths, lambda w: 1.0 + 0j, lambda w: 0.0j))

    def test_rejects_too_few_widths(self):
        with pytest.raises(ValueError, match="at least 3"):
            width_extrapolate(synth([0.1, 0.05], lambda w: 1.0 + 0j, lambda w: 0.0j))

    def test_rejects_non_geometric_widths(self):
        widths = [0.1, 0.09, 0.002]
        with pytest.raises(ValueError, match="geometrically"):
            width_extrapolate(synth(widths, lambda w: 1.0 + 0j, lambda w: 0.0j))

    def test_rejects_mixed_momenta(self):
        results = [(0.1, ScatteringAmplitudes(1.0, 0.0, k=1.0)),
                   (0.05, ScatteringAmplitudes(1.0, 0.0, k=1.1)),
                   (0.025, ScatteringAmplitudes(1.0, 0.0, k=1.0))]
        with pytest.raises(ValueError, match="momenta"):
            width_extrapolate(results)

    def test_flags_non_monotone_convergence(self):
        widths = [0.2, 0.1, 0.05, 0.025]
        wobble = {0.2: 0.0, 0.1: 0.02, 0.05: -0.02, 0.025: 0.015}
        def t_fn(w):
            return np.cos(0.3 + wobble[w])
        def r_fn(w):
            return np.sin(0.3 + wobble[w])
        with pytest.warns(UserWarning, match="monotonically"):
            res = width_extrapolate(synth(widths, t_fn, r_fn))
        assert not res.monotone


class TestExtrapolateScalar:
    def test_quadratic_recovery(self):
        widths = [0.4 / 2**j for j in range(4)]
        value, residual = extrapolate_scalar([(w, 2.5 + 3.0 * w**2) for w in widths])
        assert abs(value - 2.5) < 1e-12
        assert residual < 1e-11

    def test_rejects_short_sequences(self):
        with pytest.raises(ValueError):
            extrapolate_scalar([(0.1, 1.0), (0.05, 1.0)])
