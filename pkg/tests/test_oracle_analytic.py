import cmath
import math

import numpy as np
import pytest

from scatgate import lieb_liniger_phase
from scatgate.oracle import (
    delta_amplitudes,
    even_phase_analytic,
    reduce_to_relative,
    square_barrier_amplitudes,
)
from scatgate.oracle.analytic import formal_phase_odd_in_coupling


class TestReduceToRelative:
    def test_jump_coefficient_equals_coupling(self):
        assert reduce_to_relative(1.0).jump_coefficient == 1.0
        assert reduce_to_relative(3.5).jump_coefficient == 3.5
        assert reduce_to_relative(2.0).kinetic_coefficient == 1.0

    def test_relative_momentum_is_half_difference(self):
        prob = reduce_to_relative(1.0)
        assert prob.relative_momentum(1.0, -1.0) == 1.0
        assert prob.relative_momentum(0.5, -0.3) == pytest.approx(0.4)

    def test_rejects_non_positive_coupling(self):
        with pytest.raises(ValueError):
            reduce_to_relative(0.0)


class TestDeltaAmplitudes:
    @pytest.mark.parametrize("k,c", [(0.5, 1.0), (1.0, 0.2), (2.0, 20.0), (0.05, 1.0)])
    def test_even_channel_equals_exchange_phase(self, k, c):
        # the pencil-and-paper identity: t + r at relative momentum k equals
        # the two-body exchange phase at momentum difference 2k
        t, r = delta_amplitudes(k, c)
        assert abs((t + r) - lieb_liniger_phase(2 * k, 0.0, c)) < 1e-14

    @pytest.mark.parametrize("k,c", [(0.5, 1.0), (1.0, 3.7), (2.0, 0.01)])
    def test_unitarity_exact(self, k, c):
        t, r = delta_amplitudes(k, c)
        assert abs(abs(t)**2 + abs(r)**2 - 1.0) < 1e-15

    def test_free_case(self):
        t, r = delta_amplitudes(1.0, 0.0)
        assert t == 1.0 and r == 0.0

    def test_impenetrable_limit(self):
        t, r = delta_amplitudes(1.0, 1e9)
        assert abs(t) < 1e-8 and abs(r + 1.0) < 1e-8


class TestEvenPhase:
    def test_free_limit_no_phase(self):
        # phase ~ -c/k for weak coupling, vanishing in the free limit
        assert abs(even_phase_analytic(1.0, 1e-12)) < 2e-12
        assert abs(even_phase_analytic(1.0, 1e-15)) < 2e-15

    def test_momentum_difference_equal_to_coupling(self):
        assert abs(even_phase_analytic(0.5, 1.0) - (-math.pi / 2)) < 1e-14

    def test_strong_coupling_value(self):
        # arg((1 - 10i)/(1 + 10i)) = -2 atan(10)
        assert abs(even_phase_analytic(0.05, 1.0) - (-2 * math.atan(10))) < 1e-14
        assert even_phase_analytic(0.05, 1.0) == pytest.approx(-2.942, abs=1e-3)

    def test_formally_odd_in_coupling(self):
        for k, c in ((0.5, 1.0), (1.0, 0.3), (2.0, 15.0)):
            assert formal_phase_odd_in_coupling(k, c)


class TestSquareBarrier:
    @pytest.mark.parametrize("k,c,w", [(1.0, 2.0, 0.3), (1.0, 0.5, 1.0), (0.7, 5.0, 0.05)])
    def test_unitary_at_finite_width(self, k, c, w):
        t, r = square_barrier_amplitudes(k, c, w)
        assert abs(abs(t)**2 + abs(r)**2 - 1.0) < 1e-12

    def test_width_zero_limit_is_delta(self):
        k, c = 1.0, 2.0
        t0, r0 = delta_amplitudes(k, c)
        deviations = []
        for w in (0.1, 0.05, 0.025):
            t, r = square_barrier_amplitudes(k, c, w)
            deviations.append(abs(t - t0) + abs(r - r0))
        assert deviations[0] > deviations[1] > deviations[2]
        assert deviations[2] < 0.05 * c * 0.025  # linear-in-width leading error

    def test_tunneling_regime_suppresses_transmission(self):
        # barrier much higher than the energy
        t, r = square_barrier_amplitudes(1.0, 50.0, 1.0)
        assert abs(t) < 1e-3

    def test_thin_weak_barrier_transparent(self):
        t, r = square_barrier_amplitudes(1.0, 1e-6, 1e-3)
        assert abs(t - 1.0) < 1e-5

    def test_reciprocity_phase_relation(self):
        # for a symmetric barrier, r/t is purely imaginary (elastic unitarity)
        t, r = square_barrier_amplitudes(1.0, 2.0, 0.4)
        assert abs((r / t).real) < 1e-12

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            square_barrier_amplitudes(-1.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            square_barrier_amplitudes(1.0, 1.0, 0.0)
