import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gravatom.distortion import Strain
from gravatom.hydrogenics import AtomicState
from gravatom.transitions import (
    HYDROGEN,
    DefectTable,
    level_energy,
    make_transition,
    shifted_energy,
    transition_detuning,
    wavelength_shift,
)


class TestLevelEnergy:
    @pytest.mark.parametrize("n,expected", [(1, -0.5), (2, -0.125), (10, -0.005)])
    def test_hydrogen(self, n, expected):
        assert level_energy(AtomicState(n, 0)) == pytest.approx(expected, rel=1e-15)

    def test_quantum_defect(self):
        table = DefectTable(species="rb", defects={0: 3.13})
        n_eff = 50 - 3.13
        assert level_energy(AtomicState(50, 0), table) == pytest.approx(
            -0.5 / n_eff**2, rel=1e-15
        )
        # defect applies only to its own l
        assert level_energy(AtomicState(50, 1), table) == pytest.approx(
            -0.5 / 50**2, rel=1e-15
        )

    def test_overlarge_defect_rejected(self):
        table = DefectTable(species="bad", defects={0: 1.5})
        with pytest.raises(ValueError):
            level_energy(AtomicState(1, 0), table)


class TestDetuning:
    def test_1s2p_slope_exact(self):
        # lower 1S: -2 E (n+l+1)^3/((2l-1)(2l+3)) = -2(-1/2)(8)/(-3) = -8/3
        # upper 2P: -2(-1/8)(64)/5 = 16/5; slope = 16/5 + 8/3 = 88/15
        t = make_transition(AtomicState(1, 0), AtomicState(2, 1))
        det = transition_detuning(t, Strain(1e-20))
        assert det.slope == pytest.approx(88.0 / 15.0, rel=1e-15)
        assert det.per_level_shift_slopes[0] == pytest.approx(-8.0 / 3.0, rel=1e-15)
        assert det.per_level_shift_slopes[1] == pytest.approx(16.0 / 5.0, rel=1e-15)

    @given(st.floats(1e-22, 1e-3))
    @settings(max_examples=50)
    def test_exact_linearity_in_strain(self, sp):
        t = make_transition(AtomicState(1, 0), AtomicState(2, 1))
        det = transition_detuning(t, Strain(sp))
        assert det.at_strain == det.slope * sp  # bitwise, no series truncation

    def test_zero_strain_zero_detuning(self):
        t = make_transition(AtomicState(50, 0), AtomicState(51, 1))
        assert transition_detuning(t, Strain(0.0)).at_strain == 0.0

    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            make_transition(AtomicState(2, 1), AtomicState(1, 0))


class TestShiftedEnergy:
    def test_leading_slope_matches_detuning_decomposition(self):
        state = AtomicState(2, 1)
        res = shifted_energy(state, Strain(1e-20))
        e = level_energy(state)
        expected = -2.0 * e * (2 + 1 + 1) ** 3 / ((2 * 1 - 1) * (2 * 1 + 3))
        assert res.slope == pytest.approx(expected, rel=1e-15)
        assert res.unshifted == e

    def test_kappa_is_full_remainder(self):
        state = AtomicState(5, 2)
        sp = 1e-6
        res = shifted_energy(state, Strain(sp))
        assert res.kappa == res.shifted - (res.unshifted + res.slope * sp)

    @given(st.integers(2, 20))
    @settings(max_examples=30)
    def test_leading_order_consistency_l_ge_1(self, n):
        # for l0 >= 1 the coefficient-squared combination reproduces the
        # leading slope; the l0 = 0 printed forms break this (see the
        # project ledger), so l = 1 sources are used here
        if n < 2:
            return
        state = AtomicState(n, 1)
        sp = 1e-7
        res = shifted_energy(state, Strain(sp))
        linear = (res.shifted - res.unshifted) / sp
        assert linear == pytest.approx(res.slope, rel=1e-2, abs=1e-10)


class TestWavelengthShift:
    def test_sign_and_scale(self):
        t = make_transition(AtomicState(110, 0), AtomicState(111, 1))
        det = transition_detuning(t, Strain(1e-20))
        shift = wavelength_shift(4.8e9, det, Strain(1e-20))
        # delta nu > 0 at positive strain => positive wavelength change here
        assert shift > 0
        assert shift == pytest.approx(5.2e-14, rel=0.1)

    def test_rejects_nonpositive_frequency(self):
        t = make_transition(AtomicState(1, 0), AtomicState(2, 1))
        det = transition_detuning(t, Strain(1e-20))
        with pytest.raises(ValueError):
            wavelength_shift(0.0, det, Strain(1e-20))


class TestDefectTable:
    def test_default_is_hydrogen(self):
        assert HYDROGEN.defect(0) == 0.0
        assert HYDROGEN.defect(7) == 0.0

    def test_lookup(self):
        t = DefectTable(species="x", defects={0: 3.1, 1: 2.6})
        assert t.defect(0) == 3.1
        assert t.defect(2) == 0.0
