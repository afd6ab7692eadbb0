import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thermocasimir.constants import C
from thermocasimir.dielectric import AL_OMEGA_P, ConstantGamma, Drude, IdealMetal, Plasma, Vacuum
from thermocasimir.errors import DomainError
from thermocasimir.reflection import (
    ZeroFreqPrescription as ZP,
    matsubara_frequency,
    refl_sq,
    refl_sq_zero,
    violates_condition_three,
    wave_numbers,
)

DRUDE = Drude(AL_OMEGA_P, ConstantGamma(9.6e13))
PLASMA = Plasma(AL_OMEGA_P)


def direct_pair(eps, xi, kp):
    """Textbook Fresnel coefficients on the imaginary axis, 40 digits."""
    with mpmath.workdps(40):
        eps, xi, kp = mpmath.mpf(eps), mpmath.mpf(xi), mpmath.mpf(kp)
        c = mpmath.mpf(C)
        q = mpmath.sqrt(xi**2 / c**2 + kp**2)
        k = mpmath.sqrt(eps * xi**2 / c**2 + kp**2)
        return float(((eps * q - k) / (eps * q + k)) ** 2), float(((q - k) / (q + k)) ** 2)


class TestMatsubaraFrequency:
    def test_values(self):
        assert matsubara_frequency(0, 300.0) == 0.0
        assert matsubara_frequency(1, 300.0) == pytest.approx(2.468e14, rel=1e-3)
        assert matsubara_frequency(10, 300.0) == pytest.approx(10 * matsubara_frequency(1, 300.0), rel=1e-15)

    def test_zero_temperature_rejected(self):
        with pytest.raises(DomainError):
            matsubara_frequency(1, 0.0)


class TestReflSq:
    def test_ideal_metal(self):
        p = refl_sq(IdealMetal(), 1e14, 1e6, 300.0)
        assert (p.r_par_sq, p.r_perp_sq) == (1.0, 1.0)

    def test_vacuum(self):
        p = refl_sq(Vacuum(), 1e14, 1e6, 300.0)
        assert (p.r_par_sq, p.r_perp_sq) == (0.0, 0.0)

    def test_plasma_against_extended_precision(self):
        xi, kp = 2.468e14, 5e5
        eps = 1 + mpmath.mpf(AL_OMEGA_P) ** 2 / mpmath.mpf(xi) ** 2
        p = refl_sq(PLASMA, xi, kp, 300.0)
        ref = direct_pair(eps, xi, kp)
        assert p.r_par_sq == pytest.approx(ref[0], rel=1e-13)
        assert p.r_perp_sq == pytest.approx(ref[1], rel=1e-13)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(10.0, 22.0), st.floats(3.0, 9.0))
    def test_drude_against_extended_precision(self, log_xi, log_kp):
        xi, kp = 10.0**log_xi, 10.0**log_kp
        with mpmath.workdps(40):
            eps = 1 + mpmath.mpf(AL_OMEGA_P) ** 2 / (mpmath.mpf(xi) * (mpmath.mpf(xi) + mpmath.mpf(9.6e13)))
        p = refl_sq(DRUDE, xi, kp, 300.0)
        ref = direct_pair(eps, xi, kp)
        assert p.r_par_sq == pytest.approx(ref[0], rel=1e-12, abs=1e-300)
        assert p.r_perp_sq == pytest.approx(ref[1], rel=1e-12, abs=1e-300)

    @pytest.mark.parametrize("spec", [PLASMA, DRUDE])
    def test_bounds_and_ordering(self, spec):
        a = 2e-6
        xi1 = matsubara_frequency(1, 300.0)
        for xi in np.geomspace(xi1 / 100, 100 * AL_OMEGA_P, 40):
            for kp in np.geomspace(1 / (100 * a), 100 / a, 40):
                p = refl_sq(spec, xi, kp, 300.0)
                assert 0.0 <= p.r_perp_sq <= p.r_par_sq <= 1.0

    def test_rejects_zero_frequency(self):
        with pytest.raises(DomainError):
            refl_sq(PLASMA, 0.0, 1e6, 300.0)

    def test_wave_numbers(self):
        w = wave_numbers(PLASMA, 1e14, 1e6, 0.0)
        assert w.q >= 1e14 / C and w.k >= w.q


class TestReflSqZero:
    @pytest.mark.parametrize("kp", [1e3, 1e6, 1e9])
    def test_drude_intrinsic(self, kp):
        p = refl_sq_zero(DRUDE, ZP.MODEL_INTRINSIC, kp, 300.0)
        assert (p.r_par_sq, p.r_perp_sq) == (1.0, 0.0)

    @pytest.mark.parametrize("spec", [PLASMA, DRUDE, IdealMetal()])
    def test_ideal_metal_rule(self, spec):
        p = refl_sq_zero(spec, ZP.IDEAL_METAL_RULE, 1e6, 300.0)
        assert (p.r_par_sq, p.r_perp_sq) == (1.0, 1.0)

    def test_plasma_small_k_limit(self):
        assert refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, 1.0, 0.0).r_perp_sq == pytest.approx(1.0, abs=1e-6)

    def test_plasma_matches_closed_form(self):
        kp = 3e6
        root = np.sqrt(AL_OMEGA_P**2 + C**2 * kp**2)
        expected = ((C * kp - root) / (C * kp + root)) ** 2
        assert refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, kp, 0.0).r_perp_sq == pytest.approx(expected, rel=1e-13)

    def test_modified_transverse_without_gamma_is_plasma(self):
        drude0 = Drude(AL_OMEGA_P, ConstantGamma(0.0))
        for kp in (1e4, 1e6, 1e8):
            a = refl_sq_zero(drude0, ZP.MODIFIED_TRANSVERSE, kp, 300.0)
            b = refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, kp, 300.0)
            assert a.r_perp_sq == pytest.approx(b.r_perp_sq, rel=1e-14)
            assert a.r_par_sq == b.r_par_sq == 1.0

    def test_modified_transverse_formula(self):
        kp, g = 1e6, 9.6e13
        root = np.sqrt(AL_OMEGA_P**2 * C * kp / (C * kp + g) + C**2 * kp**2)
        expected = ((C * kp - root) / (C * kp + root)) ** 2
        assert refl_sq_zero(DRUDE, ZP.MODIFIED_TRANSVERSE, kp, 300.0).r_perp_sq == pytest.approx(expected, rel=1e-12)

    def test_modified_transverse_decreases_with_gamma(self):
        values = [refl_sq_zero(Drude(AL_OMEGA_P, ConstantGamma(g)), ZP.MODIFIED_TRANSVERSE, 1e6, 0.0).r_perp_sq
                  for g in (0.0, 1e12, 1e13, 1e14, 1e15)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_rejects_zero_k(self):
        with pytest.raises(DomainError):
            refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, 0.0, 0.0)

    def test_flag(self):
        assert violates_condition_three(DRUDE, ZP.MODEL_INTRINSIC)
        assert not violates_condition_three(DRUDE, ZP.MODIFIED_TRANSVERSE)
        assert not violates_condition_three(PLASMA, ZP.MODEL_INTRINSIC)


class TestZeroFrequencyLimit:
    kp = 1e6

    def test_plasma_continuous(self):
        near = refl_sq(PLASMA, 1e-8 * AL_OMEGA_P, self.kp, 0.0)
        zero = refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, self.kp, 0.0)
        assert near.r_perp_sq == pytest.approx(zero.r_perp_sq, rel=1e-4)
        assert near.r_par_sq == pytest.approx(zero.r_par_sq, rel=1e-4)

    def test_drude_discontinuous(self):
        near = refl_sq(DRUDE, 1e-8 * AL_OMEGA_P, self.kp, 0.0)
        plasma_zero = refl_sq_zero(PLASMA, ZP.MODEL_INTRINSIC, self.kp, 0.0)
        assert plasma_zero.r_perp_sq > 0.9
        assert near.r_perp_sq < 0.1
        assert plasma_zero.r_perp_sq - near.r_perp_sq > 0.8
