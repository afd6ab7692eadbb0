import math

import numpy as np
import pytest

from thermocasimir.constants import C, K_B, MEV, ZETA3, entropy_to_mev
from thermocasimir.dielectric import AL_OMEGA_P, IdealMetal
from thermocasimir.errors import DomainError
from thermocasimir.reflection import ZeroFreqPrescription as ZP
from thermocasimir.system import PlateSystem, effective_temperature
from thermocasimir.thermo import (
    entropy,
    entropy_curve,
    entropy_lowT_modified,
    entropy_lowT_plasma,
    entropy_zero_modified,
    find_sign_crossing,
    fit_zero_limit,
    nernst_limit,
    nernst_threshold,
    s_offset_identity,
)

A = 2e-6


def mev(x):
    return entropy_to_mev(x)


class TestEntropy:
    def test_units(self, cfg, plasma):
        p = entropy(PlateSystem(A, 50.0, plasma), cfg)
        assert p.S_paper_units == pytest.approx(p.S / 1.602176634e-13, rel=1e-15)

    def test_drude_intrinsic_low_t(self, cfg, drude):
        assert mev(entropy(PlateSystem(A, 1.0, drude), cfg).S) == pytest.approx(-0.5, rel=0.05)

    @pytest.mark.parametrize("model", ["drude", "plasma"])
    def test_ideal_metal_rule_low_t(self, cfg, model, drude, plasma):
        spec = drude if model == "drude" else plasma
        assert mev(entropy(PlateSystem(A, 1.0, spec, ZP.IDEAL_METAL_RULE), cfg).S) == pytest.approx(0.016, rel=0.10)

    def test_plasma_at_one_kelvin(self, cfg, plasma):
        s = mev(entropy(PlateSystem(A, 1.0, plasma), cfg).S)
        assert 0.0 < s < 1e-5

    def test_zero_temperature_rejected(self, cfg, plasma):
        with pytest.raises(DomainError):
            entropy(PlateSystem(A, 0.0, plasma), cfg)

    def test_ideal_high_temperature_exact(self, cfg):
        """Classical regime: S = plateau + E/T with E the zero-point energy."""
        plateau = K_B * ZETA3 / (8 * math.pi * A**2)
        T = 20 * effective_temperature(A)
        s = entropy(PlateSystem(A, T, IdealMetal()), cfg).S
        assert s == pytest.approx(plateau * (1 - math.pi**3 / (900 * ZETA3)), rel=1e-9)

    def test_curve_sorted(self, cfg, plasma):
        curve = entropy_curve(PlateSystem(A, 1.0, plasma), [30.0, 10.0, 20.0], cfg)
        assert [p.T for p in curve] == [10.0, 20.0, 30.0]


@pytest.mark.parametrize("a", [0.5e-6, 1e-6, 2e-6, 5e-6])
@pytest.mark.parametrize("prescription", ["plasma_intrinsic", "drude_eq10"])
def test_entropy_never_negative(cfg, a, prescription, drude, plasma):
    spec, rule = (plasma, ZP.MODEL_INTRINSIC) if prescription == "plasma_intrinsic" else (drude, ZP.MODIFIED_TRANSVERSE)
    for p in entropy_curve(PlateSystem(a, 1.0, spec, rule), np.geomspace(0.5, 1000.0, 12), cfg):
        assert p.S >= -p.err


class TestLowTemperatureExpansions:
    def test_zero_at_zero_temperature(self):
        assert entropy_lowT_plasma(A, 0.0, AL_OMEGA_P) == 0.0

    def test_value_at_30k(self):
        # independent arithmetic: T_eff = 572.5 K, delta_0/a = 0.00789
        tau, d = 30.0 / 572.5, 0.00789
        c1 = math.pi**3 / (45 * 1.2020569)
        expected = 1.0304 * tau**2 * (1 - c1 * tau + 2 * d * (1 - 2 * c1 * tau))
        assert mev(entropy_lowT_plasma(A, 30.0, AL_OMEGA_P)) == pytest.approx(expected, rel=1e-3)
        assert mev(entropy_lowT_plasma(A, 30.0, AL_OMEGA_P)) == pytest.approx(2.8e-3, rel=0.02)

    @pytest.mark.parametrize("T", [10.0, 20.0, 30.0])
    def test_agrees_with_numeric(self, cfg, plasma, T):
        numeric = entropy(PlateSystem(A, T, plasma), cfg).S
        assert numeric == pytest.approx(entropy_lowT_plasma(A, T, AL_OMEGA_P), rel=0.02)

    def test_quadratic_law(self, cfg, plasma):
        curve = entropy_curve(PlateSystem(A, 1.0, plasma), [5.0, 10.0, 15.0, 20.0, 25.0, 30.0], cfg)
        ratios = [p.S / p.T**2 for p in curve]
        assert max(ratios) / min(ratios) < 1.1

    def test_domain(self):
        with pytest.raises(DomainError, match="T/T_eff"):
            entropy_lowT_plasma(A, 0.3 * effective_temperature(A), AL_OMEGA_P)
        with pytest.raises(DomainError, match="lambda_p"):
            entropy_lowT_plasma(0.05e-6, 1.0, AL_OMEGA_P)
        with pytest.raises(DomainError, match="lambda_p"):
            entropy_lowT_modified(0.05e-6, 1.0, AL_OMEGA_P)

    def test_modified_zero_value(self):
        assert mev(entropy_lowT_modified(A, 0.0, AL_OMEGA_P)) == pytest.approx(0.016, rel=0.01)

    def test_modified_scaling(self):
        d1, d4 = C / (A * AL_OMEGA_P), C / (4 * A * AL_OMEGA_P)
        ratio = entropy_zero_modified(4 * A, AL_OMEGA_P) / entropy_zero_modified(A, AL_OMEGA_P)
        assert ratio == pytest.approx((1 / 16) * (d4 / d1) * (1 - 3 * d4) / (1 - 3 * d1), rel=1e-14)
        assert d4 == pytest.approx(d1 / 4, rel=1e-15)

    def test_modified_agrees_with_numeric(self, cfg, plasma):
        numeric = entropy(PlateSystem(A, 20.0, plasma, ZP.IDEAL_METAL_RULE), cfg).S
        assert numeric == pytest.approx(entropy_lowT_modified(A, 20.0, AL_OMEGA_P), rel=0.03)


class TestOffsetIdentity:
    def test_value(self):
        assert mev(s_offset_identity(A)) == pytest.approx(0.515, abs=0.001)
        assert s_offset_identity(A) == K_B * ZETA3 / (16 * math.pi * A**2)

    def test_scaling(self):
        assert s_offset_identity(2 * A) == pytest.approx(s_offset_identity(A) / 4, rel=1e-15)

    def test_numeric_difference_at_one_kelvin(self, cfg, drude):
        eq9 = entropy(PlateSystem(A, 1.0, drude, ZP.IDEAL_METAL_RULE), cfg).S
        eq8 = entropy(PlateSystem(A, 1.0, drude, ZP.MODEL_INTRINSIC), cfg).S
        assert eq9 - eq8 == pytest.approx(s_offset_identity(A), rel=0.02)

    def test_rejects_bad_separation(self):
        with pytest.raises(DomainError):
            s_offset_identity(0.0)


class TestNernst:
    def test_plasma_intrinsic(self, cfg, plasma):
        v = nernst_limit(PlateSystem(A, 1.0, plasma), cfg)
        assert v.admissible and not v.negative_anywhere and v.reliable
        assert abs(v.S_limit) <= nernst_threshold(A)

    def test_drude_intrinsic(self, cfg, drude):
        v = nernst_limit(PlateSystem(A, 1.0, drude), cfg)
        assert not v.admissible and v.negative_anywhere
        assert mev(v.S_limit) == pytest.approx(-0.5, rel=0.05)

    def test_drude_modified_transverse(self, cfg, drude):
        assert nernst_limit(PlateSystem(A, 1.0, drude, ZP.MODIFIED_TRANSVERSE), cfg).admissible

    def test_drude_ideal_metal_rule(self, cfg, drude):
        v = nernst_limit(PlateSystem(A, 1.0, drude, ZP.IDEAL_METAL_RULE), cfg)
        assert not v.admissible and not v.negative_anywhere

    @pytest.mark.parametrize("grid", [(4.0, 2.0, 1.0), (1.0, 2.0, 4.0, 8.0), (8.0, 4.0, 2.0, 0.25)])
    def test_grid_validation(self, cfg, plasma, grid):
        with pytest.raises(DomainError):
            nernst_limit(PlateSystem(A, 1.0, plasma), cfg, grid)

    def test_fit_recovers_quadratic(self):
        from thermocasimir.thermo import EntropyCurvePoint

        pts = [EntropyCurvePoint(t, 3.0 + 2.0 * t**2, 0.0, 0.0) for t in (0.5, 1.0, 2.0, 4.0)]
        s0, c2, resid = fit_zero_limit(pts)
        assert (s0, c2) == pytest.approx((3.0, 2.0), rel=1e-12)
        assert resid < 1e-12


class TestSignCrossing:
    def test_drude_intrinsic(self, cfg, drude):
        a0 = find_sign_crossing(drude, ZP.MODEL_INTRINSIC, 300.0, (1e-6, 8e-6), cfg)
        assert a0 == pytest.approx(4.1e-6, abs=0.3e-6)
        assert a0 == float(f"{a0:.3g}")

    @pytest.mark.parametrize("rule", ["plasma_intrinsic", "drude_eq9"])
    def test_none_when_positive(self, cfg, drude, plasma, rule):
        spec, prescription = (plasma, ZP.MODEL_INTRINSIC) if rule == "plasma_intrinsic" else (drude, ZP.IDEAL_METAL_RULE)
        assert find_sign_crossing(spec, prescription, 300.0, (1e-6, 8e-6), cfg) is None

    def test_bad_bracket(self, cfg, drude):
        with pytest.raises(DomainError):
            find_sign_crossing(drude, ZP.MODEL_INTRINSIC, 300.0, (8e-6, 1e-6), cfg)
