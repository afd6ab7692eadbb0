import math

import pytest
from hypothesis import given, strategies as st

from thermocasimir import constants as k
from thermocasimir.dielectric import Drude, IdealMetal, Plasma, aluminum_drude
from thermocasimir.errors import DomainError
from thermocasimir.system import (
    Flag,
    PlateSystem,
    SpherePlate,
    derived_scales,
    effective_temperature,
)


def test_codata_values():
    c = k.CONSTANTS
    assert (c.hbar, c.c, c.k_B, c.eV) == (1.054571817e-34, 2.99792458e8, 1.380649e-23, 1.602176634e-19)
    assert c.zeta3 == pytest.approx(1.2020569031595942854, rel=1e-15)


def test_zeta3_against_series():
    import mpmath

    assert k.ZETA3 == float(mpmath.zeta(3))


class TestDerivedScales:
    def test_teff_at_2um(self):
        assert effective_temperature(2e-6) == pytest.approx(572.5, abs=0.1)

    def test_teff_definition_exact(self):
        a = 1.7e-6
        assert effective_temperature(a) * k.K_B * 2 * a == pytest.approx(k.HBAR * k.C, rel=1e-15)

    def test_doubling_a_halves_teff(self):
        assert effective_temperature(4e-6) == pytest.approx(effective_temperature(2e-6) / 2, rel=1e-15)

    def test_penetration_depth(self):
        s = derived_scales(PlateSystem(2e-6, 300.0, Plasma(1.9e16)))
        assert s.delta_0 == pytest.approx(1.578e-8, rel=1e-3)
        assert s.lambda_p == pytest.approx(9.92e-8, rel=1e-3)
        assert s.lambda_p == pytest.approx(2 * math.pi * s.delta_0, rel=1e-15)

    def test_ideal_metal_has_no_plasma_scales(self):
        s = derived_scales(PlateSystem(2e-6, 300.0, IdealMetal()))
        assert s.delta_0 is None and s.lambda_p is None
        assert s.T_eff > 0

    def test_pure(self):
        system = PlateSystem(2e-6, 300.0, aluminum_drude())
        assert derived_scales(system) == derived_scales(system)


class TestPlateSystem:
    @pytest.mark.parametrize("a, T", [(0.0, 1.0), (-1e-6, 1.0), (1e-6, -1.0), (float("nan"), 1.0)])
    def test_rejects_bad_inputs(self, a, T):
        with pytest.raises(DomainError):
            PlateSystem(a, T, IdealMetal())

    def test_sphere_warning(self):
        assert PlateSystem(1e-6, 0.0, IdealMetal(), geometry=SpherePlate(50e-6)).sphere_warning
        assert not PlateSystem(1e-6, 0.0, IdealMetal(), geometry=SpherePlate(100e-6)).sphere_warning
        assert not PlateSystem(1e-6, 0.0, IdealMetal()).sphere_warning

    def test_frozen(self):
        system = PlateSystem(1e-6, 0.0, IdealMetal())
        with pytest.raises(Exception):
            system.separation = 2e-6

    def test_flags_compose(self):
        both = Flag.CONDITION_THREE_VIOLATED | Flag.SPHERE_WARNING
        assert Flag.SPHERE_WARNING in both


@given(st.floats(1e-3, 1e3))
def test_entropy_unit_roundtrip(x):
    assert k.entropy_to_mev(k.entropy_from_mev(x)) == pytest.approx(x, rel=1e-12)


@given(st.floats(1e-3, 1e3))
def test_ev_roundtrip(x):
    assert k.rad_s_to_ev(k.ev_to_rad_s(x)) == pytest.approx(x, rel=1e-12)


def test_al_plasma_frequency():
    assert k.ev_to_rad_s(12.5) == pytest.approx(1.899e16, rel=1e-3)
