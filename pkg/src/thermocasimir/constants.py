"""Physical constants and the handful of unit conversions used at the I/O boundary.

Everything inside the package is SI (m, s, K, J, rad/s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    c: float = 2.99792458e8
    k_B: float = 1.380649e-23
    eV: float = 1.602176634e-19
    zeta3: float = 1.2020569031595942854


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
C = CONSTANTS.c
K_B = CONSTANTS.k_B
EV = CONSTANTS.eV
ZETA3 = CONSTANTS.zeta3

#: 1 MeV in joules; entropy is quoted in MeV m^-2 K^-1.
MEV = 1.0e6 * EV


def ev_to_rad_s(value_ev: float) -> float:
    """Angular frequency [rad/s] for an energy quantum hbar*omega given in eV."""
    return value_ev * EV / HBAR


def rad_s_to_ev(omega: float) -> float:
    return omega * HBAR / EV


def entropy_to_mev(s_si: float) -> float:
    """J m^-2 K^-1 -> MeV m^-2 K^-1."""
    return s_si / MEV


def entropy_from_mev(s_mev: float) -> float:
    return s_mev * MEV


def ideal_energy(a: float) -> float:
    """Zero-temperature energy per area between ideal-metal plates, J/m^2."""
    return -math.pi**2 * HBAR * C / (720.0 * a**3)


def ideal_pressure(a: float) -> float:
    """Zero-temperature pressure between ideal-metal plates, Pa (negative = attraction)."""
    return -math.pi**2 * HBAR * C / (240.0 * a**4)
