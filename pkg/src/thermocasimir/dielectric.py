"""Permittivity on the imaginary frequency axis and the relaxation frequency gamma(T)."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from .constants import C, ev_to_rad_s
from .errors import ConfigurationError, DomainError

#: Al plasma frequency, 12.5 eV.
AL_OMEGA_P = ev_to_rad_s(12.5)
#: Al relaxation frequency at 300 K (anchor of the built-in table).
AL_GAMMA_300K = 9.6e13
#: Debye temperature of Al.
AL_DEBYE_T = 428.0

# Intrinsic (phonon) resistivity of pure Al in micro-ohm cm, residual part excluded.
# Points at 1, 4 and 10 K follow the T^5 law from the 20 K value.
_AL_RESISTIVITY = (
    (1.0, 0.000776 * (1.0 / 20.0) ** 5),
    (4.0, 0.000776 * (4.0 / 20.0) ** 5),
    (10.0, 0.000776 * (10.0 / 20.0) ** 5),
    (20.0, 0.000776),
    (50.0, 0.0478),
    (77.0, 0.215),
    (100.0, 0.442),
    (150.0, 1.006),
    (200.0, 1.587),
    (250.0, 2.157),
    (273.0, 2.417),
    (300.0, 2.733),
    (350.0, 3.305),
    (400.0, 3.87),
)


@dataclass(frozen=True)
class ConstantGamma:
    gamma: float

    def __post_init__(self):
        if not self.gamma >= 0.0:
            raise ConfigurationError(f"gamma must be non-negative, got {self.gamma}")


@dataclass(frozen=True)
class TableGamma:
    """Tabulated gamma(T), interpolated monotonically in log-log coordinates.

    Below the first point gamma follows ``T**low_exponent``; above the last point
    it is held constant.
    """

    temperatures: tuple[float, ...]
    gammas: tuple[float, ...]
    low_exponent: float = 5.0

    def __post_init__(self):
        t = np.asarray(self.temperatures, dtype=float)
        g = np.asarray(self.gammas, dtype=float)
        if t.size == 0:
            raise ConfigurationError("gamma table is empty")
        if t.shape != g.shape:
            raise ConfigurationError("gamma table columns differ in length")
        if np.any(t <= 0.0) or np.any(np.diff(t) <= 0.0):
            raise ConfigurationError("gamma table temperatures must be positive and strictly increasing")
        if np.any(g <= 0.0):
            raise ConfigurationError("gamma table values must be positive")
        if np.any(np.diff(g) < 0.0):
            raise ConfigurationError("gamma table values must be nondecreasing in T")
        if not 2.0 <= self.low_exponent <= 5.0:
            raise ConfigurationError("low-temperature exponent must lie in [2, 5]")

    @functools.cached_property
    def _interp(self):
        t = np.log(np.asarray(self.temperatures, dtype=float))
        g = np.log(np.asarray(self.gammas, dtype=float))
        if t.size == 1:
            return None
        return PchipInterpolator(t, g, extrapolate=False)

    def __call__(self, T: float) -> float:
        t0, g0 = self.temperatures[0], self.gammas[0]
        if T <= 0.0:
            return 0.0
        if T < t0:
            return g0 * (T / t0) ** self.low_exponent
        if T >= self.temperatures[-1] or self._interp is None:
            return self.gammas[-1] if T >= self.temperatures[-1] else g0
        i = int(np.searchsorted(self.temperatures, T))
        if self.temperatures[i] == T:
            return self.gammas[i]
        return float(np.exp(self._interp(math.log(T))))


@dataclass(frozen=True)
class BlochGruneisenGamma:
    """Two-regime closed form: gamma ~ T**n well below the Debye temperature, ~ T above.

    G(T) = u**n * (1 + u**6)**(-(n-1)/6) with u = 11*T/T_debye, normalised so
    that gamma(T_ref) = gamma_ref. The local log-slope stays within 1% of 1 above
    0.25*T_debye and within 3% of n below 0.05*T_debye.
    """

    gamma_ref: float
    T_ref: float
    T_debye: float
    exponent: int = 5

    _SHARPNESS = 6.0
    _KNEE = 11.0

    def __post_init__(self):
        if not (self.gamma_ref > 0.0 and self.T_ref > 0.0 and self.T_debye > 0.0):
            raise ConfigurationError("Bloch-Gruneisen parameters must be positive")
        if self.exponent not in (2, 3, 4, 5):
            raise ConfigurationError("Bloch-Gruneisen exponent must be an integer in [2, 5]")

    def shape(self, T: float) -> float:
        u = self._KNEE * T / self.T_debye
        n, q = self.exponent, self._SHARPNESS
        return u**n * (1.0 + u**q) ** (-(n - 1) / q)

    def __call__(self, T: float) -> float:
        if T <= 0.0:
            return 0.0
        return self.gamma_ref * self.shape(T) / self.shape(self.T_ref)


GammaProvider = Union[ConstantGamma, TableGamma, BlochGruneisenGamma]


@dataclass(frozen=True)
class IdealMetal:
    """Perfect conductor: epsilon -> infinity, both reflection coefficients equal 1."""


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise ConfigurationError("plasma frequency must be positive")


@dataclass(frozen=True)
class Drude:
    omega_p: float
    gamma: GammaProvider

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise ConfigurationError("plasma frequency must be positive")
        if isinstance(self.gamma, ConstantGamma):
            top = self.gamma.gamma
        elif isinstance(self.gamma, TableGamma):
            top = max(self.gamma.gammas)
        else:
            top = self.gamma.gamma_ref
        if top >= self.omega_p:
            raise ConfigurationError("relaxation frequency must stay below the plasma frequency")


@dataclass(frozen=True)
class Vacuum:
    """epsilon = 1 everywhere. Test double: nothing reflects."""


DielectricSpec = Union[IdealMetal, Plasma, Drude, Vacuum]


def gamma_of_T(provider: GammaProvider, T: float) -> float:
    """Relaxation frequency [rad/s] at temperature T [K]."""
    if T < 0.0:
        raise DomainError(f"temperature must be non-negative, got {T}")
    if isinstance(provider, ConstantGamma):
        return provider.gamma
    return float(provider(T))


def gamma_tilde(a: float, provider: GammaProvider, T: float) -> float:
    """Dimensionless relaxation frequency 2*a*gamma(T)/c."""
    if not a > 0.0:
        raise DomainError(f"separation must be positive, got {a}")
    return 2.0 * a * gamma_of_T(provider, T) / C


def material_gamma(spec: DielectricSpec, T: float) -> float:
    """gamma(T) for a Drude spec, 0 for the dissipationless models."""
    if isinstance(spec, Drude):
        return gamma_of_T(spec.gamma, T)
    return 0.0


def eps_imag_axis(spec: DielectricSpec, xi, T: float):
    """epsilon(i xi) for xi > 0. Returns ``inf`` for an ideal metal."""
    xi_arr = np.asarray(xi, dtype=float)
    if np.any(xi_arr <= 0.0):
        raise DomainError("eps_imag_axis needs xi > 0; the zero frequency goes through refl_sq_zero")
    if isinstance(spec, IdealMetal):
        out = np.full_like(xi_arr, np.inf)
    elif isinstance(spec, Vacuum):
        out = np.ones_like(xi_arr)
    elif isinstance(spec, Plasma):
        out = 1.0 + spec.omega_p**2 / xi_arr**2
    else:
        g = gamma_of_T(spec.gamma, T)
        out = 1.0 + spec.omega_p**2 / (xi_arr * (xi_arr + g))
    return float(out) if out.ndim == 0 else out


def satisfies_condition_three(spec: DielectricSpec) -> bool:
    """Whether xi^2 eps(i xi) tends to a nonzero constant as xi -> 0.

    True for the plasma and ideal-metal models; false for Drude (and vacuum). A
    Drude material therefore needs an explicit zero-frequency prescription.
    """
    return isinstance(spec, (IdealMetal, Plasma))


def plasma_frequency(spec: DielectricSpec) -> float | None:
    if isinstance(spec, (Plasma, Drude)):
        return spec.omega_p
    return None


def load_gamma_table(path: str | Path, low_exponent: float = 5.0) -> TableGamma:
    """Read a two-column ``T_kelvin gamma_rad_per_s`` text file ('#' starts a comment)."""
    temps, gammas = [], []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ConfigurationError(f"{path}:{lineno}: expected two columns")
        try:
            temps.append(float(parts[0]))
            gammas.append(float(parts[1]))
        except ValueError as exc:
            raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
    return TableGamma(tuple(temps), tuple(gammas), low_exponent)


def aluminum_gamma_table(low_exponent: float = 5.0) -> TableGamma:
    """Built-in Al gamma(T), scaled so that gamma(300 K) = 9.6e13 rad/s exactly."""
    rho_300 = dict(_AL_RESISTIVITY)[300.0]
    temps = tuple(t for t, _ in _AL_RESISTIVITY)
    gammas = tuple(AL_GAMMA_300K * rho / rho_300 for _, rho in _AL_RESISTIVITY)
    return TableGamma(temps, gammas, low_exponent)


def aluminum_drude(gamma: GammaProvider | None = None) -> Drude:
    return Drude(AL_OMEGA_P, gamma if gamma is not None else aluminum_gamma_table())


def aluminum_plasma() -> Plasma:
    return Plasma(AL_OMEGA_P)
