"""Squared reflection coefficients at Matsubara frequencies and at zero frequency.

Two layers live here. The SI functions (``refl_sq``, ``refl_sq_zero``) take
physical frequencies and wave numbers. The reduced kernels work in the
dimensionless variables the engine integrates over::

    x = 2 a xi / c      (frequency)
    y = 2 a q           (y >= x)
    t = y - x
    Omega = 2 a omega_p / c,   g = 2 a gamma / c

In those variables (eps - 1) x^2 = W with W = Omega^2 x / (x + g) for Drude and
W = Omega^2 for the plasma model, and 2 a k = sqrt(y^2 + W).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, K_B
from .dielectric import (
    DielectricSpec,
    Drude,
    IdealMetal,
    Plasma,
    Vacuum,
    eps_imag_axis,
    gamma_of_T,
)
from .errors import DomainError


class ZeroFreqPrescription(enum.Enum):
    """Rule fixing the l = 0 reflection coefficients.

    MODEL_INTRINSIC uses the xi -> 0 limit of the model itself: (1, 0) for Drude,
    the closed form with gamma = 0 for the plasma model. IDEAL_METAL_RULE sets both
    coefficients to 1. MODIFIED_TRANSVERSE keeps r_par^2 = 1 and uses the
    gamma-dependent transverse formula.
    """

    MODEL_INTRINSIC = "intrinsic"
    IDEAL_METAL_RULE = "eq9"
    MODIFIED_TRANSVERSE = "eq10"


@dataclass(frozen=True)
class ReflectionPair:
    r_par_sq: float
    r_perp_sq: float


@dataclass(frozen=True)
class WaveNumbers:
    q: float
    k: float


def matsubara_frequency(l: int, T: float) -> float:
    """xi_l = 2 pi l k_B T / hbar."""
    if not T > 0.0:
        raise DomainError("Matsubara frequencies need T > 0; use the continuous-frequency path at T = 0")
    if l < 0:
        raise DomainError("Matsubara index must be non-negative")
    return 2.0 * np.pi * l * K_B * T / HBAR


def violates_condition_three(spec: DielectricSpec, prescription: ZeroFreqPrescription) -> bool:
    """True for the Drude model with the unmodified zero-frequency term."""
    return isinstance(spec, Drude) and prescription is ZeroFreqPrescription.MODEL_INTRINSIC


def wave_numbers(spec: DielectricSpec, xi: float, k_perp: float, T: float) -> WaveNumbers:
    if xi <= 0.0:
        raise DomainError("wave_numbers needs xi > 0")
    if k_perp < 0.0:
        raise DomainError("k_perp must be non-negative")
    q = np.sqrt(xi**2 / C**2 + k_perp**2)
    eps = eps_imag_axis(spec, xi, T)
    k = np.inf if np.isinf(eps) else np.sqrt(eps * xi**2 / C**2 + k_perp**2)
    return WaveNumbers(float(q), float(k))


# ---------------------------------------------------------------------------
# reduced kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedMaterial:
    """Material parameters in units of the length ``2a`` (see module docstring)."""

    kind: str  # "ideal" | "plasma" | "drude" | "vacuum"
    omega: float = 0.0
    g: float = 0.0

    @classmethod
    def from_spec(cls, spec: DielectricSpec, length: float, T: float) -> "ReducedMaterial":
        """Reduce ``spec`` with ``length`` playing the role of 2a."""
        if isinstance(spec, IdealMetal):
            return cls("ideal")
        if isinstance(spec, Vacuum):
            return cls("vacuum")
        omega = length * spec.omega_p / C
        if isinstance(spec, Plasma):
            return cls("plasma", omega)
        return cls("drude", omega, length * gamma_of_T(spec.gamma, T) / C)

    def w(self, x):
        """(eps - 1) x^2 at reduced frequency x > 0."""
        if self.kind == "plasma":
            return np.full_like(np.asarray(x, dtype=float), self.omega**2)
        if self.kind == "vacuum":
            return np.zeros_like(np.asarray(x, dtype=float))
        return self.omega**2 * x / (x + self.g)


def reduced_coefficients(mat: ReducedMaterial, x, t):
    """Return (r_par, 1 - r_par, |r_perp|, 1 - |r_perp|) for x > 0, y = x + t.

    Differences are formed analytically so nothing cancels as eps -> 1 or
    eps -> infinity.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    y = x + t
    if mat.kind == "ideal":
        one = np.ones(np.broadcast(x, t).shape)
        return one, 0.0 * one, one, 0.0 * one
    w = mat.w(x)
    s = np.sqrt(y * y + w)
    ys = y + s
    r_perp = w / (ys * ys)
    one_m_perp = 2.0 * y / ys
    x2 = x * x
    inv_eps = x2 / (x2 + w)
    em1_over_eps = w / (x2 + w)
    den = y + s * inv_eps
    r_par = em1_over_eps * (y * y + t * (2.0 * x + t) * inv_eps) / (den * den)
    one_m_par = 2.0 * s * inv_eps / den
    return r_par, one_m_par, r_perp, one_m_perp


def reduced_zero_coefficients(mat: ReducedMaterial, prescription: ZeroFreqPrescription, y):
    """(r_par, 1 - r_par, |r_perp|, 1 - |r_perp|) at zero frequency, y = 2 a k_perp > 0."""
    y = np.asarray(y, dtype=float)
    one = np.ones_like(y)
    zero = np.zeros_like(y)
    if mat.kind == "ideal" or prescription is ZeroFreqPrescription.IDEAL_METAL_RULE:
        return one, zero, one, zero
    if mat.kind == "vacuum":
        return zero, one, zero, one
    if mat.kind == "drude" and prescription is ZeroFreqPrescription.MODEL_INTRINSIC:
        return one, zero, zero, one
    if mat.kind == "drude":
        w0 = mat.omega**2 * y / (y + mat.g)
    else:
        w0 = mat.omega**2 * one
    s = np.sqrt(y * y + w0)
    ys = y + s
    return one, zero, w0 / (ys * ys), 2.0 * y / ys


def _pair(coeffs) -> ReflectionPair:
    r_par, _, r_perp, _ = coeffs
    return ReflectionPair(float(r_par * r_par), float(r_perp * r_perp))


def refl_sq(spec: DielectricSpec, xi: float, k_perp: float, T: float) -> ReflectionPair:
    """Squared TM (parallel) and TE (perpendicular) reflection coefficients at xi > 0."""
    if xi <= 0.0:
        raise DomainError("refl_sq needs xi > 0; the zero frequency goes through refl_sq_zero")
    if k_perp < 0.0:
        raise DomainError("k_perp must be non-negative")
    q = np.sqrt(xi**2 / C**2 + k_perp**2)
    length = 1.0 / q  # makes y = 1
    mat = ReducedMaterial.from_spec(spec, length, T)
    x = length * xi / C
    return _pair(reduced_coefficients(mat, x, 1.0 - x))


def refl_sq_zero(
    spec: DielectricSpec,
    prescription: ZeroFreqPrescription,
    k_perp: float,
    T: float,
) -> ReflectionPair:
    """Zero-frequency reflection coefficients under ``prescription`` (k_perp > 0)."""
    if not k_perp > 0.0:
        raise DomainError("refl_sq_zero needs k_perp > 0")
    length = 1.0 / k_perp
    mat = ReducedMaterial.from_spec(spec, length, T)
    return _pair(reduced_zero_coefficients(mat, prescription, 1.0))
