"""Brute-force reference for F_E and E_T.

Deliberately naive and independent of ``engine``: SI variables throughout, the
textbook Fresnel coefficients built from eps(i xi), ln(1 - r^2 e^{-2aq})
evaluated directly, composite Simpson rules on fixed grids, extended precision
(numpy longdouble). Slow but simple enough to audit by eye.
"""

from __future__ import annotations

import numpy as np

from .constants import C, HBAR, K_B
from .dielectric import DielectricSpec, Drude, IdealMetal, Plasma, Vacuum, gamma_of_T
from .reflection import ZeroFreqPrescription

LD = np.longdouble
Y_CUT = 200.0
L_CUT = 3000


def _simpson_weights(n: int, h) -> np.ndarray:
    if n % 2:
        raise ValueError("Simpson rule needs an even number of intervals")
    w = np.ones(n + 1, dtype=LD)
    w[1:-1:2] = 4
    w[2:-1:2] = 2
    return w * LD(h) / 3


def _eps(material: DielectricSpec, xi, T: float):
    """eps(i xi) for xi > 0 (longdouble); None for an ideal metal."""
    if isinstance(material, IdealMetal):
        return None
    if isinstance(material, Vacuum):
        return np.ones_like(xi)
    wp = LD(material.omega_p)
    if isinstance(material, Plasma):
        return 1 + wp**2 / xi**2
    g = LD(gamma_of_T(material.gamma, T))
    return 1 + wp**2 / (xi * (xi + g))


def _log_sum_positive(material, xi, q, a, T):
    """ln(1 - r_par^2 e^{-2aq}) + ln(1 - r_perp^2 e^{-2aq}) at xi > 0."""
    e = np.exp(-2 * LD(a) * q)
    eps = _eps(material, xi, T)
    if eps is None:
        r_par2 = r_perp2 = np.ones_like(q)
    else:
        kk = np.sqrt(q**2 + (eps - 1) * xi**2 / LD(C) ** 2)
        r_par2 = ((eps * q - kk) / (eps * q + kk)) ** 2
        r_perp2 = ((q - kk) / (q + kk)) ** 2
    return np.log(1 - r_par2 * e) + np.log(1 - r_perp2 * e)


def _zero_pair(material, prescription, kp, T):
    """(r_par^2, r_perp^2) at xi = 0 as functions of k_perp."""
    one = np.ones_like(kp)
    if isinstance(material, Vacuum):
        return 0 * one, 0 * one
    if isinstance(material, IdealMetal) or prescription is ZeroFreqPrescription.IDEAL_METAL_RULE:
        return one, one
    wp = LD(material.omega_p)
    c = LD(C)
    if isinstance(material, Drude):
        if prescription is ZeroFreqPrescription.MODEL_INTRINSIC:
            return one, 0 * one
        g = LD(gamma_of_T(material.gamma, T))
        root = np.sqrt(wp**2 * c * kp / (c * kp + g) + c**2 * kp**2)
    else:
        root = np.sqrt(wp**2 + c**2 * kp**2)
    return one, ((c * kp - root) / (c * kp + root)) ** 2


def _y_grid(y_min, n: int):
    """Nodes y = y_min + u^2 on u in [0, sqrt(Y_CUT - y_min)] and weights for dy."""
    u_max = np.sqrt(LD(Y_CUT) - y_min)
    u = np.linspace(LD(0), u_max, n + 1)
    w = _simpson_weights(n, u_max / n)
    return y_min + u**2, w * 2 * u


def _k_integral(material, xi, a, T, n: int) -> LD:
    """int_{y_min}^{Y_CUT} y [..] dy for one xi > 0."""
    xi = LD(xi)
    y_min = 2 * LD(a) * xi / LD(C)
    if y_min >= Y_CUT:
        return LD(0)
    y, w = _y_grid(y_min, n)
    q = y / (2 * LD(a))
    return np.sum(w * y * _log_sum_positive(material, np.full_like(q, xi), q, a, T))


def oracle_free_energy(a: float, T: float, material: DielectricSpec,
                       prescription: ZeroFreqPrescription = ZeroFreqPrescription.MODEL_INTRINSIC,
                       *, n_y: int = 4000, l_cut: int = L_CUT) -> float:
    """F_E [J/m^2] = (k_B T / 4 pi) sum_{l=-inf}^{inf} int k_perp dk_perp [..].

    Terms at l and -l coincide (they depend on |xi_l|), so each l >= 1 is counted twice.
    """
    a_ld = LD(a)
    y, w = _y_grid(LD(0), n_y)
    y, w = y[1:], w[1:]  # the y = 0 node has weight 0 and an integrand tending to 0
    kp = y / (2 * a_ld)
    rp2, rs2 = _zero_pair(material, prescription, kp, T)
    e = np.exp(-y)
    total = np.sum(w * y * (np.log(1 - rp2 * e) + np.log(1 - rs2 * e)))
    xi1 = 2 * np.pi * LD(K_B) * LD(T) / LD(HBAR)
    for l in range(1, l_cut + 1):
        term = _k_integral(material, l * xi1, a, T, n_y)
        if term == 0:
            break
        total += 2 * term
    # k_perp dk_perp = y dy / (4 a^2)
    return float(LD(K_B) * LD(T) / (4 * np.pi) * total / (4 * a_ld**2))


def oracle_zero_point_energy(a: float, T: float, material: DielectricSpec, *, n_x: int = 2000,
                             n_y: int = 2000) -> float:
    """E_T [J/m^2] = (hbar / 4 pi^2) int dxi int k_perp dk_perp [..], with gamma at T."""
    a_ld = LD(a)
    s_lo, s_hi = np.log(LD(1e-12)), np.log(LD(Y_CUT))
    s = np.linspace(s_lo, s_hi, n_x + 1)
    ws = _simpson_weights(n_x, (s_hi - s_lo) / n_x)
    x = np.exp(s)  # x = 2 a xi / c
    total = LD(0)
    for xv, wv in zip(x, ws):
        xi = xv * LD(C) / (2 * a_ld)
        total += wv * xv * _k_integral(material, xi, a, T, n_y)
    # dxi = c dx / (2a), k_perp dk_perp = y dy / (4 a^2)
    return float(LD(HBAR) / (4 * np.pi**2) * total * LD(C) / (2 * a_ld) / (4 * a_ld**2))
