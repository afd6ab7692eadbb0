"""Entropy, its low-temperature expansions and third-law diagnostics."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constants import C, K_B, ZETA3, entropy_to_mev
from .dielectric import DielectricSpec
from .engine import QuadratureConfig, ThermoResult, evaluate
from .errors import DomainError
from .reflection import ZeroFreqPrescription
from .system import PlateSystem, effective_temperature

#: Descending default grid for the T -> 0 extrapolation [K].
DEFAULT_NERNST_GRID = (8.0, 4.0, 2.0, 1.0, 0.5)
#: Lowest temperature the extrapolation accepts [K].
MIN_NERNST_T = 0.5
_FIT_POINTS = 4


@dataclass(frozen=True)
class EntropyCurvePoint:
    T: float
    S: float
    S_paper_units: float
    err: float

    @classmethod
    def from_result(cls, T: float, res: ThermoResult) -> "EntropyCurvePoint":
        return cls(T, res.entropy_S, entropy_to_mev(res.entropy_S), res.err_estimate / T)


@dataclass(frozen=True)
class NernstVerdict:
    S_limit: float
    admissible: bool
    negative_anywhere: bool
    details: tuple[EntropyCurvePoint, ...]
    threshold: float
    reliable: bool = True
    fit_residual: float = 0.0


def entropy(system: PlateSystem, cfg: QuadratureConfig | None = None) -> EntropyCurvePoint:
    """S = (E_T - F_E)/T from the matched evaluation of both energies."""
    if not system.temperature > 0.0:
        raise DomainError("entropy needs T > 0; use nernst_limit for the T -> 0 value")
    return EntropyCurvePoint.from_result(system.temperature, evaluate(system, cfg))


def _evaluate_at(args) -> ThermoResult:
    system, cfg = args
    return evaluate(system, cfg)


def evaluate_many(systems: Sequence[PlateSystem], cfg: QuadratureConfig | None = None,
                  jobs: int = 1) -> list[ThermoResult]:
    """``evaluate`` over independent systems; output order follows input order."""
    cfg = cfg or QuadratureConfig()
    work = [(s, cfg) for s in systems]
    if jobs <= 1 or len(work) < 2:
        return [_evaluate_at(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_evaluate_at, work))


def entropy_curve(system: PlateSystem, temperatures: Sequence[float], cfg: QuadratureConfig | None = None,
                  jobs: int = 1) -> list[EntropyCurvePoint]:
    """Entropy at each temperature, returned sorted by T."""
    temps = sorted(float(t) for t in temperatures)
    results = evaluate_many([system.with_(temperature=t) for t in temps], cfg, jobs)
    return [EntropyCurvePoint.from_result(t, r) for t, r in zip(temps, results)]


def _check_lowT_domain(a: float, T: float, omega_p: float) -> tuple[float, float]:
    if not a > 0.0:
        raise DomainError(f"separation must be positive, got {a}")
    if not omega_p > 0.0:
        raise DomainError("plasma frequency must be positive")
    if T < 0.0:
        raise DomainError(f"temperature must be non-negative, got {T}")
    t_eff = effective_temperature(a)
    if not T / t_eff < 0.3:
        raise DomainError(f"T/T_eff = {T / t_eff:.3g} violates T/T_eff < 0.3")
    lambda_p = 2.0 * math.pi * C / omega_p
    if a < lambda_p:
        raise DomainError(f"a = {a:.4g} m violates a >= lambda_p = {lambda_p:.4g} m")
    return T / t_eff, C / (a * omega_p)


def entropy_lowT_plasma(a: float, T: float, omega_p: float) -> float:
    """Low-temperature expansion of the plasma-model entropy [J/(m^2 K)].

    Through third order in T/T_eff and first order in delta_0/a.
    """
    tau, d = _check_lowT_domain(a, T, omega_p)
    c1 = math.pi**3 / (45.0 * ZETA3)
    brace = 1.0 - c1 * tau + 2.0 * d * (1.0 - 2.0 * c1 * tau)
    return K_B * ZETA3 / (8.0 * math.pi * a**2) * tau**2 * brace


def entropy_zero_modified(a: float, omega_p: float) -> float:
    """Residual T = 0 entropy when the transverse zero-frequency term is set to that of an ideal metal."""
    _, d = _check_lowT_domain(a, 0.0, omega_p)
    return K_B * ZETA3 / (4.0 * math.pi * a**2) * d * (1.0 - 3.0 * d)


def entropy_lowT_modified(a: float, T: float, omega_p: float) -> float:
    """entropy_zero_modified(a) + entropy_lowT_plasma(a, T)."""
    return entropy_zero_modified(a, omega_p) + entropy_lowT_plasma(a, T, omega_p)


def s_offset_identity(a: float) -> float:
    """k_B zeta(3) / (16 pi a^2): the T -> 0 entropy gap between the two Drude l = 0 rules.

    Half the coefficient of T in the ideal-metal zero-frequency term.
    """
    if not a > 0.0:
        raise DomainError(f"separation must be positive, got {a}")
    return K_B * ZETA3 / (16.0 * math.pi * a**2)


def nernst_threshold(a: float, fraction: float = 1e-3) -> float:
    return fraction * s_offset_identity(a)


def fit_zero_limit(points: Sequence[EntropyCurvePoint]) -> tuple[float, float, float]:
    """Least-squares S = S0 + c2 T^2. Returns (S0, c2, max |residual|)."""
    T = np.array([p.T for p in points])
    S = np.array([p.S for p in points])
    design = np.column_stack([np.ones_like(T), T**2])
    coef, *_ = np.linalg.lstsq(design, S, rcond=None)
    resid = S - design @ coef
    return float(coef[0]), float(coef[1]), float(np.max(np.abs(resid)))


def nernst_limit(system: PlateSystem, cfg: QuadratureConfig | None = None,
                 T_grid: Sequence[float] = DEFAULT_NERNST_GRID, *, threshold: Optional[float] = None,
                 jobs: int = 1) -> NernstVerdict:
    """Extrapolate S(T -> 0) and test it against the third law."""
    grid = [float(t) for t in T_grid]
    if len(grid) < 4:
        raise DomainError("the Nernst grid needs at least 4 temperatures")
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise DomainError("the Nernst grid must be strictly descending")
    if grid[-1] < MIN_NERNST_T:
        raise DomainError(f"the Nernst grid must stay at or above {MIN_NERNST_T} K")
    thr = nernst_threshold(system.separation) if threshold is None else threshold
    curve = entropy_curve(system, grid, cfg, jobs)
    s0, _, resid = fit_zero_limit(curve[:_FIT_POINTS])
    worst_err = max(p.err for p in curve[:_FIT_POINTS])
    return NernstVerdict(
        S_limit=s0,
        admissible=abs(s0) <= thr,
        negative_anywhere=any(p.S < -p.err for p in curve),
        details=tuple(curve),
        threshold=thr,
        reliable=resid <= max(worst_err, 1e-2 * thr),
        fit_residual=resid,
    )


def find_sign_crossing(model: DielectricSpec, prescription: ZeroFreqPrescription, T: float,
                       bracket: tuple[float, float], cfg: QuadratureConfig | None = None,
                       *, scan_points: int = 8) -> Optional[float]:
    """Separation [m] where S(a) changes sign at fixed T, to 3 significant figures; None if none found."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 < lo < hi:
        raise DomainError("bracket must satisfy 0 < lo < hi")
    if not T > 0.0:
        raise DomainError("find_sign_crossing needs T > 0")

    def s_of(a: float) -> float:
        return entropy(PlateSystem(a, T, model, prescription), cfg).S

    s_lo, s_hi = s_of(lo), s_of(hi)
    if s_lo * s_hi > 0.0:
        grid = np.geomspace(lo, hi, scan_points + 2)
        for a_next in grid[1:-1]:
            s_next = s_of(float(a_next))
            if s_lo * s_next <= 0.0:
                hi, s_hi = float(a_next), s_next
                break
            lo, s_lo = float(a_next), s_next
        else:
            return None
    if s_lo == 0.0:
        return lo
    if s_hi == 0.0:
        return hi
    while hi - lo > 5e-4 * lo:
        mid = 0.5 * (lo + hi)
        s_mid = s_of(mid)
        if s_mid == 0.0:
            return mid
        if s_lo * s_mid < 0.0:
            hi = mid
        else:
            lo, s_lo = mid, s_mid
    return float(f"{0.5 * (lo + hi):.3g}")
