"""Matsubara free energy, zero-point energy and forces between plates.

All integrals are done in reduced variables (see ``reflection``): x = 2a xi/c and
y = 2a q. With P = hbar c / (32 pi^2 a^3) and h = 2 pi T / T_eff,

    F_E = P h [J(0)/2 + sum_{l>=1} J(l h)],     E_T = P * int_0^inf J(x) dx,
    J(x) = int_x^inf y [ln(1 - r_par^2 e^-y) + ln(1 - r_perp^2 e^-y)] dy.

F_E and E_T share the evaluator for J, so the entropy (E_T - F_E)/T is a
sum-minus-integral of one function and quadrature bias largely cancels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import C, HBAR, ZETA3
from .errors import DomainError, NumericalFailure
from .quadrature import exp_sinh_batch, gk_batch, integrate
from .reflection import (
    ReducedMaterial,
    ZeroFreqPrescription,
    reduced_coefficients,
    reduced_zero_coefficients,
    violates_condition_three,
)
from .system import Flag, PlateSystem, SpherePlate, effective_temperature


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol_energy: float = 1e-22
    max_l: int = 100_000
    tail_consecutive: int = 3
    max_nodes_per_integral: int = 4096

    def __post_init__(self):
        if not 1e-14 < self.rel_tol < 1e-3:
            raise DomainError("rel_tol must lie in (1e-14, 1e-3)")
        if self.max_l < 10:
            raise DomainError("max_l must be at least 10")
        if self.tail_consecutive < 1:
            raise DomainError("tail_consecutive must be at least 1")
        if self.abs_tol_energy < 0.0:
            raise DomainError("abs_tol_energy must be non-negative")

    @property
    def inner_rel_tol(self) -> float:
        return max(1e-13, 1e-4 * self.rel_tol)


@dataclass(frozen=True)
class EngineResult:
    value: float
    err_estimate: float
    l_max_used: int = 0
    flags: Flag = Flag.NONE


@dataclass(frozen=True)
class ThermoResult:
    free_energy_F: float
    zero_point_E: float
    entropy_S: float
    l_max_used: int
    err_estimate: float
    flags: Flag = Flag.NONE


class Kernel(enum.Enum):
    ENERGY = "energy"
    FORCE = "force"


# Terms below this fraction of the partial sum are dropped in matched mode.
MATCHED_REL_TOL = 1e-18

_INNER_TOP = (1.0, 2.0, 4.0, 8.0, 16.0, 24.0, 32.0, 40.0, 50.0, 60.0)
_OUTER_TOP = _INNER_TOP
_INNER_MAX_DEPTH = 44
_OUTER_DEPTH = 56
_ROW_CHUNK = 384


def log1m(u, one_minus_u):
    """ln(1 - u), via log1p(-u) for u < 0.5 and ln(one_minus_u) above.

    ``one_minus_u`` must be supplied in a cancellation-free form.
    """
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(u < 0.5, np.log1p(-u), np.log(one_minus_u))


def _pol_terms(r, one_m_r, y, kernel):
    em1 = np.expm1(-y)
    r2 = r * r
    u = r2 * np.exp(-y)
    one_m_u = one_m_r * (1.0 + r) - r2 * em1
    if kernel is Kernel.ENERGY:
        return log1m(u, one_m_u)
    return u / one_m_u


def _integrand(mat: ReducedMaterial, x, t, kernel: Kernel):
    """y * [..] (energy) or y^2 * [..] (force) at reduced frequency x > 0."""
    y = x + t
    rp, omp, rs, oms = reduced_coefficients(mat, x, t)
    total = _pol_terms(rp, omp, y, kernel) + _pol_terms(rs, oms, y, kernel)
    return y * total if kernel is Kernel.ENERGY else y * y * total


def _zero_integrand(mat: ReducedMaterial, prescription: ZeroFreqPrescription, y, kernel: Kernel):
    rp, omp, rs, oms = reduced_zero_coefficients(mat, prescription, y)
    total = _pol_terms(rp, omp, y, kernel) + _pol_terms(rs, oms, y, kernel)
    return y * total if kernel is Kernel.ENERGY else y * y * total


def _graded_edges(depth: int, top) -> list[float]:
    return [0.0] + [2.0**-k for k in range(depth, 0, -1)] + list(top)


def _inner_depth(x: np.ndarray) -> np.ndarray:
    # smallest panel [0, 2^-d] no wider than x/2: keeps the y = 0 singularity
    # (at t = -x) well outside every panel
    with np.errstate(divide="ignore"):
        d = np.ceil(np.log2(2.0 / x))
    return np.clip(np.nan_to_num(d, posinf=_INNER_MAX_DEPTH), 1, _INNER_MAX_DEPTH).astype(int)


def inner_integral(mat: ReducedMaterial, x, kernel: Kernel = Kernel.ENERGY, *, rel_tol: float = 1e-13,
                   max_nodes: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """J(x) (energy) or K(x) (force) for an array of reduced frequencies x > 0.

    Returns values and error estimates. Rows share a fixed graded panel set and
    are refined individually only if their estimate misses ``rel_tol``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= 0.0):
        raise DomainError("inner_integral needs x > 0; use zero_frequency_integral at x = 0")
    vals = np.empty_like(x)
    errs = np.empty_like(x)
    depths = _inner_depth(x)
    for d in np.unique(depths):
        edges = np.array(_graded_edges(int(d), _INNER_TOP))
        lo, hi = edges[:-1], edges[1:]
        rows = np.nonzero(depths == d)[0]
        for start in range(0, rows.size, _ROW_CHUNK):
            idx = rows[start:start + _ROW_CHUNK]
            xr = x[idx][:, None]

            def f(t, xr=xr):
                return _integrand(mat, xr, t[None, :], kernel)

            v, e = gk_batch(f, lo, hi)
            tv, te = exp_sinh_batch(f, _INNER_TOP[-1])
            vals[idx] = v + tv
            errs[idx] = e + te
    bad = np.nonzero(~(errs <= rel_tol * np.abs(vals) + 1e-300))[0]
    for i in bad:
        xi = float(x[i])
        res = integrate(
            lambda t: _integrand(mat, xi, t, kernel),
            _graded_edges(int(depths[i]), _INNER_TOP) + [math.inf],
            rel_tol=rel_tol,
            max_nodes=max_nodes,
        )
        vals[i], errs[i] = res.value, res.error
    return vals, errs


def zero_frequency_integral(mat: ReducedMaterial, prescription: ZeroFreqPrescription,
                            kernel: Kernel = Kernel.ENERGY, *, rel_tol: float = 1e-13,
                            max_nodes: int = 4096) -> tuple[float, float]:
    """J(0) or K(0) with the zero-frequency coefficients fixed by ``prescription``."""
    res = integrate(
        lambda y: _zero_integrand(mat, prescription, y, kernel),
        _graded_edges(_INNER_MAX_DEPTH, _INNER_TOP) + [math.inf],
        rel_tol=rel_tol,
        max_nodes=max_nodes,
    )
    return res.value, res.error


# ---------------------------------------------------------------------------
# system-level helpers
# ---------------------------------------------------------------------------


def _reduced(system: PlateSystem) -> ReducedMaterial:
    return ReducedMaterial.from_spec(system.material, 2.0 * system.separation, system.temperature)


def _flags(system: PlateSystem) -> Flag:
    flags = Flag.NONE
    if violates_condition_three(system.material, system.prescription):
        flags |= Flag.CONDITION_THREE_VIOLATED
    if system.sphere_warning:
        flags |= Flag.SPHERE_WARNING
    return flags


def _prefactor(a: float) -> float:
    """hbar c / (32 pi^2 a^3): converts reduced double integrals to J/m^2."""
    return HBAR * C / (32.0 * math.pi**2 * a**3)


def _step(system: PlateSystem) -> float:
    """Reduced Matsubara spacing h = 2a xi_1 / c = 2 pi T / T_eff."""
    return 2.0 * math.pi * system.temperature / effective_temperature(system.separation)


def _require_positive_T(system: PlateSystem):
    if not system.temperature > 0.0:
        raise DomainError("the Matsubara sum needs T > 0; use zero_point_energy for T = 0")


@dataclass(frozen=True)
class _SumResult:
    total: float  # reduced: J(0)/2 + sum J(l h)
    error: float
    l_last: int


def _matsubara_sum(system: PlateSystem, cfg: QuadratureConfig, kernel: Kernel, threshold: float) -> _SumResult:
    mat = _reduced(system)
    h = _step(system)
    j0, e0 = zero_frequency_integral(mat, system.prescription, kernel,
                                     rel_tol=cfg.inner_rel_tol, max_nodes=cfg.max_nodes_per_integral)
    terms = [0.5 * j0]
    errors = [0.5 * e0]
    partial = 0.5 * j0
    quiet = 0
    block = int(min(1024, max(16, math.ceil(48.0 / h))))
    l = 1
    while True:
        if l > cfg.max_l:
            raise NumericalFailure(
                f"Matsubara sum not converged by l = {cfg.max_l}",
                {"partial_sum": partial, "l_max": cfg.max_l},
            )
        ls = np.arange(l, min(l + block, cfg.max_l + 1))
        vals, errs = inner_integral(mat, h * ls, kernel, rel_tol=cfg.inner_rel_tol,
                                    max_nodes=cfg.max_nodes_per_integral)
        done = False
        for v, e in zip(vals.tolist(), errs.tolist()):
            terms.append(v)
            errors.append(e)
            partial += v
            quiet = quiet + 1 if abs(v) <= threshold * abs(partial) else 0
            if quiet >= cfg.tail_consecutive:
                done = True
                break
        l = len(terms)  # next unevaluated index
        if done:
            break
    l_last = len(terms) - 1
    last, prev = abs(terms[-1]), abs(terms[-2])
    ratio = last / prev if prev > 0.0 else 0.0
    tail = last * ratio / (1.0 - ratio) if ratio < 1.0 else last * l_last
    total = math.fsum(terms)
    return _SumResult(total, math.fsum(errors) + tail, l_last)


def _continuous_integral(system: PlateSystem, cfg: QuadratureConfig, kernel: Kernel) -> tuple[float, float]:
    """int_0^inf J(x) dx (or K) with gamma at the system temperature."""
    mat = _reduced(system)
    inner_err = []

    def f(x):
        v, e = inner_integral(mat, x, kernel, rel_tol=cfg.inner_rel_tol, max_nodes=cfg.max_nodes_per_integral)
        inner_err.append(float(np.max(np.abs(e) / np.maximum(np.abs(v), 1e-300))))
        return v

    res = integrate(f, _graded_edges(_OUTER_DEPTH, _OUTER_TOP) + [math.inf],
                    rel_tol=cfg.inner_rel_tol, max_nodes=cfg.max_nodes_per_integral)
    return res.value, res.error + max(inner_err) * abs(res.value)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def matsubara_term(system: PlateSystem, l: int, cfg: QuadratureConfig | None = None) -> float:
    """The l-th term of the one-sided Matsubara sum for F_E, J/m^2 (weight 1/2 at l = 0)."""
    cfg = cfg or QuadratureConfig()
    _require_positive_T(system)
    if l < 0:
        raise DomainError("Matsubara index must be non-negative")
    mat = _reduced(system)
    scale = _prefactor(system.separation) * _step(system)
    if l == 0:
        j0, _ = zero_frequency_integral(mat, system.prescription, rel_tol=cfg.inner_rel_tol,
                                        max_nodes=cfg.max_nodes_per_integral)
        return 0.5 * scale * j0
    v, _ = inner_integral(mat, _step(system) * l, rel_tol=cfg.inner_rel_tol, max_nodes=cfg.max_nodes_per_integral)
    return scale * float(v[0])


def free_energy(system: PlateSystem, cfg: QuadratureConfig | None = None, *, matched: bool = False) -> EngineResult:
    """Casimir free energy per unit area F_E [J/m^2].

    The l-sum stops once ``cfg.tail_consecutive`` successive terms are each below
    ``cfg.rel_tol`` times the partial sum; a geometric bound on the omitted tail
    goes into ``err_estimate``. ``matched=True`` runs the sum essentially to
    exhaustion, as the entropy needs.
    """
    cfg = cfg or QuadratureConfig()
    _require_positive_T(system)
    threshold = MATCHED_REL_TOL if matched else cfg.rel_tol
    res = _matsubara_sum(system, cfg, Kernel.ENERGY, threshold)
    scale = _prefactor(system.separation) * _step(system)
    return EngineResult(scale * res.total, scale * res.error, res.l_last, _flags(system))


def zero_point_energy(system: PlateSystem, cfg: QuadratureConfig | None = None) -> EngineResult:
    """E_T [J/m^2]: the continuous-frequency energy with eps evaluated at gamma(T)."""
    cfg = cfg or QuadratureConfig()
    value, err = _continuous_integral(system, cfg, Kernel.ENERGY)
    p = _prefactor(system.separation)
    return EngineResult(p * value, p * err, 0, _flags(system) & ~Flag.CONDITION_THREE_VIOLATED)


def force_plates(system: PlateSystem, cfg: QuadratureConfig | None = None) -> EngineResult:
    """Pressure -dF/da [Pa]; negative means attraction. T = 0 uses the continuous integral."""
    cfg = cfg or QuadratureConfig()
    a = system.separation
    if system.temperature == 0.0:
        value, err = _continuous_integral(system, cfg, Kernel.FORCE)
        p = _prefactor(a) / a
        return EngineResult(-p * value, p * err, 0, _flags(system))
    res = _matsubara_sum(system, cfg, Kernel.FORCE, cfg.rel_tol)
    p = _prefactor(a) * _step(system) / a
    return EngineResult(-p * res.total, p * res.error, res.l_last, _flags(system))


def force_sphere_plate(system: PlateSystem, cfg: QuadratureConfig | None = None) -> EngineResult:
    """Force on a sphere of radius R >> a near a plate: 2 pi R times the plate energy [N]."""
    if not isinstance(system.geometry, SpherePlate):
        raise DomainError("force_sphere_plate needs a SpherePlate geometry")
    cfg = cfg or QuadratureConfig()
    factor = 2.0 * math.pi * system.geometry.radius
    if system.temperature == 0.0:
        base = zero_point_energy(system, cfg)
        flags = base.flags
    else:
        base = free_energy(system, cfg)
        flags = base.flags
    return EngineResult(factor * base.value, factor * base.err_estimate, base.l_max_used, flags | _flags(system))


def evaluate(system: PlateSystem, cfg: QuadratureConfig | None = None) -> ThermoResult:
    """F_E, E_T and S = (E_T - F_E)/T from one shared evaluator of J."""
    cfg = cfg or QuadratureConfig()
    _require_positive_T(system)
    p = _prefactor(system.separation)
    h = _step(system)
    e_red, e_err = _continuous_integral(system, cfg, Kernel.ENERGY)
    s = _matsubara_sum(system, cfg, Kernel.ENERGY, MATCHED_REL_TOL)
    diff = e_red - h * s.total
    err = p * (e_err + h * s.error)
    return ThermoResult(
        free_energy_F=p * h * s.total,
        zero_point_E=p * e_red,
        entropy_S=p * diff / system.temperature,
        l_max_used=s.l_last,
        err_estimate=err,
        flags=_flags(system),
    )


def ideal_classical_free_energy(a: float, T: float) -> float:
    """High-temperature limit -k_B T zeta(3) / (8 pi a^2) for ideal metals."""
    from .constants import K_B

    return -K_B * T * ZETA3 / (8.0 * math.pi * a**2)
