"""Gauss-Kronrod panel quadrature with a double-exponential rule for semi-infinite tails.

Integrands are vectorised: they receive a 1-D array of abscissae and return an
array of the same length (``integrate``), or a 2-D array with one row per
independent integral (``gk_batch`` / ``exp_sinh_batch``).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
import numpy as np

from .errors import NumericalFailure

EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


def _legendre_coeffs(n: int) -> list:
    """Monomial coefficients (ascending) of the Legendre polynomial P_n."""
    p0, p1 = [mpmath.mpf(1)], [mpmath.mpf(0), mpmath.mpf(1)]
    if n == 0:
        return p0
    for k in range(1, n):
        nxt = [mpmath.mpf(0)] * (k + 2)
        for i, c in enumerate(p1):
            nxt[i + 1] += (2 * k + 1) * c / (k + 1)
        for i, c in enumerate(p0):
            nxt[i] -= k * c / (k + 1)
        p0, p1 = p1, nxt
    return p1


def _polymul(p: list, q: list) -> list:
    out = [mpmath.mpf(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _moment(m: int):
    return mpmath.mpf(2) / (m + 1) if m % 2 == 0 else mpmath.mpf(0)


def _integrate_poly(p: list):
    return mpmath.fsum(c * _moment(m) for m, c in enumerate(p))


@functools.lru_cache(maxsize=None)
def kronrod_rule(n: int = 10) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes on [-1, 1] of the (2n+1)-point Kronrod extension of n-point Gauss-Legendre.

    Returns ``(nodes, kronrod_weights, gauss_weights)`` sorted by node; the Gauss
    weights are zero at the Kronrod-only nodes.
    """
    with mpmath.workdps(60):
        pn = _legendre_coeffs(n)
        legendre = [_legendre_coeffs(k) for k in range(n + 2)]
        # Stieltjes polynomial E_{n+1} = P_{n+1} + sum_k c_k P_k, orthogonal to
        # P_0..P_n under the sign-changing weight P_n.
        mat = mpmath.matrix(n + 1, n + 1)
        rhs = mpmath.matrix(n + 1, 1)
        for i in range(n + 1):
            wi = _polymul(pn, legendre[i])
            for j in range(n + 1):
                mat[i, j] = _integrate_poly(_polymul(wi, legendre[j]))
            rhs[i] = -_integrate_poly(_polymul(wi, legendre[n + 1]))
        coef = mpmath.lu_solve(mat, rhs)
        stieltjes = list(legendre[n + 1])
        for k in range(n + 1):
            for m, c in enumerate(legendre[k]):
                stieltjes[m] += coef[k] * c
        new_nodes = mpmath.polyroots(stieltjes[::-1], maxsteps=200, extraprec=200)
        new_nodes = [mpmath.re(z) for z in new_nodes]
        gauss_nodes = [mpmath.re(z) for z in mpmath.polyroots(pn[::-1], maxsteps=200, extraprec=200)]
        nodes = sorted(gauss_nodes + new_nodes)
        m = len(nodes)
        vander = mpmath.matrix(m, m)
        mom = mpmath.matrix(m, 1)
        for i in range(m):
            for j, x in enumerate(nodes):
                vander[i, j] = mpmath.legendre(i, x)
            mom[i] = 2 if i == 0 else 0
        wk = mpmath.lu_solve(vander, mom)
        wg = []
        for x in nodes:
            if any(abs(x - g) < mpmath.mpf(10) ** -40 for g in gauss_nodes):
                dp = mpmath.diff(lambda z: mpmath.legendre(n, z), x)
                wg.append(2 / ((1 - x**2) * dp**2))
            else:
                wg.append(mpmath.mpf(0))
        return (
            np.array([float(x) for x in nodes]),
            np.array([float(w) for w in wk]),
            np.array([float(w) for w in wg]),
        )


@functools.lru_cache(maxsize=None)
def exp_sinh_rule(step: float = 0.0625, u_lo: float = -4.0, u_hi: float = 2.5) -> tuple[np.ndarray, np.ndarray]:
    """Trapezoidal nodes/weights in u for s = exp(pi/2 sinh u), integrating over s in (0, inf)."""
    u = u_lo + step * np.arange(int(round((u_hi - u_lo) / step)) + 1)
    s = np.exp(0.5 * np.pi * np.sinh(u))
    w = step * 0.5 * np.pi * np.cosh(u) * s
    return s, w


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    n_nodes: int


def _panel_nodes(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    xk, _, _ = kronrod_rule()
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return centre[:, None] + half[:, None] * xk[None, :], half


def _gk_reduce(fv: np.ndarray, half: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """QUADPACK-style value/error from function values of shape (..., panels, 21)."""
    _, wk, wg = kronrod_rule()
    resk = fv @ wk
    resg = fv @ wg
    resabs = np.abs(fv) @ wk
    resasc = np.abs(fv - 0.5 * resk[..., None]) @ wk
    value = resk * half
    raw = np.abs((resk - resg) * half)
    resabs = resabs * np.abs(half)
    resasc = resasc * np.abs(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * raw / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (raw != 0.0), scaled, raw)
    err = np.maximum(err, 10.0 * EPS * resabs)
    return value, err


def gk_panels(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Apply the 21-point Gauss-Kronrod rule to each panel [lo_i, hi_i]."""
    nodes, half = _panel_nodes(lo, hi)
    fv = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return _gk_reduce(fv, half)


def gk_batch(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Integrate many integrands over one shared panel set.

    ``f`` receives all nodes as a flat array and returns ``(rows, nodes)``. The
    per-row totals and error estimates are returned.
    """
    nodes, half = _panel_nodes(lo, hi)
    fv = np.asarray(f(nodes.ravel()), dtype=float)
    rows = fv.shape[0]
    fv = fv.reshape(rows, *nodes.shape)
    value, err = _gk_reduce(fv, half)
    return value.sum(axis=1), err.sum(axis=1)


def exp_sinh_batch(f: Callable[[np.ndarray], np.ndarray], start: float) -> tuple[np.ndarray, np.ndarray]:
    """Integrate batched integrands over [start, inf); error from the half-step comparison."""
    s, w = exp_sinh_rule()
    fv = np.asarray(f(start + s), dtype=float)
    full = fv @ w
    half = fv[..., ::2] @ (2.0 * w[::2])
    return full, np.abs(full - half)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    *,
    rel_tol: float,
    abs_tol: float = 0.0,
    max_nodes: int = 4096,
) -> QuadResult:
    """Globally adaptive Gauss-Kronrod quadrature over consecutive breakpoints.

    A final breakpoint of ``inf`` adds a double-exponential tail on
    ``[breakpoints[-2], inf)``. Panels are bisected, worst first, until the summed
    error estimate meets ``max(abs_tol, rel_tol*|value|)``.
    """
    bp = [float(b) for b in breakpoints]
    tail_val = tail_err = 0.0
    n_tail = 0
    if math.isinf(bp[-1]):
        bp = bp[:-1]
        tv, te = exp_sinh_batch(lambda s: np.asarray(f(s))[None, :], bp[-1])
        tail_val, tail_err = float(tv[0]), float(te[0])
        n_tail = exp_sinh_rule()[0].size
    lo = np.array(bp[:-1])
    hi = np.array(bp[1:])
    vals, errs = gk_panels(f, lo, hi)
    n_nodes = 21 * lo.size + n_tail
    while True:
        value = math.fsum(vals) + tail_val
        error = math.fsum(errs) + tail_err
        tol = max(abs_tol, rel_tol * abs(value))
        if error <= tol or not np.isfinite(value):
            break
        pick = errs > max(tol - tail_err, 0.0) / errs.size
        pick[np.argmax(errs)] = True
        if n_nodes + 42 * int(pick.sum()) > max_nodes:
            raise NumericalFailure(
                "Gauss-Kronrod node budget exhausted",
                {"value": value, "error": error, "n_nodes": n_nodes, "tolerance": tol},
            )
        mid = 0.5 * (lo[pick] + hi[pick])
        if np.any((mid <= lo[pick]) | (mid >= hi[pick])):
            raise NumericalFailure(
                "panel width reached floating-point resolution",
                {"value": value, "error": error, "n_nodes": n_nodes},
            )
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        nv, ne = gk_panels(f, new_lo, new_hi)
        n_nodes += 21 * new_lo.size
        keep = ~pick
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], nv])
        errs = np.concatenate([errs[keep], ne])
        order = np.argsort(lo, kind="stable")
        lo, hi, vals, errs = lo[order], hi[order], vals[order], errs[order]
    if not np.isfinite(value):
        raise NumericalFailure("non-finite integrand", {"n_nodes": n_nodes})
    return QuadResult(value=value, error=error, n_nodes=n_nodes)
