"""The acceptance suite, shared by ``thermocasimir validate`` and the test-suite.

Each check returns a ``CriterionResult`` with the measured quantities, the
target and the tolerance it was judged against.
"""

from __future__ import annotations

import math
import tempfile
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .constants import K_B, ZETA3, entropy_to_mev, ideal_energy, ideal_pressure
from .dielectric import AL_OMEGA_P, IdealMetal, aluminum_drude, aluminum_plasma
from .engine import QuadratureConfig, force_plates, free_energy, zero_point_energy
from .oracle import oracle_free_energy, oracle_zero_point_energy
from .reflection import ZeroFreqPrescription as ZP
from .system import PlateSystem, effective_temperature
from .thermo import (
    DEFAULT_NERNST_GRID,
    entropy,
    entropy_curve,
    entropy_lowT_plasma,
    entropy_zero_modified,
    find_sign_crossing,
    nernst_limit,
    s_offset_identity,
)

A2 = 2e-6


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    checks: tuple[Check, ...] = ()
    seconds: float = 0.0
    note: str = ""

    def as_dict(self) -> dict:
        d = asdict(self)
        for c in d["checks"]:
            c["measured"], c["expected"] = float(c["measured"]), float(c["expected"])
            c["passed"] = bool(c["passed"])
        d["passed"] = bool(d["passed"])
        return d

    def line(self) -> str:
        worst = ", ".join(f"{c.name}={c.measured:.6g} (target {c.expected:.6g} +/- {c.tolerance:.3g})"
                          for c in self.checks if not c.passed)
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.title}" + (f" :: {worst}" if worst else "")


def rel_check(name: str, measured: float, expected: float, rel: float) -> Check:
    ok = abs(measured - expected) <= rel * abs(expected)
    return Check(name, measured, expected, rel, bool(ok))


def abs_check(name: str, measured: float, expected: float, tol: float) -> Check:
    return Check(name, measured, expected, tol, bool(abs(measured - expected) <= tol))


def bool_check(name: str, value: bool, expected: bool = True) -> Check:
    return Check(name, float(value), float(expected), 0.0, value == expected)


def _done(number: int, title: str, checks: Sequence[Check], start: float, note: str = "") -> CriterionResult:
    return CriterionResult(number, title, all(c.passed for c in checks), tuple(checks),
                           time.perf_counter() - start, note)


# ---------------------------------------------------------------------------


def criterion_1(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    a = 1e-6
    system = PlateSystem(a, 0.0, IdealMetal())
    checks = [
        rel_check("E_ideal", zero_point_energy(system, cfg).value, ideal_energy(a), 1e-6),
        rel_check("P_ideal", force_plates(system, cfg).value, ideal_pressure(a), 1e-6),
    ]
    return _done(1, "ideal-metal zero-temperature energy and pressure", checks, t0)


def _limit(material, prescription, cfg, jobs) -> float:
    return nernst_limit(PlateSystem(A2, 1.0, material, prescription), cfg, DEFAULT_NERNST_GRID, jobs=jobs).S_limit


def criterion_2(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    drude = aluminum_drude()
    gap = _limit(drude, ZP.IDEAL_METAL_RULE, cfg, jobs) - _limit(drude, ZP.MODEL_INTRINSIC, cfg, jobs)
    checks = [rel_check("S_eq9_minus_S_eq8_T0_MeV", entropy_to_mev(gap), entropy_to_mev(s_offset_identity(A2)), 0.02)]
    return _done(2, "zero-temperature entropy offset between the Drude l=0 rules", checks, t0)


def criterion_3(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    drude = aluminum_drude()
    s1 = entropy_to_mev(_limit(drude, ZP.MODEL_INTRINSIC, cfg, jobs))
    s2 = entropy_to_mev(_limit(drude, ZP.IDEAL_METAL_RULE, cfg, jobs))
    analytic = entropy_to_mev(entropy_zero_modified(A2, AL_OMEGA_P))
    checks = [
        rel_check("S1_0_MeV", s1, -0.5, 0.05),
        rel_check("S2_0_MeV", s2, 0.016, 0.10),
        rel_check("S2_0_analytic_vs_numeric", analytic, s2, 0.05),
    ]
    return _done(3, "zero-temperature entropy landmarks at a = 2 um", checks, t0)


def criterion_4(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    drude = aluminum_drude()
    a_grid = np.round(np.arange(0.5, 3.9 + 1e-9, 0.1), 10)
    from .cli import evaluate_points  # lazy: cli imports this module for `validate`

    results = evaluate_points([PlateSystem(a * 1e-6, 300.0, drude) for a in a_grid], cfg, jobs)
    s_max = max(entropy_to_mev(r.entropy_S) for r, _ in results)
    crossing = find_sign_crossing(drude, ZP.MODEL_INTRINSIC, 300.0, (1e-6, 8e-6), cfg)
    checks = [
        Check("max_S_MeV_on_0.5_to_3.9_um", float(s_max), 0.0, 0.0, bool(s_max < 0.0)),
        abs_check("crossing_um", math.nan if crossing is None else crossing * 1e6, 4.1, 0.3),
    ]
    return _done(4, "negative entropy below the 300 K zero crossing (Drude, l=0 from the model)", checks, t0)


def criterion_5(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    cases = [
        ("plasma_intrinsic", aluminum_plasma(), ZP.MODEL_INTRINSIC, True),
        ("drude_eq10", aluminum_drude(), ZP.MODIFIED_TRANSVERSE, True),
        ("drude_eq8", aluminum_drude(), ZP.MODEL_INTRINSIC, False),
        ("drude_eq9", aluminum_drude(), ZP.IDEAL_METAL_RULE, False),
    ]
    checks = []
    for name, material, prescription, expected in cases:
        verdict = nernst_limit(PlateSystem(A2, 1.0, material, prescription), cfg, DEFAULT_NERNST_GRID, jobs=jobs)
        checks.append(bool_check(f"{name}_admissible", verdict.admissible, expected))
    return _done(5, "third-law verdicts per prescription", checks, t0)


def criterion_6(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    plasma = aluminum_plasma()
    curve = entropy_curve(PlateSystem(A2, 1.0, plasma), [5.0, 10.0, 15.0, 20.0, 25.0, 30.0], cfg, jobs)
    checks = []
    for p in curve:
        if p.T in (10.0, 20.0, 30.0):
            checks.append(rel_check(f"S_{p.T:g}K_vs_expansion", p.S, entropy_lowT_plasma(A2, p.T, AL_OMEGA_P), 0.02))
    ratios = [p.S / p.T**2 for p in curve]
    spread = max(ratios) / min(ratios)
    checks.append(Check("S_over_T2_max_min_5_to_30K", float(spread), 1.0, 0.1, bool(spread < 1.1)))
    return _done(6, "low-temperature plasma entropy follows the analytic T^2 law", checks, t0)


ORACLE_POINTS = (
    ("plasma_intrinsic_2um_300K", A2, 300.0, aluminum_plasma, ZP.MODEL_INTRINSIC),
    ("ideal_2um_100K", A2, 100.0, IdealMetal, ZP.MODEL_INTRINSIC),
    ("drude_eq10_2um_300K", A2, 300.0, aluminum_drude, ZP.MODIFIED_TRANSVERSE),
    ("drude_eq8_1um_150K", 1e-6, 150.0, aluminum_drude, ZP.MODEL_INTRINSIC),
    ("plasma_eq9_2um_20K", A2, 20.0, aluminum_plasma, ZP.IDEAL_METAL_RULE),
)


def criterion_7(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    checks = []
    for name, a, T, make, prescription in ORACLE_POINTS:
        material = make()
        system = PlateSystem(a, T, material, prescription)
        checks.append(rel_check(f"F_{name}", free_energy(system, cfg).value,
                                oracle_free_energy(a, T, material, prescription), 1e-6))
        checks.append(rel_check(f"E_{name}", zero_point_energy(system, cfg).value,
                                oracle_zero_point_energy(a, T, material), 1e-6))
    return _done(7, "engine matches the brute-force extended-precision oracle", checks, t0)


def criterion_8(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    t0 = time.perf_counter()
    ideal = IdealMetal()
    T_hot = 5000.0
    f_hot = free_energy(PlateSystem(A2, T_hot, ideal), cfg).value
    f_classical = -K_B * T_hot * ZETA3 / (8.0 * math.pi * A2**2)
    plateau = K_B * ZETA3 / (8.0 * math.pi * A2**2)
    s_hot = entropy(PlateSystem(A2, 20.0 * effective_temperature(A2), ideal), cfg).S
    checks = [
        rel_check("F_5000K_vs_classical", f_hot, f_classical, 0.01),
        rel_check("S_20Teff_vs_plateau_MeV", entropy_to_mev(s_hot), entropy_to_mev(plateau), 0.02),
    ]
    note = ("at T = 20 T_eff the exact ideal-metal entropy is plateau * (1 - pi^3 / (900 zeta(3))), "
            "2.87% below the plateau")
    return _done(8, "ideal-metal classical limit", checks, t0, note)


def criterion_9(cfg: QuadratureConfig, jobs: int = 1) -> CriterionResult:
    from .cli import RunConfig, cmd_figure

    t0 = time.perf_counter()
    rc = RunConfig(rel_tol=cfg.rel_tol, max_l=cfg.max_l, jobs=jobs)
    outputs, timings = [], []
    with tempfile.TemporaryDirectory() as tmp:
        for run in ("first", "second"):
            start = time.perf_counter()
            code = cmd_figure(3, Path(tmp) / run, rc)
            timings.append(time.perf_counter() - start)
            outputs.append((code, (Path(tmp) / run / "figure-3.csv").read_bytes()))
    rows = outputs[0][1].decode().count("\n") - outputs[0][1].decode().count("#") - 1
    checks = [
        bool_check("exit_code_zero", outputs[0][0] == 0 and outputs[1][0] == 0),
        bool_check("byte_identical", outputs[0][1] == outputs[1][1]),
        Check("data_rows", float(rows), 180.0, 0.0, rows >= 180),
        Check("seconds_first_run", timings[0], 300.0, 0.0, timings[0] < 300.0),
    ]
    return _done(9, "figure 3 output is deterministic and fast", checks, t0)


CRITERIA: dict[int, Callable[[QuadratureConfig, int], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(cfg: Optional[QuadratureConfig] = None, *, only: Optional[Sequence[int]] = None, jobs: int = 1,
            on_result: Optional[Callable[[CriterionResult], object]] = None) -> list[CriterionResult]:
    cfg = cfg or QuadratureConfig()
    numbers = sorted(CRITERIA) if not only else sorted(set(only))
    results = []
    for n in numbers:
        if n not in CRITERIA:
            from .errors import ConfigurationError

            raise ConfigurationError(f"no acceptance criterion {n}")
        res = CRITERIA[n](cfg, jobs)
        results.append(res)
        if on_result is not None:
            on_result(res)
    return results
