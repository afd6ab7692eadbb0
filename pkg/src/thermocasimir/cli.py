"""Command-line front end: sweeps, figure presets, single points and the validation suite.

Configuration comes from an optional flat ``key=value`` file ('#' starts a
comment) overridden by command-line flags. Every flag has a file key of the
same name with dashes replaced by underscores (``--a-um`` -> ``a_um``).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .constants import entropy_to_mev, ev_to_rad_s
from .dielectric import (
    AL_OMEGA_P,
    ConstantGamma,
    DielectricSpec,
    Drude,
    IdealMetal,
    Plasma,
    aluminum_gamma_table,
    gamma_of_T,
    gamma_tilde,
    load_gamma_table,
)
from .engine import QuadratureConfig, ThermoResult, evaluate, zero_point_energy
from .errors import CasimirError, ConfigurationError, NumericalFailure
from .reflection import ZeroFreqPrescription
from .system import Flag, PlateSystem
from .thermo import (
    DEFAULT_NERNST_GRID,
    entropy_zero_modified,
    find_sign_crossing,
    nernst_limit,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_CRITERIA = 3

CSV_COLUMNS = (
    "a_m", "T_K", "F_E_J_per_m2", "E_T_J_per_m2", "S_J_per_m2_K", "S_MeV_per_m2_K",
    "model", "prescription", "l_max_used", "err_estimate", "diagnostic",
)
GAMMA_COLUMNS = ("a_m", "T_K", "gamma_rad_s", "gamma_tilde")

MODELS = ("ideal", "plasma", "drude")
PRESCRIPTIONS = tuple(p.value for p in ZeroFreqPrescription)
SWEEPS = ("a", "T", "gamma")


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration after merging file and flags."""

    model: str = "drude"
    prescription: str = "intrinsic"
    a_um: float = 2.0
    T_K: float = 300.0
    omega_p_rad_s: float = AL_OMEGA_P
    gamma_rad_s: Optional[float] = None
    gamma_table: Optional[str] = None
    rel_tol: float = 1e-9
    max_l: int = 100_000
    jobs: int = 1
    sweep: str = "T"
    start: Optional[float] = None
    stop: Optional[float] = None
    count: int = 60
    spacing: str = "linear"
    out: Optional[str] = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigurationError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.prescription not in PRESCRIPTIONS:
            raise ConfigurationError(f"prescription must be one of {PRESCRIPTIONS}, got {self.prescription!r}")
        if self.sweep not in SWEEPS:
            raise ConfigurationError(f"sweep must be one of {SWEEPS}, got {self.sweep!r}")
        if self.spacing not in ("linear", "log"):
            raise ConfigurationError("spacing must be 'linear' or 'log'")
        if not self.a_um > 0.0:
            raise ConfigurationError("a_um must be positive")
        if not self.T_K >= 0.0:
            raise ConfigurationError("T_K must be non-negative")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be at least 1")

    def quadrature(self) -> QuadratureConfig:
        try:
            return QuadratureConfig(rel_tol=self.rel_tol, max_l=self.max_l)
        except CasimirError as exc:
            raise ConfigurationError(str(exc)) from None

    def material(self) -> DielectricSpec:
        if self.model == "ideal":
            return IdealMetal()
        if self.model == "plasma":
            return Plasma(self.omega_p_rad_s)
        if self.gamma_table:
            provider = load_gamma_table(self.gamma_table)
        elif self.gamma_rad_s is not None:
            provider = ConstantGamma(self.gamma_rad_s)
        else:
            provider = aluminum_gamma_table()
        return Drude(self.omega_p_rad_s, provider)

    def system(self, *, a_um: Optional[float] = None, T_K: Optional[float] = None,
               prescription: Optional[str] = None) -> PlateSystem:
        return PlateSystem(
            separation=(self.a_um if a_um is None else a_um) * 1e-6,
            temperature=self.T_K if T_K is None else T_K,
            material=self.material(),
            prescription=ZeroFreqPrescription(prescription or self.prescription),
        )

    def grid(self) -> np.ndarray:
        if self.start is None or self.stop is None:
            raise ConfigurationError("a sweep needs start and stop")
        if not 0.0 < self.start < self.stop:
            raise ConfigurationError("a sweep needs 0 < start < stop")
        if self.count < 2:
            raise ConfigurationError("a sweep needs count >= 2")
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def with_prescription(self, prescription: str) -> "RunConfig":
        return RunConfig(**{**asdict(self), "prescription": prescription})

    def echo(self) -> list[str]:
        """'# key=value' provenance lines; output location and worker count never change the numbers."""
        return [f"# {k}={_fmt_value(v)}" for k, v in sorted(asdict(self).items()) if k not in ("out", "jobs")]


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


# ---------------------------------------------------------------------------
# configuration parsing
# ---------------------------------------------------------------------------

_FLOAT_KEYS = {"a_um", "T_K", "omega_p_rad_s", "gamma_rad_s", "rel_tol", "start", "stop"}
_INT_KEYS = {"max_l", "jobs", "count"}
_EV_KEYS = {"omega_p_ev": "omega_p_rad_s", "gamma_ev": "gamma_rad_s"}


def parse_config_text(text: str, origin: str = "<config>") -> dict:
    """Parse flat ``key=value`` text into RunConfig field values."""
    names = {f.name for f in fields(RunConfig)}
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{origin}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out.update(_coerce(key, value, names, f"{origin}:{lineno}"))
    return out


def _coerce(key: str, value: str, names: set, where: str) -> dict:
    if key not in names and key not in _EV_KEYS:
        raise ConfigurationError(f"{where}: unknown key {key!r}")
    try:
        if key in _EV_KEYS:
            return {_EV_KEYS[key]: ev_to_rad_s(float(value))}
        if key in _FLOAT_KEYS:
            return {key: float(value)}
        if key in _INT_KEYS:
            return {key: int(value)}
    except ValueError:
        raise ConfigurationError(f"{where}: bad value {value!r} for {key}") from None
    return {key: value or None}


def build_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file: {exc}") from None
        values.update(parse_config_text(text, args.config))
    for key in ("model", "prescription", "a_um", "T_K", "omega_p_rad_s", "gamma_rad_s", "gamma_table",
                "rel_tol", "max_l", "jobs", "sweep", "start", "stop", "count", "spacing", "out"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    for key, target in _EV_KEYS.items():
        v = getattr(args, key, None)
        if v is not None:
            values[target] = ev_to_rad_s(v)
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# evaluation and CSV
# ---------------------------------------------------------------------------


def _point_worker(args) -> tuple[Optional[ThermoResult], str]:
    system, cfg = args
    try:
        if system.temperature == 0.0:
            e = zero_point_energy(system, cfg)
            return ThermoResult(e.value, e.value, math.nan, 0, e.err_estimate, e.flags), "T=0: entropy undefined"
        return evaluate(system, cfg), ""
    except NumericalFailure as exc:
        return None, f"numerical failure: {exc}"
    except CasimirError as exc:
        return None, f"error: {exc}"


def evaluate_points(systems: Sequence[PlateSystem], cfg: QuadratureConfig, jobs: int = 1):
    work = [(s, cfg) for s in systems]
    if jobs <= 1 or len(work) < 2:
        return [_point_worker(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_point_worker, work))


def _num(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan"
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.12g}"


def csv_row(system: PlateSystem, model: str, res: Optional[ThermoResult], diagnostic: str) -> str:
    prescription = system.prescription.value
    if res is None:
        nums = [system.separation, system.temperature] + [math.nan] * 4
        tail = [model, prescription, "nan", "nan", diagnostic]
    else:
        flags = ";".join(f.name for f in (Flag.CONDITION_THREE_VIOLATED, Flag.SPHERE_WARNING) if f in res.flags)
        nums = [system.separation, system.temperature, res.free_energy_F, res.zero_point_E,
                res.entropy_S, entropy_to_mev(res.entropy_S)]
        notes = ";".join(s for s in (flags, diagnostic) if s)
        tail = [model, prescription, _num(res.l_max_used), _num(res.err_estimate), notes]
    return ",".join([_num(v) for v in nums] + tail)


def write_csv(stream: TextIO, header: Iterable[str], columns: Sequence[str], rows: Iterable[str]):
    for line in header:
        stream.write(line + "\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(row + "\n")


def _open_out(path: Optional[str]) -> TextIO:
    if path is None or path == "-":
        return sys.stdout
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise ConfigurationError(f"cannot write {path}: {exc}") from None


def _systems_for_sweep(rc: RunConfig) -> list[PlateSystem]:
    grid = rc.grid()
    if rc.sweep == "a":
        return [rc.system(a_um=float(v)) for v in grid]
    return [rc.system(T_K=float(v)) for v in grid]


def gamma_rows(rc: RunConfig, temperatures: Sequence[float]) -> list[str]:
    material = rc.material()
    if not isinstance(material, Drude):
        raise ConfigurationError("the gamma curve needs model=drude")
    a = rc.a_um * 1e-6
    rows = []
    for T in temperatures:
        g = gamma_of_T(material.gamma, float(T))
        rows.append(",".join(_num(v) for v in (a, float(T), g, gamma_tilde(a, material.gamma, float(T)))))
    return rows


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_sweep(rc: RunConfig, stream: Optional[TextIO] = None) -> int:
    out = stream or _open_out(rc.out)
    try:
        if rc.sweep == "gamma":
            write_csv(out, rc.echo(), GAMMA_COLUMNS, gamma_rows(rc, rc.grid()))
            return EXIT_OK
        systems = _systems_for_sweep(rc)
        results = evaluate_points(systems, rc.quadrature(), rc.jobs)
        write_csv(out, rc.echo(), CSV_COLUMNS,
                  (csv_row(s, rc.model, r, d) for s, (r, d) in zip(systems, results)))
        return EXIT_NUMERIC if any(r is None for r, _ in results) else EXIT_OK
    finally:
        if out is not sys.stdout and stream is None:
            out.close()


def cmd_point(rc: RunConfig, stream: Optional[TextIO] = None) -> int:
    out = stream or _open_out(rc.out)
    try:
        system = rc.system()
        res, diag = _point_worker((system, rc.quadrature()))
        write_csv(out, rc.echo(), CSV_COLUMNS, [csv_row(system, rc.model, res, diag)])
        return EXIT_OK if res is not None else EXIT_NUMERIC
    finally:
        if out is not sys.stdout and stream is None:
            out.close()


# Figure presets. Temperatures are in K, separations in micrometres.
FIG1_A_UM = tuple(np.round(np.linspace(0.5, 6.0, 56), 10))
FIG2_T_K = tuple(np.round(np.linspace(1.0, 400.0, 400), 10))
FIG34_T_K = tuple(np.round(np.linspace(1.0, 350.0, 64), 10))


def _figure_base(rc: RunConfig, **changes) -> RunConfig:
    base = asdict(rc)
    base.update(a_um=2.0, T_K=300.0, omega_p_rad_s=AL_OMEGA_P, gamma_rad_s=None, gamma_table=rc.gamma_table)
    base.update(changes)
    return RunConfig(**base)


def _landmark_lines(items: dict) -> str:
    return "".join(f"{k}={_fmt_value(v)}\n" for k, v in items.items())


def _nernst_landmarks(rc: RunConfig, prefix: str, cfg: QuadratureConfig) -> dict:
    verdict = nernst_limit(rc.system(T_K=DEFAULT_NERNST_GRID[-1]), cfg, DEFAULT_NERNST_GRID, jobs=rc.jobs)
    return {
        f"{prefix}_S0_MeV_per_m2_K": entropy_to_mev(verdict.S_limit),
        f"{prefix}_nernst_admissible": str(verdict.admissible).lower(),
        f"{prefix}_negative_anywhere": str(verdict.negative_anywhere).lower(),
    }


def _temperature_curves(rc: RunConfig, prescriptions: Sequence[str], cfg: QuadratureConfig):
    systems = [rc.system(T_K=T, prescription=p) for p in prescriptions for T in FIG34_T_K]
    results = evaluate_points(systems, cfg, rc.jobs)
    rows = [csv_row(s, rc.model, r, d) for s, (r, d) in zip(systems, results)]
    failed = any(r is None for r, _ in results)
    return rows, failed


def cmd_figure(n: int, out_dir: str | Path, rc: Optional[RunConfig] = None) -> int:
    """Write figure-N.csv and figure-N-landmarks.txt into ``out_dir``."""
    rc = rc or RunConfig()
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigurationError(f"cannot create {out_dir}: {exc}") from None
    cfg = rc.quadrature()
    failed = False
    if n == 1:
        fc = _figure_base(rc, model="drude", prescription="intrinsic", T_K=300.0)
        systems = [fc.system(a_um=float(a)) for a in FIG1_A_UM]
        results = evaluate_points(systems, cfg, fc.jobs)
        rows = [csv_row(s, fc.model, r, d) for s, (r, d) in zip(systems, results)]
        failed = any(r is None for r, _ in results)
        crossing = find_sign_crossing(fc.material(), ZeroFreqPrescription.MODEL_INTRINSIC, 300.0,
                                      (FIG1_A_UM[0] * 1e-6, FIG1_A_UM[-1] * 1e-6), cfg)
        landmarks = {"entropy_zero_crossing_um": None if crossing is None else crossing * 1e6}
        columns = CSV_COLUMNS
    elif n == 2:
        fc = _figure_base(rc, model="drude")
        rows = gamma_rows(fc, FIG2_T_K)
        a = fc.a_um * 1e-6
        landmarks = {"gamma_tilde_300K": gamma_tilde(a, fc.material().gamma, 300.0)}
        columns = GAMMA_COLUMNS
    elif n == 3:
        fc = _figure_base(rc, model="drude")
        rows, failed = _temperature_curves(fc, ("intrinsic", "eq9", "eq10"), cfg)
        landmarks = {}
        for p in ("intrinsic", "eq9", "eq10"):
            landmarks.update(_nernst_landmarks(fc.with_prescription(p), p, cfg))
        columns = CSV_COLUMNS
    elif n == 4:
        fc = _figure_base(rc, model="plasma")
        rows, failed = _temperature_curves(fc, ("eq9", "intrinsic"), cfg)
        landmarks = {}
        for p in ("eq9", "intrinsic"):
            landmarks.update(_nernst_landmarks(fc.with_prescription(p), p, cfg))
        landmarks["eq9_analytic_S0_MeV_per_m2_K"] = entropy_to_mev(
            entropy_zero_modified(fc.a_um * 1e-6, fc.omega_p_rad_s))
        columns = CSV_COLUMNS
    else:
        raise ConfigurationError("figure number must be 1, 2, 3 or 4")
    buf = io.StringIO()
    write_csv(buf, fc.echo(), columns, rows)
    (out_dir / f"figure-{n}.csv").write_text(buf.getvalue())
    (out_dir / f"figure-{n}-landmarks.txt").write_text(_landmark_lines(landmarks))
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_validate(cfg: QuadratureConfig, only: Optional[Sequence[int]] = None, stream: TextIO = sys.stdout,
                 jobs: int = 1) -> int:
    """Run the acceptance suite; one JSON object per line, then a summary line."""
    from .validation import run_all

    results = run_all(cfg, only=only, jobs=jobs, on_result=lambda r: (stream.write(json.dumps(r.as_dict()) + "\n"),
                                                                      stream.flush()))
    passed = sum(r.passed for r in results)
    stream.write(json.dumps({"summary": {"passed": passed, "total": len(results)}}) + "\n")
    return EXIT_OK if passed == len(results) else EXIT_CRITERIA


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value configuration file")
    p.add_argument("--out", help="output path (directory for 'figure'; default stdout or '.')")
    p.add_argument("--rel-tol", dest="rel_tol", type=float)
    p.add_argument("--max-l", dest="max_l", type=int)
    p.add_argument("--jobs", type=int, help="worker processes for independent points")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--prescription", choices=PRESCRIPTIONS)
    p.add_argument("--a-um", dest="a_um", type=float, help="plate separation [um]")
    p.add_argument("--T-K", dest="T_K", type=float, help="temperature [K]")
    p.add_argument("--omega-p-ev", dest="omega_p_ev", type=float)
    p.add_argument("--omega-p-rad-s", dest="omega_p_rad_s", type=float)
    p.add_argument("--gamma-ev", dest="gamma_ev", type=float, help="constant relaxation frequency [eV]")
    p.add_argument("--gamma-rad-s", dest="gamma_rad_s", type=float)
    p.add_argument("--gamma-table", dest="gamma_table", help="two-column file: T [K], gamma [rad/s]")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thermocasimir", description="Thermal Casimir free energy and entropy between metal plates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="sweep a, T, or the relaxation-frequency curve; CSV out")
    _common(p)
    p.add_argument("--sweep", choices=SWEEPS, help="a (um), T (K) or gamma (T in K)")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--spacing", choices=("linear", "log"))

    p = sub.add_parser("figure", help="write a preset figure CSV and landmarks")
    _common(p)
    p.add_argument("n", type=int, choices=(1, 2, 3, 4))

    p = sub.add_parser("validate", help="run the acceptance suite")
    _common(p)
    p.add_argument("--only", help="comma-separated criterion numbers")

    p = sub.add_parser("point", help="evaluate one (a, T) point")
    _common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        rc = build_config(args)
        if args.command == "sweep":
            return cmd_sweep(rc)
        if args.command == "point":
            return cmd_point(rc)
        if args.command == "figure":
            return cmd_figure(args.n, rc.out or ".", rc)
        only = None
        if args.only:
            try:
                only = [int(s) for s in args.only.split(",") if s.strip()]
            except ValueError:
                raise ConfigurationError("--only takes comma-separated integers") from None
        return cmd_validate(rc.quadrature(), only, jobs=rc.jobs)
    except ConfigurationError as exc:
        print(f"thermocasimir: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"thermocasimir: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CasimirError as exc:
        print(f"thermocasimir: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
