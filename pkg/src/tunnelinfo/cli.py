"""Command-line pipeline: configuration, scenario runs, CSV output, comparison.

Config files are plain ``key = value`` text; ``#`` starts a comment.  Keys
carry their units in their names::

    system = dswp              # dswp | iswp
    v0_eV = 0.5
    v1_eV = 0.25
    l0_angstrom = 0.672
    l1_angstrom = 0.128
    mass_multiple_of_mh = 3
    iswp_width_angstrom = 1.344   # default 2 * l0_angstrom
    pair = ground              # ground | excited
    initial_side = left        # left | right
    n_times = 65
    n_grid = 4001
    output_dir = out
    display_scaled = false
    renyi_orders = 0.5, 2, 3
    density_times = 0, 1/4, 1/2   # fractions of the period

An empty file gives the default ammonia double well.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 breached physical bound.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import hashlib
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .eigensolver import iswp_state, solve_spectrum
from .errors import (
    BoundViolation,
    ConfigError,
    IncompatibleSampling,
    ParseError,
    TunnelInfoError,
    ValidationError,
)
from .infomeasures import (
    EUR_BOUND,
    FISHER_PRODUCT_BOUND,
    HEISENBERG_BOUND,
    REFERENCE_FIT_I_T,
    REFERENCE_FIT_S_T,
    MeasureRecord,
    fit_measures,
    local_extrema,
    measure_series,
)
from .potentials import DswpParams, IswpParams, PhysicalConstants
from .quantum_state import (
    MOMENTUM_DISPLAY_SCALE,
    POSITION_DISPLAY_SCALE,
    bohr_frequency,
    density_momentum,
    density_position,
    make_superposition,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_BOUND = 0, 2, 3, 4

# Time samples (fractions of T) at which densities are tabulated by default;
# the snapshots shown for the double well plus the quarter points.
DEFAULT_DENSITY_TIMES = (0.0, 1 / 9, 1 / 6, 1 / 4, 1 / 3, 7 / 18, 1 / 2, 11 / 18, 2 / 3,
                         3 / 4, 5 / 6, 8 / 9, 1.0)

# Measure quadrature: initial panels per space, tied to n_grid so that a grid
# refinement also refines the integration.
PANELS_PER_GRID_POINT = 1 / 100
MIN_PANELS = 8
MEASURE_RTOL = 1e-10


@dataclass(frozen=True)
class RunConfig:
    system: str = "dswp"
    v0_eV: float = 0.5
    v1_eV: float = 0.25
    l0_angstrom: float = 0.672
    l1_angstrom: float = 0.128
    mass_multiple_of_mh: float = 3.0
    iswp_width_angstrom: float | None = None
    pair: str = "ground"
    initial_side: str = "left"
    n_times: int = 65
    n_grid: int = 4001
    output_dir: str = "out"
    display_scaled: bool = False
    renyi_orders: tuple = (0.5, 2.0, 3.0)
    density_times: tuple = DEFAULT_DENSITY_TIMES

    def __post_init__(self):
        if self.system not in ("dswp", "iswp"):
            raise ValidationError("system", f"must be dswp or iswp, got {self.system!r}")
        if self.pair not in ("ground", "excited"):
            raise ValidationError("pair", f"must be ground or excited, got {self.pair!r}")
        if self.system == "iswp" and self.pair != "ground":
            raise ValidationError("pair", "the infinite well run supports the ground pair only")
        if self.initial_side not in ("left", "right"):
            raise ValidationError("initial_side", f"must be left or right, got {self.initial_side!r}")
        if self.n_times < 8:
            raise ValidationError("n_times", f"must be >= 8, got {self.n_times}")
        if self.n_grid < 256:
            raise ValidationError("n_grid", f"must be >= 256, got {self.n_grid}")
        if not self.mass_multiple_of_mh > 0:
            raise ValidationError("mass_multiple_of_mh", "must be positive")
        for a in self.renyi_orders:
            if not (a > 0) or a == 1:
                raise ValidationError("renyi_orders", f"orders must be positive and != 1, got {a}")
        for t in self.density_times:
            if not 0.0 <= t <= 1.0:
                raise ValidationError("density_times", f"fractions must lie in [0, 1], got {t}")
        self.dswp_params()
        self.iswp_params()

    def dswp_params(self) -> DswpParams:
        return DswpParams(v0=self.v0_eV, v1=self.v1_eV, l0=self.l0_angstrom, l1=self.l1_angstrom)

    def iswp_params(self) -> IswpParams:
        if self.iswp_width_angstrom is None:
            return IswpParams(width=2 * self.l0_angstrom)
        return IswpParams(width=self.iswp_width_angstrom)

    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(mass_multiple=self.mass_multiple_of_mh)

    @property
    def initial_panels(self) -> int:
        return max(MIN_PANELS, int(round(self.n_grid * PANELS_PER_GRID_POINT)))

    def snapshot(self) -> dict:
        d = asdict(self)
        d["renyi_orders"] = list(self.renyi_orders)
        d["density_times"] = list(self.density_times)
        return d


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------

_STR_KEYS = {"system", "pair", "initial_side", "output_dir"}
_FLOAT_KEYS = {"v0_eV", "v1_eV", "l0_angstrom", "l1_angstrom", "mass_multiple_of_mh",
               "iswp_width_angstrom"}
_INT_KEYS = {"n_times", "n_grid"}
_BOOL_KEYS = {"display_scaled"}
_LIST_KEYS = {"renyi_orders", "density_times"}
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _number(text: str) -> float:
    # accepts decimals and simple fractions such as 7/18
    return float(Fraction(text.strip()))


def _convert(key: str, text: str):
    if key in _STR_KEYS:
        return text.lower() if key != "output_dir" else text
    if key in _FLOAT_KEYS:
        return _number(text)
    if key in _INT_KEYS:
        value = _number(text)
        if value != int(value):
            raise ValueError(f"{key} must be an integer")
        return int(value)
    if key in _BOOL_KEYS:
        low = text.lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    return tuple(_number(tok) for tok in text.split(",") if tok.strip())


def parse_config(text: str) -> RunConfig:
    """Parse config text into a validated :class:`RunConfig`."""
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key = value'", lineno, col)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        value_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if not key:
            raise ParseError("missing key", lineno, 1)
        if key not in known:
            raise ValidationError(key, "unknown key")
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, len(key_part) - len(key_part.lstrip()) + 1)
        text_value = value_part.strip()
        if not text_value:
            raise ParseError(f"missing value for {key!r}", lineno, value_col)
        try:
            values[key] = _convert(key, text_value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad value for {key!r}: {exc}", lineno, value_col) from None
    return RunConfig(**values)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "nan" if math.isnan(v) else f"{float(v):.16e}"
    return str(v)


def write_csv(path: Path, header: Sequence[str], rows) -> str:
    """Write a headered CSV and return its sha256."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _renyi_label(a: float) -> str:
    return f"{a:g}".replace(".", "p")


def measures_header(renyi_orders) -> list[str]:
    head = ["t_over_T", "omega_t_rad", "mean_x_m", "mean_k_per_m", "var_x_m2", "var_k_per_m2",
            "dx_m", "dk_per_m", "dx_dk", "S_x_nat", "S_k_nat", "S_T_nat", "I_x_per_m2", "I_k_m2",
            "I_T", "D_x_per_m", "D_k_m", "D_T", "C_T", "norm_x", "norm_k"]
    for a in renyi_orders:
        head += [f"renyi_x_a{_renyi_label(a)}_nat", f"renyi_k_a{_renyi_label(a)}_nat"]
    return head


def measures_row(r: MeasureRecord, renyi_orders) -> list:
    row = [r.t_over_T, 2 * math.pi * r.t_over_T, r.mean_x, r.mean_k, r.var_x, r.var_k, r.dx, r.dk,
           r.dx_dk, r.s_x, r.s_k, r.s_t, r.i_x, r.i_k, r.i_t, r.d_x, r.d_k, r.d_t, r.c_t,
           r.norm_x, r.norm_k]
    for a in renyi_orders:
        row += list(r.renyi[float(a)])
    return row


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------


@dataclass
class RunManifest:
    config: dict
    version: str
    files: dict = field(default_factory=dict)       # name -> sha256
    wall_clock_s: float = 0.0
    tolerance: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    def verify(self, out_dir) -> bool:
        out_dir = Path(out_dir)
        return all(hashlib.sha256((out_dir / name).read_bytes()).hexdigest() == digest
                   for name, digest in self.files.items())


@contextlib.contextmanager
def _stage(name: str):
    try:
        yield
    except TunnelInfoError as exc:
        if not hasattr(exc, "stage"):
            exc.stage = name
        raise


STAGES = ("eigen", "evolve", "measures", "fit")


def _quarter_samples(n_times: int) -> int:
    return sum(1 for j in range(n_times) if 4 * j <= n_times - 1)


def _prepare_output(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ValidationError("output_dir", f"not writable ({exc})") from None
    return out


def _eigen_rows(cfg: RunConfig, spectrum):
    if cfg.system == "dswp":
        for i, st in enumerate(spectrum):
            yield [i, st.label, st.parity, st.energy, st.phase, st.a1, st.a2, st.a3_or_b3, st.norm,
                   st.node_count, st.residual.worst]
    else:
        for st in spectrum:
            yield [st.n, _state_label(st), st.parity, st.energy, math.nan, math.nan, math.nan, math.nan,
                   math.sqrt(2.0 / st.width_m), st.n - 1, 0.0]


def _state_label(st) -> str:
    return st.label if hasattr(st, "label") else f"psi{st.n}"


EIGEN_HEADER = ["index", "label", "parity", "energy_eV", "phase_rad", "a1", "a2", "a3_or_b3",
                "norm_per_sqrt_m", "node_count", "match_residual"]


def _density_rows(samples, cfg: RunConfig, scale_x: float, scale_y: float, period: float):
    for smp in samples:
        t_over_T = smp.time / period
        if cfg.display_scaled:
            for g, v in zip(smp.grid, smp.values):
                yield [t_over_T, g, v, g / scale_x, v * scale_y]
        else:
            for g, v in zip(smp.grid, smp.values):
                yield [t_over_T, g, v]


def run_scenario(cfg: RunConfig, stages: Sequence[str] = STAGES,
                 log=None) -> RunManifest:
    """Run the requested stages and write their CSVs plus ``manifest.json``."""
    started = time.perf_counter()
    log = log or (lambda msg: None)
    if "fit" in stages and _quarter_samples(cfg.n_times) < 6:
        raise ValidationError("n_times", "the fit stage needs >= 6 samples in the first quarter "
                                         f"period (n_times >= 21), got n_times={cfg.n_times}")
    out = _prepare_output(cfg)
    manifest = RunManifest(config=cfg.snapshot(), version=__version__)
    constants = cfg.constants()

    with _stage("eigen"):
        if cfg.system == "dswp":
            params = cfg.dswp_params()
            spectrum = solve_spectrum(params, constants)
            manifest.tolerance["max_match_residual"] = max(st.residual.worst for st in spectrum)
        else:
            params = cfg.iswp_params()
            spectrum = [iswp_state(params, n, constants) for n in range(1, 5)]
        if "eigen" in stages:
            manifest.files["eigen.csv"] = write_csv(out / "eigen.csv", EIGEN_HEADER,
                                                    _eigen_rows(cfg, spectrum))
            log(f"eigen: {len(spectrum)} states")

    need_state = any(s in stages for s in ("evolve", "measures", "fit"))
    if need_state:
        with _stage("evolve"):
            sup = make_superposition(cfg.system, cfg.pair, cfg.initial_side, params, constants,
                                     spectrum if cfg.system == "dswp" else None)
            manifest.summary.update(delta_e_eV=sup.delta_e_ev, bohr_frequency_GHz=bohr_frequency(sup),
                                    period_s=sup.period, relative_sign=sup.sign,
                                    pair_labels=[_state_label(sup.state_a), _state_label(sup.state_b)])
            log(f"pair: dE = {sup.delta_e_ev:.7e} eV, nu = {bohr_frequency(sup):.6f} GHz")
            if "evolve" in stages:
                times = [f * sup.period for f in cfg.density_times]
                pos = [density_position(sup, t, n_grid=cfg.n_grid) for t in times]
                mom = [density_momentum(sup, t, n_grid=cfg.n_grid) for t in times]
                head_x = ["t_over_T", "x_m", "rho_per_m"]
                head_k = ["t_over_T", "k_per_m", "n_m"]
                if cfg.display_scaled:
                    head_x += ["x_angstrom", "rho_per_angstrom"]
                    head_k += ["k_1e11_per_m", "n_1e-11m"]
                manifest.files["densities_position.csv"] = write_csv(
                    out / "densities_position.csv", head_x,
                    _density_rows(pos, cfg, POSITION_DISPLAY_SCALE, POSITION_DISPLAY_SCALE, sup.period))
                manifest.files["densities_momentum.csv"] = write_csv(
                    out / "densities_momentum.csv", head_k,
                    _density_rows(mom, cfg, MOMENTUM_DISPLAY_SCALE, MOMENTUM_DISPLAY_SCALE, sup.period))
                manifest.tolerance["max_density_trapezoid_error"] = max(
                    abs(d.total() - 1.0) for d in pos + mom)
                log(f"evolve: {len(times)} density snapshots")

    if "measures" in stages or "fit" in stages:
        with _stage("measures"):
            records = measure_series(sup, cfg.n_times, cfg.renyi_orders, enforce=True,
                                     rtol=MEASURE_RTOL, initial_panels=cfg.initial_panels)
            manifest.files["measures.csv"] = write_csv(
                out / "measures.csv", measures_header(cfg.renyi_orders),
                (measures_row(r, cfg.renyi_orders) for r in records))
            manifest.tolerance.update(
                quadrature_rtol=MEASURE_RTOL,
                initial_panels=cfg.initial_panels,
                max_norm_error_x=max(abs(r.norm_x - 1) for r in records),
                max_norm_error_k=max(abs(r.norm_k - 1) for r in records),
                min_margin_S_T=min(r.s_t for r in records) - EUR_BOUND,
                min_margin_I_T=min(r.i_t for r in records) - FISHER_PRODUCT_BOUND,
                min_margin_dx_dk=min(r.dx_dk for r in records) - HEISENBERG_BOUND,
                min_margin_cramer_rao_x=min(r.i_x * r.var_x for r in records) - 1.0,
                min_margin_cramer_rao_k=min(r.i_k * r.var_k for r in records) - 1.0,
            )
            log(f"measures: {len(records)} samples, all bounds satisfied")

    if "fit" in stages:
        with _stage("fit"):
            fit_s, fit_i = fit_measures(records)
            reference = cfg.system == "dswp" and cfg.pair == "ground"
            header = ["name", *[f"alpha{j}" for j in range(5)], "rmse_fitted", "rmse_measure",
                      "measure_range", "n_samples", *[f"reference_alpha{j}" for j in range(5)]]
            rows = []
            for name, fit, ref in (("S_T=ln(poly)", fit_s, REFERENCE_FIT_S_T),
                                   ("I_T=exp(poly)", fit_i, REFERENCE_FIT_I_T)):
                refs = list(ref) if reference else [math.nan] * 5
                rows.append([name, *fit.coefficients, fit.rmse, fit.extra["rmse_measure"],
                             fit.extra["measure_range"], fit.extra["n_samples"], *refs])
            manifest.files["fit.csv"] = write_csv(out / "fit.csv", header, rows)
            manifest.tolerance.update(
                fit_rmse_fraction_S_T=fit_s.extra["rmse_measure"] / fit_s.extra["measure_range"],
                fit_rmse_fraction_I_T=fit_i.extra["rmse_measure"] / fit_i.extra["measure_range"])
            log("fit: quartic fits written")

    manifest.wall_clock_s = time.perf_counter() - started
    (out / "manifest.json").write_text(manifest.to_json() + "\n", encoding="utf-8")
    return manifest


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MeasureTable:
    t_over_T: np.ndarray
    s_t: np.ndarray
    i_t: np.ndarray
    label: str = ""


def read_measures(path) -> MeasureTable:
    path = Path(path)
    if path.is_dir():
        path = path / "measures.csv"
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    col = lambda name: np.array([float(r[name]) for r in rows])  # noqa: E731
    return MeasureTable(col("t_over_T"), col("S_T_nat"), col("I_T"), label=str(path.parent))


def table_from_records(records: Sequence[MeasureRecord], label: str = "") -> MeasureTable:
    return MeasureTable(np.array([r.t_over_T for r in records]), np.array([r.s_t for r in records]),
                        np.array([r.i_t for r in records]), label)


QUARTER_WINDOW = 1 / 64


def _interior_extrema(t, v):
    half = t <= 0.5 + 1e-12
    th, vh = t[half], v[half]
    inner = lambda idx: [float(th[i]) for i in idx if 0 < i < len(th) - 1]  # noqa: E731
    return inner(local_extrema(vh, "max")), inner(local_extrema(vh, "min"))


def classify(table: MeasureTable) -> dict:
    """Extremum layout of S_T and I_T over the first half period and the
    resulting class.

    A run shows the tunneling signature when, on ``0 < t < T/2``, S_T has a
    single interior extremum, a maximum at T/4 (within T/64), and I_T also
    has a single interior extremum at T/4.  Anything else is the
    fluctuation pattern.
    """
    s_max, s_min = _interior_extrema(table.t_over_T, table.s_t)
    i_max, i_min = _interior_extrema(table.t_over_T, table.i_t)
    near_quarter = lambda ts: len(ts) == 1 and abs(ts[0] - 0.25) <= QUARTER_WINDOW  # noqa: E731
    tunneling = near_quarter(s_max) and not s_min and near_quarter(i_max + i_min)
    return {"S_T": {"maxima": s_max, "minima": s_min}, "I_T": {"maxima": i_max, "minima": i_min},
            "class": "tunneling signature" if tunneling else "fluctuation pattern"}


def compare_systems(a: MeasureTable, b: MeasureTable) -> dict:
    if len(a.t_over_T) != len(b.t_over_T) or not np.allclose(a.t_over_T, b.t_over_T, rtol=0, atol=1e-12):
        raise IncompatibleSampling("time grids of the two runs differ")
    ca, cb = classify(a), classify(b)
    if ca["class"] == cb["class"]:
        verdict = "no discriminating difference"
    else:
        if ca["class"] == "tunneling signature":
            which = a.label or "run A"
        else:
            which = b.label or "run B"
        verdict = f"tunneling signature present in {which} only"
    return {"a": {"label": a.label, **ca}, "b": {"label": b.label, **cb}, "verdict": verdict}


_SINGULAR = {"maxima": "maximum", "minima": "minimum"}


def _comparison_rows(report):
    for key in ("a", "b"):
        side = report[key]
        for measure in ("S_T", "I_T"):
            for kind in ("maxima", "minima"):
                for t in side[measure][kind]:
                    yield [side["label"], measure, _SINGULAR[kind], t, side["class"]]


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--system", choices=["dswp", "iswp"])
    common.add_argument("--pair", choices=["ground", "excited"])
    common.add_argument("--side", choices=["left", "right"], help="initially occupied well")
    common.add_argument("--times", type=int, help="time samples over one period")
    common.add_argument("--grid", type=int, help="density grid points")
    common.add_argument("--out", help="output directory")
    common.add_argument("--scaled", action="store_true", default=None,
                        help="add display-scaled density columns")
    common.add_argument("-q", "--quiet", action="store_true")

    p = argparse.ArgumentParser(prog="tunnelinfo", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("eigen", parents=[common], help="bound states (eigen.csv)")
    sub.add_parser("evolve", parents=[common], help="density snapshots")
    sub.add_parser("measures", parents=[common], help="information measures over one period")
    sub.add_parser("fit", parents=[common], help="measures plus quartic fits")
    sub.add_parser("run", parents=[common], help="all stages")
    cmp_ = sub.add_parser("compare", parents=[common], help="compare two completed runs")
    cmp_.add_argument("run_a", help="output directory (or measures.csv) of the first run")
    cmp_.add_argument("run_b", help="output directory (or measures.csv) of the second run")
    return p


_COMMAND_STAGES = {
    "eigen": ("eigen",),
    "evolve": ("eigen", "evolve"),
    "measures": ("eigen", "measures"),
    "fit": ("eigen", "measures", "fit"),
    "run": STAGES,
}


def config_from_args(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    overrides = {"system": args.system, "pair": args.pair, "initial_side": args.side,
                 "n_times": args.times, "n_grid": args.grid, "output_dir": args.out,
                 "display_scaled": args.scaled}
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    log = (lambda msg: None) if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    stage = "config"
    try:
        if args.command == "compare":
            stage = "compare"
            report = compare_systems(read_measures(args.run_a), read_measures(args.run_b))
            if args.out:
                out = Path(args.out)
                out.mkdir(parents=True, exist_ok=True)
                write_csv(out / "comparison.csv", ["run", "measure", "kind", "t_over_T", "class"],
                          _comparison_rows(report))
            print(json.dumps(report, indent=2))
            return EXIT_OK
        cfg = config_from_args(args)
        stage = "run"
        manifest = run_scenario(cfg, _COMMAND_STAGES[args.command], log=log)
        log(f"wrote {', '.join(sorted(manifest.files))} to {cfg.output_dir} "
            f"in {manifest.wall_clock_s:.1f} s")
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BoundViolation as exc:
        print(f"bound violated [{getattr(exc, 'stage', stage)}]: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (TunnelInfoError, OSError) as exc:
        print(f"error [{getattr(exc, 'stage', stage)}]: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
