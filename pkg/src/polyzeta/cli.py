"""polyzeta command line: zero tables, counting curves, spectra and the validation suite.

Exit status: 0 on success, 1 when an invariant fails (or a numerical
self-check such as a missed zero fires), 2 on bad input.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

import numpy as np

from . import bk_model, findings, phase_space, riemann, sierra_model, verify_numeric
from .bk_model import PolymerScale, SelfAdjointDomain
from .errors import ArgumentError, PolyzetaError
from .phase_space import ClassicalHamiltonian, PhaseSpaceCuts
from .sierra_model import SierraParams
from .validation import ModelParams, run_invariants

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2
SQRT_2PI = math.sqrt(2.0 * math.pi)
SEED_ENV = "POLYZETA_SEED"


class InputError(Exception):
    """Bad command-line or config-file input (exit status 2)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    mu0: float = 0.01
    lx: float = SQRT_2PI
    lp: float = SQRT_2PI
    theta: float = 0.0
    m2: Optional[float] = None
    hbar: float = 1.0
    emin: float = 20.0
    emax: float = 100.0
    npoints: int = 9
    prime_limit: int = 10_000
    nmax: int = 10
    model: str = "bk"
    convention: str = "self-adjoint"
    nlevels: int = 10
    format: str = "csv"
    out: Optional[str] = None


_FLOAT_KEYS = ("mu0", "lx", "lp", "theta", "m2", "hbar", "emin", "emax")
_INT_KEYS = ("npoints", "prime_limit", "nmax", "nlevels")
_CHOICES = {"model": ("bk", "sierra"), "format": ("csv", "json"),
            "convention": sierra_model.CONVENTIONS}
_CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"command"}


def default_m2(mu0: float, hbar: float) -> float:
    """0.9 of the branch end, i.e. inside (m1, pi hbar / mu0)."""
    return 0.9 * math.pi * hbar / mu0


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment, dashes in keys are allowed."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config file {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def _coerce(key: str, value: str):
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
    except ValueError:
        raise InputError(f"{key} must be a number, got {value!r}") from None
    if key in _CHOICES and value not in _CHOICES[key]:
        raise InputError(f"{key} must be one of {', '.join(_CHOICES[key])}, got {value!r}")
    return value


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Flags override the config file, which overrides the defaults."""
    values = read_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    cfg = RunConfig(command=args.command, **values)
    if cfg.m2 is None and cfg.mu0 > 0 and cfg.hbar > 0:
        cfg = replace(cfg, m2=default_m2(cfg.mu0, cfg.hbar))
    return cfg


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def check_preconditions(cfg: RunConfig) -> None:
    """Raise InputError naming the first violated precondition for ``cfg.command``."""
    finite = all(math.isfinite(getattr(cfg, k)) for k in _FLOAT_KEYS if getattr(cfg, k) is not None)
    _require(finite, "numeric parameters must be finite")
    _require(cfg.lx > 0 and cfg.lp > 0, "lx and lp must be > 0")
    _require(cfg.hbar > 0, "hbar must be > 0")
    if cfg.command == "zeros":
        _require(0 < cfg.emax <= riemann.T_MAX_SUPPORTED, "zeros needs 0 < emax <= 1000")
        return
    if cfg.command == "count":
        _require(cfg.mu0 >= 0, "count needs mu0 >= 0")
        _require(0 < cfg.emin <= cfg.emax, "count needs 0 < emin <= emax")
        _require(cfg.emax <= riemann.T_MAX_SUPPORTED, "count needs emax <= 1000 for the exact staircase")
        _require(cfg.npoints >= 1, "npoints must be >= 1")
        _require(cfg.prime_limit >= 2, "prime-limit must be >= 2")
        _require(cfg.nmax >= 1, "nmax must be >= 1")
        return
    _require(cfg.mu0 > 0, "mu0 must be > 0")
    end = math.pi * cfg.hbar / cfg.mu0
    _require(0 < cfg.m2 < end, f"m2 must lie inside the branch (0, pi hbar / mu0) = (0, {end:.15g})")
    _require(abs(cfg.m2 - 0.5 * end) > 1e-12 * end, "m2 must differ from m1 = pi hbar / (2 mu0)")
    if cfg.command == "spectrum":
        _require(cfg.nlevels >= 1, "nlevels must be >= 1")
        if cfg.model == "sierra":
            _require(cfg.hbar == 1.0, "the sierra model needs hbar = 1")
        return
    if cfg.command == "validate":
        _require(cfg.hbar == 1.0, "validate runs the sierra checks and needs hbar = 1")
        _require(cfg.mu0 * cfg.lp < math.pi / 2,
                 "validate needs mu0 * lp < pi/2 so the momentum cut sits on the rising polymer branch")


# -- tables -------------------------------------------------------------------


@dataclass
class Table:
    columns: list
    rows: list
    notes: list

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)


def _cell(table: Table, column: str, func, *args):
    try:
        value = func(*args)
    except PolyzetaError as exc:
        table.note(f"{column}: {type(exc).__name__}: {exc}")
        return None
    return float(value)


def cmd_zeros(cfg: RunConfig) -> Table:
    zeros = riemann.find_zeros(cfg.emax)
    resid = np.abs(riemann.z_function(zeros.zeros)) if len(zeros) else np.empty(0)
    rows = [[i + 1, float(t), float(r)] for i, (t, r) in enumerate(zip(zeros.zeros, resid))]
    return Table(["index", "ordinate", "residual"], rows, [])


def cmd_count(cfg: RunConfig) -> Table:
    columns = ["E", "N_exact", "N_smooth", "N_smooth_plus_fl", "N_bk", "N_poly_closed",
               "N_poly_asym", "N_sierra_asym", "N_oracle_xp_poly"]
    table = Table(columns, [], [])
    grid = np.linspace(cfg.emin, cfg.emax, cfg.npoints)
    zeros = riemann.find_zeros(cfg.emax + 1.0)
    exact = riemann.staircase(grid, zeros).values
    cuts = PhaseSpaceCuts(cfg.lx, cfg.lp)
    h = ClassicalHamiltonian("xp-polymer", cfg.mu0)
    for E, n_exact in zip(grid, exact):
        E = float(E)
        smooth = riemann.smooth_count(E)
        table.rows.append([
            E,
            float(n_exact),
            smooth,
            _cell(table, "N_smooth_plus_fl",
                  lambda: smooth + riemann.fluctuation_sum(E, cfg.prime_limit, cfg.nmax)),
            _cell(table, "N_bk", phase_space.n_bk, E, cuts),
            _cell(table, "N_poly_closed", phase_space.n_poly_closed, E, cuts, cfg.mu0),
            _cell(table, "N_poly_asym", phase_space.n_poly_asymptotic, E, cfg.lp, cfg.mu0),
            _cell(table, "N_sierra_asym", phase_space.n_sierra_poly_asymptotic, E, cfg.lp, cfg.mu0),
            _cell(table, "N_oracle_xp_poly", phase_space.area_count_oracle, h, E, cuts),
        ])
    return table


def _spectrum_functions(cfg: RunConfig):
    """(closed(n), expansion(n), model spec, residual(E)) for the selected model."""
    if cfg.model == "bk":
        scale = PolymerScale(cfg.mu0, cfg.hbar)
        dom = SelfAdjointDomain.for_scale(scale, cfg.m2, cfg.theta)
        return (lambda n: bk_model.spectrum(n, dom, scale),
                lambda n: bk_model.spectrum_expansion(n, dom, scale),
                verify_numeric.bk_spec(scale, dom),
                lambda E: bk_model.boundary_residual(E, dom, scale))
    params = SierraParams.make(cfg.lp, cfg.mu0)
    conv = cfg.convention
    angle = cfg.m2 if conv == "bare" else cfg.mu0 * cfg.m2
    return (lambda n: sierra_model.sierra_spectrum(n, cfg.theta, cfg.m2, params, conv),
            lambda n: sierra_model.sierra_spectrum_expansion(n, cfg.theta, angle, params),
            verify_numeric.sierra_spec(params, cfg.m2, cfg.theta, conv),
            lambda E: sierra_model.sierra_boundary_residual(E, cfg.m2, cfg.theta, params, conv))


def cmd_spectrum(cfg: RunConfig) -> Table:
    closed_fn, expansion_fn, model, residual_fn = _spectrum_functions(cfg)
    table = Table(["n", "E_closed", "E_expansion", "E_shot", "residual_boundary"], [], [])
    closed = [closed_fn(n) for n in range(cfg.nlevels)]
    spacing = abs(model.spacing)
    side = "nonnegative" if sum(closed) >= 0 else "nonpositive"
    shot = None
    try:
        # two spare levels so every closed level has a shooting partner
        shot = verify_numeric.shoot_spectrum(model, cfg.nlevels + 2, side=side).levels
    except PolyzetaError as exc:
        table.note(f"E_shot: {type(exc).__name__}: {exc}")
    for n, E in enumerate(closed):
        e_shot = None
        if shot is not None:
            near = shot[np.argmin(np.abs(shot - E))]
            if abs(near - E) < 0.25 * spacing:
                e_shot = float(near)
            else:
                table.note("E_shot: no shooting level within a quarter spacing of the closed level")
        table.rows.append([n, float(E), _cell(table, "E_expansion", expansion_fn, n), e_shot,
                           _cell(table, "residual_boundary", residual_fn, E)])
    return table


def cmd_validate(cfg: RunConfig) -> dict:
    params = ModelParams(cfg.mu0, cfg.lx, cfg.lp, cfg.theta, cfg.m2, cfg.hbar)
    invariants = run_invariants(params)
    return {
        "passed": all(item["passed"] for item in invariants),
        "invariants": invariants,
        "findings": findings.all_findings(),
    }


# -- output -------------------------------------------------------------------


def format_number(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if value == 0.0:
        return "0"
    return "%.15g" % value


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(format_number(v) for v in row) + "\n")
    for text in table.notes:
        buf.write(f"# empty cells: {text}\n")
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def render_json(meta: dict, body: dict) -> str:
    return json.dumps(_json_safe({"meta": meta, **body}), indent=2) + "\n"


def build_meta(cfg: RunConfig) -> dict:
    meta = asdict(cfg)
    meta["seed"] = os.environ.get(SEED_ENV)
    return meta


def emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path!r}: {exc.strerror}") from None


COMMANDS = {"zeros": cmd_zeros, "count": cmd_count, "spectrum": cmd_spectrum}


def run(cfg: RunConfig) -> int:
    check_preconditions(cfg)
    meta = build_meta(cfg)
    if cfg.command == "validate":
        report = cmd_validate(cfg)
        emit(render_json(meta, report), cfg.out)
        return EXIT_OK if report["passed"] else EXIT_INVARIANT
    table = COMMANDS[cfg.command](cfg)
    if cfg.format == "csv":
        text = render_csv(table)
    else:
        rows = [dict(zip(table.columns, row)) for row in table.rows]
        text = render_json(meta, {"rows": rows, "notes": table.notes})
    emit(text, cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model parameters")
    g.add_argument("--mu0", type=float, help="polymer scale (default 0.01)")
    g.add_argument("--lx", type=float, help="position cut (default sqrt(2 pi))")
    g.add_argument("--lp", type=float, help="momentum cut / Sierra l_p (default sqrt(2 pi))")
    g.add_argument("--theta", type=float, help="self-adjoint extension angle (default 0)")
    g.add_argument("--m2", type=float, help="second boundary point (default 0.9 pi hbar / mu0)")
    g.add_argument("--hbar", type=float, help="Planck constant (default 1)")
    g = common.add_argument_group("grid and truncation")
    g.add_argument("--emin", type=float, help="lowest energy of the grid (default 20)")
    g.add_argument("--emax", type=float, help="highest energy of the grid (default 100)")
    g.add_argument("--npoints", type=int, help="number of grid energies (default 9)")
    g.add_argument("--prime-limit", dest="prime_limit", type=int, help="largest prime in the fluctuation sum")
    g.add_argument("--nmax", type=int, help="prime powers per prime in the fluctuation sum")
    g.add_argument("--nlevels", type=int, help="levels listed by 'spectrum' (default 10)")
    g = common.add_argument_group("model and output")
    g.add_argument("--model", choices=_CHOICES["model"], help="spectrum model (default bk)")
    g.add_argument("--convention", choices=_CHOICES["convention"],
                   help="Sierra boundary-condition convention (default self-adjoint)")
    g.add_argument("--format", choices=_CHOICES["format"], help="output format (default csv)")
    g.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    g.add_argument("--config", metavar="PATH", help="flat key = value config file")

    parser = argparse.ArgumentParser(prog="polyzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("zeros", parents=[common], help="zeta zeros below --emax")
    sub.add_parser("count", parents=[common], help="counting curves on an energy grid")
    sub.add_parser("spectrum", parents=[common], help="closed-form, expanded and shot spectra")
    sub.add_parser("validate", parents=[common], help="run the invariant suite and findings (JSON)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return run(cfg)
    except (InputError, ArgumentError) as exc:
        print(f"polyzeta: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PolyzetaError as exc:
        print(f"polyzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
