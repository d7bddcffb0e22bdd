"""Command-line front end: scenario configs in, deterministic CSV out.

Subcommands
-----------
``simulate``  evolve one scenario and write the observable table
``compare``   exact-vs-effective deviation table over a list of eta/J ratios
``analytic``  closed-form strong-hopping probabilities for overlay plots

Each subcommand takes a JSON config path and an optional ``--out`` path.
Config schema (unknown keys are rejected)::

    {
      "model":   {"n_sites": 2, "eta": 10.0, "preset": "xy",
                  "j": 1.0, "j_xy": ..., "j_z": ...},
      "initial": {"site": 1, "e_spin": "up", "static": "down-down"},
      "run":     {"hamiltonian": "exact", "t_max": 30.0, "n_points": 2001},
      "output":  {"path": "out.csv", "columns": ["P_up", "F_plus"]},
      "compare": {"ratios": [1, 2, 10]}
    }

Presets fix the couplings: ``xy`` means ``j_xy = j, j_z = 0`` and
``heisenberg`` means ``j_z = j = 2 j_xy`` (``j`` defaults to 1, so ``eta``
is the ratio eta/J).  Site labels are 1, 2 on two sites and 1, 0, 2 (left,
middle, right) on three.

Exit codes: 0 success, 2 config error, 3 numerical-invariant violation,
4 i/o failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

import numpy as np

from .analysis import compare_exact_effective
from .dynamics import (
    HAMILTONIAN_KINDS,
    TimeGrid,
    analytic_two_site,
    run_trajectory,
)
from .model import BasisLayout, ModelSpec, encode_state

PROBABILITY_TOL = 1e-9


class ConfigError(Exception):
    """Unusable scenario configuration (syntax or semantics)."""


class NumericalInvariantError(Exception):
    """A computed trajectory violated a numerical invariant."""


_TOP_KEYS = {"model", "initial", "run", "output", "compare"}
_MODEL_KEYS = {"n_sites", "eta", "preset", "j", "j_xy", "j_z"}
_INITIAL_KEYS = {"site", "e_spin", "static"}
_RUN_KEYS = {"hamiltonian", "t_max", "n_points"}
_OUTPUT_KEYS = {"path", "columns"}
_COMPARE_KEYS = {"ratios"}

_STATIC_TOKENS = ("up-up", "up-down", "down-up", "down-down", "psi-plus", "psi-minus")


@dataclass(frozen=True)
class ScenarioConfig:
    spec: ModelSpec
    site: int
    e_spin: str
    static: str
    hamiltonian: str
    grid: TimeGrid
    out_path: str | None
    columns: tuple | None
    ratios: tuple | None

    def initial_state(self):
        layout = BasisLayout(self.spec.n_sites)
        return encode_state(layout, self.site, self.e_spin, self.static)


def _check_keys(block, allowed, where):
    if not isinstance(block, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = sorted(set(block) - allowed)
    if unknown:
        raise ConfigError(
            f"unknown key {unknown[0]!r} in {where} (expected one of {sorted(allowed)})"
        )


def _number(block, key, where, default=None, minimum=None):
    if key not in block:
        if default is None:
            raise ConfigError(f"missing required key {key!r} in {where}")
        return default
    value = block[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {value!r}")
    value = float(value)
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}.{key} must be >= {minimum}, got {value}")
    return value


def _resolve_couplings(model):
    preset = model.get("preset", "custom")
    if preset not in ("xy", "heisenberg", "custom"):
        raise ConfigError(f"model.preset must be xy, heisenberg or custom, got {preset!r}")
    if preset == "custom" and "j" in model:
        raise ConfigError("model.j is only meaningful with the xy/heisenberg presets")
    if preset == "xy":
        j_z = _number(model, "j_z", "model", default=0.0)
        if j_z != 0.0:
            raise ConfigError("preset 'xy' requires j_z == 0")
        j = _number(model, "j", "model", default=1.0)
        j_xy = _number(model, "j_xy", "model", default=j)
        if "j" in model and "j_xy" in model and j_xy != j:
            raise ConfigError("preset 'xy': j and j_xy disagree; give one of them")
        return j_xy, 0.0
    if preset == "heisenberg":
        j = _number(model, "j", "model", default=_number(model, "j_z", "model", default=1.0))
        j_z = _number(model, "j_z", "model", default=j)
        if "j" in model and "j_z" in model and j_z != j:
            raise ConfigError("preset 'heisenberg': j and j_z disagree; give one of them")
        j_xy = _number(model, "j_xy", "model", default=j_z / 2.0)
        if abs(j_z - 2.0 * j_xy) > 1e-12 * max(1.0, abs(j_z)):
            raise ConfigError("preset 'heisenberg' requires j_z == 2 * j_xy")
        return j_xy, j_z
    return (
        _number(model, "j_xy", "model", default=0.0),
        _number(model, "j_z", "model", default=0.0),
    )


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario config from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    _check_keys(raw, _TOP_KEYS, "top level")

    model = raw.get("model")
    if model is None:
        raise ConfigError("missing required block 'model'")
    _check_keys(model, _MODEL_KEYS, "model")
    n_sites = model.get("n_sites")
    if isinstance(n_sites, bool) or not isinstance(n_sites, int):
        raise ConfigError(f"model.n_sites must be an integer, got {n_sites!r}")
    if n_sites not in (2, 3):
        raise ConfigError(f"model.n_sites must be 2 or 3, got {n_sites}")
    eta = _number(model, "eta", "model", minimum=0.0)
    j_xy, j_z = _resolve_couplings(model)
    spec = ModelSpec(n_sites=n_sites, eta=eta, j_xy=j_xy, j_z=j_z)

    initial = raw.get("initial")
    if initial is None:
        raise ConfigError("missing required block 'initial'")
    _check_keys(initial, _INITIAL_KEYS, "initial")
    layout = BasisLayout(n_sites)
    site = initial.get("site")
    if isinstance(site, bool) or not isinstance(site, int):
        raise ConfigError(f"initial.site must be an integer, got {site!r}")
    if site not in layout.site_labels():
        raise ConfigError(
            f"initial.site must be one of {layout.site_labels()}, got {site}"
        )
    e_spin = initial.get("e_spin", "up")
    if e_spin not in ("up", "down"):
        raise ConfigError(f"initial.e_spin must be 'up' or 'down', got {e_spin!r}")
    static = initial.get("static")
    if static not in _STATIC_TOKENS:
        raise ConfigError(
            f"initial.static must be one of {_STATIC_TOKENS}, got {static!r}"
        )

    run = raw.get("run", {})
    _check_keys(run, _RUN_KEYS, "run")
    hamiltonian = run.get("hamiltonian", "exact")
    if hamiltonian not in HAMILTONIAN_KINDS:
        raise ConfigError(
            f"run.hamiltonian must be one of {HAMILTONIAN_KINDS}, got {hamiltonian!r}"
        )
    if hamiltonian != "exact":
        needed = 2 if hamiltonian == "two_site" else 3
        if n_sites != needed:
            raise ConfigError(
                f"run.hamiltonian {hamiltonian!r} requires n_sites == {needed}"
            )
    t_max = _number(run, "t_max", "run", default=30.0)
    n_points = run.get("n_points", 2001)
    if isinstance(n_points, bool) or not isinstance(n_points, int):
        raise ConfigError(f"run.n_points must be an integer, got {n_points!r}")
    try:
        grid = TimeGrid(t_max=t_max, n_points=n_points)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    output = raw.get("output", {})
    _check_keys(output, _OUTPUT_KEYS, "output")
    out_path = output.get("path")
    if out_path is not None and not isinstance(out_path, str):
        raise ConfigError(f"output.path must be a string, got {out_path!r}")
    columns = output.get("columns")
    if columns is not None:
        if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
            raise ConfigError("output.columns must be a list of column names")
        valid = set(_simulate_columns(n_sites))
        for c in columns:
            if c not in valid:
                raise ConfigError(
                    f"unknown column {c!r} in output.columns (valid: {sorted(valid)})"
                )
        columns = tuple(columns)

    compare = raw.get("compare", {})
    _check_keys(compare, _COMPARE_KEYS, "compare")
    ratios = compare.get("ratios")
    if ratios is not None:
        if not isinstance(ratios, list) or not ratios:
            raise ConfigError("compare.ratios must be a non-empty list of numbers")
        for r in ratios:
            if isinstance(r, bool) or not isinstance(r, (int, float)) or r <= 0:
                raise ConfigError(f"compare.ratios entries must be positive, got {r!r}")
        ratios = tuple(float(r) for r in ratios)

    return ScenarioConfig(
        spec=spec,
        site=site,
        e_spin=e_spin,
        static=static,
        hamiltonian=hamiltonian,
        grid=grid,
        out_path=out_path,
        columns=columns,
        ratios=ratios,
    )


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _simulate_columns(n_sites: int):
    cols = ["t", "P1", "P2"]
    if n_sites == 3:
        cols.append("P0")
    cols += ["P_up", "F_plus", "F_minus", "logneg", "F2", "Sz", "S12sq", "norm"]
    return cols


_PROBABILITY_COLUMNS = {"P1", "P2", "P0", "P_up", "F_plus", "F_minus", "F2"}


def _record_values(record, n_sites: int) -> dict:
    vals = {
        "t": record.t,
        "P1": record.p_site[0],
        "P2": record.p_site[-1],
        "P_up": record.p_up,
        "F_plus": record.f_plus,
        "F_minus": record.f_minus,
        "logneg": record.logneg,
        "F2": record.f2,
        "Sz": record.sz_total,
        "S12sq": record.s12_sq,
        "norm": record.norm,
    }
    if n_sites == 3:
        vals["P0"] = record.p_site[1]
    return vals


def _validate_and_clamp(vals: dict) -> dict:
    if abs(vals["norm"] - 1.0) > PROBABILITY_TOL:
        raise NumericalInvariantError(
            f"norm drifted to {vals['norm']!r} at t = {vals['t']}"
        )
    p_total = sum(vals[c] for c in ("P1", "P2", "P0") if c in vals)
    if abs(p_total - 1.0) > PROBABILITY_TOL:
        raise NumericalInvariantError(
            f"site populations sum to {p_total!r} at t = {vals['t']}"
        )
    out = dict(vals)
    for col in _PROBABILITY_COLUMNS & set(vals):
        v = vals[col]
        if not (-PROBABILITY_TOL <= v <= 1.0 + PROBABILITY_TOL):
            raise NumericalInvariantError(
                f"{col} = {v!r} outside [0, 1] at t = {vals['t']}"
            )
        out[col] = min(1.0, max(0.0, v))
    return out


def _write_csv(path: str, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def cmd_simulate(config: ScenarioConfig, out_path: str | None = None) -> str:
    """Run one scenario, write the observable CSV, print per-column extrema."""
    path = out_path or config.out_path
    if path is None:
        raise ConfigError("no output path: set output.path or pass --out")
    records = run_trajectory(
        config.spec, config.hamiltonian, config.initial_state(), config.grid
    )
    n_sites = config.spec.n_sites
    columns = _simulate_columns(n_sites)
    if config.columns is not None:
        columns = ["t"] + [c for c in columns if c != "t" and c in config.columns]
    table = []
    for record in records:
        vals = _validate_and_clamp(_record_values(record, n_sites))
        table.append([vals[c] for c in columns])
    _write_csv(path, columns, table)
    data = np.asarray(table)
    for k, name in enumerate(columns):
        if name == "t":
            continue
        print(f"{name}: min={_fmt(data[:, k].min())} max={_fmt(data[:, k].max())}")
    return path


def cmd_compare(
    config: ScenarioConfig, ratios=None, out_path: str | None = None
) -> str:
    """Exact-vs-effective deviation table, one row per eta/J ratio."""
    path = out_path or config.out_path
    if path is None:
        raise ConfigError("no output path: set output.path or pass --out")
    ratios = tuple(ratios) if ratios is not None else config.ratios
    if not ratios:
        raise ConfigError("no ratios: set compare.ratios or pass --ratios")
    variant = None if config.hamiltonian == "exact" else config.hamiltonian
    j = config.spec.j_ref
    if j == 0.0:
        raise ConfigError("compare needs a nonzero coupling")
    gap_cols = ["P1", "P2"] + (["P0"] if config.spec.n_sites == 3 else [])
    gap_cols += ["p_up", "f_plus", "f_minus", "logneg", "f2"]
    header = ["eta_over_j", "max_state_infidelity"] + [
        "gap_" + {"p_up": "P_up", "f_plus": "F_plus", "f_minus": "F_minus",
                  "logneg": "logneg", "f2": "F2"}.get(c, c)
        for c in gap_cols
    ]
    initial = config.initial_state()
    rows = []
    for ratio in ratios:
        spec = dataclasses.replace(config.spec, eta=ratio * j)
        report = compare_exact_effective(spec, initial, config.grid, variant=variant)
        rows.append(
            [report.eta_over_j, report.max_state_infidelity]
            + [report.max_observable_gap[c] for c in gap_cols]
        )
    _write_csv(path, header, rows)
    for row in rows:
        print(f"eta/J={_fmt(row[0])}: max_state_infidelity={_fmt(row[1])}")
    return path


def cmd_analytic(config: ScenarioConfig, out_path: str | None = None) -> str:
    """Closed-form strong-hopping probabilities on the configured grid."""
    path = out_path or config.out_path
    if path is None:
        raise ConfigError("no output path: set output.path or pass --out")
    kind = config.spec.coupling_kind()
    if kind == "custom":
        raise ConfigError("analytic solutions exist only for the xy/heisenberg presets")
    lattice = "two_site" if config.spec.n_sites == 2 else "three_site_middle_start"
    times = config.grid.times()
    j = config.spec.j_ref
    if lattice == "three_site_middle_start":
        # quarter couplings instead of half: same closed form at half the rate
        solution = analytic_two_site(kind, times, j=j / 2.0)
    else:
        solution = analytic_two_site(kind, times, j=j)
    rows = zip(times, solution.p_up, solution.p_down)
    _write_csv(path, ["t", "alpha_up_sq", "alpha_down_sq"], rows)
    print(f"period={_fmt(solution.period)}")
    return path


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinhop",
        description="Spin hopping on a tiny lattice coupled to two static spins",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
        ("simulate", "evolve one scenario and write the observable CSV"),
        ("compare", "exact-vs-effective deviation table over eta/J ratios"),
        ("analytic", "closed-form strong-hopping probabilities"),
    ):
        p = sub.add_parser(name, help=desc)
        p.add_argument("config", help="path to the JSON scenario config")
        p.add_argument("--out", help="output CSV path (overrides output.path)")
        if name == "compare":
            p.add_argument(
                "--ratios", help="comma-separated eta/J ratios (overrides compare.ratios)"
            )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = parse_config(_read_text(args.config))
        if args.command == "simulate":
            cmd_simulate(config, out_path=args.out)
        elif args.command == "compare":
            ratios = None
            if args.ratios:
                try:
                    ratios = tuple(float(r) for r in args.ratios.split(","))
                except ValueError:
                    raise ConfigError(f"bad --ratios value {args.ratios!r}") from None
            cmd_compare(config, ratios=ratios, out_path=args.out)
        elif args.command == "analytic":
            cmd_analytic(config, out_path=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalInvariantError as exc:
        print(f"numerical invariant violated: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
