"""Command-line front end: run named scenarios, emit CSV or JSON reports.

Exit codes: 0 success, 2 configuration error, 3 statistical acceptance
failure under --check. Flags override values from an optional flat
key = value config file. All angles are radians.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import __version__, checks, taxonomy
from .exemplars import (
    BURNABILITY,
    DRY_INTACT,
    FLOATABILITY,
    LEFT_HANDEDNESS,
    NON_BURNABILITY,
    ElasticBandState,
)
from .machines import ElasticApparatus, SegmentBreak, UniformBreak, quantum_machine_process, sphere_point_at
from .product import ProductObservation, meet_actual, product_process
from .randomness import TrialStream, substream_seed
from .stats import SweepPoint, run_trials, sweep
from .taxonomy import default_suite, taxonomy_table

SCENARIOS = ("quantum-machine", "epsilon-sweep", "wood-product", "elastic", "classify", "all")

QM_HEADER = ("gamma_rad", "epsilon", "analytic_p", "empirical_p", "yes", "trials",
             "wilson_lo", "wilson_hi", "seed")
TAXONOMY_HEADER = ("property", "effect", "predictability", "persistence", "witness_state")
WOOD_HEADER = ("product", "trials", "yes", "empirical_p", "analytic_p",
               "wilson_lo", "wilson_hi", "meet_actual", "seed")
ELASTIC_HEADER = ("step", "n_fragments", "total_length", "max_fragment",
                  "subhalf_fragments", "fragmentation_p", "seed")

_DEFAULT_TRIALS = {
    "quantum-machine": 100_000,
    "epsilon-sweep": 10_000,
    "wood-product": 10_000,
    "elastic": 10_000,
    "classify": 1,
    "all": 10_000,
}
_DEFAULT_GRID = {"quantum-machine": 13, "epsilon-sweep": 25}
_DEFAULT_EPSILONS = (0.25, 0.5, 0.75, 1.0)

_CHECKS_BY_SCENARIO = {
    "quantum-machine": (checks.check_uniform_curve,),
    "epsilon-sweep": (checks.check_segment_regime_map,),
    "wood-product": (checks.check_product_choice_theorem, checks.check_compaction_creation),
    "elastic": (checks.check_elastic_suite,),
    "classify": (checks.check_taxonomy_fixture,),
    "all": checks.ALL_CHECKS,
}


class ConfigError(Exception):
    pass


def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".9g")
    if value is None:
        return ""
    return str(value)


def emit_csv(out: Optional[Path], header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Fixed-schema CSV: header then rows, 9 significant digits, UTF-8, LF."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_cell(v) for v in row])
    _write_text(out, buffer.getvalue())


def emit_json(out: Optional[Path], meta: dict, header: Sequence[str],
              rows: Iterable[Sequence]) -> None:
    """JSON mirror of the CSV schema: row objects under "rows" plus "meta"."""
    payload = {
        "meta": meta,
        "rows": [
            {key: (None if value == "" else value) for key, value in zip(header, row)}
            for row in rows
        ],
    }
    _write_text(out, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_text(out: Optional[Path], text: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as err:
        raise ConfigError(f"cannot write --out {out}: {err}") from err


def parse_config_file(path: Path) -> dict:
    """Flat ``key = value`` lines; # starts a comment; keys match long flags."""
    known = {"trials", "seed", "gamma_grid", "epsilon", "out", "format", "workers"}
    values: dict = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read --config {path}: {err}") from err
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        if key in ("trials", "seed", "gamma_grid", "workers"):
            values[key] = int(value)
        elif key == "epsilon":
            values[key] = [float(tok) for tok in value.replace(",", " ").split()]
        else:
            values[key] = value
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obsim",
        description="simulate observation scenarios and verify their statistics",
    )
    parser.add_argument("--version", action="version", version=f"obsim {__version__}")
    sub = parser.add_subparsers(dest="scenario", required=True, metavar="|".join(SCENARIOS))
    for name in SCENARIOS:
        sp = sub.add_parser(name)
        sp.add_argument("--trials", type=int, default=None, help="trials per grid point")
        sp.add_argument("--seed", type=int, default=None, help="64-bit unsigned master seed")
        sp.add_argument("--gamma-grid", type=int, default=None,
                        help="count of equispaced angles on [0, pi] inclusive")
        sp.add_argument("--epsilon", type=float, action="append", default=None,
                        help="segment width in [0, 1]; repeatable")
        sp.add_argument("--out", type=str, default=None, help="output path (stdout if omitted)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--check", action="store_true",
                        help="assert the acceptance criteria for this scenario (exit 3 on failure)")
        sp.add_argument("--workers", type=int, default=None, help="worker threads for trials")
        sp.add_argument("--config", type=str, default=None, help="flat key = value config file")
    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    scenario = args.scenario
    cfg = {
        "trials": _DEFAULT_TRIALS[scenario],
        "seed": 0,
        "gamma_grid": _DEFAULT_GRID.get(scenario, 13),
        "epsilon": None,
        "out": None,
        "format": None,
        "workers": 1,
    }
    if args.config is not None:
        cfg.update(parse_config_file(Path(args.config)))
    for key in ("trials", "seed", "gamma_grid", "epsilon", "out", "format", "workers"):
        flag_value = getattr(args, key)
        if flag_value is not None:
            cfg[key] = flag_value

    if cfg["trials"] < 1:
        raise ConfigError(f"--trials must be >= 1, got {cfg['trials']}")
    if not 0 <= cfg["seed"] < 2**64:
        raise ConfigError(f"--seed must be a 64-bit unsigned integer, got {cfg['seed']}")
    if cfg["gamma_grid"] < 2:
        raise ConfigError(f"--gamma-grid must be >= 2, got {cfg['gamma_grid']}")
    if cfg["epsilon"] is not None:
        for eps in cfg["epsilon"]:
            if not 0.0 <= eps <= 1.0:
                raise ConfigError(f"--epsilon must be in [0, 1], got {eps}")
    if cfg["workers"] < 1:
        raise ConfigError(f"--workers must be >= 1, got {cfg['workers']}")
    if cfg["format"] is None:
        out = cfg["out"]
        cfg["format"] = "json" if out and str(out).endswith(".json") else "csv"
    elif cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"--format must be csv or json, got {cfg['format']}")
    cfg["scenario"] = scenario
    cfg["check"] = args.check
    return cfg


def _machine_rows(cfg: dict, widths: Optional[Sequence[float]]) -> list[tuple]:
    """Shared by the quantum-machine and epsilon-sweep scenarios; a width of
    None means the uniform band (reported as epsilon 1, its exact equivalent)."""
    gammas = np.linspace(0.0, math.pi, cfg["gamma_grid"])
    points = []
    labels = []
    for width in widths if widths is not None else [None]:
        profile = UniformBreak() if width is None else SegmentBreak(width)
        process = quantum_machine_process(ElasticApparatus((0.0, 0.0, 1.0), 1.0, profile))
        for gamma in gammas:
            points.append(SweepPoint({"gamma": float(gamma)}, process, sphere_point_at(float(gamma))))
            labels.append((float(gamma), 1.0 if width is None else width))
    result = sweep(points, cfg["trials"], cfg["seed"], workers=cfg["workers"])
    rows = []
    for (gamma, eps), report in zip(labels, result.reports):
        rows.append((gamma, eps, report.analytic, report.p_hat, report.yes,
                     report.trials, report.wilson_low, report.wilson_high, report.seed))
    return rows


def _scenario_quantum_machine(cfg: dict) -> tuple[tuple, list[tuple]]:
    eps = cfg["epsilon"]
    if eps is not None and len(eps) > 1:
        raise ConfigError("quantum-machine takes at most one --epsilon; use epsilon-sweep for several")
    return QM_HEADER, _machine_rows(cfg, eps)


def _scenario_epsilon_sweep(cfg: dict) -> tuple[tuple, list[tuple]]:
    eps = cfg["epsilon"] if cfg["epsilon"] is not None else list(_DEFAULT_EPSILONS)
    return QM_HEADER, _machine_rows(cfg, eps)


def _scenario_wood_product(cfg: dict) -> tuple[tuple, list[tuple]]:
    rows = []
    products = (
        ProductObservation((BURNABILITY, FLOATABILITY)),
        ProductObservation((NON_BURNABILITY, FLOATABILITY)),
    )
    for k, prod in enumerate(products):
        process = product_process(prod)
        report = run_trials(process, DRY_INTACT, cfg["trials"], substream_seed(cfg["seed"], k),
                            workers=cfg["workers"])
        rows.append((process.id, report.trials, report.yes, report.p_hat, report.analytic,
                     report.wilson_low, report.wilson_high, meet_actual(prod, DRY_INTACT),
                     report.seed))
    return WOOD_HEADER, rows


def _scenario_elastic(cfg: dict) -> tuple[tuple, list[tuple]]:
    seed = cfg["seed"]
    state = ElasticBandState.unbroken(1.0)
    half = 0.5 * state.original_length
    subhalf = 0
    rows = [(0, 1, 1.0, 1.0, 0, 0.0, seed)]
    for i in range(cfg["trials"]):
        before = state.fragments
        j = before.index(max(before))
        parent = before[j]
        _outcome, state = LEFT_HANDEDNESS.kernel(state, TrialStream(seed, i))
        left, right = state.fragments[j], state.fragments[j + 1]
        subhalf += (left < half) + (right < half) - (parent < half)
        n = len(state.fragments)
        rows.append((i + 1, n, math.fsum(state.fragments), max(state.fragments),
                     subhalf, subhalf / n, seed))
    return ELASTIC_HEADER, rows


def _scenario_classify(cfg: dict) -> tuple[tuple, list[tuple]]:
    rows = []
    for row in taxonomy_table(default_suite()):
        rows.append((
            row.property_name,
            row.effect.value if row.effect else "not-decidable",
            row.predictability.value if row.predictability else "not-decidable",
            row.persistence.value if row.persistence else "not-decidable",
            str(row.witness) if row.witness is not None else "",
        ))
    return TAXONOMY_HEADER, rows


_SCENARIO_RUNNERS = {
    "quantum-machine": _scenario_quantum_machine,
    "epsilon-sweep": _scenario_epsilon_sweep,
    "wood-product": _scenario_wood_product,
    "elastic": _scenario_elastic,
    "classify": _scenario_classify,
}


def _emit(cfg: dict, scenario: str, header: tuple, rows: list, out: Optional[Path]) -> None:
    if cfg["format"] == "json":
        meta = {
            "scenario": scenario,
            "seed": cfg["seed"],
            "trials": cfg["trials"],
            "version": __version__,
        }
        emit_json(out, meta, header, [[_fmt_or_raw(v) for v in row] for row in rows])
    else:
        emit_csv(out, header, rows)


def _fmt_or_raw(value):
    # JSON keeps native types; floats are rounded like the CSV for parity
    if isinstance(value, float):
        return float(format(value, ".9g"))
    return value


def _run(argv: Optional[Sequence[str]]) -> int:
    args = _build_parser().parse_args(argv)
    cfg = _merge_config(args)
    scenario = cfg["scenario"]

    if scenario == "all":
        if cfg["out"] is None:
            raise ConfigError("scenario 'all' needs --out pointing at a directory")
        outdir = Path(cfg["out"])
        outdir.mkdir(parents=True, exist_ok=True)
        for name, runner in _SCENARIO_RUNNERS.items():
            sub_cfg = dict(cfg)
            sub_cfg["trials"] = min(cfg["trials"], _DEFAULT_TRIALS[name])
            header, rows = runner(sub_cfg)
            path = outdir / f"{name.replace('-', '_')}.{cfg['format']}"
            _emit(sub_cfg, name, header, rows, path)
    else:
        header, rows = _SCENARIO_RUNNERS[scenario](cfg)
        out = Path(cfg["out"]) if cfg["out"] is not None else None
        _emit(cfg, scenario, header, rows, out)

    if cfg["check"]:
        failures = []
        for check in _CHECKS_BY_SCENARIO[scenario]:
            result = check()
            if not result.passed:
                failures.append(result)
                print(f"check failed: {result.name}: {result.detail}", file=sys.stderr)
        if failures:
            return 3
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return _run(argv)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # argparse --help (0) and usage errors (2)
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2


if __name__ == "__main__":
    raise SystemExit(main())
