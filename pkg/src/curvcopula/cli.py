"""Command-line front end.

One JSON config per invocation describes the curve, the section, the
surface kind and command parameters; a few flags (--grid, --tol, --out)
override single fields. Commands print values or verdict JSON on
stdout. Exit codes: 0 pass, 1 semantic failure (not a copula, negative
volume found), 2 config error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .characterize import decide
from .curves import MonotoneCurve
from .errors import ConfigError, DomainError, PropertyViolation
from .sections import generate_compatible_family, section_from_config
from .surfaces import build_surface, write_grid_csv
from .verify import check_copula, find_worst_rectangle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3

_TOP_KEYS = {"surface", "curve", "section", "points", "grid", "tol", "out",
             "generate"}

_DEFAULT_GRID = 100
_DEFAULT_TOL = 1e-9


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    return cfg


def _curve_from(cfg: dict) -> MonotoneCurve | None:
    raw = cfg.get("curve")
    if raw is None:
        return None
    return MonotoneCurve.from_config(raw)


def _section_from(cfg: dict, curve: MonotoneCurve | None):
    raw = cfg.get("section")
    if raw is None:
        return None
    if curve is None:
        raise ConfigError("a 'section' config requires a 'curve'")
    return section_from_config(curve, raw)


def _surface_from(cfg: dict, default: str | None = None):
    kind = cfg.get("surface", default)
    if kind is None:
        raise ConfigError("config needs a 'surface' kind")
    if not isinstance(kind, str):
        raise ConfigError("'surface' must be a string kind")
    curve = _curve_from(cfg)
    return build_surface(kind, curve, _section_from(cfg, curve))


def _grid_cells(cfg: dict, args) -> int:
    n = args.grid if args.grid is not None else cfg.get("grid", _DEFAULT_GRID)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigError("'grid' must be a positive cell count")
    return n


def _tolerance(cfg: dict, args) -> float:
    tol = args.tol if args.tol is not None else cfg.get("tol", _DEFAULT_TOL)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol < 0:
        raise ConfigError("'tol' must be a nonnegative number")
    return float(tol)


def _round12(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {key: _round12(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(item) for item in obj]
    return obj


def _print_json(obj: dict) -> None:
    print(json.dumps(_round12(obj), indent=2))


def cmd_eval(args) -> int:
    cfg = _load_config(args.config)
    surface = _surface_from(cfg)
    points = cfg.get("points")
    if not isinstance(points, list) or not points:
        raise ConfigError("eval needs a nonempty 'points' list")
    values = []
    for point in points:
        if not isinstance(point, (list, tuple)) or len(point) != 2:
            raise ConfigError("each point must be a [u, v] pair")
        values.append(surface.at(float(point[0]), float(point[1])))
    for value in values:
        print(f"{value:.12g}")
    return EXIT_OK


def cmd_characterize(args) -> int:
    cfg = _load_config(args.config)
    curve = _curve_from(cfg)
    if curve is None:
        raise ConfigError("characterize needs a 'curve'")
    section = _section_from(cfg, curve)
    if section is None:
        raise ConfigError("characterize needs a 'section'")
    tol = _tolerance(cfg, args)
    verdict = decide(section, form_tol=tol, compat_tol=tol)
    _print_json(verdict.to_dict())
    return EXIT_OK if verdict.is_copula else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    surface = _surface_from(cfg, default="upper")
    report = check_copula(surface, _grid_cells(cfg, args), _tolerance(cfg, args))
    _print_json(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_counterexample(args) -> int:
    cfg = _load_config(args.config)
    surface = _surface_from(cfg, default="upper")
    report = find_worst_rectangle(surface, _grid_cells(cfg, args))
    _print_json(report.to_dict())
    return EXIT_FAIL if report.volume < -_tolerance(cfg, args) else EXIT_OK


def cmd_grid(args) -> int:
    cfg = _load_config(args.config)
    surface = _surface_from(cfg)
    out = args.out if args.out is not None else cfg.get("out")
    if not isinstance(out, str) or not out:
        raise ConfigError("grid needs an output path ('out' or --out)")
    try:
        write_grid_csv(surface, _grid_cells(cfg, args), out)
    except OSError as exc:
        raise ConfigError(f"cannot write {out!r}: {exc}") from exc
    return EXIT_OK


def cmd_generate(args) -> int:
    cfg = _load_config(args.config)
    curve = _curve_from(cfg)
    if curve is None:
        raise ConfigError("generate needs a 'curve'")
    params = cfg.get("generate")
    if not isinstance(params, dict):
        raise ConfigError("generate needs a 'generate' object")
    unknown = set(params) - {"a1", "b1", "n"}
    if unknown:
        raise ConfigError(f"unknown generate fields: {sorted(unknown)}")
    try:
        a1 = float(params["a1"])
        b1 = float(params["b1"])
        n = int(params["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("generate needs numeric a1, b1 and integer n") from exc
    family = generate_compatible_family(curve, a1, b1, n)
    _print_json({"intervals": family.to_json_obj()})
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvcopula",
        description="Evaluate, verify and characterize quasi-copulas with a "
                    "prescribed section along a monotone curve.")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "eval": (cmd_eval, "evaluate a surface at listed points"),
        "characterize": (cmd_characterize,
                         "decide whether the greatest surface is a copula"),
        "verify": (cmd_verify, "sweep rectangles for negative mass"),
        "counterexample": (cmd_counterexample,
                           "search for the lowest-mass rectangle"),
        "grid": (cmd_grid, "export surface values as CSV"),
        "generate": (cmd_generate, "generate a compatible interval family"),
    }
    for name, (func, help_text) in commands.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("config", help="path to a JSON job config")
        cmd.add_argument("--grid", type=int, default=None,
                         help="cell count per axis (grid has one more point)")
        cmd.add_argument("--tol", type=float, default=None,
                         help="verdict tolerance")
        cmd.add_argument("--out", default=None,
                         help="output path (grid command)")
        cmd.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, PropertyViolation) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
