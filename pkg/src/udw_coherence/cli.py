"""Command line: ``point``, ``sweep``, ``validate`` and ``state``.

Every flag mirrors a key of the config document (see ``udw_coherence.config``);
flags given on the command line win over ``--config`` values.
"""
from __future__ import annotations

import argparse
import contextlib
import sys

from . import __version__
from .closed_form import InternalConsistencyError
from .config import ConfigError, load_config, merge
from .geometry import DegenerateGeometryError, GeometryConfig, GeometryKind
from .oracle import QuadratureSettings
from .state import PerturbativeRegimeError, format_state, state_from_config
from .sweep import ALL_OUTPUTS, AXES, PointError, SweepError, SweepSpec, format_number, run_point, run_sweep
from .validate import STANDARD_DISTANCES, STANDARD_GAPS, STANDARD_GEOMETRIES, run_validate

DEFAULTS = {
    "geometry": "parallel",
    "gap_a": 0.1,
    "gap_b": 0.1,
    "gap_c": 0.1,
    "L": 1.0,
    "dz": 1.0,
    "boundary": True,
    "lambda": 1.0,
    "steps": 20,
    "workers": 1,
}


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _names(text):
    return [v.strip() for v in text.split(",") if v.strip()]


def _geometry_flags(p):
    p.add_argument("--config", help="YAML key/value document")
    p.add_argument("--geometry", choices=[k.value for k in GeometryKind])
    p.add_argument("--gap-a", dest="gap_a", type=float, help="Omega_A * sigma")
    p.add_argument("--gap-b", dest="gap_b", type=float)
    p.add_argument("--gap-c", dest="gap_c", type=float)
    p.add_argument("--L", dest="L", type=float, help="detector separation / sigma")
    p.add_argument("--dz", type=float, help="height of the lowest detector / sigma")
    p.add_argument("--positions", help="general geometry: x,y,z;x,y,z;x,y,z")
    p.add_argument("--no-boundary", dest="boundary", action="store_const", const=False,
                   help="drop the mirror (free space)")
    p.add_argument("--lambda", dest="lambda", type=float, help="coupling; outputs scale as lambda^2")
    p.add_argument("--output", "-o", help="write here instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="udw-coherence",
        description="Coherence harvested by three static detectors beside a reflecting plane.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="one parameter set -> one CSV row")
    _geometry_flags(p)
    p.add_argument("--outputs", type=_names, help=f"comma list from {','.join(ALL_OUTPUTS)}")

    p = sub.add_parser("sweep", help="scan one axis (or the gap_B x gap_C grid) -> CSV")
    _geometry_flags(p)
    p.add_argument("--axis", choices=AXES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--outputs", type=_names)
    p.add_argument("--workers", type=int)
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated: header line")

    p = sub.add_parser("validate", help="closed forms vs quadrature oracle; exit 0 iff all pass")
    p.add_argument("--config")
    p.add_argument("--gaps", dest="validate_gaps", type=_floats, help="comma list of gaps")
    p.add_argument("--distances", dest="validate_distances", type=_floats, help="comma list of L = dz values")
    p.add_argument("--geometries", dest="validate_geometries", type=_names)
    p.add_argument("--no-boundary", dest="boundary", action="store_const", const=False,
                   help="free-space checks only")
    p.add_argument("--epsilon-schedule", dest="epsilon_schedule", type=_floats)
    p.add_argument("--tau-window", dest="tau_window", type=float)
    p.add_argument("--grid", type=int)
    p.add_argument("--mode", choices=("reduced", "direct"))
    p.add_argument("--no-audit", action="store_true", help="skip the BC substitution audit")
    p.add_argument("--output", "-o")

    p = sub.add_parser("state", help="dump the 8x8 density matrix")
    _geometry_flags(p)
    return parser


def _settings(args) -> dict:
    cli = {k: v for k, v in vars(args).items() if k not in ("command", "config", "no_timestamp", "no_audit")}
    file_values = load_config(args.config) if getattr(args, "config", None) else {}
    out = dict(DEFAULTS)
    out.update(merge(file_values, cli))
    return out


def _parse_positions(value):
    if isinstance(value, str):
        value = [[float(c) for c in p.split(",")] for p in value.split(";")]
    return tuple(tuple(float(c) for c in p) for p in value)


def _geometry(s: dict) -> GeometryConfig:
    gaps = (s["gap_a"], s["gap_b"], s["gap_c"])
    kind = GeometryKind(s["geometry"])
    if kind is GeometryKind.GENERAL:
        if not s.get("positions"):
            raise ConfigError("general geometry needs positions")
        return GeometryConfig.general(gaps, _parse_positions(s["positions"]), boundary=s["boundary"])
    return GeometryConfig(kind, gaps, L=s["L"], dz=s["dz"], boundary=s["boundary"])


@contextlib.contextmanager
def _sink(path):
    if path:
        with open(path, "w", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _warn(config):
    if config.gap_order_warning:
        print("warning: gaps not ordered gap_C >= gap_B >= gap_A", file=sys.stderr)


def cmd_point(args, s):
    config = _geometry(s)
    _warn(config)
    row = run_point(config, s["lambda"], s.get("outputs"))
    cols = list(row)
    with _sink(s.get("output")) as out:
        out.write(f"# geometry: {config.kind.value} boundary: {str(config.boundary).lower()} lambda: {s['lambda']:g}\n")
        out.write(",".join(cols) + "\n")
        out.write(",".join(format_number(row[c]) for c in cols) + "\n")
    return 0


def cmd_sweep(args, s):
    missing = [k for k in ("axis", "start", "stop") if s.get(k) is None]
    if missing:
        raise ConfigError(f"sweep needs {', '.join(missing)} (flag or config key)")
    config = _geometry(s)
    _warn(config)
    spec = SweepSpec(config, s["axis"], s["start"], s["stop"], s["steps"], lam=s["lambda"],
                     outputs=tuple(s.get("outputs") or ALL_OUTPUTS), workers=s["workers"])
    with _sink(s.get("output")) as out:
        run_sweep(spec, out=out, timestamp=not args.no_timestamp)
    return 0


def cmd_validate(args, s):
    kw = {k: s[k] for k in ("epsilon_schedule", "tau_window", "grid", "mode") if s.get(k) is not None}
    settings = QuadratureSettings(**kw)
    report = run_validate(
        settings,
        gaps=tuple(s.get("validate_gaps") or STANDARD_GAPS),
        distances=tuple(s.get("validate_distances") or STANDARD_DISTANCES),
        geometries=tuple(s.get("validate_geometries") or STANDARD_GEOMETRIES),
        boundary=s["boundary"],
        audit=not args.no_audit,
    )
    with _sink(s.get("output")) as out:
        out.write(report.format())
    return 0 if report.passed else 1


def cmd_state(args, s):
    config = _geometry(s)
    _warn(config)
    state = state_from_config(config, s["lambda"])
    with _sink(s.get("output")) as out:
        out.write(f"# geometry: {config.kind.value} lambda: {s['lambda']:g} "
                  f"min_eigenvalue: {format_number(state.min_eigenvalue)}\n")
        out.write(format_state(state))
    return 0


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "validate": cmd_validate, "state": cmd_state}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        s = _settings(args)
        return COMMANDS[args.command](args, s)
    except (ConfigError, PointError, SweepError, PerturbativeRegimeError, DegenerateGeometryError,
            InternalConsistencyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
