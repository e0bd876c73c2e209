"""Run configuration: one flat YAML document, keys mirroring the CLI flags.

Recognised keys (all optional)::

    geometry: parallel          # parallel | orthogonal | general
    gap_a: 0.1                  # Omega_A * sigma
    gap_b: 0.1
    gap_c: 0.1
    L: 1.0                      # separation / sigma
    dz: 1.0                     # height of the lowest detector / sigma
    boundary: true              # false drops the mirror
    positions: [[0,0,1], [1,0,1], [2,0,1]]   # general geometry only
    lambda: 1.0                 # coupling; outputs scale as lambda**2
    axis: L_over_sigma          # sweep axis
    start: 0.5
    stop: 5.0
    steps: 20
    outputs: [C_l1, P_A]        # default: every column
    workers: 1
    output: sweep.csv           # default: stdout
    # validate only
    epsilon_schedule: [0.0316227766, 0.01, 0.00316227766, 0.001]
    tau_window: 8
    grid: 16
    mode: reduced               # reduced | direct
    validate_gaps: [0, 0.1, 1, 2]
    validate_distances: [0.5, 1, 2, 5]
    validate_geometries: [parallel, orthogonal]

Command-line flags override file values. The environment variable
``UDW_COHERENCE_OUTPUT`` overrides ``output`` and nothing else.
"""
from __future__ import annotations

import os

import yaml

__all__ = ["KEYS", "OUTPUT_ENV", "ConfigError", "load_config", "merge"]

OUTPUT_ENV = "UDW_COHERENCE_OUTPUT"

KEYS = {
    "geometry": str,
    "gap_a": float,
    "gap_b": float,
    "gap_c": float,
    "L": float,
    "dz": float,
    "boundary": bool,
    "positions": list,
    "lambda": float,
    "axis": str,
    "start": float,
    "stop": float,
    "steps": int,
    "outputs": list,
    "workers": int,
    "output": str,
    "epsilon_schedule": list,
    "tau_window": float,
    "grid": int,
    "mode": str,
    "validate_gaps": list,
    "validate_distances": list,
    "validate_geometries": list,
}


class ConfigError(ValueError):
    pass


def _coerce(key, value):
    kind = KEYS[key]
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false, got {value!r}")
        return value
    if kind is list:
        if isinstance(value, str):
            value = [v.strip() for v in value.split(",") if v.strip()]
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{key} must be a list, got {value!r}")
        return list(value)
    if kind is int and isinstance(value, float) and not value.is_integer():
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: cannot read {value!r} as {kind.__name__}") from exc


def load_config(path) -> dict:
    with open(path) as fh:
        doc = yaml.safe_load(fh)
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a key/value document")
    unknown = sorted(set(doc) - set(KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown keys {unknown}")
    return {k: _coerce(k, v) for k, v in doc.items()}


def merge(file_values: dict, cli_values: dict, environ=None) -> dict:
    """File values, then non-None CLI values, then the output-path env override."""
    out = dict(file_values)
    out.update({k: v for k, v in cli_values.items() if v is not None})
    environ = os.environ if environ is None else environ
    if environ.get(OUTPUT_ENV):
        out["output"] = environ[OUTPUT_ENV]
    return out
