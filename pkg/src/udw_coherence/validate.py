"""Cross-check of every closed form against the quadrature oracle on a grid."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

from .closed_form import _amplitudes, pair_amplitudes, transition_probability
from .geometry import LABELS, PAIRS, GeometryConfig, GeometryKind, PairDistances
from .oracle import OracleFailure, QuadratureSettings, oracle_C, oracle_P, oracle_X

__all__ = [
    "STANDARD_GAPS",
    "STANDARD_DISTANCES",
    "P_RTOL",
    "CX_RTOL",
    "CX_ATOL",
    "Check",
    "ValidationReport",
    "validation_configs",
    "literal_bc_amplitudes",
    "run_validate",
]

STANDARD_GAPS = (0.0, 0.1, 1.0, 2.0)
STANDARD_DISTANCES = (0.5, 1.0, 2.0, 5.0)
STANDARD_GEOMETRIES = ("parallel", "orthogonal")
# gap of C relative to A and B on the grid, so BC and AC exercise a gap difference
C_GAP_OFFSET = 0.5

P_RTOL = 1e-4
CX_RTOL = 1e-3
CX_ATOL = 1e-8


@dataclass
class Check:
    geometry: str
    quantity: str
    params: str
    closed: complex
    oracle: complex | None
    oracle_error: float | None
    passed: bool
    note: str = ""

    @property
    def deviation(self) -> float:
        if self.oracle is None:
            return math.nan
        return abs(self.closed - self.oracle)


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)
    audit: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def audit_verdict(self) -> str:
        if not self.audit:
            return "no orthogonal points audited"
        gen = sum(a["generic_ok"] for a in self.audit)
        lit = sum(a["literal_ok"] for a in self.audit)
        n = len(self.audit)
        return (f"BC substitution audit over {n} orthogonal points: generic pair formula "
                f"(image z_B + z_C = 3L + 2dz) matches oracle at {gen}/{n}; literal AB-copy "
                f"(image L + 2dz) matches at {lit}/{n}")

    def format(self) -> str:
        buf = io.StringIO()
        buf.write(f"{'geometry':<10} {'qty':<5} {'params':<34} {'closed_form':>44} "
                  f"{'oracle':>44} {'oracle_err':>10} {'|diff|':>10} status\n")
        for c in self.checks:
            oracle = "-" if c.oracle is None else _fmt(c.oracle)
            err = "-" if c.oracle_error is None else f"{c.oracle_error:.2e}"
            dev = "-" if c.oracle is None else f"{c.deviation:.2e}"
            status = "pass" if c.passed else "FAIL"
            if c.note:
                status += f" ({c.note})"
            buf.write(f"{c.geometry:<10} {c.quantity:<5} {c.params:<34} {_fmt(c.closed):>44} "
                      f"{oracle:>44} {err:>10} {dev:>10} {status}\n")
        buf.write(self.audit_verdict() + "\n")
        n = len(self.checks)
        buf.write(f"overall: {'PASS' if self.passed else 'FAIL'} ({n - len(self.failures)}/{n} checks)\n")
        return buf.getvalue()


def _fmt(v: complex) -> str:
    return f"{v.real:+.11e}{v.imag:+.11e}j"


def validation_configs(gaps=STANDARD_GAPS, distances=STANDARD_DISTANCES,
                       geometries=STANDARD_GEOMETRIES, boundary=True):
    """Grid points: L = dz = distance, gaps (g, g, g + 0.5)."""
    for kind in geometries:
        for g in gaps:
            for d in distances:
                yield GeometryConfig(GeometryKind(kind), (g, g, g + C_GAP_OFFSET), L=d, dz=d,
                                     boundary=boundary)


def literal_bc_amplitudes(config: GeometryConfig):
    """BC amplitudes from the AB expressions with gap_A -> gap_C, distances left as for AB."""
    a, b, c = config.detectors
    ab = config.distances("AB")
    return _amplitudes(b.gap, c.gap, PairDistances(ab.direct, ab.image))


def _ok_p(closed, oracle):
    return abs(closed - oracle) <= P_RTOL * abs(oracle)


def _ok_cx(closed, oracle):
    return abs(closed - oracle) <= max(CX_RTOL * abs(oracle), CX_ATOL)


def _describe(config):
    a, b, c = config.gaps
    dz = f"{config.dz:g}" if config.boundary else "inf"
    return f"gaps=({a:g},{b:g},{c:g}) L={config.L:g} dz={dz}"


def run_validate(settings: QuadratureSettings | None = None, gaps=STANDARD_GAPS,
                 distances=STANDARD_DISTANCES, geometries=STANDARD_GEOMETRIES,
                 boundary=True, audit=True) -> ValidationReport:
    """Closed form vs oracle for P, C, X at every grid point.

    Tolerances: P to 1e-4 relative; C and X to 1e-3 relative or 1e-8
    absolute, whichever is looser. An oracle failure marks the point failed
    and the run continues.
    """
    settings = settings or QuadratureSettings()
    report = ValidationReport()
    for config in validation_configs(gaps, distances, geometries, boundary):
        kind = config.kind.value
        desc = _describe(config)
        for label, det in zip(LABELS, config.detectors):
            z = det.z if config.boundary else math.inf
            closed = transition_probability(det.gap, z)
            try:
                res = oracle_P(det.gap, z, settings)
            except OracleFailure as exc:
                report.checks.append(Check(kind, f"P_{label}", desc, closed, None, None, False, str(exc)))
                continue
            report.checks.append(Check(kind, f"P_{label}", desc, closed, res.value.real, res.error,
                                       _ok_p(closed, res.value.real)))
        for name in PAIRS:
            a, b = config.pair(name)
            amp = pair_amplitudes(a, b, boundary=config.boundary)
            for qty, closed, fn in (("C", amp.c, oracle_C), ("X", amp.x, oracle_X)):
                try:
                    res = fn(a, b, settings, boundary=config.boundary)
                except OracleFailure as exc:
                    report.checks.append(Check(kind, f"{qty}_{name}", desc, closed, None, None, False, str(exc)))
                    continue
                report.checks.append(Check(kind, f"{qty}_{name}", desc, closed, res.value, res.error,
                                           _ok_cx(closed, res.value)))
        if audit and config.boundary and config.kind is GeometryKind.ORTHOGONAL:
            _, b, c = config.detectors
            generic = pair_amplitudes(b, c)
            literal = literal_bc_amplitudes(config)
            oc = oracle_C(b, c, settings).value
            ox = oracle_X(b, c, settings).value
            report.audit.append({
                "params": desc,
                "generic_ok": _ok_cx(generic.c, oc) and _ok_cx(generic.x, ox),
                "literal_ok": _ok_cx(literal.c, oc) and _ok_cx(literal.x, ox),
            })
    return report
