"""Brute-force evaluation of the defining double integrals for P, C and X.

The Wightman function is kept at finite ``eps`` and the integrals are done by
composite Gauss-Legendre quadrature on panels graded geometrically towards
the (regularised) light-cone poles. The eps -> 0 limit is then taken by
Richardson extrapolation over a geometric eps schedule.

The regularised integral is analytic in eps with a non-vanishing linear term,
so the extrapolation eliminates eps, eps**2, ... in turn.

Two evaluation modes:

``reduced``
    For static detectors the integrand depends on tau - tau' only, so the
    Gaussian in tau + tau' is integrated analytically and one 1-D integral
    over u = tau - tau' remains.
``direct``
    Genuine nested 2-D quadrature over (tau, tau'); used to check the
    reduction itself.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import DegenerateGeometryError, DetectorSpec

__all__ = [
    "OracleFailure",
    "QuadratureSettings",
    "OracleResult",
    "wightman",
    "richardson",
    "oracle_P",
    "oracle_C",
    "oracle_X",
]

SQRT_PI = math.sqrt(math.pi)
_W_PREF = -1.0 / (4.0 * math.pi**2)
_MACH_EPS = float(np.finfo(float).eps)


class OracleFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureSettings:
    epsilon_schedule: tuple = (10**-1.5, 10**-2.0, 10**-2.5, 10**-3.0)
    tau_window: float = 8.0
    grid: int = 16
    extrapolation_order: int | None = None
    mode: str = "reduced"
    rtol: float = 1e-10
    atol: float = 1e-14
    max_doublings: int = 6
    outer_panels: int = 32

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilon_schedule)
        object.__setattr__(self, "epsilon_schedule", eps)
        if len(eps) < 3:
            raise ValueError("epsilon_schedule needs at least 3 entries")
        if any(not e > 0 for e in eps):
            raise ValueError("epsilon values must be > 0")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilon_schedule must be strictly decreasing")
        ratios = [b / a for a, b in zip(eps, eps[1:])]
        if max(ratios) - min(ratios) > 1e-9 * ratios[0]:
            raise ValueError("epsilon_schedule must be geometric")
        if self.tau_window < 8:
            raise ValueError("tau_window must be >= 8")
        if self.grid < 2:
            raise ValueError("grid must be >= 2")
        order = self.extrapolation_order
        if order is None:
            order = len(eps) - 1
        if not 1 <= order <= len(eps) - 1:
            raise ValueError(f"extrapolation_order must lie in [1, {len(eps) - 1}]")
        object.__setattr__(self, "extrapolation_order", int(order))
        if self.mode not in ("reduced", "direct"):
            raise ValueError(f"mode must be 'reduced' or 'direct', got {self.mode!r}")

    @property
    def ratio(self) -> float:
        e = self.epsilon_schedule
        return e[1] / e[0]

    def halved(self) -> "QuadratureSettings":
        from dataclasses import replace
        return replace(self, epsilon_schedule=tuple(e / 2 for e in self.epsilon_schedule))


@dataclass(frozen=True)
class OracleResult:
    value: complex
    error: float
    per_epsilon: tuple = field(default=(), repr=False)

    def __float__(self):
        return float(self.value.real)


def wightman(dt, d_direct, d_image, eps):
    """Image-method Wightman function at time separation dt.

    ``d_image = inf`` drops the image term (free space).
    """
    if not eps > 0:
        raise ValueError("eps must be > 0")
    t = np.asarray(dt, dtype=float) - 1j * eps
    t2 = t * t
    out = 1.0 / (t2 - d_direct * d_direct)
    if math.isfinite(d_image):
        out = out - 1.0 / (t2 - d_image * d_image)
    out = _W_PREF * out
    return out if out.ndim else complex(out)


def richardson(values, ratio, order):
    """Extrapolate f(eps) -> f(0) assuming f = f0 + a1 eps + a2 eps^2 + ...

    ``values`` are taken at eps_k = eps_0 * ratio**k. Returns the table's
    diagonal; its last entry is the estimate.
    """
    values = [complex(v) for v in values]
    table = [values]
    for m in range(1, order + 1):
        rm = ratio**m
        prev = table[-1]
        table.append([(prev[k] - rm * prev[k - 1]) / (1 - rm) for k in range(1, len(prev))])
    return [row[-1] for row in table]


@functools.lru_cache(maxsize=None)
def _leggauss(n):
    return np.polynomial.legendre.leggauss(n)


def _breakpoints(lo, hi, poles, eps):
    pts = {lo, hi}
    pts.update(np.arange(math.ceil(lo), math.floor(hi) + 1, 1.0).tolist())
    span = hi - lo
    for p in poles:
        if not (lo - 1 <= p <= hi + 1):
            continue
        if lo < p < hi:
            pts.add(p)
        h = eps
        while h < span:
            for q in (p - h, p + h):
                if lo < q < hi:
                    pts.add(q)
            h *= 2
    bp = np.array(sorted(pts))
    keep = np.concatenate(([True], np.diff(bp) > 1e-14))
    return bp[keep]


def _rule(bp, n):
    x, w = _leggauss(n)
    a, b = bp[:-1], bp[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _integrate(fun, segments, settings):
    """Sum of integrals over [(breakpoints, ...)], doubling nodes until stable."""
    n = settings.grid
    prev = None
    for _ in range(settings.max_doublings + 1):
        total = 0j
        scale = 0.0
        for bp in segments:
            nodes, weights = _rule(bp, n)
            terms = weights * fun(nodes)
            total += terms.sum()
            scale += np.abs(terms).sum()
        if prev is not None:
            diff = abs(total - prev)
            # near the poles terms of size 1/eps cancel; nothing below their
            # round-off can be resolved
            floor = 16 * _MACH_EPS * scale
            if diff <= settings.atol + settings.rtol * abs(total) + floor:
                return total, max(diff, floor)
        prev = total
        n *= 2
    raise OracleFailure(f"quadrature did not stabilise after {settings.max_doublings} doublings")


def _extrapolate(per_eps, quad_errs, settings):
    diag = richardson(per_eps, settings.ratio, settings.extrapolation_order)
    best = diag[-1]
    change = abs(diag[-1] - diag[-2])
    # Richardson amplifies input noise by roughly sum |weights|
    r = settings.ratio
    amp = 1.0
    for m in range(1, settings.extrapolation_order + 1):
        amp *= (1 + r**m) / (1 - r**m)
    err = change + amp * max(quad_errs)
    if len(diag) >= 3:
        before = abs(diag[-2] - diag[-3])
        # each per-eps value is only trusted to the quadrature tolerance, so
        # wobbles below a few times that are noise, not divergence
        noise = settings.atol + settings.rtol * abs(best)
        floor = 10 * amp * max(noise, max(quad_errs))
        if change > floor and change > before:
            raise OracleFailure(
                f"eps extrapolation not contracting (last change {change:.3e} > previous {before:.3e})"
            )
    return OracleResult(complex(best), float(err), tuple(per_eps))


def _poles(d_direct, d_image, window):
    poles = [d_direct, -d_direct]
    if math.isfinite(d_image) and d_image < window + 1:
        poles += [d_image, -d_image]
    return poles


def _distances(a: DetectorSpec, b: DetectorSpec, boundary: bool):
    ra, rb = np.asarray(a.position), np.asarray(b.position)
    d_perp = math.hypot(ra[0] - rb[0], ra[1] - rb[1])
    direct = math.hypot(d_perp, ra[2] - rb[2])
    image = math.hypot(d_perp, ra[2] + rb[2]) if boundary else math.inf
    return direct, image


# --- reduced (1-D) mode -----------------------------------------------------

def _reduced_c(gap_a, gap_b, d, d_img, settings):
    U = 2 * settings.tau_window
    half_sum = 0.5 * (gap_a + gap_b)
    pref = SQRT_PI * math.exp(-0.25 * (gap_a - gap_b) ** 2)
    vals, errs = [], []
    for eps in settings.epsilon_schedule:
        def fun(u, eps=eps):
            return np.exp(-0.25 * u * u - 1j * half_sum * u) * wightman(u, d, d_img, eps)
        bp = _breakpoints(-U, U, _poles(d, d_img, U), eps)
        total, err = _integrate(fun, [bp], settings)
        vals.append(pref * total)
        errs.append(pref * err)
    return _extrapolate(vals, errs, settings)


def _reduced_x(gap_a, gap_b, d, d_img, settings):
    U = 2 * settings.tau_window
    half_diff = 0.5 * (gap_a - gap_b)
    pref = -SQRT_PI * math.exp(-0.25 * (gap_a + gap_b) ** 2)
    vals, errs = [], []
    for eps in settings.epsilon_schedule:
        def fun(u, eps=eps):
            # theta(u) W(u) + theta(-u) W(-u); the split at u = 0 is a panel edge
            ordered = wightman(np.abs(u), d, d_img, eps)
            return np.exp(-0.25 * u * u + 1j * half_diff * u) * ordered
        poles = _poles(d, d_img, U)
        neg = _breakpoints(-U, 0.0, poles, eps)
        pos = _breakpoints(0.0, U, poles, eps)
        total, err = _integrate(fun, [neg, pos], settings)
        vals.append(pref * total)
        errs.append(pref * err)
    return _extrapolate(vals, errs, settings)


# --- direct (2-D) mode ------------------------------------------------------

def _outer_rule(settings):
    T = settings.tau_window
    bp = np.linspace(-T, T, settings.outer_panels + 1)
    return _rule(bp, settings.grid)


def _direct(kernel, phase_a, phase_b, d, d_img, settings, ordered):
    """Nested quadrature of chi(t) chi(t') e^{i(phase_a t + phase_b t')} K(t - t')."""
    T = settings.tau_window
    vals, errs = [], []
    tau_p, w_p = _outer_rule(settings)
    for eps in settings.epsilon_schedule:
        def inner(tp, eps=eps):
            def fun(t):
                return np.exp(-0.5 * t * t + 1j * phase_a * t) * kernel(t - tp, eps)
            poles = [tp + p for p in _poles(d, d_img, 2 * T)]
            if ordered:
                segs = [_breakpoints(-T, tp, poles, eps), _breakpoints(tp, T, poles, eps)]
                segs = [s for s in segs if len(s) > 1]
            else:
                segs = [_breakpoints(-T, T, poles, eps)]
            return _integrate(fun, segs, settings)

        total = 0j
        err = 0.0
        for tp, wp in zip(tau_p, w_p):
            val, e = inner(tp)
            outer = wp * math.exp(-0.5 * tp * tp) * np.exp(1j * phase_b * tp)
            total += outer * val
            err += abs(outer) * e
        vals.append(total)
        errs.append(err)
    return _extrapolate(vals, errs, settings)


def _direct_c(gap_a, gap_b, d, d_img, settings):
    def kernel(u, eps):
        return wightman(u, d, d_img, eps)
    return _direct(kernel, -gap_a, gap_b, d, d_img, settings, ordered=False)


def _direct_x(gap_a, gap_b, d, d_img, settings):
    def kernel(u, eps):
        return -wightman(np.abs(u), d, d_img, eps)
    return _direct(kernel, gap_a, gap_b, d, d_img, settings, ordered=True)


# --- public surface ---------------------------------------------------------

_DEFAULT = QuadratureSettings()


def oracle_C(a: DetectorSpec, b: DetectorSpec, settings: QuadratureSettings = _DEFAULT,
             boundary: bool = True) -> OracleResult:
    """C_{ab} from its defining double integral (lambda = 1). a == b gives P_a."""
    d, d_img = _distances(a, b, boundary)
    run = _reduced_c if settings.mode == "reduced" else _direct_c
    return run(a.gap, b.gap, d, d_img, settings)


def oracle_X(a: DetectorSpec, b: DetectorSpec, settings: QuadratureSettings = _DEFAULT,
             boundary: bool = True) -> OracleResult:
    """X_{ab} from its defining time-ordered double integral (lambda = 1)."""
    d, d_img = _distances(a, b, boundary)
    if d == 0:
        raise DegenerateGeometryError("X needs two distinct detector positions")
    run = _reduced_x if settings.mode == "reduced" else _direct_x
    return run(a.gap, b.gap, d, d_img, settings)


def oracle_P(gap: float, z: float, settings: QuadratureSettings = _DEFAULT) -> OracleResult:
    """Transition probability of a static detector at height z (z = inf: no mirror)."""
    boundary = math.isfinite(z)
    det = DetectorSpec(gap, (0.0, 0.0, z if boundary else 0.0))
    res = oracle_C(det, det, settings, boundary=boundary)
    return OracleResult(complex(res.value.real), res.error + abs(res.value.imag), res.per_epsilon)
