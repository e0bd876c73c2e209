"""Closed-form O(lambda^2) matrix elements for static detectors, Gaussian switching.

Everything here is evaluated at lambda = 1 with sigma = 1; ``rescale`` on the
result types multiplies by lambda**2.

The auxiliary functions are written through the Faddeeva function
``w(zeta) = erfcx(-i zeta)``. With ``v = S/2`` and ``y = d/2`` one has

    exp(-y**2) * (Im[exp(2ivy) erf(v + iy)] - sin(2vy)) = exp(-v**2) Im w(y + iv)

so the exp(+d**2/4) growth of erf along the imaginary direction cancels
analytically and nothing overflows at large separations.
"""
from __future__ import annotations

import collections
import logging
import math
from dataclasses import dataclass

from .geometry import PAIRS, DetectorSpec, GeometryConfig, PairDistances, pair_distances
from .special_fn import erfc_real, erfc_scaled

__all__ = [
    "SMALL_D",
    "InternalConsistencyError",
    "PairAmplitudes",
    "Probabilities",
    "f_aux",
    "g_aux",
    "free_probability",
    "transition_probability",
    "pair_amplitudes",
    "probabilities",
    "all_pair_amplitudes",
    "DIAGNOSTICS",
]

log = logging.getLogger(__name__)

SMALL_D = 1e-3
CLAMP_FLOOR = -1e-12
SQRT_PI = math.sqrt(math.pi)
_PREF = 1.0 / (4.0 * SQRT_PI)

DIAGNOSTICS = collections.Counter()


class InternalConsistencyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PairAmplitudes:
    c: complex
    x: complex
    distances: PairDistances

    def rescale(self, lam: float) -> "PairAmplitudes":
        s = lam * lam
        return PairAmplitudes(self.c * s, self.x * s, self.distances)


@dataclass(frozen=True)
class Probabilities:
    p_a: float
    p_b: float
    p_c: float

    def __iter__(self):
        return iter((self.p_a, self.p_b, self.p_c))

    @property
    def total(self) -> float:
        return self.p_a + self.p_b + self.p_c

    def rescale(self, lam: float) -> "Probabilities":
        s = lam * lam
        return Probabilities(self.p_a * s, self.p_b * s, self.p_c * s)


def _taylor_coeffs(v):
    """Coefficients (c0, c2, c4) with f = c0 + c2 y^2 + c4 y^4 + O(y^6), y = d/2.

    Uses Im w^(n)(iv) for odd n from ``w' = -2 zeta w + 2i/sqrt(pi)`` and
    ``w^(n+1) = -2 zeta w^(n) - 2n w^(n-1)``.
    """
    zeta = 1j * v
    w = [complex(erfc_scaled(v))]
    w.append(-2 * zeta * w[0] + 2j / SQRT_PI)
    for n in range(1, 5):
        w.append(-2 * zeta * w[n] - 2 * n * w[n - 1])
    damp = math.exp(-v * v)
    return (
        0.5 * damp * w[1].imag,
        0.5 * damp * w[3].imag / 6.0,
        0.5 * damp * w[5].imag / 120.0,
    )


def _im_w_over_d(d, v):
    # exp(-v^2) Im w(d/2 + iv) / d, the common core of f and Re g
    if math.isinf(d):
        return 0.0
    if d < SMALL_D:
        c0, c2, c4 = _taylor_coeffs(v)
        y2 = 0.25 * d * d
        return c0 + y2 * (c2 + y2 * c4)
    return math.exp(-v * v) * erfc_scaled(complex(v, -0.5 * d)).imag / d


def f_aux(d: float, gap_sum: float) -> float:
    """Auxiliary function f(d) for the C amplitude; gap_sum = (Omega + Omega') sigma.

    Finite at d = 0 (Taylor branch below ``SMALL_D``); decays like
    ``2 exp(-gap_sum**2/4) / (sqrt(pi) d**2)`` at large d; 0 at d = inf.
    """
    d = float(d)
    if not d >= 0:
        raise ValueError(f"distance must be >= 0, got {d!r}")
    if gap_sum < 0:
        raise ValueError(f"gap_sum must be >= 0, got {gap_sum!r}")
    return _im_w_over_d(d, 0.5 * gap_sum)


def g_aux(d: float, gap_diff: float) -> complex:
    """Auxiliary function g(d) for the X amplitude; gap_diff = (Omega' - Omega) sigma.

    Even in gap_diff. The real part has a removable singularity at d = 0; the
    imaginary part ``exp(-d**2/4) cos(gap_diff d/2) / d`` is a genuine pole, so
    d must be > 0.
    """
    d = float(d)
    if not d > 0:
        raise ValueError(f"g_aux needs d > 0, got {d!r}")
    if math.isinf(d):
        return 0j
    v = 0.5 * abs(gap_diff)
    y = 0.5 * d
    damp = math.exp(-y * y)
    # sin(2vy)/(2y) written as v*sinc to stay exact as y -> 0
    arg = 2 * v * y
    sinc = math.sin(arg) / arg if arg != 0 else 1.0
    re = _im_w_over_d(d, v) + damp * v * sinc
    im = damp * math.cos(arg) / d
    return complex(re, im)


def free_probability(gap: float) -> float:
    """Transition probability without boundary: (e^{-g^2} - sqrt(pi) g erfc(g)) / (4 pi)."""
    if gap < 0:
        raise ValueError(f"gap must be >= 0, got {gap!r}")
    return (math.exp(-gap * gap) - SQRT_PI * gap * erfc_real(gap)) / (4 * math.pi)


def _clamp(p, what):
    if p >= 0:
        return p
    if p > CLAMP_FLOOR:
        DIAGNOSTICS["probability_clamped"] += 1
        log.debug("clamped %s = %.3e to 0", what, p)
        return 0.0
    raise InternalConsistencyError(f"{what} = {p:.6e} is negative beyond rounding")


def transition_probability(gap: float, z: float) -> float:
    """Excitation probability of a static detector at height z above the mirror.

    ``z = inf`` gives the free-space value. Tends to 0 as z -> 0 (the direct
    and image contributions cancel on the boundary).
    """
    z = float(z)
    if not z >= 0:
        raise ValueError(f"z must be >= 0, got {z!r}")
    free = free_probability(gap)
    if math.isinf(z):
        return free
    d = 2 * z
    if d < SMALL_D:
        _, c2, c4 = _taylor_coeffs(gap)
        y2 = z * z
        p = -_PREF * y2 * (c2 + y2 * c4)
    else:
        p = free - _PREF * _im_w_over_d(d, gap)
    return _clamp(p, f"P(gap={gap}, z={z})")


def _amplitudes(gap_a, gap_b, dist: PairDistances) -> PairAmplitudes:
    s = gap_a + gap_b
    diff = gap_b - gap_a
    c = _PREF * math.exp(-0.25 * diff * diff) * (f_aux(dist.direct, s) - f_aux(dist.image, s))
    bracket = g_aux(dist.direct, diff) - g_aux(dist.image, diff)
    # conjugated relative to the printed g: the iε Wightman function with the
    # time-ordered combination gives Im X of the opposite sign
    x = -_PREF * math.exp(-0.25 * s * s) * bracket.conjugate()
    return PairAmplitudes(complex(c), complex(x), dist)


def pair_amplitudes(a: DetectorSpec, b: DetectorSpec, boundary: bool = True) -> PairAmplitudes:
    """C_{ab} and X_{ab} for two static detectors (lambda = 1)."""
    return _amplitudes(a.gap, b.gap, pair_distances(a, b, boundary=boundary))


def probabilities(config: GeometryConfig) -> Probabilities:
    zs = [det.z if config.boundary else math.inf for det in config.detectors]
    return Probabilities(*(transition_probability(det.gap, z) for det, z in zip(config.detectors, zs)))


def all_pair_amplitudes(config: GeometryConfig) -> dict[str, PairAmplitudes]:
    out = {}
    for name in PAIRS:
        a, b = config.pair(name)
        out[name] = pair_amplitudes(a, b, boundary=config.boundary)
    return out
