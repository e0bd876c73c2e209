"""Complex error function and the scaled complement used by the closed forms.

All internal accumulation is done in ``numpy.longdouble`` (80-bit extended on
x86-64); results are rounded to ``complex``/``float`` on return.

Branch map, after folding the argument into the first quadrant z = x + iy:

* ``x >= 2`` and ``|z| >= 3.5``: Laplace continued fraction for the scaled
  complement ``erfcx(z) = exp(z**2) erfc(z)`` (modified Lentz).
* ``y > x``: Maclaurin series of erf. Cancellation grows like ``exp(2 x**2)``,
  which stays below ``e**8`` in this region.
* otherwise: Kummer-transformed series ``exp(-z**2) sum 2**k z**(2k+1) / (2k+1)!!``,
  cancellation ``exp(2 y**2)``.

The continued fraction does not converge on the imaginary axis, so the series
handles the strip ``x < 2`` at every radius. ``erfc_scaled`` uses the continued
fraction for every ``x >= 2``: forming ``1 - erf`` there would lose
``exp(x**2)`` in relative accuracy.
"""
import math

import numpy as np

__all__ = [
    "OutOfRangeError",
    "MAX_ABS_ARG",
    "erf_complex",
    "erfc_real",
    "erfc_scaled",
]

MAX_ABS_ARG = 50.0

_LD = np.longdouble
_CLD = np.clongdouble
_PI = _LD("3.14159265358979323846264338327950288")
_SQRT_PI = np.sqrt(_PI)
_TWO_OVER_SQRT_PI = _LD(2) / _SQRT_PI
_SERIES_TOL = _LD("1e-21")
_CF_TOL = _LD("1e-20")
_CF_MAXITER = 5000

_CF_MIN_RE = 2.0
_CF_MIN_ABS = 3.5


class OutOfRangeError(ValueError):
    """Argument outside the validated domain, or result not representable."""


def _maclaurin(z):
    z2 = z * z
    t = z
    s = z
    k = 0
    kmin = abs(z2)
    while True:
        k += 1
        t = t * (-z2) / k
        term = t / (2 * k + 1)
        s += term
        if k > kmin and abs(term) <= _SERIES_TOL * abs(s):
            break
    return _TWO_OVER_SQRT_PI * s


def _kummer(z):
    z2 = z * z
    t = z
    s = z
    k = 0
    kmin = 2 * abs(z2)
    while True:
        k += 1
        t = t * 2 * z2 / (2 * k + 1)
        s += t
        if k > kmin and abs(t) <= _SERIES_TOL * abs(s):
            break
    return _TWO_OVER_SQRT_PI * np.exp(-z2) * s


def _series_erf(z):
    if z.imag > z.real:
        return _maclaurin(z)
    return _kummer(z)


def _cf_erfcx(z):
    # erfcx(z) = (1/sqrt(pi)) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    tiny = _LD("1e-300")
    f = z
    c = z
    d = _CLD(0)
    for n in range(1, _CF_MAXITER + 1):
        a = _LD(n) / 2
        d = z + a * d
        if d == 0:
            d = _CLD(tiny)
        c = z + a / c
        if c == 0:
            c = _CLD(tiny)
        d = 1 / d
        delta = c * d
        f = f * delta
        if abs(delta - 1) < _CF_TOL:
            return 1 / (_SQRT_PI * f)
    raise ArithmeticError(f"continued fraction did not converge at z={complex(z)}")


def _asymptotic_erfcx(z):
    # valid for Re z >= 0 and |z| > MAX_ABS_ARG; terms shrink until n ~ |z|^2
    inv = 1 / (2 * z * z)
    t = _CLD(1)
    s = _CLD(1)
    n = 0
    while True:
        n += 1
        t = -t * (2 * n - 1) * inv
        s += t
        if abs(t) <= _SERIES_TOL * abs(s):
            break
    return s / (_SQRT_PI * z)


def _use_cf(z):
    return z.real >= _CF_MIN_RE and abs(z) >= _CF_MIN_ABS


def _fold(z):
    """Map z into the closed first quadrant; return (w, negate, conjugate)."""
    neg = z.real < 0 or (z.real == 0 and math.copysign(1.0, z.real) < 0)
    if neg:
        z = -z
    conj = z.imag < 0
    if conj:
        z = z.conjugate()
    return z, neg, conj


def _check_arg(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OutOfRangeError(f"non-finite argument {z!r}")
    if abs(z) > MAX_ABS_ARG:
        raise OutOfRangeError(f"|z| = {abs(z):.6g} exceeds {MAX_ABS_ARG}")
    return z


def _to_complex(v, what, z):
    out = complex(v)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise OutOfRangeError(f"{what}({z!r}) is not representable in double precision")
    return out


def erf_complex(z):
    """Error function ``erf(z) = 2/sqrt(pi) * int_0^z exp(-t**2) dt`` for complex z.

    Raises OutOfRangeError for ``|z| > 50`` or when the value overflows a
    double (deep in the sectors around the imaginary axis).
    """
    z = _check_arg(z)
    if z == 0:
        return complex(0.0, z.imag)
    w, neg, conj = _fold(z)
    wl = _CLD(w)
    if _use_cf(w):
        val = 1 - np.exp(-wl * wl) * _cf_erfcx(wl)
    else:
        val = _series_erf(wl)
    out = _to_complex(val, "erf", z)
    if conj:
        out = out.conjugate()
    if neg:
        out = -out
    return out


def erfc_real(x):
    """Complementary error function ``1 - erf(x)`` for real ``x >= 0``.

    Beyond ``x = 2`` the value comes from the continued fraction, so no
    subtraction from 1 takes place and tiny tails keep full relative accuracy.
    """
    x = float(x)
    if not x >= 0:
        raise ValueError(f"erfc_real needs x >= 0, got {x!r}")
    if math.isinf(x):
        return 0.0
    xl = _CLD(x)
    if x > 2.0:
        val = np.exp(-xl * xl) * _cf_erfcx(xl)
    else:
        val = 1 - _kummer(xl)
    return float(val.real)


def erfc_scaled(z):
    """Scaled complement ``exp(z**2) * erfc(z)`` for ``Re z >= 0``.

    Bounded by ``1/(sqrt(pi) |z|)`` asymptotically, so it never overflows in
    this half plane. Arguments with ``|z| > 50`` fall back to the asymptotic
    expansion, whose truncation error is below ``exp(-2500)``.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OutOfRangeError(f"non-finite argument {z!r}")
    if z.real < 0:
        raise ValueError(f"erfc_scaled needs Re z >= 0, got {z!r}")
    conj = z.imag < 0
    w = z.conjugate() if conj else z
    wl = _CLD(w)
    if abs(w) > MAX_ABS_ARG:
        val = _asymptotic_erfcx(wl)
    elif w.real >= _CF_MIN_RE:
        # no |z| cut here: 1 - erf would cost up to exp(x**2) in relative accuracy
        val = _cf_erfcx(wl)
    else:
        val = np.exp(wl * wl) * (1 - _series_erf(wl))
    out = _to_complex(val, "erfc_scaled", z)
    return out.conjugate() if conj else out
