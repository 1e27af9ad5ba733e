"""The sector generator of the two-sided strongly starlike class.

For parameters ``0 < alpha1, alpha2 <= 1`` set ``theta = (alpha2 - alpha1) /
(alpha2 + alpha1)``, ``c = exp(i*pi*theta)`` and ``p = (alpha1 + alpha2)/2``.
The generator

    G(z) = ((1 + c z) / (1 - z)) ** p,        G(0) = 1,

maps the unit disc onto the sector ``Omega = {w : -pi*alpha1/2 < arg w <
pi*alpha2/2}``.  This module builds the class parameters, the Taylor
coefficients ``lambda_n`` of G by two independent closed formulas (a finite
double-binomial sum and a terminating Gauss hypergeometric sum), the
integrated generator ``Gt(z) = int_0^z (G(t)-1)/t dt = sum lambda_n z^n / n``
and the sector membership test for Omega.

Numerical note: both closed formulas for ``lambda_n`` are alternating sums
whose terms grow like ``(1+|1+c|)^n`` while the result stays O(1), so double
precision loses all accuracy beyond n ~ 25.  They are therefore evaluated
exactly: the k-indexed weight factors are computed with mpmath at a working
precision scaled to n and rounded once to fixed-point integers, after which
each ``lambda_n`` is an integer dot product with binomial coefficients.  The
final rounding to complex128 is the only inexact step.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import mpmath as mp
import numpy as np

from .series import DEFAULT_MAX_ORDER, OutsideDisc, TruncatedSeries


class ParamOutOfRange(ValueError):
    """Class parameter outside (0, 1]."""


class TailNotConverged(ArithmeticError):
    """Series tail could not be pushed below tolerance within the order cap."""


class ZeroArgument(ValueError):
    """arg(w) requested for w = 0."""


@dataclass(frozen=True)
class ClassParams:
    """Parameters of the class, with the derived quantities used everywhere.

    ``theta`` is the normalized asymmetry in (-1, 1), ``c = exp(i*pi*theta)``
    sits on the unit circle and ``p = (alpha1 + alpha2)/2`` is the exponent
    of the generator.  ``alpha1 = alpha2`` iff ``theta = 0`` iff ``c = 1``.
    """

    alpha1: float
    alpha2: float
    theta: float
    c: complex
    p: float


def make_params(alpha1: float, alpha2: float) -> ClassParams:
    """Validate ``(alpha1, alpha2)`` and derive ``theta``, ``c`` and ``p``."""
    alpha1 = float(alpha1)
    alpha2 = float(alpha2)
    for name, a in (("alpha1", alpha1), ("alpha2", alpha2)):
        if not (0.0 < a <= 1.0) or not math.isfinite(a):
            raise ParamOutOfRange(f"{name} = {a!r} not in (0, 1]")
    theta = (alpha2 - alpha1) / (alpha2 + alpha1)
    c = cmath.exp(1j * math.pi * theta)
    p = (alpha1 + alpha2) / 2.0
    return ClassParams(alpha1, alpha2, theta, c, p)


def half_angle_cos(params: ClassParams) -> float:
    """``cos(pi*theta/2) = |1 + c| / 2``.

    All bound formulas use this quantity; with ``c = exp(i*pi*theta)`` it is
    the only reading of "cos of half the asymmetry angle" that makes the
    first-coefficient identities exact.
    """
    return math.cos(0.5 * math.pi * params.theta)


# ---------------------------------------------------------------------------
# Fixed-point machinery for the two closed coefficient formulas.
# ---------------------------------------------------------------------------


def _precision_plan(n_cap: int) -> tuple[int, int]:
    # Worst-case cancellation is (1+|1+c|)^(n-1) <= 3^(n-1): ~1.6 bits/term.
    bits = 80 + int(1.6 * n_cap)
    dps = 45 + int(0.49 * n_cap)
    return bits, dps


def _fixed_int(x: "mp.mpf", bits: int) -> int:
    return int(mp.nint(mp.ldexp(x, bits)))


def _ldexp_big(v: int, e: int) -> float:
    # float(v) overflows for very wide integers; shift down first.
    if v == 0:
        return 0.0
    nb = v.bit_length()
    if nb > 970:
        sh = nb - 970
        return math.ldexp(float(v >> sh), e + sh)
    return math.ldexp(float(v), e)


def _bucket(n: int) -> int:
    return 1 << max(n - 1, 1).bit_length()


@lru_cache(maxsize=256)
def _binomial_weights(p: float, c_re: float, c_im: float, n_cap: int):
    """Fixed-point ``w_k = binom(p, k) * (1+c)^k`` for k = 1..n_cap.

    The generalized binomial coefficient is accumulated as the falling
    factorial product ``prod_{j<k} (p - j) / k!``, left to right, in mpmath
    working precision.
    """
    bits, dps = _precision_plan(n_cap)
    with mp.workdps(dps):
        u = mp.mpc(c_re, c_im) + 1
        pm = mp.mpf(p)
        gb = mp.mpf(1)
        uk = mp.mpc(1)
        wr, wi = [], []
        for k in range(1, n_cap + 1):
            gb = gb * (pm - (k - 1)) / k
            uk = uk * u
            w = gb * uk
            wr.append(_fixed_int(w.real, bits))
            wi.append(_fixed_int(w.imag, bits))
    return tuple(wr), tuple(wi), bits


@lru_cache(maxsize=256)
def _hypergeom_weights(p: float, c_re: float, c_im: float, n_cap: int):
    """Fixed-point ``v_k = (-1)^k (1-p)_k (1+c)^k / (k+1)!`` for k = 0..n_cap-1.

    These are the k-th terms of the terminating 2F1(1-n, 1-p; 2; 1+c) with
    the n-dependent Pochhammer ``(1-n)_k`` split off as ``(-1)^k k! C(n-1,k)``.
    """
    bits, dps = _precision_plan(n_cap)
    with mp.workdps(dps):
        u = mp.mpc(c_re, c_im) + 1
        pm = mp.mpf(p)
        v = mp.mpc(1)
        vr = [_fixed_int(v.real, bits)]
        vi = [_fixed_int(v.imag, bits)]
        for k in range(1, n_cap):
            v = v * (-(k - pm)) * u / (k + 1)
            vr.append(_fixed_int(v.real, bits))
            vi.append(_fixed_int(v.imag, bits))
    return tuple(vr), tuple(vi), bits


def lambda_coeffs(params: ClassParams, n_max: int) -> list[complex]:
    """``lambda_1..lambda_n_max`` by the finite double-binomial sum

        lambda_n = sum_{k=1}^{n} C(n-1, k-1) binom(p, k) (1+c)^k.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    wr, wi, bits = _binomial_weights(
        params.p, params.c.real, params.c.imag, _bucket(n_max)
    )
    out = []
    for n in range(1, n_max + 1):
        sr = 0
        si = 0
        for k in range(1, n + 1):
            cnk = comb(n - 1, k - 1)
            sr += cnk * wr[k - 1]
            si += cnk * wi[k - 1]
        out.append(complex(_ldexp_big(sr, -bits), _ldexp_big(si, -bits)))
    return out


def lambda_via_2f1(params: ClassParams, n: int) -> complex:
    """``lambda_n`` via the terminating Gauss hypergeometric form

        lambda_n = (alpha1+alpha2)(1+c)/2 * 2F1(1-n, 1-p; 2; 1+c),

    an n-term sum since the first parameter is the non-positive integer 1-n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    vr, vi, bits = _hypergeom_weights(
        params.p, params.c.real, params.c.imag, _bucket(n)
    )
    sr = 0
    si = 0
    for k in range(0, n):
        cnk = comb(n - 1, k)
        sr += cnk * vr[k]
        si += cnk * vi[k]
    s = complex(_ldexp_big(sr, -bits), _ldexp_big(si, -bits))
    return params.p * (1 + params.c) * s


# ---------------------------------------------------------------------------
# Generator as a series and pointwise.
# ---------------------------------------------------------------------------


def g_series(params: ClassParams, order: int) -> TruncatedSeries:
    """Taylor series of G: constant term 1, then ``lambda_n``."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = np.zeros(order + 1, dtype=complex)
    coeffs[0] = 1.0
    if order >= 1:
        coeffs[1:] = lambda_coeffs(params, order)
    return TruncatedSeries._from_array(coeffs)


def _g_coeffs_power(params: ClassParams, order: int) -> np.ndarray:
    """Coefficients ``[1, lambda_1, ...]`` via the exponential recursion.

    log G has the closed form ``p * sum (1 - (-c)^n) z^n / n``; one O(N^2)
    exp recursion then produces the coefficients with ~1e-15 accuracy.  This
    is the fast, double-precision route used where adaptive orders in the
    hundreds are needed; the closed formulas above are the reference.
    """
    if order == 0:
        return np.ones(1, dtype=complex)
    n = np.arange(1, order + 1)
    log_g = np.concatenate(([0.0], params.p * (1.0 - (-params.c) ** n) / n))
    e = np.zeros(order + 1, dtype=complex)
    e[0] = 1.0
    ka = log_g * np.arange(order + 1)
    for m in range(1, order + 1):
        e[m] = np.dot(ka[1 : m + 1], e[m - 1 :: -1]) / m
    return e


def g_eval(params: ClassParams, z: complex) -> complex:
    """Pointwise principal-branch value of G on the open disc.

    Well defined because ``(1+cz)/(1-z)`` omits the closed negative real
    axis for ``|z| < 1``.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideDisc(f"|z| = {abs(z):.6g} >= 1")
    w = (1.0 + params.c * z) / (1.0 - z)
    return cmath.exp(params.p * cmath.log(w))


def _g_eval_array(params: ClassParams, z: np.ndarray) -> np.ndarray:
    """Vectorized g_eval without the disc check (internal)."""
    w = (1.0 + params.c * z) / (1.0 - z)
    return np.exp(params.p * np.log(w))


def g_tilde_series(params: ClassParams, order: int) -> TruncatedSeries:
    """Integrated generator ``Gt(z) = sum lambda_n z^n / n`` as a series."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return (g_series(params, order) - 1.0).integrate_dz_over_z()


#: |lambda_n| <= 2 holds because G - 1 is subordinate to itself and convex
#: univalent, which caps every coefficient at |lambda_1| <= 2.  The claim is
#: still re-checked at run time before it is used for tail control.
_LAMBDA_CAP = 2.0


def g_tilde_eval_real(
    params: ClassParams,
    r: float,
    tol: float = 1e-10,
    max_order: int = DEFAULT_MAX_ORDER,
) -> complex:
    """``Gt(r)`` for real ``-1 < r < 1`` by adaptive partial sums.

    The order is increased until the a-priori tail bound
    ``2 |r|^(N+1) / ((N+1)(1-|r|))`` (from ``|lambda_n| <= 2``) drops below
    ``tol``; if that needs more than ``max_order`` terms the radius is too
    close to +-1 and :class:`TailNotConverged` is raised.  The result is
    complex: for ``alpha1 != alpha2`` the coefficients are genuinely complex.
    """
    r = float(r)
    rho = abs(r)
    if rho >= 1.0:
        raise OutsideDisc(f"|r| = {rho:.6g} >= 1")
    if r == 0.0:
        return 0j
    n = 1
    while 2.0 * rho ** (n + 1) / ((n + 1) * (1.0 - rho)) >= tol:
        n += 1
        if n > max_order:
            raise TailNotConverged(
                f"tail bound above {tol:.1e} at order {max_order} for r = {r}"
            )
    lam = _g_coeffs_power(params, n)[1:]
    if np.abs(lam).max() > _LAMBDA_CAP + 1e-8:
        # Assumption violated: fall back to a ratio-style estimate from the
        # actual last coefficient.
        est = abs(lam[-1]) * rho ** (n + 1) / (1.0 - rho)
        if est >= tol:
            raise TailNotConverged(
                f"empirical tail estimate {est:.2e} above {tol:.1e} at order {n}"
            )
    gt = lam / np.arange(1, n + 1)
    val = 0j
    for cf in gt[::-1]:
        val = val * r + cf
    return complex(val * r)


def omega_contains(params: ClassParams, w: complex, slack: float = 0.0) -> bool:
    """Strict sector test ``-pi*alpha1/2 < arg w < pi*alpha2/2``.

    ``slack`` widens the window by that many radians on each edge; the
    default 0 keeps the inequalities strict as stated.
    """
    w = complex(w)
    if w == 0:
        raise ZeroArgument("arg(0) is undefined")
    a = cmath.phase(w)
    lo = -0.5 * math.pi * params.alpha1 - slack
    hi = 0.5 * math.pi * params.alpha2 + slack
    return lo < a < hi
