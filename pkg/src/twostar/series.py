"""Truncated complex power-series arithmetic on the unit disc.

A :class:`TruncatedSeries` holds Taylor coefficients ``c_0..c_N`` about 0 as
double-precision complex numbers and supports the algebra needed to
manipulate functions analytic near the origin: Cauchy products,
reciprocals, principal-branch log / exp / real powers, differentiation, the
normalized integral ``f -> int_0^z f(t)/t dt``, Hadamard (termwise)
products, composition and Horner evaluation.

Truncation semantics: a series of order N carries no information beyond
degree N.  Binary operations therefore truncate to the *smaller* order of
the two operands; nothing is ever zero-padded silently.  All values are
immutable after construction and every operation is a pure function, so
series can be shared freely between threads.

Branch convention: every non-integer power and every logarithm uses the
principal branch anchored by constant term 1 -> 0.  Preconditions on the
constant term (``c_0 = 1`` for log/pow, ``c_0 = 0`` for exp and the
normalized integral) are enforced to absolute tolerance ``CONST_TOL``;
violations raise, they are never silently renormalized.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

#: Default cap on the truncation order.  Coefficient recursions are O(N^2)
#: and rounding growth is roughly linear in N; the cap keeps both visible.
DEFAULT_MAX_ORDER = 256

#: Absolute tolerance for constant-term preconditions (c0 = 0 or c0 = 1).
CONST_TOL = 1e-12

#: Reciprocal refuses constant terms at or below this magnitude.
RECIPROCAL_EPS = 1e-12


class SeriesError(ValueError):
    """Base class for truncated-series contract violations."""


class NearZeroConstantTerm(SeriesError):
    """Reciprocal of a series whose constant term is numerically zero."""


class ConstantTermNotOne(SeriesError):
    """log / pow require constant term 1 (principal branch anchor)."""


class ConstantTermNotZero(SeriesError):
    """exp / integrate_dz_over_z require a vanishing constant term."""


class InnerConstantNonzero(SeriesError):
    """Composition requires the inner series to vanish at 0."""


class OutsideDisc(SeriesError):
    """Evaluation point with |z| >= 1."""


class PointValue(NamedTuple):
    """Horner value of the truncated polynomial plus a crude tail estimate.

    ``tail_bound`` is ``|c_N| * |z|^N / (1 - |z|)``: the magnitude the
    discarded tail would have if coefficients stopped decaying at ``|c_N|``.
    It is a diagnostic, not a rigorous bound.
    """

    value: complex
    tail_bound: float


def _as_coeff_array(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if arr.ndim != 1 or arr.size == 0:
        raise SeriesError("coefficients must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr.view(float))):
        raise SeriesError("coefficients must be finite (no NaN/Inf)")
    return arr


class TruncatedSeries:
    """Immutable truncated Taylor series ``c_0 + c_1 z + ... + c_N z^N``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[complex], max_order: int | None = None):
        arr = _as_coeff_array(coeffs).copy()
        cap = DEFAULT_MAX_ORDER if max_order is None else max_order
        if arr.size - 1 > cap:
            raise SeriesError(
                f"order {arr.size - 1} exceeds cap {cap}; pass max_order to raise it"
            )
        arr.setflags(write=False)
        self._coeffs = arr

    @classmethod
    def _from_array(cls, arr: np.ndarray) -> "TruncatedSeries":
        # Internal: trusts shape, still refuses non-finite results so that
        # overflow inside a recursion surfaces as an error, not as Inf data.
        obj = cls.__new__(cls)
        if not np.all(np.isfinite(arr.view(float))):
            raise SeriesError("operation produced non-finite coefficients")
        arr = np.ascontiguousarray(arr, dtype=complex)
        arr.setflags(write=False)
        obj._coeffs = arr
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, value: complex, order: int = 0) -> "TruncatedSeries":
        arr = np.zeros(order + 1, dtype=complex)
        arr[0] = value
        return cls._from_array(arr)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff: complex = 1.0) -> "TruncatedSeries":
        if degree > order:
            raise SeriesError("monomial degree exceeds requested order")
        arr = np.zeros(order + 1, dtype=complex)
        arr[degree] = coeff
        return cls._from_array(arr)

    @classmethod
    def from_pairs(cls, pairs, max_order: int | None = None) -> "TruncatedSeries":
        """Build from ``[[re, im], ...]`` indexed by degree (JSON format)."""
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
        return cls(coeffs, max_order=max_order)

    def to_pairs(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self._coeffs]

    # -- basic accessors -------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self._coeffs[n])

    def __repr__(self) -> str:
        head = np.array2string(self._coeffs[:4], precision=6, separator=", ")
        more = " ..." if self.order >= 4 else ""
        return f"TruncatedSeries(order={self.order}, {head}{more})"

    # -- ring operations ---------------------------------------------------

    def _common(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._common(other)
            return TruncatedSeries._from_array(
                self._coeffs[: n + 1] + other._coeffs[: n + 1]
            )
        arr = self._coeffs.copy()
        arr[0] += complex(other)
        return TruncatedSeries._from_array(arr)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            n = self._common(other)
            return TruncatedSeries._from_array(
                self._coeffs[: n + 1] - other._coeffs[: n + 1]
            )
        arr = self._coeffs.copy()
        arr[0] -= complex(other)
        return TruncatedSeries._from_array(arr)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TruncatedSeries._from_array(-self._coeffs)

    def __mul__(self, other):
        """Cauchy product, truncated to the smaller order."""
        if isinstance(other, TruncatedSeries):
            n = self._common(other)
            full = np.convolve(self._coeffs[: n + 1], other._coeffs[: n + 1])
            return TruncatedSeries._from_array(full[: n + 1])
        return TruncatedSeries._from_array(self._coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Division is multiplication by the reciprocal: one code path to test.
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return TruncatedSeries._from_array(self._coeffs / complex(other))

    # -- inverses and transcendental maps ---------------------------------

    def reciprocal(self, eps: float = RECIPROCAL_EPS) -> "TruncatedSeries":
        """Series b with ``self * b = 1 + O(z^{N+1})``.

        Raises :class:`NearZeroConstantTerm` when ``|c_0| <= eps``; a
        near-vanishing constant term makes the result meaningless at double
        precision.
        """
        a = self._coeffs
        if abs(a[0]) <= eps:
            raise NearZeroConstantTerm(f"|c0| = {abs(a[0]):.3e} <= {eps:.1e}")
        n_ord = self.order
        b = np.zeros(n_ord + 1, dtype=complex)
        b[0] = 1.0 / a[0]
        for n in range(1, n_ord + 1):
            b[n] = -np.dot(a[1 : n + 1], b[n - 1 :: -1]) / a[0]
        return TruncatedSeries._from_array(b)

    def log(self) -> "TruncatedSeries":
        """Principal-branch logarithm; requires ``c_0 = 1`` (to CONST_TOL)."""
        a = self._coeffs
        if abs(a[0] - 1.0) > CONST_TOL:
            raise ConstantTermNotOne(f"c0 = {a[0]:.6g}, expected 1")
        if a[0] != 1.0:
            a = a / a[0]
        n_ord = self.order
        out = np.zeros(n_ord + 1, dtype=complex)
        klog = np.zeros(n_ord + 1, dtype=complex)  # k * out[k], filled as we go
        for n in range(1, n_ord + 1):
            s = np.dot(klog[1:n], a[n - 1 : 0 : -1]) if n > 1 else 0.0
            out[n] = a[n] - s / n
            klog[n] = n * out[n]
        return TruncatedSeries._from_array(out)

    def exp(self) -> "TruncatedSeries":
        """Exponential; requires ``c_0 = 0`` (to CONST_TOL)."""
        a = self._coeffs
        if abs(a[0]) > CONST_TOL:
            raise ConstantTermNotZero(f"c0 = {a[0]:.6g}, expected 0")
        n_ord = self.order
        e = np.zeros(n_ord + 1, dtype=complex)
        e[0] = 1.0
        ka = a * np.arange(n_ord + 1)
        for n in range(1, n_ord + 1):
            e[n] = np.dot(ka[1 : n + 1], e[n - 1 :: -1]) / n
        return TruncatedSeries._from_array(e)

    def power(self, exponent: float) -> "TruncatedSeries":
        """Principal-branch real power ``exp(exponent * log(self))``."""
        return (self.log() * float(exponent)).exp()

    def __pow__(self, exponent: float) -> "TruncatedSeries":
        return self.power(exponent)

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TruncatedSeries":
        """Termwise derivative; the order drops by one."""
        if self.order == 0:
            return TruncatedSeries._from_array(np.zeros(1, dtype=complex))
        n = np.arange(1, self.order + 1)
        return TruncatedSeries._from_array(self._coeffs[1:] * n)

    def integrate_dz_over_z(self) -> "TruncatedSeries":
        """``sum c_n z^n  ->  sum (c_n / n) z^n`` for n >= 1.

        Requires ``c_0 = 0``: otherwise the integrand ``self(t)/t`` would be
        singular at the origin.
        """
        if abs(self._coeffs[0]) > CONST_TOL:
            raise ConstantTermNotZero(
                f"c0 = {self._coeffs[0]:.6g}; integrand would be singular at 0"
            )
        out = np.zeros(self.order + 1, dtype=complex)
        if self.order >= 1:
            out[1:] = self._coeffs[1:] / np.arange(1, self.order + 1)
        return TruncatedSeries._from_array(out)

    # -- products and substitution -----------------------------------------

    def hadamard(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Termwise (convolution) product ``a_n * b_n``."""
        n = self._common(other)
        return TruncatedSeries._from_array(
            self._coeffs[: n + 1] * other._coeffs[: n + 1]
        )

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Horner-style substitution ``self(inner(z))``, truncated to the
        smaller of the two orders.  The inner series must vanish at 0."""
        if abs(inner._coeffs[0]) > CONST_TOL:
            raise InnerConstantNonzero(f"inner c0 = {inner._coeffs[0]:.6g}")
        n = self._common(inner)
        inner_c = inner._coeffs[: n + 1]
        acc = np.zeros(n + 1, dtype=complex)
        acc[0] = self._coeffs[n]
        for k in range(n - 1, -1, -1):
            acc = np.convolve(acc, inner_c)[: n + 1]
            acc[0] += self._coeffs[k]
        return TruncatedSeries._from_array(acc)

    # -- evaluation ----------------------------------------------------------

    def eval_at(self, z: complex) -> PointValue:
        """Horner evaluation at a point of the open unit disc."""
        z = complex(z)
        r = abs(z)
        if r >= 1.0:
            raise OutsideDisc(f"|z| = {r:.6g} >= 1")
        v = 0j
        for c in self._coeffs[::-1]:
            v = v * z + c
        tail = abs(self._coeffs[-1]) * r**self.order / (1.0 - r)
        return PointValue(v, float(tail))
