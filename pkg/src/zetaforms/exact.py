"""Exact integer/rational arithmetic: lcm, binomials, dense polynomials and jets.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`, which
is always reduced with a positive denominator.

A :class:`Jet` is a truncated Taylor expansion at a fixed center.  It stores
*divided* derivatives ``gamma[k] = f^(k)(center) / k!`` so the coefficient of
``(t - center)**k`` is read off directly.  Jet operations only use ``+ - * /``
on the coefficients, so the same code runs on Fractions (exact) and on mpmath
numbers (multiprecision).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Any, Sequence

import mpmath

from .errors import DomainError

__all__ = [
    "lcm_upto",
    "binomial",
    "bernoulli",
    "harmonic",
    "Poly",
    "poly_eval",
    "Jet",
    "jet_mul",
    "jet_inv",
    "jet_pow",
    "jet_exp",
    "is_integer",
]


def lcm_upto(n: int) -> int:
    """Return lcm(1, 2, ..., n)."""
    if n < 1:
        raise DomainError(f"lcm_upto needs n >= 1, got {n}")
    return math.lcm(*range(1, n + 1))


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"binomial({n}, {k}) needs 0 <= k <= n")
    return math.comb(n, k)


def is_integer(x: Fraction | int) -> bool:
    return isinstance(x, int) or x.denominator == 1


@lru_cache(maxsize=None)
def _tangent_numbers(count: int) -> tuple[int, ...]:
    # Brent-Harvey in-place recurrence; T[k] is the k-th tangent number.
    t = [0] * (count + 1)
    if count >= 1:
        t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return tuple(t)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m with the convention B_1 = -1/2."""
    if m < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if m == 0:
        return Fraction(1)
    if m == 1:
        return Fraction(-1, 2)
    if m % 2:
        return Fraction(0)
    h = m // 2
    # grow the cache in chunks so repeated calls stay cheap
    size = max(16, 1 << (h - 1).bit_length())
    tn = _tangent_numbers(size)[h]
    four = 4**h
    sign = 1 if h % 2 else -1
    return Fraction(sign * 2 * h * tn, four * (four - 1))


def harmonic(m: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, m + 1)), Fraction(0))


# ---------------------------------------------------------------- polynomials


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational coefficient, got {type(x).__name__}")


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with rational coefficients in ascending degree.

    Trailing zeros are stripped on construction, so ``deg`` is canonical and
    the zero polynomial has no coefficients (degree -1).
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [_frac(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, shifts: Sequence[Fraction | int], lead: Fraction | int = 1) -> "Poly":
        """``lead * prod(x + s)`` over the given shifts."""
        p = cls((lead,))
        for s in shifts:
            p = p * cls((s, 1))
        return p

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly(tuple(c * x for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise DomainError("negative polynomial power")
        out, base = Poly((1,)), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, z):
        return poly_eval(self, z)

    def shift(self, c: Fraction | int) -> "Poly":
        """Return p(x + c)."""
        out = Poly()
        lin = Poly((c, 1))
        for coef in reversed(self.coeffs):
            out = out * lin + Poly((coef,))
        return out


def poly_eval(p: Poly, z):
    """Horner evaluation; exact for rational ``z``, otherwise in z's own arithmetic."""
    if isinstance(z, (int, Rational)):
        z = Fraction(z)
        conv = _frac
    elif isinstance(z, (float, complex)):
        conv = lambda c: c.numerator / c.denominator
    else:
        conv = lambda c: mpmath.mpf(c.numerator) / c.denominator
    acc = conv(Fraction(0))
    for c in reversed(p.coeffs):
        acc = acc * z + conv(c)
    return acc


# ----------------------------------------------------------------------- jets


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor expansion ``sum coeffs[k] * (t - center)**k``."""

    center: Any
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise DomainError("a jet needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    @classmethod
    def constant(cls, value, center, order: int) -> "Jet":
        zero = value * 0
        return cls(center, (value,) + (zero,) * order)

    @classmethod
    def linear(cls, value, slope, center, order: int) -> "Jet":
        """Jet of ``value + slope * (t - center)``."""
        zero = value * 0
        if order == 0:
            return cls(center, (value,))
        return cls(center, (value, slope) + (zero,) * (order - 1))

    def derivatives(self) -> tuple:
        """Raw derivatives f^(k)(center) = k! * gamma_k."""
        return tuple(c * math.factorial(k) for k, c in enumerate(self.coeffs))

    def scale(self, c) -> "Jet":
        return Jet(self.center, tuple(c * x for x in self.coeffs))

    def __add__(self, other: "Jet") -> "Jet":
        _check_compatible(self, other)
        return Jet(self.center, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return self.scale(other)


def _check_compatible(x: Jet, y: Jet) -> None:
    if x.center != y.center or x.order != y.order:
        raise DomainError(
            f"jets differ in center/order: ({x.center}, {x.order}) vs ({y.center}, {y.order})"
        )


def jet_mul(x: Jet, y: Jet) -> Jet:
    """Cauchy product truncated at the common order."""
    _check_compatible(x, y)
    a, b = x.coeffs, y.coeffs
    K = x.order
    out = []
    for lam in range(K + 1):
        s = a[0] * b[lam]
        for i in range(1, lam + 1):
            s += a[i] * b[lam - i]
        out.append(s)
    return Jet(x.center, out)


def jet_inv(x: Jet) -> Jet:
    a = x.coeffs
    if a[0] == 0:
        raise DomainError(f"jet_inv: zero constant term, expansion at a pole (center {x.center})")
    inv0 = 1 / a[0]
    out = [inv0]
    for m in range(1, x.order + 1):
        s = a[1] * out[m - 1]
        for i in range(2, m + 1):
            s += a[i] * out[m - i]
        out.append(-s * inv0)
    return Jet(x.center, out)


def jet_pow(x: Jet, e: int) -> Jet:
    if e < 0:
        return jet_pow(jet_inv(x), -e)
    out = Jet.constant(x.coeffs[0] ** 0, x.center, x.order)
    base = x
    while e:
        if e & 1:
            out = jet_mul(out, base)
        e >>= 1
        if e:
            base = jet_mul(base, base)
    return out


def jet_exp(x: Jet) -> Jet:
    """exp of a jet with zero constant term.

    Uses y' = x' y, i.e. ``m y_m = sum_{k=1}^m k x_k y_{m-k}``, which is exact
    over the rationals.
    """
    a = x.coeffs
    if a[0] != 0:
        raise DomainError("jet_exp expects a zero constant term")
    one = a[0] ** 0
    out = [one]
    for m in range(1, x.order + 1):
        s = a[1] * out[m - 1]
        for k in range(2, m + 1):
            s += k * a[k] * out[m - k]
        out.append(s / m)
    return Jet(x.center, out)
