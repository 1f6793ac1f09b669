"""The linear form in zeta values built from the partial-fraction table.

Summing the second derivative of the partial-fraction expansion against z^-k
gives, for |z| > 1,

    S_n(z) = P0(z) + sum_l w(l) P_l(z) Li_{l+2}(1/z),
    P_l(z) = sum_j c[l, j] z^j,
    P0(z)  = -sum_{l, j} sum_{k=1}^{j} w(l) c[l, j] z^(j-k) / k^(l+2),

where w(l) is the weight produced by differentiating 1/(t+j)^l twice and
halving: w(l) = l(l+1)/2.  The alternative l(l-1)/2 is kept selectable so the
two conventions can be compared numerically.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .decomposition import CoeffTable, Params
from .errors import DomainError, IntegralityError, PrecisionError
from .exact import Poly, lcm_upto
from .mpnum import GUARD_DIGITS, polylog, to_mp, working_precision, zeta

__all__ = [
    "WEIGHTS",
    "DEFAULT_WEIGHT",
    "ZetaLinearForm",
    "build_polys",
    "value_at_one",
    "general_z_value",
    "scaled_integers",
    "precision_floor",
    "coefficient_integrality",
]

WEIGHTS: dict[str, Callable[[int], int]] = {
    "l(l+1)/2": lambda l: l * (l + 1) // 2,
    "l(l-1)/2": lambda l: l * (l - 1) // 2,
}
DEFAULT_WEIGHT = "l(l+1)/2"


def precision_floor(n: int) -> int:
    """Minimum decimal precision for evaluating the n-th form at z = 1."""
    return 10 * n + 30


@dataclass
class ZetaLinearForm:
    params: Params
    weight: str
    P0: Poly
    P: dict  # l -> Poly
    dn: int
    _scaled: tuple | None = field(default=None, repr=False)

    def w(self, l: int) -> int:
        return WEIGHTS[self.weight](l)

    def values_at_one(self) -> dict[int, Fraction]:
        return {l: self.P[l](1) for l in self.P}

    @property
    def p0_scaled(self) -> int:
        return scaled_integers(self)[0]

    @property
    def p_scaled(self) -> dict[int, int]:
        return scaled_integers(self)[1]

    def to_json(self) -> str:
        p0, ps, dn, _ = scaled_integers(self)
        doc = {
            "a": self.params.a,
            "n": self.params.n,
            "d_n": str(dn),
            "p0_scaled": str(p0),
            "p_scaled": [{"j": j, "zeta": 2 * j + 1, "value": str(v)} for j, v in sorted(ps.items())],
            "weight_convention": self.weight,
        }
        return json.dumps(doc, indent=1)


def build_polys(table: CoeffTable, weight: str = DEFAULT_WEIGHT) -> ZetaLinearForm:
    if weight not in WEIGHTS:
        raise DomainError(f"unknown weight convention {weight!r}")
    wfun = WEIGHTS[weight]
    a, n = table.params.a, table.params.n
    c = table.c
    P = {l: Poly(tuple(c[(l, j)] for j in range(n + 1))) for l in range(1, a + 1)}
    p0 = [Fraction(0)] * max(n, 1)
    for l in range(1, a + 1):
        wl = wfun(l)
        if wl == 0:
            continue
        for j in range(1, n + 1):
            cw = wl * c[(l, j)]
            if not cw:
                continue
            for k in range(1, j + 1):
                p0[j - k] -= cw / Fraction(k ** (l + 2))
    return ZetaLinearForm(table.params, weight, Poly(tuple(p0)), P, lcm_upto(n))


def _odd_terms(form: ZetaLinearForm) -> list[tuple[int, Fraction]]:
    """(l, w(l) P_l(1)) for the odd l that survive at z = 1."""
    form.params.require_even()
    vals = form.values_at_one()
    out = []
    for l, v in sorted(vals.items()):
        if l % 2 == 0 or l == 1:
            if v != 0:
                raise ArithmeticError(f"P_{l}(1) = {v} should vanish for even a")
            continue
        out.append((l, form.w(l) * v))
    return out


def _sum_with_cancellation(make_terms, prec: int):
    """fsum of make_terms(work), with work raised by the digits lost to cancellation.

    A first pass at prec + GUARD_DIGITS measures log10(max|term| / |sum|);
    the second pass adds that many digits.  Raises PrecisionError when the
    loss alone exceeds ``prec``.
    """

    def evaluate(work):
        with working_precision(work):
            terms = make_terms(work)
            total = mpmath.fsum(terms)
            biggest = max(abs(t) for t in terms)
            if total == 0:
                return total, math.inf
            return total, (float(mpmath.log10(biggest / abs(total))) if biggest else 0.0)

    work = prec + GUARD_DIGITS
    total, lost = evaluate(work)
    if lost > prec:
        raise PrecisionError(f"cancellation of {lost:.1f} digits exceeds prec={prec}")
    if lost > 1:
        total, lost = evaluate(work + int(math.ceil(lost)) + GUARD_DIGITS)
    with working_precision(prec):
        return +total


def value_at_one(form: ZetaLinearForm, prec: int):
    """P0(1) + sum_{j=2}^{a/2} w(2j-1) P_{2j-1}(1) zeta(2j+1) as an mpf.

    The terms nearly cancel (about 19 digits per unit of n for a = 20), so the
    working precision is raised by the measured loss; the result carries
    ``prec`` significant digits up to the GUARD_DIGITS allowance.  Raises
    PrecisionError below the floor 10 n + 30, or when the cancellation alone
    exceeds ``prec`` digits.
    """
    n = form.params.n
    if prec < precision_floor(n):
        raise PrecisionError(f"prec={prec} below the floor {precision_floor(n)} for n={n}")
    terms_exact = _odd_terms(form)
    p0 = form.P0(1)
    return _sum_with_cancellation(
        lambda work: [to_mp(p0)] + [to_mp(coef) * zeta(l + 2, work) for l, coef in terms_exact],
        prec,
    )


def general_z_value(form: ZetaLinearForm, z, prec: int):
    """P0(z) + sum_l w(l) P_l(z) Li_{l+2}(1/z) for |z| > 1.

    Exact (int or Fraction) z keeps the polynomial values exact.
    """
    exact = isinstance(z, (int, Fraction))
    with working_precision(prec + GUARD_DIGITS):
        zm = to_mp(z)
        if abs(zm) <= 1:
            raise DomainError(f"general_z_value needs |z| > 1, got |z| = {mpmath.nstr(abs(zm), 8)}")
    if exact:
        z = Fraction(z)
    active = [(l, form.w(l), poly) for l, poly in sorted(form.P.items()) if form.w(l) and poly.coeffs]

    def make_terms(work):
        zw = to_mp(z)
        inv = 1 / zw
        out = [to_mp(form.P0(z)) if exact else form.P0(zw)]
        for l, wl, poly in active:
            pv = to_mp(poly(z)) if exact else poly(zw)
            out.append(wl * pv * polylog(l + 2, inv, work))
        return out

    return _sum_with_cancellation(make_terms, prec)


def scaled_integers(form: ZetaLinearForm):
    """(p0, {j: p_j}, d_n, ell) with the integer coefficients of 2 d_n^(a+2) S_n(1).

    ``ell(prec)`` evaluates p0 + sum_j p_j zeta(2j+1).
    """
    if form._scaled is not None:
        return form._scaled
    a = form.params.require_even().a
    dn = form.dn
    scale = 2 * dn ** (a + 2)
    p0 = scale * form.P0(1)
    if p0.denominator != 1:
        raise IntegralityError(f"2 d_n^{a + 2} P0(1) = {p0} is not an integer")
    ps = {}
    for l, coef in _odd_terms(form):
        v = scale * coef
        if v.denominator != 1:
            raise IntegralityError(f"scaled coefficient for zeta({l + 2}) = {v} is not an integer")
        ps[(l + 1) // 2] = int(v)
    p0 = int(p0)

    def ell(prec: int):
        with working_precision(prec + GUARD_DIGITS):
            return p0 + mpmath.fsum(v * zeta(2 * j + 1, prec + GUARD_DIGITS) for j, v in ps.items())

    form._scaled = (p0, ps, dn, ell)
    return form._scaled


def coefficient_integrality(form: ZetaLinearForm) -> list[str]:
    """Polynomial coefficients failing the denominator bounds.

    2 d_n^(a-l) P_l must have integer coefficients, and 2 d_n^(a+2) P0 too
    (for the weight l(l+1)/2; the bound is independent of the integer weight).
    """
    a, dn = form.params.a, form.dn
    bad = []
    for l, poly in form.P.items():
        s = 2 * dn ** (a - l)
        bad += [f"P_{l}[{k}]" for k, c in enumerate(poly.coeffs) if (s * c).denominator != 1]
    s = 2 * dn ** (a + 2)
    bad += [f"P0[{k}]" for k, c in enumerate(form.P0.coeffs) if (s * c).denominator != 1]
    return bad
