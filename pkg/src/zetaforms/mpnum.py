"""Multiprecision special functions: zeta at integers, polylogarithms, log-gamma.

mpmath supplies the floating-point numbers; the special functions themselves
are evaluated here.  Every function takes ``prec`` in *decimal digits* and runs
at ``prec`` digits plus a fixed 32-bit cushion.  The returned numbers keep that
precision, but any further arithmetic on them happens at the caller's mpmath
context, so callers should wrap their own arithmetic in
:func:`working_precision`.

mpmath keeps its working precision in a process-global context, so these
functions are not safe to call from several threads at once.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .errors import ConvergenceError, DomainError
from .exact import bernoulli, harmonic

GUARD_BITS = 32
GUARD_DIGITS = 5
LOG2_10 = math.log2(10)

__all__ = [
    "GUARD_BITS",
    "GUARD_DIGITS",
    "precision_bits",
    "working_precision",
    "to_mp",
    "zeta",
    "zeta_em_params",
    "polylog",
    "log_gamma",
    "gauss_legendre",
    "agree_digits",
]


def precision_bits(prec: int) -> int:
    if prec < 1:
        raise DomainError(f"precision must be >= 1 digit, got {prec}")
    return int(math.ceil(prec * LOG2_10)) + GUARD_BITS


@contextmanager
def working_precision(prec: int):
    with mpmath.workprec(precision_bits(prec)):
        yield


def to_mp(x):
    """Convert ints, Fractions, floats, complex and mpmath numbers to mpmath."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def agree_digits(x, y) -> float:
    """Number of matching significant decimal digits between x and y."""
    x, y = to_mp(x), to_mp(y)
    if x == y:
        return math.inf
    scale = max(abs(x), abs(y))
    if scale == 0:
        return math.inf
    return -float(mpmath.log10(abs(x - y) / scale))


@lru_cache(maxsize=4096)
def _bern_mp(m: int, bits: int):
    b = bernoulli(m)
    with mpmath.workprec(bits):
        return mpf(b.numerator) / b.denominator


# ---------------------------------------------------------------------- zeta


def zeta_em_params(s: int, prec: int) -> tuple[int, int]:
    """Cutoff N and the maximum number of Euler-Maclaurin corrections for zeta(s).

    With corrections B_2m/(2m)! * (s)_{2m-1} * N^{-s-2m+1}, successive terms
    shrink by roughly ((s + 2m) / (2 pi N))^2, so the smallest achievable term
    is about exp(-2 pi N).  N = 0.4 * digits + s + 10 leaves a wide margin.
    """
    digits = prec + GUARD_DIGITS
    N = int(0.4 * digits) + s + 10
    return N, int(math.pi * N)


@lru_cache(maxsize=512)
def zeta(s: int, prec: int):
    """Riemann zeta at an integer s >= 2 via Euler-Maclaurin summation."""
    if not isinstance(s, int) or s < 2:
        raise DomainError(f"zeta needs an integer s >= 2, got {s!r}")
    N, max_terms = zeta_em_params(s, prec)
    with working_precision(prec):
        bits = mpmath.mp.prec
        eps = mpf(10) ** (-(prec + GUARD_DIGITS))
        total = mpmath.fsum(mpf(k) ** (-s) for k in range(1, N))
        n = mpf(N)
        total += n ** (1 - s) / (s - 1) + n ** (-s) / 2
        poch = mpf(s)  # s (s+1) ... (s+2m-2)
        power = n ** (-s - 1)
        inv_n2 = 1 / (n * n)
        fact = mpf(2)  # (2m)!
        prev = None
        for m in range(1, max_terms + 1):
            term = _bern_mp(2 * m, bits) / fact * poch * power
            total += term
            if abs(term) < eps * total:
                return +total
            if prev is not None and abs(term) > prev:
                break
            prev = abs(term)
            poch *= (s + 2 * m - 1) * (s + 2 * m)
            power *= inv_n2
            fact *= (2 * m + 1) * (2 * m + 2)
    raise ConvergenceError(f"Euler-Maclaurin for zeta({s}) did not reach {prec} digits")


def _zeta_any(m: int, prec: int):
    """zeta at any integer m != 1 (non-positive values via Bernoulli numbers)."""
    if m >= 2:
        return zeta(m, prec)
    if m == 1:
        raise DomainError("zeta has a pole at 1")
    j = -m
    b = bernoulli(j + 1)
    val = Fraction((-1) ** j) * b / (j + 1)
    return mpf(val.numerator) / val.denominator


# ------------------------------------------------------------------ polylog


def polylog(s: int, x, prec: int):
    """Li_s(x) = sum_{k>=1} x^k / k^s for integer s >= 2 and |x| <= 1.

    Direct summation with a geometric tail bound for |x| <= 3/4.  Closer to
    the unit circle the expansion in mu = log x is used instead,

        Li_s(e^mu) = mu^(s-1)/(s-1)! (H_{s-1} - log(-mu)) + sum_{k != s-1} zeta(s-k) mu^k / k!,

    which converges like (|mu| / 2 pi)^k.
    """
    if not isinstance(s, int) or s < 2:
        raise DomainError(f"polylog needs an integer order s >= 2, got {s!r}")
    with working_precision(prec):
        x = to_mp(x)
        r = abs(x)
        if r > 1 + mpf(10) ** (-prec):
            raise DomainError(f"polylog: |x| = {mpmath.nstr(r, 8)} > 1 is outside the series domain")
        if x == 0:
            return x * 0
        if x == 1:
            return zeta(s, prec)
        if r <= 0.75:
            return _polylog_direct(s, x, r, prec)
        return _polylog_log_series(s, x, prec)


def _polylog_direct(s, x, r, prec):
    eps = mpf(10) ** (-(prec + GUARD_DIGITS))
    total = x * 0
    xk = x
    k = 1
    one_minus_r = 1 - r
    while True:
        total += xk / mpf(k) ** s
        k += 1
        xk *= x
        tail = r ** k / (mpf(k) ** s * one_minus_r)
        if tail < eps * abs(total):
            return total


def _polylog_log_series(s, x, prec):
    eps = mpf(10) ** (-(prec + GUARD_DIGITS))
    mu = mpmath.log(x)
    amu = abs(mu)
    if amu >= 2 * mpmath.pi:
        raise DomainError("polylog: log-series requires |log x| < 2 pi")
    h = harmonic(s - 1)
    total = mu ** (s - 1) / math.factorial(s - 1) * (mpf(h.numerator) / h.denominator - mpmath.log(-mu))
    ratio = float(amu / (2 * mpmath.pi))
    lead = math.log(2) + s * math.log(2 * math.pi)
    log_eps = float(mpmath.log(eps))
    k = 0
    mu_k = mu ** 0
    fact = 1
    while True:
        if k != s - 1:
            total += _zeta_any(s - k, prec) * mu_k / fact
        k += 1
        mu_k *= mu
        fact *= k
        if k > s + 1:
            # |zeta(s-k) / k!| <= 2 (2 pi)^(s-1-k) * (k-s)!/k! <= 2 (2 pi)^s (1 / 2 pi)^k
            bound = lead + k * math.log(ratio) - math.log(1 - ratio)
            if total == 0 or bound < log_eps + float(mpmath.log(abs(total))):
                return total


# ---------------------------------------------------------------- log-gamma


def _stirling(w, digits: int, bits: int):
    eps = mpf(10) ** (-digits)
    total = (w - mpf(0.5)) * mpmath.log(w) - w + mpmath.log(2 * mpmath.pi) / 2
    w2 = w * w
    wk = w
    prev = None
    for m in range(1, 10 * digits + 10):
        term = _bern_mp(2 * m, bits) / ((2 * m) * (2 * m - 1) * wk)
        total += term
        a = abs(term)
        if a < eps:
            return total
        if prev is not None and a > prev:
            break
        prev = a
        wk *= w2
    raise ConvergenceError(f"Stirling series stalled at |w| = {mpmath.nstr(abs(w), 6)}")


def log_gamma(z, prec: int):
    """Principal-branch log Gamma(z) (analytic in C minus (-inf, 0]).

    The argument is shifted right by N until Re(z + N) clears a threshold where
    the Stirling series reaches the requested accuracy, then
    log Gamma(z) = log Gamma(z + N) - sum_k log(z + k).  The sum of logarithms
    is taken as one logarithm of the product, with the 2 pi i branch offset
    recovered from a float-accuracy sum of the arguments.
    """
    with working_precision(prec):
        z = to_mp(z)
        if mpmath.im(z) == 0 and mpmath.re(z) <= 0:
            raise DomainError(f"log_gamma: {z} is a pole or on the branch cut")
        digits = prec + GUARD_DIGITS
        threshold = 0.4 * digits + 10
        re = float(mpmath.re(z))
        N = max(0, int(math.ceil(threshold - re)))
        val = _stirling(z + N, digits, mpmath.mp.prec)
        if N:
            prod = z ** 0
            argsum = 0.0
            zi = float(mpmath.im(z))
            for k in range(N):
                f = z + k
                prod *= f
                argsum += math.atan2(zi, re + k)
            lp = mpmath.log(prod)
            winding = round((argsum - float(mpmath.im(lp))) / (2 * math.pi))
            if winding:
                lp += 2j * mpmath.pi * winding
            val -= lp
        return val


# ---------------------------------------------------------------- quadrature


@lru_cache(maxsize=64)
def gauss_legendre(m: int, prec: int):
    """Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1]."""
    if m < 1:
        raise DomainError("Gauss-Legendre needs at least one node")
    with working_precision(prec):
        eps = mpf(10) ** (-(prec + GUARD_DIGITS))
        nodes, weights = [], []
        for i in range(1, m // 2 + 1):
            x = mpmath.cos(mpmath.pi * (i - mpf(0.25)) / (m + mpf(0.5)))
            for _ in range(100):
                p0, p1 = mpf(1), x
                for k in range(2, m + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            else:
                raise ConvergenceError("Legendre root iteration did not converge")
            w = 2 / ((1 - x * x) * dp * dp)
            nodes += [-x, x]
            weights += [w, w]
        if m % 2:
            p0, p1 = mpf(1), mpf(0)
            for k in range(2, m + 1):
                p0, p1 = p1, (-(k - 1) * p0) / k
            dp = m * (-p0) / (-1)
            nodes.append(mpf(0))
            weights.append(2 / (dp * dp))
        return tuple(nodes), tuple(weights)
