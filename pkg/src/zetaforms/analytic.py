"""Independent evaluations of S_n(z) and J_n(u).

* :func:`S_direct` sums the defining series  sum_{k>n} R_n''(k)/2 * z^-k.
* :func:`J_residue` sums the residues of R_n(t) (pi / sin pi t)^3 e^{ut} at
  t = k > n, i.e. sum_k [(pi^2+u^2)/2 R + u R' + R''/2](k) (-e^u)^k.
* :func:`J_quadrature` integrates the Gamma-function form of the same contour
  integral along a vertical line Re z = c, 0 < c < 1.

Re J(i pi) = S(1), so the three routes cross-check each other.

At z = 1 (and u = +-i pi) the series only decays polynomially.  Those sums
are split into an exact rational partial sum up to a cutoff K and an
Euler-Maclaurin tail, whose derivatives come from a high-order Taylor jet of
R_n at K.  Other ratios are summed directly with a tail estimate.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import mpf

from .decomposition import Params
from .errors import ConvergenceError, DomainError, PrecisionError
from .exact import Jet, jet_exp
from .mpnum import GUARD_DIGITS, _bern_mp, gauss_legendre, log_gamma, to_mp, working_precision

log = logging.getLogger(__name__)

__all__ = [
    "SeriesValue",
    "r_factors",
    "r_jet",
    "R_jet_at",
    "S_direct",
    "J_residue",
    "J_quadrature",
    "check_u_domain",
    "I_PI",
]

MAX_DIRECT_TERMS = 200_000


@dataclass(frozen=True)
class SeriesValue:
    """A summed series.

    ``tail_bound`` is an absolute estimate of the truncation error; summation
    stops once it falls below 10^-prec times |value|.
    """

    value: Any
    terms_used: int
    tail_bound: Any
    method: str
    cutoff: int


# ----------------------------------------------------------------- R_n jets


def r_factors(params: Params) -> tuple[int, list[tuple[Fraction, int]]]:
    """R_n(t) = const * prod (t + shift)^mult."""
    a, n = params.a, params.n
    const = math.factorial(n) ** (a - 6)
    fac = [(Fraction(n, 2), 1)]
    fac += [(Fraction(h), 3) for h in range(-n, 0)]
    fac += [(Fraction(h), 3) for h in range(n + 1, 2 * n + 1)]
    fac += [(Fraction(h), -a) for h in range(n + 1)]
    return const, fac


def r_degree(params: Params) -> int:
    return 6 * params.n + 1 - params.a * (params.n + 1)


def r_jet(params: Params, center, order: int, exact: bool = True) -> Jet:
    """Taylor jet of R_n at ``center`` through ``order``.

    Built from the logarithmic derivative: with L the jet of
    sum mult * log(1 + s/(center+shift)), R = R(center) * exp(L).  Factors
    vanishing at the center are pulled out as a power of s.
    """
    const, fac = r_factors(params)
    if exact:
        center = Fraction(center)
        conv = lambda x: x
    else:
        center = to_mp(center)
        conv = to_mp
    zero_order = 0
    value = conv(Fraction(const))
    live = []
    for shift, mult in fac:
        v = center + conv(shift)
        if v == 0:
            if mult < 0:
                raise DomainError(f"R_n has a pole at t = {center}")
            zero_order += mult
            continue
        value *= v ** mult
        live.append((v, mult))
    zero = value * 0
    eff = order - zero_order
    if eff < 0:
        return Jet(center, (zero,) * (order + 1))
    logc = [zero] * (eff + 1)
    for v, mult in live:
        inv = 1 / v
        p = inv
        for lam in range(1, eff + 1):
            term = mult * p / lam
            logc[lam] += term if lam % 2 else -term
            p *= inv
    body = jet_exp(Jet(center, logc)).scale(value)
    coeffs = (zero,) * zero_order + body.coeffs
    return Jet(center, coeffs[: order + 1])


def R_jet_at(params: Params, k, order: int = 2) -> tuple:
    """Exact (R(k), R'(k), ..., R^(order)(k)) as Fractions."""
    if order > 2 or order < 0:
        raise DomainError("R_jet_at supports orders 0..2")
    k = Fraction(k)
    if k.denominator == 1 and -params.n <= k <= 0:
        raise DomainError(f"t = {k} is a pole of R_n")
    return r_jet(params, k, order).derivatives()


# ------------------------------------------------------------ summation core


def _digits_target(prec: int) -> int:
    return prec + GUARD_DIGITS + 5


def _em_sum(params: Params, beta, gamma, prec: int, cutoff: int | None = None) -> SeriesValue:
    """sum_{k>n} beta R'(k) + gamma R''(k) via exact partial sum + Euler-Maclaurin.

    Terms n < k < K are summed exactly; the tail from K on is the
    Euler-Maclaurin expansion in the jet of R at K.
    """
    n, a = params.n, params.a
    digits = _digits_target(prec)
    K = n + 1 + int(0.5 * digits) + 10 if cutoff is None else int(cutoff)
    if K <= n + 1:
        raise DomainError(f"cutoff {K} must exceed n + 1 = {n + 1}")
    order = digits + 3 * a + 20
    for _attempt in range(6):
        s1 = Fraction(0)
        s2 = Fraction(0)
        for k in range(n + 1, K):
            _, d1, d2 = r_jet(params, k, 2).derivatives()
            s1 += d1
            s2 += d2
        with working_precision(digits):
            eps = mpf(10) ** (-(prec + GUARD_DIGITS))
            bits = mpmath.mp.prec
            b, g = to_mp(beta), to_mp(gamma)
            partial = b * to_mp(s1) + g * to_mp(s2)
            rho = r_jet(params, K, order + 2, exact=False).coeffs
            total = partial - b * rho[0] - g * rho[1] + (b * rho[1] + 2 * g * rho[2]) / 2
            prev = None
            status = "exhausted"
            for m in range(1, order // 2):
                term = _bern_mp(2 * m, bits) * (b * rho[2 * m] + g * (2 * m + 1) * rho[2 * m + 1])
                mag = abs(term)
                if prev is not None and mag > prev and mag > eps * abs(total):
                    status = "diverging"
                    break
                total -= term
                prev = mag
                if mag < eps * abs(total):
                    nxt = _bern_mp(2 * m + 2, bits) * (
                        b * rho[2 * m + 2] + g * (2 * m + 3) * rho[2 * m + 3]
                    )
                    tail = 10 * max(abs(nxt), mag * eps)
                    return SeriesValue(+total, K - n - 1 + m, tail, "euler-maclaurin", K)
        log.debug("EM tail %s at K=%d order=%d; retrying", status, K, order)
        if status == "diverging":
            K = int(K * 1.5) + 5
        else:
            order *= 2
    raise ConvergenceError(f"Euler-Maclaurin tail did not converge (a={a}, n={n}, prec={prec})")


def _direct_sum(params: Params, alpha, beta, gamma, q, prec: int) -> SeriesValue:
    """sum_{k>n} (alpha R + beta R' + gamma R'')(k) q^k for |q| <= 1."""
    n = params.n
    digits = _digits_target(prec)
    d = r_degree(params)
    with working_precision(digits):
        eps = mpf(10) ** (-(prec + GUARD_DIGITS))
        al, be, ga, q = (to_mp(x) for x in (alpha, beta, gamma, q))
        # polynomial decay exponent of the slowest term
        m = -d if al != 0 else (1 - d if be != 0 else 2 - d)
        aq = abs(q)
        total = q * 0
        qk = q ** n
        prev_mag = None
        shrinking = 0
        for k in range(n + 1, n + 1 + MAX_DIRECT_TERMS):
            qk *= q
            r0, r1, r2 = (to_mp(x) for x in r_jet(params, k, 2).derivatives())
            t = (al * r0 + be * r1 + ga * r2) * qk
            total += t
            mag = abs(t)
            shrinking = shrinking + 1 if prev_mag is not None and mag < prev_mag else 0
            prev_mag = mag
            if shrinking >= 3 and k > 2 * n + 2:
                geo = aq / (1 - aq) if aq < 1 else math.inf
                poly = k / (m - 1) if m > 1 else math.inf
                factor = min(geo, poly)
                if factor == math.inf:
                    continue
                tail = 10 * mag * factor
                if tail < eps * abs(total):
                    return SeriesValue(+total, k - n, tail, "direct", k)
    raise ConvergenceError(
        f"direct residue sum did not reach {prec} digits in {MAX_DIRECT_TERMS} terms"
    )


# ------------------------------------------------------------------- S and J


def S_direct(params: Params, z, prec: int, cutoff: int | None = None) -> SeriesValue:
    """S_n(z) = sum_{k>n} R_n''(k)/2 z^-k for |z| >= 1 (terms k <= n vanish).

    ``cutoff`` overrides the exact-summation cutoff K of the z = 1 path.
    """
    if isinstance(z, (int, Fraction)) and z == 1:
        return _em_sum(params, Fraction(0), Fraction(1, 2), prec, cutoff)
    with working_precision(_digits_target(prec)):
        zm = to_mp(z)
        if abs(zm) < 1:
            raise DomainError("S_direct needs |z| >= 1")
        if zm == 1:
            return _em_sum(params, Fraction(0), Fraction(1, 2), prec, cutoff)
        q = 1 / zm
    return _direct_sum(params, 0, 0, Fraction(1, 2), q, prec)


I_PI = "i*pi"
_NAMED_U = {"i*pi": 1, "-i*pi": -1}


def _parse_u(u):
    """Numeric u, with the exact names "i*pi" / "-i*pi" resolved at the current precision."""
    if isinstance(u, str):
        key = u.replace(" ", "").lower()
        if key not in _NAMED_U:
            raise DomainError(f"unknown symbolic u {u!r}")
        return mpmath.mpc(0, _NAMED_U[key] * mpmath.pi)
    return to_mp(u)


def check_u_domain(u, prec: int = 30):
    with working_precision(prec):
        u = _parse_u(u)
        tol = mpf(10) ** (-prec)
        if mpmath.re(u) > tol or abs(mpmath.im(u)) > 3 * mpmath.pi + tol:
            raise DomainError("u must satisfy Re(u) <= 0 and |Im(u)| <= 3 pi")
        return u


def J_residue(params: Params, u, prec: int) -> SeriesValue:
    """sum_{k>n} [(pi^2+u^2)/2 R(k) + u R'(k) + R''(k)/2] (-e^u)^k.

    For u = +-i pi (pass the string "i*pi" or "-i*pi", or a number equal to it
    at the working precision) the ratio is 1 and the sum goes through the
    Euler-Maclaurin path.  Other u on the imaginary axis are summed directly,
    which only converges in reasonable time when R_n decays fast (large a).
    """
    digits = _digits_target(prec)
    check_u_domain(u, digits)
    with working_precision(digits):
        u = _parse_u(u)
        tol = mpf(10) ** (-digits + 5)
        alpha = (mpmath.pi ** 2 + u * u) / 2
        q = -mpmath.exp(u)
        if abs(q - 1) < tol and abs(alpha) < tol:
            # u = +-i pi: unit ratio, R-term absent
            special = True
        else:
            special = False
    if special:
        return _em_sum(params, u, Fraction(1, 2), prec)
    return _direct_sum(params, alpha, u, Fraction(1, 2), q, prec)


def _log_integrand(params: Params, c, u, y, prec: int):
    """A logarithm of (z+1/2) Gamma(nz)^(a+3) Gamma(n-nz+1)^3 Gamma(nz+2n+1)^3 / Gamma(nz+n+1)^(a+3) e^{nuz}.

    Gamma(nz+n+1) and Gamma(nz+2n+1) are reduced to Gamma(nz) times rising
    factorials, leaving two log_gamma calls.  Only exp of the result is used,
    so the imaginary part is correct modulo 2 pi.
    """
    a, n = params.a, params.n
    z = mpmath.mpc(c, y)
    nz = n * z
    p1 = nz
    for k in range(1, n + 1):
        p1 *= nz + k
    p2 = p1
    for k in range(n + 1, 2 * n + 1):
        p2 *= nz + k
    L = 3 * (log_gamma(nz, prec) + log_gamma(n - nz + 1, prec) + mpmath.log(p2))
    L -= (a + 3) * mpmath.log(p1)
    L += n * u * z + mpmath.log(z + mpf(0.5))
    return L


def _integration_range(params, c, u, drop_digits: float):
    """[y_lo, y_hi] outside of which |integrand| < 10^-drop_digits of its peak."""
    low = 15
    with working_precision(low):
        drop = drop_digits * math.log(10)
        step = 0.25
        vals = {}

        def re_l(y):
            if y not in vals:
                vals[y] = float(mpmath.re(_log_integrand(params, c, u, y, low)))
            return vals[y]

        peak = re_l(0.0)
        ends = []
        for direction in (-1, 1):
            y, last = 0.0, peak
            while True:
                y += direction * step
                v = re_l(y)
                peak = max(peak, v)
                if v < peak - drop and v < last:
                    ends.append(y + direction * step)
                    break
                last = v
                if abs(y) > 1e4:
                    raise ConvergenceError("quadrature integrand does not decay along the line")
        return ends[0], ends[1]


def _gl_integrate(f, lo, hi, panels: int, nodes, weights):
    h = (hi - lo) / panels
    total = 0
    absum = 0
    for p in range(panels):
        mid = lo + (p + mpf(0.5)) * h
        for x, w in zip(nodes, weights):
            v = f(mid + x * h / 2)
            total += w * v
            absum += w * abs(v)
    return total * h / 2, absum * h / 2


def _panel_count(width, pole_distance, nodes: int, digits: float) -> int:
    # m-point Gauss-Legendre on a panel of length h loses about rho^(-2m), where
    # the Bernstein ellipse reaching the nearest pole has rho = b + sqrt(b^2 + 1),
    # b = 2 d / h.  Pick h so that rho^(2m) >= 10^digits.
    rho = 10 ** (digits / (2 * nodes))
    h = 4 * pole_distance / (rho - 1 / rho)
    return max(4, int(math.ceil(width / h)))


def _trap_integrate(f, lo, hi, pole_distance: float, digits: int):
    """Trapezoidal rule on [lo, hi] with nested halving.

    For an integrand analytic in |Im y| < d that is negligible at both ends,
    the error of step h is about exp(-2 pi d / h), so one halving squares the
    relative error.  Start one level above the predicted step and accept once
    the last correction is below 10^-(digits/2 + 5) of int |f|.
    """
    h_target = 2 * math.pi * pole_distance / (digits * math.log(10))
    width = hi - lo
    steps = max(8, 2 ** int(math.ceil(math.log2(float(width) / h_target)) - 1))
    h = width / steps
    vals = [f(lo + k * h) for k in range(steps + 1)]
    total = (mpmath.fsum(vals[1:-1]) + (vals[0] + vals[-1]) / 2) * h
    absum = (mpmath.fsum(abs(v) for v in vals[1:-1]) + (abs(vals[0]) + abs(vals[-1])) / 2) * h
    accept = mpf(10) ** (-(digits / 2 + 5))
    for _ in range(8):
        mids = [f(lo + (k + mpf(0.5)) * h) for k in range(steps)]
        h /= 2
        steps *= 2
        new = total / 2 + mpmath.fsum(mids) * h
        absum = absum / 2 + mpmath.fsum(abs(v) for v in mids) * h
        done = abs(new - total) < accept * absum
        total = new
        if done:
            return total, absum
    raise ConvergenceError("trapezoidal rule did not converge on the integration line")


QUAD_RULES = ("trapezoid", "gauss-legendre")


def _line_integral(params, c, u, digits: int, drop: float, nodes: int, rule: str):
    """(int phi dy, int |phi| dy) over the truncated line, to ``digits`` digits of the latter."""
    n = params.n
    with working_precision(digits):
        y_lo, y_hi = _integration_range(params, c, u, drop)
        f = lambda y: mpmath.exp(_log_integrand(params, c, u, y, digits))
        d = 0.8 * min(float(c), 1 + 1 / n - float(c))
        if rule == "trapezoid":
            return _trap_integrate(f, mpf(y_lo), mpf(y_hi), d, digits)
        gl_x, gl_w = gauss_legendre(nodes, digits)
        panels = _panel_count(y_hi - y_lo, d, nodes, digits)
        eps = mpf(10) ** (-digits)
        prev, absum = _gl_integrate(f, mpf(y_lo), mpf(y_hi), panels, gl_x, gl_w)
        for _ in range(6):
            panels *= 2
            cur, absum = _gl_integrate(f, mpf(y_lo), mpf(y_hi), panels, gl_x, gl_w)
            if abs(cur - prev) < eps * absum:
                return cur, absum
            prev = cur
        raise ConvergenceError("Gauss-Legendre panels did not converge")


def J_quadrature(params: Params, u, prec: int, abscissa=0.5, nodes: int = 20, rule: str = "trapezoid"):
    """J_n(u) from the Gamma-form integral on the line Re z = abscissa.

    With z = c + i y and the line oriented from +i inf to -i inf,
    J = -(-1)^n n^2 n!^(a-6) / (2 pi) * int_{-inf}^{inf} phi(c + i y) dy.

    The integrand oscillates, and int |phi| can exceed |int phi| by many
    orders of magnitude.  A 20-digit pilot pass measures that loss; the final
    pass adds it to the working precision.

    ``rule`` is "trapezoid" (default, nested halving) or "gauss-legendre"
    (composite, ``nodes`` points per panel, panel count doubled until two
    estimates agree).  The second needs several times more integrand calls
    for the same accuracy because the nearest pole sits only min(c, 1+1/n-c)
    away from the line.
    """
    a, n = params.a, params.n
    if rule not in QUAD_RULES:
        raise DomainError(f"unknown quadrature rule {rule!r}")
    c = to_mp(abscissa)
    if not 0 < c < 1:
        raise DomainError(f"abscissa must lie in (0, 1), got {abscissa}")
    check_u_domain(u, prec + 10)
    with working_precision(20):
        um = _parse_u(u)
        cur, absum = _line_integral(params, c, um, 20, 25, nodes, "trapezoid")
        lost = float(mpmath.log10(absum / abs(cur))) if cur else 20.0
    if lost >= 15:
        lost = 2 * lost + 10  # the pilot could not resolve the value; be generous
    lost = max(0, int(math.ceil(lost)))
    digits = prec + lost + 2 * GUARD_DIGITS
    if digits > 10 * prec + 200:
        raise PrecisionError("cancellation along the integration line is too large")
    with working_precision(digits):
        um = _parse_u(u)
        cur, absum = _line_integral(params, c, um, digits, digits + 10, nodes, rule)
        got = digits - float(mpmath.log10(absum / abs(cur)))
        if got < prec:
            log.debug("quadrature kept %.1f of %d digits", got, prec)
            raise PrecisionError(f"quadrature cancellation left {got:.1f} digits, wanted {prec}")
        pref = -((-1) ** n) * mpf(n) ** 2 * mpf(math.factorial(n)) ** (a - 6) / (2 * mpmath.pi)
        out = pref * cur
    with working_precision(prec):
        return +out
