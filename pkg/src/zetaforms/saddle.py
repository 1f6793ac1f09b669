"""Saddle-point analysis of the Gamma-form integral.

Stirling's formula turns the integrand into g(z) e^{n w(z)} with

    w(z) = (a+3) z log z - (a+3)(z+1) log(z+1) + 3(1-z) log(1-z)
           + 3(z+2) log(z+2) + i pi z,

so the size of J_n(i pi) is governed by the critical point z0 of w in the
strip 0 < Re z < 1.  This module locates z0, checks that the vertical line
through it is a path of steepest-enough descent, compares the residue-series
values of J_n against the predicted asymptote, and reports the exponent
kappa(a) = (a + 2) + Re w(z0) that decides whether d_n^(a+2) S_n(1) -> 0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .decomposition import Params
from .errors import AmbiguityError, ConvergenceError, DomainError, PrecisionError
from .mpnum import working_precision

log = logging.getLogger(__name__)

__all__ = [
    "SaddleData",
    "AdmissibilityReport",
    "AsymptoteTable",
    "w_family",
    "find_saddle",
    "admissibility_check",
    "asymptote_check",
    "rate_exponent",
    "stated_power",
    "stirling_power",
    "published_cubic",
    "derived_cubic",
]

GRID = 40
F_LIMIT_Y = 10**6


def stated_power(a: int) -> Fraction:
    """The n-exponent as printed for the asymptote of J_n: a/2 - 4 - 1/2."""
    return Fraction(a - 9, 2)


def stirling_power(a: int) -> Fraction:
    """The n-exponent that Stirling's formula actually produces, -(a+3)/2.

    The Gamma ratio contributes n^(-(a+3)/2 + ...) once all n^(1/2) factors
    and the n^2 prefactor are collected; see the decisions log.
    """
    return Fraction(-(a + 3), 2)


# ------------------------------------------------------------------ the phase


def _check_domain(z):
    if mpmath.im(z) == 0:
        x = mpmath.re(z)
        if not 0 < x < 1:
            raise DomainError(f"w: z = {mpmath.nstr(z, 10)} lies on a branch cut or singularity")


def w_family(a: int, z, deriv: int, prec: int):
    """w, w' or w'' at z with principal logarithms."""
    if deriv not in (0, 1, 2):
        raise DomainError("deriv must be 0, 1 or 2")
    with working_precision(prec):
        z = mpmath.mpmathify(z)
        _check_domain(z)
        A = a + 3
        if deriv == 0:
            out = (
                A * z * mpmath.log(z)
                - A * (z + 1) * mpmath.log(z + 1)
                + 3 * (1 - z) * mpmath.log(1 - z)
                + 3 * (z + 2) * mpmath.log(z + 2)
                + 1j * mpmath.pi * z
            )
        elif deriv == 1:
            out = (
                A * mpmath.log(z)
                - A * mpmath.log(z + 1)
                - 3 * mpmath.log(1 - z)
                + 3 * mpmath.log(z + 2)
                + 1j * mpmath.pi
            )
        else:
            out = A / z - A / (z + 1) + 3 / (1 - z) + 3 / (z + 2)
        return +out


# --------------------------------------------------------------- the saddle


@dataclass
class SaddleData:
    a: int
    prec: int
    z0: mpmath.mpc
    w0: mpmath.mpc
    wpp0: mpmath.mpc
    alpha0: mpmath.mpf
    kappa: mpmath.mpf
    power: Fraction
    residual: mpmath.mpf
    trace: list = field(default_factory=list, repr=False)

    @property
    def x0(self):
        return mpmath.re(self.z0)

    @property
    def y0(self):
        return mpmath.im(self.z0)

    def to_dict(self) -> dict:
        d = self.prec
        with working_precision(d):
            return self._as_dict(d)

    def _as_dict(self, d: int) -> dict:
        return {
            "a": self.a,
            "prec": d,
            "z0": {"re": mpmath.nstr(mpmath.re(self.z0), d), "im": mpmath.nstr(mpmath.im(self.z0), d)},
            "w0": {"re": mpmath.nstr(mpmath.re(self.w0), d), "im": mpmath.nstr(mpmath.im(self.w0), d)},
            "wpp0_abs": mpmath.nstr(abs(self.wpp0), d),
            "alpha0": mpmath.nstr(self.alpha0, d),
            "kappa": mpmath.nstr(self.kappa, d),
            "power_stated": str(self.power),
            "power_stirling": str(stirling_power(self.a)),
            "residual": mpmath.nstr(self.residual, 5),
            "newton_steps": len(self.trace),
        }


def _grid_seed(a: int):
    with working_precision(15):
        best, best_val = None, None
        for i in range(GRID):
            x = (i + mpf(0.5)) / GRID
            for j in range(GRID):
                y = -mpf(0.5) + (j + mpf(0.5)) / GRID
                z = mpmath.mpc(x, y)
                v = abs(w_family(a, z, 1, 15))
                if best_val is None or v < best_val:
                    best, best_val = z, v
        return best


def _in_strip(z) -> bool:
    return 0 < mpmath.re(z) < 1


def find_saddle(a: int, prec: int, seed=None) -> SaddleData:
    """Critical point of w in the strip 0 < Re z < 1.

    Seeded from a 40 x 40 grid (or ``seed``) and refined by Newton's method.
    Steps are halved until the iterate stays in the strip and |w'| drops:
    for a >= 16 a full first step from the grid leaves the strip.
    """
    if not isinstance(a, int) or a < 6 or a % 2:
        raise DomainError(f"find_saddle needs an even a >= 6, got {a!r}")
    z = _grid_seed(a) if seed is None else mpmath.mpmathify(seed)
    work = prec + 10
    trace = []
    with working_precision(work):
        z = mpmath.mpc(z)
        if not _in_strip(z):
            raise DomainError(f"seed {z} is outside the strip 0 < Re z < 1")
        target = mpf(10) ** (-(prec + 5))
        r = abs(w_family(a, z, 1, work))
        for it in range(200):
            if r < target:
                break
            step = w_family(a, z, 1, work) / w_family(a, z, 2, work)
            lam = mpf(1)
            while True:
                cand = z - lam * step
                if _in_strip(cand) and mpmath.im(cand) != 0:
                    rc = abs(w_family(a, cand, 1, work))
                    if rc < r:
                        break
                lam /= 2
                if lam < mpf(2) ** -60:
                    raise ConvergenceError(f"Newton stalled at z = {mpmath.nstr(z, 15)}", trace)
            z, r = cand, rc
            trace.append((it, mpmath.nstr(z, 20), float(r) if r > 1e-300 else 0.0, float(lam)))
        else:
            raise ConvergenceError("Newton did not converge for w'", trace)
        w0 = w_family(a, z, 0, work)
        wpp = w_family(a, z, 2, work)
    with working_precision(prec):
        z0, w0, wpp = +z, +w0, +wpp
        return SaddleData(
            a=a,
            prec=prec,
            z0=z0,
            w0=w0,
            wpp0=wpp,
            alpha0=mpmath.arg(wpp),
            kappa=(a + 2) + mpmath.re(w0),
            power=stated_power(a),
            residual=+r,
            trace=trace,
        )


def rate_exponent(a: int, prec: int):
    """kappa(a) = (a + 2) + Re w(z0); negative means d_n^(a+2) S_n(1) -> 0."""
    return find_saddle(a, prec).kappa


# ------------------------------------------------------------ admissibility


def derived_cubic(a: int, x0):
    """Coefficients (t^3, t^2, t, 1) of N, with f'(y) = N(y^2) / prod of the four |.|^2.

    f(y) = -Im w'(x0 + iy).  Each term of f' is c_k d_k / (d_k^2 + y^2) with
    (c, d) = (-(a+3), x0), (a+3, x0+1), (-3, x0+2), (-3, 1-x0).
    """
    A = a + 3
    parts = [(-A, x0), (A, x0 + 1), (-3, x0 + 2), (-3, 1 - x0)]
    out = [x0 * 0] * 4
    for k, (c, d) in enumerate(parts):
        poly = [c * d]  # ascending in t
        for m, (_, e) in enumerate(parts):
            if m != k:
                poly = _pmul(poly, [e * e, 1])
        for i, v in enumerate(poly):
            out[i] += v
    return [out[3], out[2], out[1], out[0]]


def published_cubic(x0):
    """The a = 20 cubic exactly as printed, coefficients (t^3, t^2, t, 1)."""
    return [
        14 + 0 * x0,
        2 * (7 * x0**2 + 7 * x0 + 44),
        2 * (-7 * x0**4 - 14 * x0**3 - 124 * x0**2 - 117 * x0 + 37),
        2 * (-7 * x0**5 - 21 * x0**4 + 16 * x0**3 + 67 * x0**2 - 9) * x0,
    ]


def _pmul(p, q):
    out = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def _cubic_eval(c, t):
    return ((c[0] * t + c[1]) * t + c[2]) * t + c[3]


def count_nonneg_roots(c, rel_tol=None) -> int:
    """Real roots of the cubic c[0] t^3 + ... + c[3] in [0, inf).

    [0, inf) is split at the real critical points into intervals where the
    cubic is monotone; each contributes one root iff its end values differ in
    sign.  A value within ``rel_tol`` of zero at a split point (a root sitting
    on a boundary or a double root) raises AmbiguityError.
    """
    if c[0] == 0:
        raise DomainError("leading coefficient vanishes")
    if rel_tol is None:
        rel_tol = mpf(10) ** (-(mpmath.mp.dps - 5))
    scale = max(abs(x) for x in c)
    # roots of 3 c0 t^2 + 2 c1 t + c2
    A, B, C = 3 * c[0], 2 * c[1], c[2]
    disc = B * B - 4 * A * C
    crit = []
    if disc > 0:
        s = mpmath.sqrt(disc)
        crit = sorted([(-B - s) / (2 * A), (-B + s) / (2 * A)])
    points = [mpf(0)] + [t for t in crit if t > 0]
    for t in points:
        v = _cubic_eval(c, t)
        if abs(v) <= rel_tol * scale * max(1, abs(t)) ** 3:
            raise AmbiguityError(f"cubic is zero within tolerance at t = {mpmath.nstr(t, 10)}")
    vals = [_cubic_eval(c, t) for t in points]
    vals.append(mpmath.sign(c[0]))  # behaviour at +inf
    return sum(1 for u, v in zip(vals, vals[1:]) if mpmath.sign(u) != mpmath.sign(v))


def f_profile(a: int, x0, y, prec: int):
    """f(y) = d/dy Re w(x0 + iy) = -Im w'(x0 + iy)."""
    return -mpmath.im(w_family(a, mpmath.mpc(x0, y), 1, prec))


@dataclass
class AdmissibilityReport:
    a: int
    cubic: list
    published_cubic: list | None
    cubic_max_deviation: object
    nonneg_root_count: int
    published_root_count: int | None
    f_limit_neg: object
    f_limit_pos: object
    f_limit_neg_extrapolated: object
    f_limit_pos_extrapolated: object
    f_deviation_neg: object
    f_deviation_pos: object
    monotone_profile: bool
    grid_max_at_y0: bool
    delta_checks: dict
    theta_condition: dict

    @property
    def f_limits_ok(self) -> bool:
        tol = mpf(10) ** -6
        return self.f_deviation_neg < tol and self.f_deviation_pos < tol

    def to_dict(self, digits: int = 20) -> dict:
        s = lambda x: mpmath.nstr(x, digits)
        return {
            "a": self.a,
            "cubic": [s(x) for x in self.cubic],
            "published_cubic": None if self.published_cubic is None else [s(x) for x in self.published_cubic],
            "cubic_max_deviation": None if self.cubic_max_deviation is None else s(self.cubic_max_deviation),
            "nonneg_root_count": self.nonneg_root_count,
            "published_root_count": self.published_root_count,
            "f_limit_neg": s(self.f_limit_neg),
            "f_limit_pos": s(self.f_limit_pos),
            "f_limit_neg_extrapolated": s(self.f_limit_neg_extrapolated),
            "f_limit_pos_extrapolated": s(self.f_limit_pos_extrapolated),
            "f_deviation_neg": s(self.f_deviation_neg),
            "f_deviation_pos": s(self.f_deviation_pos),
            "monotone_profile": self.monotone_profile,
            "grid_max_at_y0": self.grid_max_at_y0,
            "delta_checks": self.delta_checks,
            "theta_condition": self.theta_condition,
        }


def _profile_grid(y0):
    offsets = [mpf(10) ** e for e in range(-3, 4)]
    ys = [y0 - d for d in offsets] + [y0 + d for d in offsets]
    ys += [mpf(k) / 4 for k in range(-200, 201)]
    return sorted(set(ys))


def admissibility_check(a: int, saddle: SaddleData, prec: int) -> AdmissibilityReport:
    """Is Re w restricted to the line Re z = x0 maximal at z0, and only there?"""
    if saddle.a != a:
        raise DomainError("saddle data belongs to a different a")
    with working_precision(prec):
        x0, y0 = mpmath.re(saddle.z0), mpmath.im(saddle.z0)
        cubic = derived_cubic(a, x0)
        count = count_nonneg_roots(cubic)
        pub = pub_count = dev = None
        if a == 20:
            pub = published_cubic(x0)
            pub_count = count_nonneg_roots(pub)
            dev = max(abs(p - q) for p, q in zip(pub, cubic))

        Y = mpf(F_LIMIT_Y)
        two_pi = 2 * mpmath.pi
        fneg, fpos = f_profile(a, x0, -Y, prec), f_profile(a, x0, Y, prec)
        # f(+-Y) = limit + O(1/Y); one Richardson step removes the 1/Y term
        fneg_x = 2 * f_profile(a, x0, -2 * Y, prec) - fneg
        fpos_x = 2 * f_profile(a, x0, 2 * Y, prec) - fpos

        re_w = lambda y: mpmath.re(w_family(a, mpmath.mpc(x0, y), 0, prec))
        peak = re_w(y0)
        ys = _profile_grid(y0)
        vals = [re_w(y) for y in ys]
        below = [v for y, v in zip(ys, vals) if y < y0]
        above = [v for y, v in zip(ys, vals) if y > y0]
        rising = all(u < v for u, v in zip(below, below[1:])) and (not below or below[-1] < peak)
        falling = all(u > v for u, v in zip(above, above[1:])) and (not above or above[0] < peak)
        grid_max = all(v < peak for v in vals)
        deltas = {}
        for d in (mpf("0.1"), mpf(1), mpf(10)):
            deltas[mpmath.nstr(d, 3)] = bool(re_w(y0 - d) < peak and re_w(y0 + d) < peak)
        theta = {}
        for name, th in (("+pi/2", mpmath.pi / 2), ("-pi/2", -mpmath.pi / 2)):
            theta[name] = bool(mpmath.cos(saddle.alpha0 + 2 * th) < 0)
        return AdmissibilityReport(
            a=a,
            cubic=cubic,
            published_cubic=pub,
            cubic_max_deviation=dev,
            nonneg_root_count=count,
            published_root_count=pub_count,
            f_limit_neg=fneg,
            f_limit_pos=fpos,
            f_limit_neg_extrapolated=fneg_x,
            f_limit_pos_extrapolated=fpos_x,
            f_deviation_neg=abs(fneg - two_pi),
            f_deviation_pos=abs(fpos + 2 * two_pi),
            monotone_profile=bool(rising and falling),
            grid_max_at_y0=grid_max,
            delta_checks=deltas,
            theta_condition=theta,
        )


# ---------------------------------------------------------------- asymptote


def g_factor(a: int, z):
    """(z + 1/2) (1-z)^(3/2) (z+2)^(3/2) / (z^((a+3)/2) (z+1)^((a+3)/2))."""
    h = mpf(a + 3) / 2
    return (z + mpf(0.5)) * (1 - z) ** mpf(1.5) * (z + 2) ** mpf(1.5) / (z**h * (z + 1) ** h)


def c0_candidates(saddle: SaddleData) -> dict:
    """Moduli of the constant in front of the asymptote, for each normalisation tried.

    "printed": |g| (2 pi)^19 sqrt(2 pi / |w''|) with the printed g, which lacks
    the (z + 1/2) factor and has the half-integer powers inverted;
    "printed-2pi^(a/2-1)": the same with the prefactor power the Stirling step
    gives; "stirling": the constant obtained here from Stirling's formula.
    """
    a, z = saddle.a, saddle.z0
    h = mpf(a + 3) / 2
    g_printed = z**h * (z + 1) ** h / ((1 - z) ** mpf(1.5) * (z + 2) ** mpf(1.5))
    gauss = mpmath.sqrt(2 * mpmath.pi / abs(saddle.wpp0))
    tp = 2 * mpmath.pi
    return {
        "printed": abs(g_printed) * tp**19 * gauss,
        "printed-2pi^(a/2-1)": abs(g_printed) * tp ** (mpf(a) / 2 - 1) * gauss,
        "stirling": abs(g_factor(a, z)) * tp ** (mpf(a) / 2 - 1) * gauss,
    }


def c0_phase(saddle: SaddleData, orientation: int):
    """arg of i (2 pi)^(a/2-1) g(z0) sqrt(2 pi/|w''|) e^{i(orientation pi/2 - alpha0/2)}."""
    val = 1j * g_factor(saddle.a, saddle.z0) * mpmath.expj(orientation * mpmath.pi / 2 - saddle.alpha0 / 2)
    return mpmath.arg(val)


@dataclass
class AsymptoteTable:
    a: int
    power: Fraction
    rows: list  # (n, |rho_n|, arg rho_n)
    relative_change: object
    extrapolated: object
    c0: dict
    best_c0: str
    orientation: int | None
    phase_error: object

    def to_dict(self, digits: int = 15) -> dict:
        s = lambda x: mpmath.nstr(x, digits)
        return {
            "a": self.a,
            "power": str(self.power),
            "rows": [{"n": n, "abs_rho": s(r), "arg_rho": s(t)} for n, r, t in self.rows],
            "relative_change": s(self.relative_change),
            "extrapolated_abs_rho": s(self.extrapolated),
            "c0_candidates": {k: s(v) for k, v in self.c0.items()},
            "best_c0": self.best_c0,
            "orientation": self.orientation,
            "phase_error": None if self.phase_error is None else s(self.phase_error),
        }


def asymptote_check(a: int, n_grid, prec: int, power=None, saddle: SaddleData | None = None) -> AsymptoteTable:
    """rho_n = J_n(i pi) / ((-1)^(n+1) n^power e^{n w(z0)}) over ``n_grid``.

    ``power`` defaults to the printed exponent (a-9)/2.  The table carries the
    relative change |rho_{n2} - rho_{n1}| / |rho_{n1}| between the two largest
    n, a Richardson
    estimate of the limit (assuming a 1/n correction), the best-matching
    constant among :func:`c0_candidates`, and the orientation sign whose
    predicted phase is closest to arg rho at the largest n.
    """
    from .analytic import J_residue

    n_grid = sorted(set(int(n) for n in n_grid))
    if not n_grid or n_grid[0] < 1:
        raise DomainError("n_grid needs positive integers")
    if len(n_grid) < 2:
        raise DomainError("n_grid needs at least two values")
    floor = 10 * n_grid[-1] + 30
    if prec < floor:
        raise PrecisionError(f"prec={prec} below the floor {floor} for n up to {n_grid[-1]}")
    p = stated_power(a) if power is None else Fraction(power)
    if saddle is None:
        saddle = find_saddle(a, 40)
    rows = []
    with working_precision(40):
        w0 = saddle.w0
        for n in n_grid:
            J = J_residue(Params(a, n), "i*pi", prec).value
            # J is tiny (about e^{-22 n}); work in logs to keep everything O(1)
            logscale = n * w0 + mpf(p.numerator) / p.denominator * mpmath.log(n)
            rho = (-1) ** (n + 1) * mpmath.exp(mpmath.log(J) - logscale)
            rows.append((n, abs(rho), mpmath.arg(rho)))
        (n1, r1, _), (n2, r2, t2) = rows[-2], rows[-1]
        rel = abs(r2 - r1) / r1
        extrap = (n2 * r2 - n1 * r1) / (n2 - n1)
        cands = c0_candidates(saddle)
        best = min(cands, key=lambda k: abs(mpmath.log(cands[k] / extrap)))
        orient, perr = None, None
        if best == "stirling":
            errs = {}
            for o in (1, -1):
                d = t2 - c0_phase(saddle, o)
                errs[o] = abs(d - 2 * mpmath.pi * mpmath.nint(d / (2 * mpmath.pi)))
            orient = min(errs, key=errs.get)
            perr = errs[orient]
        return AsymptoteTable(a, p, rows, rel, extrap, cands, best, orient, perr)
