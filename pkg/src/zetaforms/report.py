"""Certificate assembly: every acceptance check run once, recorded as JSON.

Each check returns a :class:`CheckResult`.  Where the literal statement of a
check is known to be unreachable (see the decisions log), the result carries
both the literal outcome (``stated``) and the outcome under the corrected
normalisation; ``status`` follows the corrected one unless ``strict`` is set.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import mpmath

from . import __version__
from .analytic import J_quadrature, J_residue, S_direct
from .decomposition import (
    CoeffTable,
    Params,
    coeff_table,
    integrality_violations,
    oracle_coeff,
    residue_sum_violations,
    symmetry_violations,
)
from .errors import IntegralityError, PrecisionError
from .linear_form import DEFAULT_WEIGHT, build_polys, coefficient_integrality, scaled_integers, value_at_one
from .mpnum import agree_digits, log_gamma, polylog, working_precision, zeta
from .saddle import (
    admissibility_check,
    asymptote_check,
    find_saddle,
    stirling_power,
)

PASS, FAIL, SKIPPED, NA = "pass", "fail", "skipped", "not_applicable"

# published constants for a = 20, with the tolerances the checks use
PUBLISHED = {
    "z0": ("0.9922341203", "-0.01200539829", "5e-10"),
    "w0_re": ("-22.02001640", "5e-8"),
    "w0_im": ("3.104408624", "5e-9"),
    "wpp_abs": ("216.7641546", "5e-7"),
    "wpp_arg": ("-0.9471277165", "5e-10"),
    "kappa": ("-0.02001640", "1e-7"),
}
SADDLE_SECONDS = 5.0
EXACT_SECONDS = 300.0
GROWTH_RANGE = range(8, 25)
GROWTH_CEILING = -21.0
GROWTH_BAND_PROVISIONAL = (-22.6, -21.9)
GROWTH_BAND = (-23.9, -23.2)  # pinned from the oracle run, see the decisions log
GROWTH_PREC = 300
ASYMPTOTE_GRID = (8, 16, 24, 32, 40)
ASYMPTOTE_THRESHOLD = 0.20
F_LIMIT_TOL = 1e-6
AGREE_DIGITS = 50
QUAD_DIGITS = 20
WEIGHT_FACTOR = 1e10

CHECK_NAMES = (
    "saddle_constants",
    "rate_exponent",
    "exact_structure",
    "oracle_equivalence",
    "triple_agreement",
    "weight_arbitration",
    "growth_trend",
    "asymptotic_ratio",
    "admissibility",
    "mp_numerics",
)


@dataclass
class CheckResult:
    name: str
    status: str
    measured: dict = field(default_factory=dict)
    tolerance: dict = field(default_factory=dict)
    detail: str = ""
    stated: str | None = None  # literal outcome when it differs in kind from status

    def to_dict(self, include_timing: bool = True) -> dict:
        measured = self.measured
        if not include_timing:
            measured = {k: v for k, v in measured.items() if k != "seconds"}
        d = {
            "name": self.name,
            "status": self.status,
            "measured": measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }
        if self.stated is not None:
            d["stated_status"] = self.stated
        return d


@dataclass
class Certificate:
    a: int
    n_max: int
    prec: int
    strict: bool
    checks: list
    saddle: dict | None
    scaled_integers: dict
    weight_convention: str
    timing: dict

    @property
    def passed(self) -> bool:
        return all(c.status in (PASS, NA) for c in self.checks)

    def first_failure(self) -> CheckResult | None:
        for c in self.checks:
            if c.status == FAIL:
                return c
        return None

    def to_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "tool": "zetaforms",
            "version": __version__,
            "params": {"a": self.a, "n_min": 1, "n_max": self.n_max, "prec": self.prec, "strict": self.strict},
            "overall": PASS if self.passed else FAIL,
            "weight_convention": self.weight_convention,
            "checks": [c.to_dict(include_timing) for c in self.checks],
            "saddle": self.saddle,
            "scaled_integers": self.scaled_integers,
        }
        if include_timing:
            doc["timing"] = self.timing
        return doc

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=1, sort_keys=False) + "\n"


def _s(x, digits: int = 20) -> str:
    return mpmath.nstr(x, digits)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------- the checks


def check_saddle(a: int, seed=None):
    t = time.perf_counter()
    sd = find_saddle(a, 50, seed=seed)
    elapsed = time.perf_counter() - t
    if a != 20:
        return CheckResult("saddle_constants", NA, {"seconds": round(elapsed, 3)}, detail="published constants are for a=20"), sd
    with working_precision(50):
        P = PUBLISHED
        dz = abs(sd.z0 - mpmath.mpc(P["z0"][0], P["z0"][1]))
        d_re = abs(mpmath.re(sd.w0) - mpmath.mpf(P["w0_re"][0]))
        d_im = abs(mpmath.im(sd.w0) - mpmath.mpf(P["w0_im"][0]))
        d_abs = abs(abs(sd.wpp0) - mpmath.mpf(P["wpp_abs"][0]))
        d_arg = abs(sd.alpha0 - mpmath.mpf(P["wpp_arg"][0]))
        parts = {
            "z0": dz < mpmath.mpf(P["z0"][2]),
            "w0_re": d_re < mpmath.mpf(P["w0_re"][1]),
            "w0_im": d_im < mpmath.mpf(P["w0_im"][1]),
            "wpp_abs": d_abs < mpmath.mpf(P["wpp_abs"][1]),
            "wpp_arg": d_arg < mpmath.mpf(P["wpp_arg"][1]),
            "runtime": elapsed < SADDLE_SECONDS,
        }
        measured = {
            "dz0": _s(dz, 5),
            "dw0_re": _s(d_re, 5),
            "dw0_im": _s(d_im, 5),
            "dwpp_abs": _s(d_abs, 5),
            "dwpp_arg": _s(d_arg, 5),
            "seconds": round(elapsed, 3),
        }
    tol = {"z0": P["z0"][2], "w0_re": P["w0_re"][1], "w0_im": P["w0_im"][1], "wpp_abs": P["wpp_abs"][1],
           "wpp_arg": P["wpp_arg"][1], "seconds": SADDLE_SECONDS}
    bad = [k for k, v in parts.items() if not v]
    return CheckResult("saddle_constants", _status(not bad), measured, tol, ", ".join(bad)), sd


def check_rate(a: int, sd):
    with working_precision(50):
        kappa = sd.kappa
        measured = {"kappa": _s(kappa, 15)}
        if a != 20:
            return CheckResult("rate_exponent", _status(True), measured, detail="value recorded; sign decides usability")
        ok = abs(kappa - mpmath.mpf(PUBLISHED["kappa"][0])) < mpmath.mpf(PUBLISHED["kappa"][1]) and kappa < 0
    return CheckResult("rate_exponent", _status(ok), measured, {"kappa": PUBLISHED["kappa"][1]})


def check_exact(a: int, n_max: int, tables: dict):
    t = time.perf_counter()
    problems = []
    for n in range(1, n_max + 1):
        P = Params(a, n)
        table = tables.get(n) or coeff_table(P)
        if table.params != P:
            problems.append(f"n={n}: injected table has a={table.params.a}, n={table.params.n}")
            continue
        sym = symmetry_violations(table)
        if sym:
            problems.append(f"symmetry: n={n} at (l, j) = {sym[0]} ({len(sym)} entries)")
        rs = residue_sum_violations(table)
        if rs != 0:
            problems.append(f"residue sum: n={n}, sum_j c[1, j] = {rs}")
        integ = integrality_violations(table)
        if integ:
            problems.append(f"integrality: n={n} at (l, j) = {integ[0]}")
        form = build_polys(table)
        vals = form.values_at_one()
        if vals[1] != 0:
            problems.append(f"P_1(1) = {vals[1]} at n={n}")
        even = [l for l in vals if l % 2 == 0 and vals[l] != 0]
        if even:
            problems.append(f"P_l(1) != 0 for even l = {even[0]} at n={n}")
        if coefficient_integrality(form):
            problems.append(f"polynomial denominators: n={n}")
        if not even and vals[1] == 0:
            try:
                scaled_integers(form)
            except IntegralityError as exc:
                problems.append(f"scaled integers: n={n}: {exc}")
    elapsed = time.perf_counter() - t
    if elapsed > EXACT_SECONDS:
        problems.append(f"runtime {elapsed:.1f}s")
    measured = {"n_range": [1, n_max], "violations": len(problems), "seconds": round(elapsed, 3)}
    return CheckResult("exact_structure", _status(not problems), measured, {"exact": 0, "seconds": EXACT_SECONDS},
                       "; ".join(problems))


def oracle_cases(a: int, n_max: int):
    cases = [(aa, n) for aa in (6, 8) for n in (1, 2, 3)]
    cases += [(a, n) for n in range(1, min(2, n_max) + 1) if a not in (6, 8)]
    return cases


def check_oracle(a: int, n_max: int):
    bad = []
    for aa, n in oracle_cases(a, n_max):
        P = Params(aa, n)
        table = coeff_table(P)
        for (l, j), v in table.c.items():
            if oracle_coeff(P, l, j) != v:
                bad.append(f"a={aa}, n={n}, (l, j)=({l}, {j})")
    return CheckResult("oracle_equivalence", _status(not bad), {"cases": [list(c) for c in oracle_cases(a, n_max)],
                       "mismatches": len(bad)}, {"exact": 0}, "; ".join(bad[:5]))


def _triple(a: int, n: int, prec: int, weight: str):
    P = Params(a, n)
    s = S_direct(P, 1, prec).value
    v = value_at_one(build_polys(coeff_table(P), weight), prec)
    j = mpmath.re(J_residue(P, "i*pi", prec).value)
    return s, v, j


def check_triple(a: int, n_max: int, prec: int, abscissa=0.5):
    rows, ok = [], True
    for n in range(1, min(4, n_max) + 1):
        s, v, j = _triple(a, n, prec, DEFAULT_WEIGHT)
        d = min(agree_digits(s, v), agree_digits(s, j), agree_digits(v, j))
        ok &= d >= AGREE_DIGITS
        rows.append({"n": n, "S_n(1)": _s(s, 25), "min_agreement_digits": _fmt_digits(d)})
    quad = []
    with working_precision(QUAD_DIGITS + 20):
        us = {"i*pi": "i*pi", "-1+i*pi/2": mpmath.mpc(-1, mpmath.pi / 2)}
        for n in range(1, min(3, n_max) + 1):
            for label, u in us.items():
                ref = J_residue(Params(a, n), u, QUAD_DIGITS + 15).value
                q = J_quadrature(Params(a, n), u, QUAD_DIGITS + 2, abscissa=abscissa)
                d = agree_digits(ref, q)
                ok &= d >= QUAD_DIGITS
                quad.append({"n": n, "u": label, "agreement_digits": _fmt_digits(d)})
    return CheckResult("triple_agreement", _status(ok), {"series": rows, "quadrature": quad},
                       {"series_digits": AGREE_DIGITS, "quadrature_digits": QUAD_DIGITS, "prec": prec})


def _fmt_digits(d: float):
    return "inf" if math.isinf(d) else round(d, 2)


def check_weights(a: int, n_max: int, prec: int):
    """The adopted weight must pass the series agreement; the other must miss it badly."""
    rows, ok = [], True
    floor = 10.0 ** -AGREE_DIGITS
    for n in range(1, min(4, n_max) + 1):
        P = Params(a, n)
        s = S_direct(P, 1, prec).value
        good = value_at_one(build_polys(coeff_table(P), DEFAULT_WEIGHT), prec)
        try:
            alt = value_at_one(build_polys(coeff_table(P), "l(l-1)/2"), prec)
            with working_precision(prec):
                rel_alt = abs(alt - s) / abs(s)
        except PrecisionError:
            rel_alt = mpmath.inf
        with working_precision(prec):
            rel_good = abs(good - s) / abs(s)
        ok &= rel_good < floor and rel_alt > WEIGHT_FACTOR * floor
        rows.append({"n": n, "rel_error_l(l+1)/2": _s(rel_good, 5), "rel_error_l(l-1)/2": _s(rel_alt, 5)})
    return CheckResult("weight_arbitration", _status(ok), {"adopted": DEFAULT_WEIGHT, "rows": rows},
                       {"adopted_below": f"1e-{AGREE_DIGITS}", "rejected_above": f"1e{int(math.log10(WEIGHT_FACTOR))}*1e-{AGREE_DIGITS}"})


def growth_rates(a: int, prec: int, ns=GROWTH_RANGE) -> dict:
    out = {}
    for n in ns:
        val = S_direct(Params(a, n), 1, prec).value
        with working_precision(30):
            out[n] = float(mpmath.log(abs(val)) / n)
    return out


def check_growth(a: int, prec: int, strict: bool):
    if a != 20:
        return CheckResult("growth_trend", NA, detail="thresholds are for a=20")
    work = max(prec, GROWTH_PREC)
    rates = growth_rates(a, work)
    ceiling = all(r <= GROWTH_CEILING for r in rates.values())
    lo, hi = GROWTH_BAND
    plo, phi = GROWTH_BAND_PROVISIONAL
    in_band = [n for n, r in rates.items() if lo <= r <= hi]
    in_prov = [n for n, r in rates.items() if plo <= r <= phi]
    ok = ceiling and bool(in_band)
    ok_prov = ceiling and bool(in_prov)
    measured = {"rates": {str(n): round(r, 6) for n, r in rates.items()}, "in_band": in_band,
                "in_provisional_band": in_prov, "prec": work}
    tol = {"ceiling": GROWTH_CEILING, "band": list(GROWTH_BAND), "provisional_band": list(GROWTH_BAND_PROVISIONAL)}
    status = _status(ok_prov if strict else ok)
    return CheckResult("growth_trend", status, measured, tol,
                       "" if ok_prov else "no n reaches the provisional band", stated=_status(ok_prov))


def check_asymptote(a: int, sd, strict: bool):
    if a != 20:
        return CheckResult("asymptotic_ratio", NA, detail="threshold is for a=20"), None
    prec = 10 * max(ASYMPTOTE_GRID) + 30
    stated = asymptote_check(a, ASYMPTOTE_GRID, prec, saddle=sd)
    fixed = asymptote_check(a, ASYMPTOTE_GRID, prec, power=stirling_power(a), saddle=sd)
    ok_stated = stated.relative_change < ASYMPTOTE_THRESHOLD
    ok_fixed = fixed.relative_change < ASYMPTOTE_THRESHOLD
    measured = {
        "relative_change_stated_power": _s(stated.relative_change, 6),
        "relative_change_stirling_power": _s(fixed.relative_change, 6),
        "stated": stated.to_dict(10),
        "stirling": fixed.to_dict(10),
    }
    status = _status(ok_stated if strict else ok_fixed)
    detail = "" if ok_stated else f"with n^{stated.power} the ratio does not stabilize"
    return CheckResult("asymptotic_ratio", status, measured, {"relative_change": ASYMPTOTE_THRESHOLD},
                       detail, stated=_status(ok_stated)), fixed


def check_admissibility(a: int, sd, strict: bool):
    rep = admissibility_check(a, sd, 40)
    tol = mpmath.mpf(F_LIMIT_TOL)
    two_pi = 2 * mpmath.pi
    with working_precision(40):
        raw_ok = rep.f_deviation_neg < tol and rep.f_deviation_pos < tol
        ext_ok = abs(rep.f_limit_neg_extrapolated - two_pi) < tol and abs(rep.f_limit_pos_extrapolated + 2 * two_pi) < tol
    base = rep.nonneg_root_count == 1 and rep.grid_max_at_y0 and rep.monotone_profile
    ok_stated = base and raw_ok
    ok_fixed = base and ext_ok
    status = _status(ok_stated if strict else ok_fixed)
    detail = "" if raw_ok else "f(+-1e6) sits 14/Y = 1.4e-5 from its limit"
    return CheckResult("admissibility", status, rep.to_dict(15), {"f_limit": F_LIMIT_TOL, "roots": 1},
                       detail, stated=_status(ok_stated)), rep


def check_numerics():
    rows, ok = [], True
    for prec in (30, 100):
        with working_precision(prec + 20):
            k = mpmath.mpf
            apery = mpmath.nsum(lambda m: (-1) ** (m + 1) / (m**3 * mpmath.binomial(2 * m, m)), [1, mpmath.inf]) * 5 / 2
            oracles = {
                "zeta(3)": (zeta(3, prec), apery),
                "zeta(5)": (zeta(5, prec), mpmath.zeta(5)),
                "Li2(1/2)": (polylog(2, k(1) / 2, prec), mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2),
                "Gamma(1/2)": (mpmath.exp(log_gamma(k(1) / 2, prec)), mpmath.sqrt(mpmath.pi)),
            }
            for name, (mine, ref) in oracles.items():
                d = agree_digits(mine, ref)
                ok &= d >= prec - 5
                rows.append({"prec": prec, "value": name, "agreement_digits": _fmt_digits(d)})
    return CheckResult("mp_numerics", _status(ok), {"rows": rows}, {"digits": "prec - 5"})


# ---------------------------------------------------------------- orchestration


def certify(a: int, n_max: int, prec: int, abscissa=0.5, seed_z0=None, tables: dict | None = None,
            strict: bool = False, fail_fast: bool = False, progress=None) -> Certificate:
    """Run all ten checks; ``tables`` maps n to a CoeffTable to use instead of computing one."""
    tables = tables or {}
    t_all = time.perf_counter()
    timing = {}
    results = {}
    saddle_doc, scaled = None, {}
    sd = None

    def run(name, fn):
        if fail_fast and any(r.status == FAIL for r in results.values()):
            results[name] = CheckResult(name, SKIPPED, detail="an earlier check failed")
            return None
        if progress:
            progress(name)
        t = time.perf_counter()
        out = fn()
        extra = None
        if isinstance(out, tuple):
            out, extra = out
        timing[name] = round(time.perf_counter() - t, 3)
        results[name] = out
        return extra

    run("exact_structure", lambda: check_exact(a, n_max, tables))
    run("oracle_equivalence", lambda: check_oracle(a, n_max))
    run("mp_numerics", check_numerics)
    sd = run("saddle_constants", lambda: check_saddle(a, seed_z0))
    if sd is not None:
        saddle_doc = sd.to_dict()
        run("rate_exponent", lambda: check_rate(a, sd))
    else:
        results.setdefault("rate_exponent", CheckResult("rate_exponent", SKIPPED, detail="no saddle"))
    run("triple_agreement", lambda: check_triple(a, n_max, prec, abscissa))
    run("weight_arbitration", lambda: check_weights(a, n_max, prec))
    run("growth_trend", lambda: check_growth(a, prec, strict))
    if sd is not None:
        run("asymptotic_ratio", lambda: check_asymptote(a, sd, strict))
        run("admissibility", lambda: check_admissibility(a, sd, strict))
    for name in CHECK_NAMES:
        results.setdefault(name, CheckResult(name, SKIPPED, detail="prerequisite missing"))

    for n in range(1, n_max + 1):
        table = tables.get(n) or coeff_table(Params(a, n))
        try:
            p0, ps, dn, _ = scaled_integers(build_polys(table))
        except (IntegralityError, ArithmeticError) as exc:
            scaled[str(n)] = {"error": str(exc)}
            continue
        scaled[str(n)] = {"d_n": str(dn), "p0": str(p0), "p": {str(2 * j + 1): str(v) for j, v in sorted(ps.items())}}

    timing["total"] = round(time.perf_counter() - t_all, 3)
    checks = [results[name] for name in CHECK_NAMES]
    return Certificate(a, n_max, prec, strict, checks, saddle_doc, scaled, DEFAULT_WEIGHT, timing)


def scan_rows(a_min: int, a_max: int, prec: int):
    """(a, Re w(z0), kappa, first_negative) for even a in [a_min, a_max]."""
    rows = []
    flagged = False
    for a in range(a_min, a_max + 1, 2):
        sd = find_saddle(a, prec)
        first = False
        if sd.kappa < 0 and not flagged:
            first = flagged = True
        with working_precision(prec):
            rows.append((a, mpmath.nstr(mpmath.re(sd.w0), prec), mpmath.nstr(sd.kappa, prec), first))
    return rows


def load_table(text: str) -> CoeffTable:
    return CoeffTable.from_json(text)
