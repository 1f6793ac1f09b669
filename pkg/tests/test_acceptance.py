"""One test per acceptance criterion, each at its stated tolerance.

Every test records a PASS/FAIL line through ``acceptance_line`` before it
asserts; the lines are repeated in the terminal summary.
"""
import time

import mpmath
import pytest

from zetaforms.analytic import J_quadrature, J_residue, S_direct
from zetaforms.decomposition import Params, coeff_table
from zetaforms.linear_form import build_polys, value_at_one
from zetaforms.mpnum import agree_digits, working_precision
from zetaforms.report import (
    GROWTH_BAND,
    GROWTH_BAND_PROVISIONAL,
    GROWTH_CEILING,
    GROWTH_PREC,
    check_exact,
    check_numerics,
    check_oracle,
    growth_rates,
)
from zetaforms.saddle import admissibility_check, asymptote_check, find_saddle, stated_power

mpf = mpmath.mpf


def test_criterion_01_saddle_constants(acceptance_line):
    t = time.perf_counter()
    sd = find_saddle(20, 50)
    elapsed = time.perf_counter() - t
    with working_precision(50):
        dz = abs(sd.z0 - mpmath.mpc("0.9922341203", "-0.01200539829"))
        d_re = abs(mpmath.re(sd.w0) - mpf("-22.02001640"))
        d_im = abs(mpmath.im(sd.w0) - mpf("3.104408624"))
        d_abs = abs(abs(sd.wpp0) - mpf("216.7641546"))
        d_arg = abs(sd.alpha0 - mpf("-0.9471277165"))
        ok = (dz < mpf("5e-10") and d_re < mpf("5e-8") and d_im < mpf("5e-9")
              and d_abs < mpf("5e-7") and d_arg < mpf("5e-10") and elapsed < 5)
        detail = (f"|dz0|={mpmath.nstr(dz, 3)} dRe w={mpmath.nstr(d_re, 3)} dIm w={mpmath.nstr(d_im, 3)} "
                  f"d|w''|={mpmath.nstr(d_abs, 3)} darg={mpmath.nstr(d_arg, 3)} t={elapsed:.2f}s")
    assert acceptance_line(1, ok, detail)


def test_criterion_02_rate_exponent(acceptance_line, saddle20):
    with working_precision(50):
        k = saddle20.kappa
        ok = abs(k - mpf("-0.02001640")) < mpf("1e-7") and k < 0 and 0 < mpmath.exp(k) < 1
        detail = f"kappa={mpmath.nstr(k, 12)}"
    assert acceptance_line(2, ok, detail)


def test_criterion_03_exact_structure(acceptance_line):
    res = check_exact(20, 6, {})
    ok = res.status == "pass"
    assert acceptance_line(3, ok, f"n=1..6 violations={res.measured['violations']} t={res.measured['seconds']}s {res.detail}")


def test_criterion_04_oracle_equivalence(acceptance_line):
    res = check_oracle(20, 2)
    cases = res.measured["cases"]
    ok = res.status == "pass" and sorted(map(tuple, cases)) == [(6, 1), (6, 2), (6, 3), (8, 1), (8, 2), (8, 3), (20, 1), (20, 2)]
    assert acceptance_line(4, ok, f"cases={len(cases)} mismatches={res.measured['mismatches']}")


def _series_triple(n, weight="l(l+1)/2"):
    P = Params(20, n)
    s = S_direct(P, 1, 80).value
    v = value_at_one(build_polys(coeff_table(P), weight), 80)
    j = mpmath.re(J_residue(P, "i*pi", 80).value)
    return s, v, j


@pytest.fixture(scope="module")
def triples():
    return {n: _series_triple(n) for n in (1, 2, 3, 4)}


def test_criterion_05_triple_agreement(acceptance_line, triples):
    worst = min(min(agree_digits(s, v), agree_digits(s, j), agree_digits(v, j)) for s, v, j in triples.values())
    quad = []
    with working_precision(40):
        for n in (1, 2, 3):
            for u in ("i*pi", mpmath.mpc(-1, mpmath.pi / 2)):
                ref = J_residue(Params(20, n), u, 35).value
                q = J_quadrature(Params(20, n), u, 22)
                quad.append(abs(q - ref))
        qworst = max(quad)
        ok = worst >= 50 and qworst < mpf(10) ** -20
        detail = f"series min agreement={worst:.1f} digits, max |Jq - Jr|={mpmath.nstr(qworst, 3)}"
    assert acceptance_line(5, ok, detail)


def test_criterion_06_weight_arbitration(acceptance_line, triples):
    tol = mpf(10) ** -50
    with working_precision(80):
        good = max(abs(v - s) / abs(s) for s, v, _ in triples.values())
        bad = min(abs(_series_triple(n, "l(l-1)/2")[1] - triples[n][0]) / abs(triples[n][0]) for n in (1, 2, 3, 4))
        ok = good < tol and bad > mpf(10) ** 10 * tol
        detail = f"l(l+1)/2 rel err={mpmath.nstr(good, 3)}, l(l-1)/2 rel err={mpmath.nstr(bad, 3)}"
    assert acceptance_line(6, ok, detail)


def test_criterion_07_growth_trend(acceptance_line):
    t = time.perf_counter()
    rates = growth_rates(20, GROWTH_PREC)
    elapsed = time.perf_counter() - t
    lo, hi = GROWTH_BAND
    plo, phi = GROWTH_BAND_PROVISIONAL
    ceiling = all(r <= GROWTH_CEILING for r in rates.values())
    hits = [n for n, r in rates.items() if lo <= r <= hi]
    prov = [n for n, r in rates.items() if plo <= r <= phi]
    ok = ceiling and bool(hits) and elapsed < 1800
    detail = (f"rates {min(rates.values()):.3f}..{max(rates.values()):.3f}, pinned band {GROWTH_BAND} hit at n={hits}, "
              f"provisional band {GROWTH_BAND_PROVISIONAL} hit at n={prov}, t={elapsed:.0f}s")
    assert acceptance_line(7, ok, detail)


def test_criterion_08_asymptotic_ratio(acceptance_line, saddle20):
    table = asymptote_check(20, (32, 40), 430, power=stated_power(20), saddle=saddle20)
    ok = table.relative_change < 0.2
    detail = f"power n^{table.power}: relative change {mpmath.nstr(table.relative_change, 4)} (limit 0.2)"
    assert acceptance_line(8, ok, detail)


def test_criterion_09_admissibility(acceptance_line, saddle20):
    rep = admissibility_check(20, saddle20, 40)
    with working_precision(40):
        tol = mpf(10) ** -6
        ok = (rep.nonneg_root_count == 1 and rep.grid_max_at_y0
              and rep.f_deviation_neg < tol and rep.f_deviation_pos < tol)
        detail = (f"roots={rep.nonneg_root_count} grid max at y0={rep.grid_max_at_y0} "
                  f"|f(-1e6)-2pi|={mpmath.nstr(rep.f_deviation_neg, 3)} |f(1e6)+4pi|={mpmath.nstr(rep.f_deviation_pos, 3)}")
    assert acceptance_line(9, ok, detail)


def test_criterion_10_mp_numerics(acceptance_line):
    res = check_numerics()
    worst = {p: min(r["agreement_digits"] for r in res.measured["rows"] if r["prec"] == p and r["agreement_digits"] != "inf")
             for p in (30, 100)}
    assert acceptance_line(10, res.status == "pass", f"min agreement digits {worst}")
