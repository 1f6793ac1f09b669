#!/usr/bin/env python3
"""Independent reference values for the test suite.

Nothing here imports zetaforms.  Everything is computed with mpmath's own
special functions, sympy, or plain summation, by routes that differ from the
package's:

  * partial fractions of R_n for a = 6, n = 1 via sympy series expansion
  * S_n(1) by brute-force summation of R''(k)/2 using log-derivatives
  * the saddle point through the polynomial form of w'(z) = 0
    (z/(z+1))^(a+3) ((z+2)/(1-z))^3 = -1, solved by mpmath.polyroots
  * |rho_n| for the Stirling normalisation, from the brute-force J_n(i pi)

Run it and paste the printed block into tests/oracle_values.py.
"""
import argparse
from math import factorial

import mpmath as mp
import sympy as sp


def r_logderivs(a, n, k):
    """R(k), R'(k), R''(k) from log-derivatives (k > n)."""
    t = mp.mpf(k)
    fac = [(t + mp.mpf(n) / 2, 1)]
    fac += [(t - i, 3) for i in range(1, n + 1)]
    fac += [(t + n + 1 + i, 3) for i in range(n)]
    fac += [(t + h, -a) for h in range(n + 1)]
    logR = (a - 6) * mp.log(factorial(n))
    A = B = mp.mpf(0)
    sign = 1
    for v, m in fac:
        logR += m * mp.log(abs(v))
        if v < 0 and m % 2:
            sign = -sign
        A += m / v
        B += m / v**2
    R = sign * mp.exp(logR)
    return R, R * A, R * (A * A - B)


def brute_sums(a, n, kmax=None):
    kmax = kmax or 12 * n + 400
    S = J = mp.mpf(0)
    for k in range(n + 1, kmax):
        R, R1, R2 = r_logderivs(a, n, k)
        S += R2 / 2
        J += 1j * mp.pi * R1 + R2 / 2
    return S, J


def sympy_table(a, n):
    t = sp.symbols("t")
    R = sp.factorial(n) ** (a - 6) * (t + sp.Rational(n, 2))
    for i in range(n):
        R *= (t - n + i) ** 3 * (t + n + 1 + i) ** 3
    for i in range(n + 1):
        R /= (t + i) ** a
    out = {}
    for j in range(n + 1):
        s = sp.symbols("s")
        g = sp.expand(sp.simplify(R.subs(t, s - j) * s**a))
        ser = sp.series(g, s, 0, a).removeO()
        for l in range(1, a + 1):
            out[(l, j)] = sp.Rational(ser.coeff(s, a - l))
    return out


def saddle(a):
    z = sp.symbols("z")
    poly = sp.Poly(sp.expand(z ** (a + 3) * (z + 2) ** 3 + (z + 1) ** (a + 3) * (1 - z) ** 3), z)
    roots = mp.polyroots([int(c) for c in poly.all_coeffs()], maxsteps=400, extraprec=400)
    A = a + 3

    def wp(z):
        return A * mp.log(z) - A * mp.log(z + 1) - 3 * mp.log(1 - z) + 3 * mp.log(z + 2) + 1j * mp.pi

    good = [r for r in roots if 0 < mp.re(r) < 1 and abs(wp(r)) < mp.mpf(10) ** (-mp.mp.dps + 15)]
    assert len(good) == 1, good
    z0 = good[0]
    w0 = (A * z0 * mp.log(z0) - A * (z0 + 1) * mp.log(z0 + 1) + 3 * (1 - z0) * mp.log(1 - z0)
          + 3 * (z0 + 2) * mp.log(z0 + 2) + 1j * mp.pi * z0)
    return z0, w0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dps", type=int, default=40)
    args = ap.parse_args()
    mp.mp.dps = args.dps

    print("TABLE_A6_N1 = {")
    for (l, j), v in sorted(sympy_table(6, 1).items()):
        print(f"    ({l}, {j}): Fraction({v.p}, {v.q}),")
    print("}")

    print("S_AT_ONE = {")
    for n in (1, 2, 3, 4):
        S, _ = brute_sums(20, n)
        print(f"    {n}: '{mp.nstr(S, 30)}',")
    print("}")

    print("GROWTH_RATES = {")
    for n in range(8, 25):
        S, _ = brute_sums(20, n)
        print(f"    {n}: {float(mp.log(abs(S)) / n):.6f},")
    print("}")

    print("KAPPA = {")
    w0_20 = None
    for a in range(6, 26, 2):
        z0, w0 = saddle(a)
        if a == 20:
            w0_20 = (z0, w0)
        print(f"    {a}: '{mp.nstr(a + 2 + mp.re(w0), 20)}',")
    print("}")
    z0, w0 = w0_20
    print(f"Z0_20 = ('{mp.nstr(mp.re(z0), 30)}', '{mp.nstr(mp.im(z0), 30)}')")
    print(f"W0_20 = ('{mp.nstr(mp.re(w0), 30)}', '{mp.nstr(mp.im(w0), 30)}')")

    print("RHO_STIRLING = {")
    for n in (32, 40):
        _, J = brute_sums(20, n)
        rho = abs(J) * mp.mpf(n) ** mp.mpf(11.5) * mp.exp(-n * mp.re(w0))
        print(f"    {n}: '{mp.nstr(rho, 15)}',")
    print("}")


if __name__ == "__main__":
    main()
