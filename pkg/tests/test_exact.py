import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.errors import DomainError
from zetaforms.exact import (
    Jet,
    Poly,
    bernoulli,
    binomial,
    harmonic,
    jet_exp,
    jet_inv,
    jet_mul,
    jet_pow,
    lcm_upto,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 100)
polys = st.lists(fractions, max_size=6).map(lambda cs: Poly(tuple(cs)))


def brute_lcm(n):
    out = 1
    for k in range(1, n + 1):
        out = out * k // math.gcd(out, k)
    return out


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 60), (10, 2520)])
def test_lcm_examples(n, expected):
    assert lcm_upto(n) == expected


@given(st.integers(1, 60))
def test_lcm_matches_brute_force(n):
    assert lcm_upto(n) == brute_lcm(n)


def test_lcm_rejects_zero():
    with pytest.raises(DomainError):
        lcm_upto(0)


def test_binomial_and_errors():
    assert binomial(10, 3) == 120
    with pytest.raises(DomainError):
        binomial(3, 4)


@pytest.mark.parametrize("m", list(range(0, 41)))
def test_bernoulli_against_sympy(m):
    ref = sympy.bernoulli(m)
    if m == 1:
        ref = sympy.Rational(-1, 2)  # sympy >= 1.12 uses +1/2
    assert bernoulli(m) == Fraction(int(ref.p), int(ref.q))


def test_harmonic():
    assert harmonic(4) == Fraction(25, 12)


def test_poly_canonical_degree():
    p = Poly((1, 2, 0, 0))
    assert p.deg == 1 and p.coeffs == (Fraction(1), Fraction(2))
    assert Poly((0, 0)).deg == -1


@given(polys, polys, fractions)
def test_poly_evaluation_is_a_ring_map(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(polys, fractions, fractions)
def test_poly_shift(p, c, x):
    assert p.shift(c)(x) == p(x + c)


@given(polys, st.integers(0, 4), fractions)
def test_poly_power(p, e, x):
    assert (p**e)(x) == p(x) ** e


def test_poly_from_roots():
    p = Poly.from_roots([1, -2], lead=3)
    assert p.coeffs == (Fraction(-6), Fraction(-3), Fraction(3))


def test_poly_float_and_mp_evaluation():
    import mpmath

    p = Poly((Fraction(1, 3), 2))
    assert abs(p(0.5) - (1 / 3 + 1.0)) < 1e-15
    with mpmath.workdps(30):
        assert abs(p(mpmath.mpf(1) / 2) - mpmath.mpf(4) / 3) < mpmath.mpf(10) ** -28


def jet_of_poly(p, center, order):
    shifted = p.shift(center)
    return Jet(center, tuple(shifted[k] for k in range(order + 1)))


@given(polys, polys, fractions, st.integers(0, 6))
def test_jet_product_matches_polynomial_product(p, q, c, K):
    lhs = jet_mul(jet_of_poly(p, c, K), jet_of_poly(q, c, K))
    assert lhs == jet_of_poly(p * q, c, K)


@given(polys, fractions, st.integers(0, 6))
def test_jet_inverse(p, c, K):
    x = jet_of_poly(p + Poly((1,)), c, K)
    if x[0] == 0:
        with pytest.raises(DomainError):
            jet_inv(x)
        return
    one = jet_mul(x, jet_inv(x))
    assert one.coeffs == (Fraction(1),) + (Fraction(0),) * K


@given(polys, fractions, st.integers(-3, 4), st.integers(0, 5))
def test_jet_pow_matches_repeated_product(p, c, e, K):
    x = jet_of_poly(p + Poly((2,)), c, K)
    if x[0] == 0 and e < 0:
        return
    expected = Jet.constant(Fraction(1), c, K)
    base = x if e >= 0 else jet_inv(x)
    for _ in range(abs(e)):
        expected = jet_mul(expected, base)
    assert jet_pow(x, e) == expected


@settings(max_examples=50)
@given(st.lists(fractions, min_size=1, max_size=5))
def test_jet_exp_inverts(cs):
    x = Jet(Fraction(0), (Fraction(0),) + tuple(cs))
    prod = jet_mul(jet_exp(x), jet_exp(x.scale(-1)))
    assert prod.coeffs == (Fraction(1),) + (Fraction(0),) * len(cs)


def test_jet_examples():
    # (1 + t) * (1 - t) at 0 to order 1 is (1, 0)
    a = Jet.linear(Fraction(1), Fraction(1), Fraction(0), 1)
    b = Jet.linear(Fraction(1), Fraction(-1), Fraction(0), 1)
    assert jet_mul(a, b).coeffs == (1, 0)
    assert Jet(Fraction(0), (1, 2, 3)).derivatives() == (1, 2, 6)


def test_jet_mismatch_rejected():
    with pytest.raises(DomainError):
        jet_mul(Jet(Fraction(0), (1, 1)), Jet(Fraction(1), (1, 1)))
    with pytest.raises(DomainError):
        jet_mul(Jet(Fraction(0), (1, 1)), Jet(Fraction(0), (1, 1, 1)))
    with pytest.raises(DomainError):
        jet_exp(Jet(Fraction(0), (1, 1)))
