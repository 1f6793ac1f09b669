import random

import mpmath
import pytest

from zetaforms.errors import DomainError
from zetaforms.mpnum import (
    agree_digits,
    gauss_legendre,
    log_gamma,
    polylog,
    precision_bits,
    working_precision,
    zeta,
)

rng = random.Random(20)


def test_precision_bits_has_cushion():
    assert precision_bits(30) == 100 + 32  # ceil(30 log2 10) = 100
    with pytest.raises(DomainError):
        precision_bits(0)


@pytest.mark.parametrize("prec", [30, 100, 300])
def test_zeta_two_closed_form(prec):
    with working_precision(prec + 10):
        assert agree_digits(zeta(2, prec), mpmath.pi**2 / 6) >= prec


@pytest.mark.parametrize("s", [3, 5, 7, 21, 23])
def test_zeta_against_mpmath(s):
    with working_precision(70):
        assert agree_digits(zeta(s, 60), mpmath.zeta(s)) >= 60


def test_zeta_domain():
    with pytest.raises(DomainError):
        zeta(1, 30)


@pytest.mark.parametrize("s", range(3, 24, 2))
def test_zeta_and_polylog_agree_at_one(s):
    with working_precision(60):
        assert agree_digits(polylog(s, 1, 50), zeta(s, 50)) >= 45


@pytest.mark.parametrize(
    "s, x",
    [(2, mpmath.mpf(1) / 2), (3, -1), (5, mpmath.mpc(0.3, 0.9)), (4, mpmath.mpc(-0.6, -0.7)), (2, mpmath.mpf("0.999"))],
)
def test_polylog_against_mpmath(s, x):
    with working_precision(60):
        x = mpmath.mpmathify(x)
        assert agree_digits(polylog(s, x, 50), mpmath.polylog(s, x)) >= 45


def test_polylog_closed_forms():
    with working_precision(60):
        half = mpmath.mpf(1) / 2
        ref = mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2
        assert agree_digits(polylog(2, half, 50), ref) >= 45
        # Li_3(-1) = -3/4 zeta(3)
        assert agree_digits(polylog(3, -1, 50), -3 * zeta(3, 50) / 4) >= 45
        assert polylog(4, 0, 50) == 0


def test_polylog_domain():
    with pytest.raises(DomainError):
        polylog(3, 1.5, 30)
    with pytest.raises(DomainError):
        polylog(1, 0.5, 30)


def test_gamma_half():
    for prec in (30, 100):
        with working_precision(prec + 10):
            assert agree_digits(mpmath.exp(log_gamma(mpmath.mpf(1) / 2, prec)), mpmath.sqrt(mpmath.pi)) >= prec - 5


def test_log_gamma_reflection():
    # Gamma(z) Gamma(1-z) = pi / sin(pi z), checked on exponentials
    with working_precision(60):
        for _ in range(5):
            z = mpmath.mpc(rng.uniform(0.05, 0.95), rng.uniform(-5, 5))
            lhs = mpmath.exp(log_gamma(z, 50) + log_gamma(1 - z, 50))
            assert agree_digits(lhs, mpmath.pi / mpmath.sin(mpmath.pi * z)) >= 45


@pytest.mark.parametrize("seed", range(20))
def test_log_gamma_recurrence(seed):
    r = random.Random(seed)
    prec = 40
    with working_precision(prec + 10):
        z = mpmath.mpc(r.uniform(0.01, 30), r.uniform(-40, 40))
        diff = log_gamma(z + 1, prec) - log_gamma(z, prec) - mpmath.log(z)
        assert abs(diff) < mpmath.mpf(10) ** -(prec - 5) * max(1, abs(log_gamma(z, prec)))


def test_log_gamma_principal_branch():
    # principal branch: continuous off the negative axis, matches mpmath.loggamma
    with working_precision(50):
        for z in (mpmath.mpc(0.3, -7), mpmath.mpc(-40.5, 0.01), mpmath.mpc(-3.2, -20), mpmath.mpf("0.5")):
            assert agree_digits(log_gamma(z, 40), mpmath.loggamma(z)) >= 35


def test_log_gamma_rejects_poles_and_cut():
    with pytest.raises(DomainError):
        log_gamma(0, 30)
    with pytest.raises(DomainError):
        log_gamma(-2.5, 30)


def _random_inputs(count):
    r = random.Random(7)
    out = []
    for _ in range(count):
        out.append((r.choice([2, 3, 5, 9]), mpmath.mpc(r.uniform(-0.7, 0.7), r.uniform(-0.7, 0.7))))
    return out


@pytest.mark.parametrize("s, x", _random_inputs(20))
def test_doubling_precision_keeps_digits(s, x):
    prec = 40
    with working_precision(2 * prec + 10):
        assert agree_digits(polylog(s, x, prec), polylog(s, x, 2 * prec)) >= prec - 5
        z = x + 2
        assert agree_digits(log_gamma(z, prec), log_gamma(z, 2 * prec)) >= prec - 5
        zs = s + 2
        assert agree_digits(zeta(zs, prec), zeta(zs, 2 * prec)) >= prec - 5


def test_gauss_legendre_integrates_polynomials():
    with working_precision(40):
        x, w = gauss_legendre(7, 30)
        # exact for degree <= 13
        for deg in range(14):
            q = mpmath.fsum(wi * xi**deg for xi, wi in zip(x, w))
            exact = mpmath.mpf(2) / (deg + 1) if deg % 2 == 0 else 0
            assert abs(q - exact) < mpmath.mpf(10) ** -28
