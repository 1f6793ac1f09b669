"""Partial fractions of the rational function R_n(t).

    R_n(t) = n!^(a-6) (t + n/2) (t-n)_n^3 (t+n+1)_n^3 / (t)_{n+1}^a

has poles of order a at t = 0, -1, ..., -n, so

    R_n(t) = sum_{l=1}^{a} sum_{j=0}^{n} c[l, j] / (t + j)^l,
    c[l, j] = D_{a-l}( R_n(t) (t + j)^a ) at t = -j,

with D_k the k-th divided derivative.  :func:`coeff_table` computes the
coefficients from the factorisation R_n(t)(t+j)^a = F^3 G^3 H^(a-6) I, whose
factor jets come from closed-form integer residues.  :func:`oracle_coeff`
recomputes any single coefficient by plain polynomial expansion and power
series division; the two routes share nothing but the definition of R_n.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .exact import Jet, Poly, binomial, is_integer, jet_mul, jet_pow, lcm_upto

__all__ = [
    "Params",
    "ResidueWeights",
    "CoeffTable",
    "residue_weights",
    "factor_jets",
    "coeff_table",
    "oracle_coeff",
    "symmetry_sign",
    "symmetry_violations",
    "residue_sum_violations",
    "integrality_violations",
]


@dataclass(frozen=True)
class Params:
    """Family parameters: a >= 6 (power of the denominator), n >= 1."""

    a: int
    n: int

    def __post_init__(self):
        if not isinstance(self.a, int) or self.a < 6:
            raise DomainError(f"a must be an integer >= 6, got {self.a!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")

    def require_even(self) -> "Params":
        if self.a % 2:
            raise DomainError(f"the zeta linear form needs a even, got a={self.a}")
        return self


@dataclass(frozen=True)
class ResidueWeights:
    """Integer residues of the three Pochhammer ratios at t = -p, p != j."""

    n: int
    j: int
    f: dict
    g: dict
    h: dict


def residue_weights(n: int, j: int) -> ResidueWeights:
    if n < 1 or not 0 <= j <= n:
        raise DomainError(f"need 0 <= j <= n with n >= 1, got n={n}, j={j}")
    f, g, h = {}, {}, {}
    for p in range(n + 1):
        if p == j:
            continue
        f[p] = (-1) ** (n - p) * binomial(n + p, n) * binomial(n, p)
        g[p] = (-1) ** p * binomial(2 * n - p, n) * binomial(n, p)
        h[p] = (-1) ** p * binomial(n, p)
    return ResidueWeights(n, j, f, g, h)


def _factor_jet(weights: dict, j: int, order: int, unit: int) -> Jet:
    # D_lam of unit + sum_p (j-p) w_p / (t+p) at t = -j
    coeffs = []
    for lam in range(order + 1):
        s = Fraction(unit if lam == 0 else 0)
        for p, w in weights.items():
            s += Fraction((-1) ** lam * (j - p) * w, (p - j) ** (lam + 1))
        coeffs.append(s)
    return Jet(Fraction(-j), coeffs)


def factor_jets(params: Params, j: int, order: int) -> tuple[Jet, Jet, Jet, Jet]:
    """Jets of F, G, H and I = t + n/2 at t = -j, through the given order.

    F = (t-n)_n (t+j) / (t)_{n+1}, G = (t+n+1)_n (t+j) / (t)_{n+1} and
    H = n! (t+j) / (t)_{n+1}; F and G tend to 1 at infinity, H to 0.
    """
    n = params.n
    if not 0 <= j <= n:
        raise DomainError(f"j={j} outside 0..{n}")
    if order < 0 or order > params.a:
        raise DomainError(f"jet order {order} outside 0..a={params.a}")
    rw = residue_weights(n, j)
    F = _factor_jet(rw.f, j, order, 1)
    G = _factor_jet(rw.g, j, order, 1)
    H = _factor_jet(rw.h, j, order, 0)
    I = Jet.linear(Fraction(n, 2) - j, Fraction(1), Fraction(-j), order)
    return F, G, H, I


@dataclass(frozen=True)
class CoeffTable:
    params: Params
    c: dict  # (l, j) -> Fraction

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.c[key]

    def to_json(self) -> str:
        entries = [
            {"l": l, "j": j, "num": str(v.numerator), "den": str(v.denominator)}
            for (l, j), v in sorted(self.c.items())
        ]
        doc = {"a": self.params.a, "n": self.params.n, "c": entries}
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "CoeffTable":
        doc = json.loads(text)
        params = Params(int(doc["a"]), int(doc["n"]))
        c = {}
        for e in doc["c"]:
            c[(int(e["l"]), int(e["j"]))] = Fraction(int(e["num"]), int(e["den"]))
        expected = {(l, j) for l in range(1, params.a + 1) for j in range(params.n + 1)}
        if set(c) != expected:
            raise DomainError("coefficient table does not cover every (l, j) exactly once")
        return cls(params, c)


@lru_cache(maxsize=64)
def coeff_table(params: Params) -> CoeffTable:
    a, n = params.a, params.n
    order = a - 1
    c = {}
    for j in range(n + 1):
        F, G, H, I = factor_jets(params, j, order)
        jet = jet_mul(jet_pow(F, 3), jet_pow(G, 3))
        if a > 6:
            jet = jet_mul(jet, jet_pow(H, a - 6))
        jet = jet_mul(jet, I)
        for l in range(1, a + 1):
            c[(l, j)] = jet[a - l]
    return CoeffTable(params, c)


def oracle_coeff(params: Params, l: int, j: int) -> Fraction:
    """c[l, j] by direct expansion in s = t + j and power-series division.

    Cost grows with a * (n + 1); intended for small parameters only.
    """
    a, n = params.a, params.n
    if not (1 <= l <= a and 0 <= j <= n):
        raise DomainError(f"(l, j) = ({l}, {j}) outside the table")
    # t = s - j, so a factor (t + h) becomes (s + h - j)
    num = Poly((Fraction(n, 2) - j, 1)) * math.factorial(n) ** (a - 6)
    for h in range(-n, 0):
        num = num * Poly((h - j, 1)) ** 3
    for h in range(n + 1, 2 * n + 1):
        num = num * Poly((h - j, 1)) ** 3
    den = Poly((1,))
    for h in range(n + 1):
        if h != j:
            den = den * Poly((h - j, 1)) ** a
    k = a - l
    # series quotient q with q * den = num through degree k
    q = []
    for m in range(k + 1):
        acc = num[m]
        for i in range(m):
            acc -= q[i] * den[m - i]
        q.append(acc / den[0])
    return q[k]


# ----------------------------------------------------------------- invariants


def symmetry_sign(a: int, n: int, l: int) -> int:
    return -1 if (a * (n + 1) + l + 1) % 2 else 1


def symmetry_violations(table: CoeffTable) -> list[tuple[int, int]]:
    """Entries breaking c[l, n-j] = (-1)^(a(n+1)+l+1) c[l, j]."""
    a, n = table.params.a, table.params.n
    bad = []
    for l in range(1, a + 1):
        sgn = symmetry_sign(a, n, l)
        for j in range(n + 1):
            if table.c[(l, n - j)] != sgn * table.c[(l, j)]:
                bad.append((l, j))
    return bad


def residue_sum_violations(table: CoeffTable) -> Fraction:
    """sum_j c[1, j]; zero because R_n has degree <= -2."""
    return sum((table.c[(1, j)] for j in range(table.params.n + 1)), Fraction(0))


def integrality_violations(table: CoeffTable) -> list[tuple[int, int]]:
    """Entries where 2 d_n^(a-l) c[l, j] is not an integer."""
    a, n = table.params.a, table.params.n
    dn = lcm_upto(n)
    return [
        (l, j)
        for (l, j), v in sorted(table.c.items())
        if not is_integer(2 * dn ** (a - l) * v)
    ]
