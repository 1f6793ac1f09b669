import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.decomposition import (
    CoeffTable,
    Params,
    coeff_table,
    factor_jets,
    oracle_coeff,
    residue_sum_violations,
    residue_weights,
    symmetry_sign,
    symmetry_violations,
    integrality_violations,
)
from zetaforms.errors import DomainError
from zetaforms.exact import jet_inv, jet_mul, Jet

from oracle_values import TABLE_A6_N1


def test_params_domain():
    with pytest.raises(DomainError):
        Params(5, 1)
    with pytest.raises(DomainError):
        Params(20, 0)
    with pytest.raises(DomainError):
        Params(7, 1).require_even()


def test_table_matches_sympy_expansion():
    table = coeff_table(Params(6, 1))
    assert table.c == TABLE_A6_N1
    assert table[(6, 0)] == -4


def test_residue_weights_closed_forms():
    rw = residue_weights(3, 1)
    assert 1 not in rw.f
    # f_p = (-1)^(n-p) C(n+p, n) C(n, p) at n = 3, p = 2
    assert rw.f[2] == -10 * 3
    assert rw.g[0] == 20 and rw.h[3] == -1


def test_factor_jets_against_division():
    # F = (t-n)_n (t+j)/(t)_{n+1} near t = -j, checked by expanding numerator and denominator
    P = Params(8, 2)
    F, G, H, I = factor_jets(P, 1, 4)
    c = Fraction(-1)

    def lin(shift):
        return Jet.linear(c + shift, Fraction(1), c, 4)

    num = jet_mul(lin(-2), lin(-1))
    den = jet_mul(lin(0), lin(2))
    assert F == jet_mul(num, jet_inv(den))
    assert I.coeffs[:2] == (Fraction(1) + c, Fraction(1))


@pytest.mark.parametrize("a, n", [(6, 1), (6, 2), (6, 3), (8, 1), (8, 2), (8, 3), (20, 1), (20, 2)])
def test_table_matches_oracle(a, n):
    P = Params(a, n)
    table = coeff_table(P)
    for (l, j), v in table.c.items():
        assert oracle_coeff(P, l, j) == v


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 12).map(lambda h: 2 * h), st.integers(1, 4))
def test_structural_invariants_even_a(a, n):
    table = coeff_table(Params(a, n))
    assert symmetry_violations(table) == []
    assert residue_sum_violations(table) == 0
    assert integrality_violations(table) == []


@settings(max_examples=15, deadline=None)
@given(st.integers(6, 15), st.integers(1, 3))
def test_symmetry_holds_for_odd_a_too(a, n):
    assert symmetry_violations(coeff_table(Params(a, n))) == []


def test_symmetry_sign_formula():
    assert symmetry_sign(20, 1, 1) == 1
    assert symmetry_sign(20, 1, 2) == -1
    assert symmetry_sign(7, 2, 1) == -1


def test_json_round_trip():
    table = coeff_table(Params(20, 3))
    doc = json.loads(table.to_json())
    assert len(doc["c"]) == 80
    again = CoeffTable.from_json(table.to_json())
    assert again == table
    assert symmetry_violations(again) == []


def test_json_rejects_missing_entries():
    doc = json.loads(coeff_table(Params(6, 1)).to_json())
    doc["c"].pop()
    with pytest.raises(DomainError):
        CoeffTable.from_json(json.dumps(doc))


def test_tampering_is_detected():
    table = coeff_table(Params(20, 2))
    c = dict(table.c)
    c[(5, 0)] += 1
    bad = CoeffTable(table.params, c)
    assert (5, 0) in symmetry_violations(bad)


def test_oracle_domain():
    with pytest.raises(DomainError):
        oracle_coeff(Params(6, 1), 7, 0)
