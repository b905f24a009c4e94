from fractions import Fraction as F

import pytest

from oracles import pentagonal, poly_mul, residue_product
from rrlab.errors import ZeroLeadingCoefficient
from rrlab.hl import ag_sum
from rrlab.qcore import (FactorSpec, QSeries, expand_factor, parse_qpower, pochhammer_inf,
                         series_from_json, series_to_json, theta_series, triple_product_sum)

q = QSeries.monomial(1)


def coeffs(s: QSeries, n: int) -> list:
    return [s.coeff(k) for k in range(n)]


def test_addition_examples():
    assert ((1 + q) + (q + q**2)).terms() == [(0, 1), (1, 2), (2, 1)]
    x = 3 * q**2 - q.shift(F(1, 2))
    assert (x + QSeries.zero()).agrees(x)


def test_addition_unifies_scales():
    s = QSeries.monomial(F(1, 3)) + QSeries.monomial(F(1, 2))
    assert s.scale == 6
    assert [e for e, _ in s.terms()] == [F(2, 6), F(3, 6)]


def test_multiplication_examples():
    assert ((1 - q) * (1 - q).inv(20)).agrees(QSeries.one(20))
    assert (QSeries.monomial(F(1, 3)) * QSeries.monomial(F(2, 3))).terms() == [(1, 1)]
    assert ((1 + q) ** 2).terms() == [(0, 1), (1, 2), (2, 1)]


def test_inverse_examples():
    assert coeffs((1 - q).inv(8), 8) == [1] * 8
    assert q.inv().terms() == [(-1, 1)]
    assert coeffs((1 + q).inv(8), 8) == [(-1) ** k for k in range(8)]
    with pytest.raises(ZeroLeadingCoefficient):
        QSeries.zero(5).inv()


def test_subst_power_examples():
    assert (1 + q).subst_power(2).terms() == [(0, 1), (2, 1)]
    assert (1 + q).subst_power(F(1, 2)).terms() == [(0, 1), (F(1, 2), 1)]


def test_subst_power_of_sum_matches_sum_built_in_q3():
    # sum q^(n^2)/(q;q)_n with q -> q^3, built term by term in q^3
    direct = QSeries.zero(90)
    for n in range(0, 6):
        term = QSeries.monomial(3 * n * n, 1, 90)
        for j in range(1, n + 1):
            term = term.div(1 - QSeries.monomial(3 * j), 90)
        direct = direct + term
    assert ag_sum(1, 2, 30).subst_power(3).agrees(direct, 90)


def test_trusted_order_is_the_minimum():
    a = (1 + q).truncate(5)
    b = (1 - q).inv(10)
    assert (a + b).order_q == 5
    assert (a * b).order_q == 5
    assert (a * QSeries.monomial(2)).order_q == 7


def test_normal_form():
    s = QSeries.from_coeffs([0, 0, 2, 4], 0, 1, 10)
    assert s.valuation == 2
    assert QSeries.from_coeffs([F(2, 4)]).terms() == [(0, F(1, 2))]
    assert QSeries.zero(7).is_zero


def test_json_round_trip():
    s = (1 - q.shift(F(1, 3))).inv(12) * F(3, 7)
    assert series_from_json(series_to_json(s)).agrees(s)
    assert series_from_json(series_to_json(s)).order_q == s.order_q


def test_euler_product_against_pentagonal_numbers():
    assert coeffs(pochhammer_inf(1, 1, 1, 6), 6) == [1, -1, -1, 0, 0, 1]
    assert coeffs(pochhammer_inf(1, 1, 1, 300), 300) == pentagonal(300)


def test_theta_against_direct_product():
    expected = residue_product(5, {1, 4}, 40, sign=1)
    assert coeffs(theta_series(1, 1, 5, 40), 40) == expected


def test_theta_half_squares_to_theta():
    half = expand_factor(FactorSpec.theta_half(6), 80)
    assert (half * half).agrees(theta_series(1, 3, 6, 80), 80)


def test_triple_product_against_products():
    lhs = triple_product_sum(1, 1, 5, 60)
    rhs = poly_mul(residue_product(5, {0}, 60, sign=1), residue_product(5, {1, 4}, 60, sign=1), 60)
    assert coeffs(lhs, 60) == rhs


def test_triple_product_negative_argument():
    lhs = triple_product_sum(-1, 1, 4, 80)
    rhs = theta_series(-1, 1, 4, 80) * pochhammer_inf(1, 4, 4, 80)
    assert lhs.agrees(rhs, 80)


def test_triple_product_symmetric_half_case():
    s = triple_product_sum(1, 1, 2, 60)
    # r and -r give the same exponent r^2, so only the constant term is odd
    assert s.coeff(0) == 1
    assert all(c == 2 * (-1) ** int(e) for e, c in s.terms() if e)
    assert [e for e, _ in s.terms()] == [r * r for r in range(8)]


@pytest.mark.parametrize("text, exp, sign", [("q^3/2", F(3, 2), 1), ("-q^-1", F(-1), -1),
                                             ("-1", F(0), -1), ("q", F(1), 1)])
def test_parse_qpower(text, exp, sign):
    p = parse_qpower(text)
    assert (p.exp, p.sign) == (exp, sign)
