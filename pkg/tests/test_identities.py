from fractions import Fraction as F

import pytest

from oracles import poly_mul, residue_product
from rrlab.errors import InvalidFamilyParams
from rrlab.fixtures import reference
from rrlab.hl import ag_sum, bressoud_sum
from rrlab.identities import (FAMILIES, ProductSpec, phi_product, phi_series, product_side,
                              psi_exponent, psi_product, psi_series, rr_cfrac, sum_side_series,
                              verify)
from rrlab.qcore import FactorSpec, QSeries

N = 120


def coeffs(s: QSeries, n: int) -> list:
    return [s.coeff(k) for k in range(n)]


def test_g_product():
    got = product_side("G").expand(N)
    assert coeffs(got, N) == residue_product(5, {1, 4}, N, sign=-1)


def test_dyson_product():
    got = product_side("A2n2_a", 2, 2).expand(N)
    expected = poly_mul(residue_product(9, {0}, N, sign=1), residue_product(1, {0}, N, sign=-1), N)
    assert coeffs(got, N) == expected


def test_second_mod_nine_product():
    got = product_side("A2n2_b", 2, 2).expand(N)
    expected = poly_mul(residue_product(9, {0, 1, 8}, N, sign=1),
                        residue_product(1, {0}, N, sign=-1), N)
    expected = poly_mul(expected, residue_product(9, {4, 5}, N, sign=-1), N)
    assert coeffs(got, N) == expected


def test_first_family_at_one_one_is_g():
    rep = verify("A2n2_a", 1, 1, None, 500, "both")
    assert rep.passed
    assert sum_side_series("A2n2_a", 1, 1, order=200).agrees(ag_sum(1, 2, 200))


def test_mixed_example():
    assert verify("Mixed", 2, 3, 1, 200).passed


def test_perturbed_product_is_caught():
    # the product for G is (q^5;q^5) theta(q^2;q^5) / (q;q); swap in theta(q;q^5)
    wrong = ProductSpec(F(0), (FactorSpec.poch(5, 5), FactorSpec.poch(1, 1, -1),
                               FactorSpec.theta(1, 5)), 5)
    rep = verify("G", order=50, product=wrong)
    assert rep.status == "fail"
    assert rep.first_mismatch == {"exponent": "1", "lhs": "1", "rhs": "0"}


def test_dn1_2_needs_n_at_least_two():
    with pytest.raises(InvalidFamilyParams):
        verify("Dn1_2", 1, 1, None, 50)
    with pytest.raises(InvalidFamilyParams):
        product_side("Dn1_2", 1, 1)


def test_unknown_family():
    with pytest.raises(InvalidFamilyParams):
        sum_side_series("nope")


@pytest.mark.parametrize("family, m, n, extra", [
    ("A2n2_b", 3, 2, None), ("Cn1", 2, 3, None), ("Dn1_2", 3, 2, None),
    ("Mixed", 3, 1, 0), ("An11_limit", 2, 3, None), ("NearRect", 3, 2, 2),
    ("AG", 3, 1, 2), ("Bressoud", 1, 3, 2), ("H", 1, 1, None), ("Dyson9", 2, 2, None)])
def test_sample_of_each_family(family, m, n, extra):
    assert family in FAMILIES
    assert verify(family, m, n, extra, 80, "both").passed


def test_milne_modulus_six():
    # sum side at (m, n) = (1, 2) against (q^6;q^6) theta(q; q^6) / (q;q), built by hand
    got = sum_side_series("Dn1_2", 1, 2, order=N)
    p = poly_mul(residue_product(6, {0}, N, sign=1), residue_product(1, {0}, N, sign=-1), N)
    p = poly_mul(p, residue_product(6, {1, 5}, N, sign=1), N)
    assert got.int_coeffs(N) == p


@pytest.mark.parametrize("n", [2, 3, 4])
def test_m1_reductions_give_bressoud_i_one_and_two(n):
    assert sum_side_series("Dn1_2", 1, n, order=150).agrees(bressoud_sum(n, 1, 150))
    # the second family at m = 1 gives i = 2, not i = 1
    cn = sum_side_series("Cn1", 1, n - 1, order=150)
    assert cn.agrees(bressoud_sum(n, 2, 150))
    assert not cn.agrees(bressoud_sum(n, 1, 150))


def test_phi_series_prefixes():
    a = phi_series("1a", 2, 2, 7)
    assert a.terms()[:6] == [(F(1, 3) + k, c) for k, c in enumerate([1, 1, 2, 3, 5, 7])]
    b = phi_series("1b", 2, 2, 9)
    assert b.terms() == [(1, 1), (3, 1), (4, 1), (5, 3), (6, 3), (7, 5), (8, 6)]


def test_phi_1a_one_one_is_normalized_g():
    assert phi_series("1a", 1, 1, 100).agrees(ag_sum(1, 2, 101).shift(F(-1, 60)), 100 - F(1, 60))


@pytest.mark.parametrize("star, m, n", [("1a", 2, 3), ("1b", 3, 1), ("2", 2, 2), ("3", 1, 3)])
def test_phi_series_equals_theta_product(star, m, n):
    assert phi_series(star, m, n, 80).agrees(phi_product(star, m, n).expand(80), 80)


def test_psi_prefix_against_reference():
    ref = reference()["series_prefixes"]["psi_1_2_2"]
    got = psi_series(1, 2, 2, 8)
    expected = [(F(ref["offset"]) + k, c) for k, c in enumerate(ref["coeffs"]) if c]
    assert got.terms() == expected


def test_psi_one_one_is_the_continued_fraction_reciprocal():
    lhs = psi_series(1, 1, 1, 40)
    g, h = ag_sum(1, 2, 60), ag_sum(1, 1, 60)
    assert lhs.agrees((g / h).shift(F(-1, 5)), 39)
    assert rr_cfrac(40, 38).agrees((h / g), 38)


def test_psi_two_leading_exponent():
    # m (m+1) (2n+1) / (4 kappa) with m = n = 1 and kappa = 6 is 1/4
    assert psi_exponent(2, 1, 1) == (6, F(-1, 4))
    assert psi_series(2, 1, 1, 5).valuation == F(-1, 4)


@pytest.mark.parametrize("which, m, n", [(1, 2, 2), (1, 3, 1), (2, 1, 1), (2, 2, 3)])
def test_psi_series_equals_theta_product(which, m, n):
    assert psi_series(which, m, n, 60).agrees(psi_product(which, m, n).expand(60), 60)


def test_rr_cfrac():
    q = QSeries.monomial(1)
    assert rr_cfrac(1, 20).agrees((1 + q).inv(20))
    ratio = ag_sum(1, 1, 40) / ag_sum(1, 2, 40)
    assert rr_cfrac(30, 25).agrees(ratio, 25)
    # deeper truncations agree on longer initial segments
    for d in (5, 10, 20):
        diff = rr_cfrac(d, 40).first_mismatch(rr_cfrac(d + 1, 40))
        assert diff is None or diff >= d
