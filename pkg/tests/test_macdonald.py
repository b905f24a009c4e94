from fractions import Fraction as F

import pytest

from oracles import residue_product
from rrlab import macdonald
from rrlab.errors import DegenerateSpecialization
from rrlab.qcore import QSeries, pochhammer_inf, theta_series, xspec


def test_weyl_denominator_rank_one_c():
    assert macdonald.weyl_denominator("C", xspec("q^2/3")).terms() == [(0, 1), (F(4, 3), -1)]


def test_weyl_denominator_rank_two_d():
    x1, x2 = xspec("q^1/2", "q^2")
    expected = (x1.series() - x2.series()) * (x1.series() * x2.series() - 1)
    assert macdonald.weyl_denominator("D", (x1, x2)).agrees(expected)


@pytest.mark.parametrize("x", [("q^1/2", "q^5/3"), ("-q^1/3", "q^2"), ("q^1/6", "-q^1/2", "q^4/3")])
def test_type_c_denominator_equals_determinant(x):
    x = xspec(*x)
    assert macdonald.weyl_denominator("C", x).agrees(macdonald.weyl_determinant("C", x))


def test_b_variant_rank_one_at_root_q():
    x = xspec("q^1/2")
    rep = macdonald.macdonald_check("Bn1_variant", 1, x, 100)
    assert rep.passed
    expected = pochhammer_inf(1, 1, 1, 100) * theta_series(1, F(1, 2), 1, 100) * 2
    assert macdonald.macdonald_product("Bn1_variant", x, 100).agrees(expected)


@pytest.mark.parametrize("kind, x", [("Dn1_2", ("q^3/2", "q^1/2")), ("Dn1_variant", ("-q", "-1"))])
def test_named_specializations(kind, x):
    # both have a vanishing product side, so the lattice sum must cancel to zero as well
    rep = macdonald.macdonald_check(kind, 2, xspec(*x), 100)
    assert rep.passed
    assert macdonald.macdonald_product(kind, xspec(*x), 100).is_zero


@pytest.mark.parametrize("kind", macdonald.MACDONALD_KINDS)
def test_seeded_specializations(kind):
    for x in macdonald.seeded_specializations(kind, 2, count=2):
        assert macdonald.macdonald_check(kind, 2, x, 60).passed


def test_window_doubling_leaves_coefficients_alone():
    x = macdonald.seeded_specializations("Bn1_variant", 2, count=1)[0]
    lattice = macdonald.macdonald_sum("Bn1_variant", x)
    value, windows = lattice.evaluate_checked(60)
    wider = [(2 * lo - 1, 2 * hi + 1) for lo, hi in windows]
    assert lattice.evaluate(60, wider).agrees(value, 60)


def test_rogers_selberg_a_equals_one_and_q():
    N = 150
    g = macdonald.rs_product_side(0, N)
    assert g.int_coeffs(N) == residue_product(5, {1, 4}, N, sign=-1)
    h = macdonald.rs_product_side(1, N)
    assert h.int_coeffs(N) == residue_product(5, {2, 3}, N, sign=-1)
    for a in (0, 1, 2, F(1, 2)):
        assert macdonald.rogers_selberg_check(a, 200).passed


def test_cn_rank_one_reduces_to_rogers_selberg():
    x = xspec("q")
    assert macdonald.cn_rs_sum_side(1, x, 60).agrees(macdonald.rs_sum_side(2, 60))
    assert macdonald.rogers_selberg_cn_check(1, x, 60).passed


def test_cn_printed_form_lacks_the_normalizer():
    assert not macdonald.rogers_selberg_cn_check(1, xspec("q"), 60, printed=True).passed


def test_cn_seeded_rank_two():
    for m in (1, 2):
        for x in macdonald.seeded_specializations("Cn-RS", 2, count=1):
            assert macdonald.rogers_selberg_cn_check(m, x, 50).passed


def test_cn_degenerate_specialization_is_rejected():
    # (q x_2/x_1; q)_r vanishes for r >= 1 when x_1 = q x_2
    with pytest.raises(DegenerateSpecialization):
        macdonald.rogers_selberg_cn_check(2, xspec("q^3/2", "q^1/2"), 40)


def test_watson_terminating():
    t = macdonald.seeded_watson_tuples(1)[0]
    lhs, rhs = macdonald.watson_sides(*t, 0)
    assert lhs.same(rhs)
    assert lhs.same(macdonald._Frac(QSeries.one(), QSeries.one()))
    for nterm in range(1, 5):
        assert macdonald.watson_check(*t, nterm).passed


def test_watson_printed_form_fails_from_one_term_on():
    t = macdonald.seeded_watson_tuples(1)[0]
    assert macdonald.watson_check(*t, 0, printed=True).passed
    assert not macdonald.watson_check(*t, 1, printed=True).passed


def test_watson_degenerate_tuple():
    # (a, b, c, d, e) = (q, q^2, q^3, q^4, q^5): aq/b = 1 kills the prefactor
    with pytest.raises(DegenerateSpecialization):
        macdonald.watson_check("q^2", "q^3", "q^4", "q^5", "q", 5)


def test_seeded_values_are_reproducible():
    a = macdonald.seeded_specializations("Dn1_2", 2)
    b = macdonald.seeded_specializations("Dn1_2", 2)
    assert a == b and len(set(a)) == 3
