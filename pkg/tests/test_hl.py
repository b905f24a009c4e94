from fractions import Fraction as F

import pytest

from oracles import count_partitions, geometric, hl_rational, infinite_product, poly_mul, residue_product
from rrlab.errors import IndexOutOfRange, NoStabilization
from rrlab.hl import (ag_sum, b_lambda, bressoud_sum, conjugate, hl_branching, hl_finite,
                      hl_geometric, hl_modified_p, hl_modified_q, hl_modified_q_truncated,
                      make_partition, q2r_sum, qbinom, rect_limit, sum_side)
from rrlab.hl.partitions import multiplicities, partitions_of
from rrlab.identities import product_side
from rrlab.qcore import QPower, QSeries, geometric_xspec

q = QSeries.monomial(1)


def coeffs(s: QSeries, n: int) -> list:
    return [s.coeff(k) for k in range(n)]


def at(s: QSeries, value: F) -> F:
    """Exact value of a Laurent polynomial with integer exponents."""
    assert s.order_q is None
    return sum((c * value ** int(e) for e, c in s.terms()), F(0))


def test_partition_basics():
    lam = make_partition([4, 2, 2, 1])
    assert conjugate(lam) == (4, 3, 1, 1)
    assert conjugate(conjugate(lam)) == lam
    lc = conjugate(lam) + (0,)
    assert multiplicities(lam) == {i: lc[i - 1] - lc[i] for i in range(1, 5) if lc[i - 1] - lc[i]}


@pytest.mark.parametrize("n, k, expected", [(2, 1, [1, 1]), (5, 0, [1]),
                                            (4, 2, [1, 1, 2, 1, 1])])
def test_qbinom_examples(n, k, expected):
    assert coeffs(qbinom(n, k), len(expected) + 2) == expected + [0, 0]


def test_qbinom_against_pochhammer_quotient():
    # (q)_7 = [7 choose 3] (q)_3 (q)_4 as polynomials
    poch = lambda k: infinite_product([(j, 1) for j in range(1, k + 1)], 40)  # noqa: E731
    lhs = poch(7)
    rhs = poly_mul(poly_mul(coeffs(qbinom(7, 3), 40), poch(3), 40), poch(4), 40)
    assert lhs == rhs


def test_b_lambda_examples():
    qq = lambda k: infinite_product([(j, 1) for j in range(1, k + 1)], 12)  # noqa: E731
    assert coeffs(b_lambda((6, 4, 4, 2)), 12) == poly_mul(poly_mul(qq(1), qq(1), 12), qq(2), 12)
    assert b_lambda(()).terms() == [(0, 1)]
    assert coeffs(b_lambda((1, 1)), 5) == [1, -1, -1, 1, 0]


def test_hl_finite_small_cases():
    x = (QPower(0), QPower(2), QPower(F(1, 2)))
    assert hl_finite((1,), x).agrees(sum((p.series() for p in x), QSeries.zero()))
    assert hl_finite((1, 1, 1, 1), x).is_zero


@pytest.mark.parametrize("lam, exps, base", [((2,), (0, 1), 1), ((2, 1), (0, 1, 3), 1),
                                             ((3, 1, 1), (0, 2, 1), 2), ((2, 2), (0, 1, 2, 4), 3),
                                             ((1, 1), (1, 5), 2)])
def test_hl_finite_against_rational_symmetrisation(lam, exps, base):
    x = tuple(QPower(e) for e in exps)
    qv = F(1, 3)
    expected = hl_rational(lam, [qv ** e for e in exps], qv ** base)
    assert at(hl_finite(lam, x, base), qv) == expected
    assert at(hl_branching(lam, x, base), qv) == expected


def test_two_variable_closed_form():
    # P_(2)(x1, x2; t) = x1^2 + x2^2 + (1 - t) x1 x2 at x = (1, q), t = q
    assert hl_finite((2,), (QPower(0), QPower(1))).agrees(1 + q)


def test_modified_q_examples():
    assert hl_modified_q((), geometric_xspec(3)).terms() == [(0, 1)]
    for size in range(1, 7):
        for lam in partitions_of(size):
            for k in (2, 3, 4):
                x = geometric_xspec(k)
                assert hl_modified_q(lam, x, 2).agrees(hl_modified_q_truncated(lam, x, 2, 10 ** 6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_modified_p_is_geometric_hall_littlewood(n):
    # P'_lambda(1, ..., q^(n-1); q^n) = P_lambda(1, q, q^2, ...; q^n)
    N = 16
    for size in range(1, 6):
        for lam in partitions_of(size):
            lhs = hl_modified_p(lam, geometric_xspec(n), n, N)
            rhs = hl_branching(lam, geometric_xspec(N + 1), n, N)
            assert lhs.agrees(rhs, N), lam


@pytest.mark.parametrize("n", [1, 2, 5])
def test_hl_geometric_single_box(n):
    assert coeffs(hl_geometric((1,), n, 30), 30) == [1] * 30


def test_hl_geometric_at_t_equals_q():
    # P_lambda(1, q, ...; q) = q^{n(lambda)} / b_lambda(q)
    lam = (3, 3, 1)
    expected = QSeries.monomial(3 * 0 + 3 * 1 + 1 * 2).div(b_lambda(lam), 40)
    assert hl_geometric(lam, 1, 40).agrees(expected)


def test_hl_geometric_two_backends_agree():
    for lam in [(2, 2, 1), (4, 2), (3, 3, 3, 1)]:
        a = hl_geometric(lam, 3, 60, kind="numba")
        b = hl_geometric(lam, 3, 60, kind="numpy")
        assert a.agrees(b)


def test_sum_side_is_the_first_rogers_ramanujan_sum():
    oracle = count_partitions(lambda p: p % 5 in (1, 4), 120)
    assert sum_side(1, 1, 0, 120).int_coeffs(120) == oracle
    assert coeffs(sum_side(1, 1, 0, 7), 7) == [1, 1, 1, 1, 2, 2, 3]


def test_sum_side_dyson_mod_nine():
    oracle = count_partitions(lambda p: p % 9 != 0, 120)
    assert sum_side(2, 3, 0, 120).int_coeffs(120) == oracle
    assert oracle[:6] == [1, 1, 2, 3, 5, 7]


def test_empty_partition_contributes_one():
    for m, n, s in [(1, 1, 0), (2, 3, 1), (3, 2, 0)]:
        # every nonempty term is divisible by q^{(sigma+1)|lambda|} with |lambda| >= 1
        low = sum_side(m, n, s, s + 1)
        assert coeffs(low, s + 1) == [1] + [0] * s


def test_sum_side_two_routes():
    for m, n, s in [(2, 2, 1), (3, 3, 0), (1, 4, 1)]:
        assert sum_side(m, n, s, 50).agrees(sum_side(m, n, s, 50, route="lambda"))


def test_andrews_gordon_small_cases():
    assert ag_sum(1, 1, 100).int_coeffs(100) == count_partitions(lambda p: p % 5 in (2, 3), 100)
    assert ag_sum(1, 2, 100).int_coeffs(100) == count_partitions(lambda p: p % 5 in (1, 4), 100)
    assert ag_sum(2, 1, 100).int_coeffs(100) == count_partitions(lambda p: p % 7 in (2, 3, 4, 5), 100)
    with pytest.raises(IndexOutOfRange):
        ag_sum(2, 4, 10)


def test_bressoud_n1_is_the_single_sum():
    N = 80
    direct = [0] * N
    r = 0
    while r * r + r < N:
        term = [0] * N
        term[r * r + r] = 1
        for j in range(1, r + 1):
            term = poly_mul(term, geometric(2 * j, N), N)
        direct = [a + b for a, b in zip(direct, term)]
        r += 1
    assert bressoud_sum(1, 1, N).int_coeffs(N) == direct


@pytest.mark.parametrize("i", [1, 2])
def test_bressoud_n2_products(i):
    N = 100
    prod = poly_mul(residue_product(6, {0}, N, sign=1), residue_product(1, {0}, N, sign=-1), N)
    prod = poly_mul(prod, residue_product(6, {i, 6 - i}, N, sign=1), N)
    assert bressoud_sum(2, i, N).int_coeffs(N) == prod


def test_q2r_examples():
    assert q2r_sum(0, 3, 1, 20).agrees(QSeries.one(20))
    assert q2r_sum(1, 1, 1, 60).agrees(hl_geometric((2,), 3, 60))
    assert q2r_sum(2, 1, 0, 60).agrees(hl_geometric((2, 2), 2, 60))


def test_rect_limit_examples():
    lhs = rect_limit(1, 0, 1, 60)
    assert lhs.agrees(product_side("NearRect", 1, 1, 0, "n_form").expand(60))
    lhs = rect_limit(2, 1, 2, 60)
    assert lhs.agrees(product_side("NearRect", 2, 2, 1, "n_form").expand(60))


def test_rect_limit_cap():
    with pytest.raises(NoStabilization):
        rect_limit(2, 0, 2, 40, r_cap=2)
