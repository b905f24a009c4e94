import math
from fractions import Fraction as F

import mpmath
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rrlab.cm import SiegelProduct, fn_membership, parse_tau, phi_cm, reduced_forms, siegel_g, three_way
from rrlab.cm.forms import CMPoint, w_group
from rrlab.cm.numeric import siegel_g_direct
from rrlab.hl import conjugate, hl_finite, hl_geometric, sum_side
from rrlab.hl.core import hl_branching
from rrlab.hl.partitions import multiplicities, partitions_of
from rrlab.identities import TWO_BRANCH, phi_product, phi_series, product_side
from rrlab.qcore import (QPower, QSeries, geometric_xspec, pochhammer_inf, series_from_json,
                         series_to_json, theta_series, triple_product_sum)

SETTINGS = settings(max_examples=25, deadline=None)
ORDER = 30

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=4)


@st.composite
def series(draw, invertible: bool = False):
    scale = draw(st.sampled_from((1, 2, 3)))
    coeffs = draw(st.lists(rationals, min_size=1, max_size=ORDER * scale))
    if invertible:
        coeffs[0] = draw(st.sampled_from((F(1), F(-1), F(2), F(1, 3))))
    offset = draw(st.integers(-3, 3)) if not invertible else 0
    return QSeries.from_coeffs(coeffs, offset, scale, ORDER)


@st.composite
def partitions(draw, max_size: int = 6):
    size = draw(st.integers(0, max_size))
    return draw(st.sampled_from(list(partitions_of(size))))


@SETTINGS
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert ((a + b) + c).agrees(a + (b + c))
    assert ((a * b) * c).agrees(a * (b * c))
    assert (a * b).agrees(b * a)
    assert (a * (b + c)).agrees(a * b + a * c)
    assert (a - a).is_zero


@SETTINGS
@given(series(invertible=True))
def test_inverse(a):
    assert (a * a.inv(ORDER)).agrees(QSeries.one(ORDER))


@SETTINGS
@given(series())
def test_json_round_trip(a):
    assert series_from_json(series_to_json(a)).agrees(a)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 8).flatmap(lambda b: st.tuples(st.just(b), st.integers(1, 4 * b - 1))),
       st.sampled_from((1, -1)))
def test_triple_product(ba, sign):
    # a / b in (0, 1) with a in (1/4) Z
    b, a = ba[0], F(ba[1], 4)
    lhs = triple_product_sum(sign, a, b, 300)
    rhs = pochhammer_inf(1, b, b, 300) * theta_series(sign, a, b, 300)
    assert lhs.agrees(rhs)


@SETTINGS
@given(st.integers(2, 12).flatmap(lambda b: st.tuples(st.just(b), st.integers(1, 3 * b - 1))))
def test_theta_symmetry(ba):
    b, a = ba[0], F(ba[1], 3)
    assert theta_series(1, a, b, 150).agrees(theta_series(1, b - a, b, 150))


@SETTINGS
@given(partitions(8))
def test_conjugation(lam):
    conj = conjugate(lam)
    assert conjugate(conj) == lam
    assert sum(conj) == sum(lam)
    c = conj + (0,)
    assert multiplicities(lam) == {i + 1: c[i] - c[i + 1] for i in range(len(conj)) if c[i] != c[i + 1]}


@settings(max_examples=15, deadline=None)
@given(partitions(4), st.integers(1, 3))
def test_geometric_against_branching(lam, n):
    N = 12
    assert hl_geometric(lam, n, N).agrees(hl_branching(lam, geometric_xspec(N + 1), n, N), N)


@settings(max_examples=15, deadline=None)
@given(partitions(3), st.lists(st.integers(0, 4), min_size=3, max_size=3, unique=True),
       st.integers(1, 3))
def test_homogeneity(lam, exps, c):
    # the symmetrisation divides by x_i - x_j, so the variables are distinct
    assume(len(lam) <= 3)
    x = tuple(QPower(F(e)) for e in exps)
    shifted = tuple(p.times_q(c) for p in x)
    assert hl_finite(lam, shifted).agrees(hl_finite(lam, x).shift(c * sum(lam)))


@settings(max_examples=12, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from((0, 1)))
def test_chain_route_equals_partition_route(m, n, sigma):
    a = sum_side(m, n, sigma, 40, route="chain")
    b = sum_side(m, n, sigma, 40, route="lambda")
    assert a.agrees(b)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(TWO_BRANCH), st.integers(1, 4), st.integers(1, 4))
def test_level_rank_duality(family, m, n):
    assume(family != "Dn1_2" or n >= 2)
    a = product_side(family, m, n, None, "n_form").expand(150)
    b = product_side(family, m, n, None, "m_form").expand(150)
    assert a.agrees(b)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from((0, 1)))
def test_mixed_matches_its_parent(m, n, sigma):
    mixed = product_side("Mixed", m, n, sigma).expand(100)
    half = (n + 1) // 2
    if n % 2:
        parent = product_side("A2n2_b" if sigma else "A2n2_a", m, half)
    else:
        parent = product_side("Dn1_2", m, n // 2 + 1) if sigma else product_side("Cn1", m, n // 2)
    assert mixed.agrees(parent.expand(100))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(("1a", "1b", "2", "3")), st.integers(1, 3), st.integers(1, 3))
def test_phi_series_over_product_is_one(star, m, n):
    assume(star != "3" or n >= 2)
    s = phi_series(star, m, n, 100)
    p = phi_product(star, m, n).expand(100)
    assert s.agrees(p, 100)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 100), st.sampled_from((0, 3)))
def test_reduced_forms_are_reduced(k, r):
    D = 4 * k + r
    for f in reduced_forms(D):
        assert f.b * f.b - 4 * f.a * f.c == -D
        assert abs(f.b) <= f.a <= f.c
        if abs(f.b) == f.a or f.a == f.c:
            assert f.b >= 0


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 12), st.sampled_from(("i", "3i", "(1+sqrt(-3))/2", "i/3", "sqrt(-2)")))
def test_w_group_count(N, tau):
    theta: CMPoint = parse_tau(tau)
    A, B, C = theta.A, theta.B, theta.C
    mats = set()
    for t in range(N):
        for s in range(N):
            M = ((t - s * B) % N, (-s * C) % N), ((s * A) % N, t % N)
            det = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % N
            if math.gcd(det, N) == 1:
                neg = tuple(tuple(-v % N for v in row) for row in M)
                mats.add(min(M, neg))
    assert len(w_group(N, theta)) == len(mats)


indices = st.tuples(st.fractions(-2, 2, max_denominator=12), st.fractions(-2, 2, max_denominator=12))
taus = st.tuples(st.floats(-0.5, 0.5), st.floats(0.8, 2.0)).map(lambda t: mpmath.mpc(*t))


@settings(max_examples=20, deadline=None)
@given(indices, taus)
def test_siegel_oddness(a, tau):
    assume(a[0].denominator > 1 or a[1].denominator > 1)
    g1, g2 = siegel_g(a, tau, 128), siegel_g((-a[0], -a[1]), tau, 128)
    with mpmath.workprec(160):
        assert abs(g1.value + g2.value) <= g1.err + g2.err + mpmath.mpf(2) ** -120 * abs(g1.value)


@settings(max_examples=15, deadline=None)
@given(indices, taus)
def test_reduced_and_direct_evaluation_agree(a, tau):
    assume(a[0].denominator > 1 or a[1].denominator > 1)
    a = (a[0] % 1, a[1])
    g1, g2 = siegel_g(a, tau, 128), siegel_g_direct(a, tau, 128)
    with mpmath.workprec(160):
        assert abs(g1.value - g2.value) <= g1.err + g2.err + mpmath.mpf(2) ** -120 * abs(g1.value)


@settings(max_examples=10, deadline=None)
@given(indices, taus)
def test_truncation_doubling(a, tau):
    assume(a[0].denominator > 1 or a[1].denominator > 1)
    lo = siegel_g(a, tau, 128)
    with mpmath.workprec(300):
        hi = siegel_g(a, tau, 256)
        assert abs(lo.value - hi.value) <= lo.err + hi.err


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 12), st.integers(0, 11), st.integers(0, 11))
def test_twelve_n_th_powers_lie_in_f_n(N, a1, a2):
    assume((a1 % N, a2 % N) != (0, 0))
    a = (F(a1 % N, N), F(a2 % N, N))
    assert fn_membership(SiegelProduct.build({(a, 1): 12 * N}), N)


@settings(max_examples=6, deadline=None)
@given(st.sampled_from(("1a", "1b", "2", "3")), st.integers(1, 2), st.integers(2, 3),
       st.sampled_from(("i", "i/2", "sqrt(-1/3)", "(1+3i)/2")))
def test_three_way_agreement(star, m, n, tau):
    assert three_way(phi_cm, star, m, n, parse_tau(tau), prec=128, order=250).agree
