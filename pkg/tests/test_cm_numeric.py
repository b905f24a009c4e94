from fractions import Fraction as F

import mpmath
import pytest

from rrlab.cm import eta, j_invariant, klein_t, parse_tau, siegel_g
from rrlab.cm.numeric import siegel_g_direct


def reference_g(a1, a2, tau, terms: int, prec: int):
    """The defining product, truncated after ``terms`` factors, in plain mpmath."""
    with mpmath.workprec(prec):
        a1, a2 = mpmath.mpf(a1.numerator) / a1.denominator, mpmath.mpf(a2.numerator) / a2.denominator
        tau = mpmath.mpc(tau)
        e = lambda x: mpmath.expjpi(2 * x)  # noqa: E731
        qp = lambda x: mpmath.exp(2j * mpmath.pi * tau * x)  # noqa: E731
        b2 = a1 * a1 - a1 + mpmath.mpf(1) / 6
        v = -qp(b2 / 2) * e(a2 * (a1 - 1) / 2)
        for n in range(1, terms + 1):
            v *= (1 - qp(n - 1 + a1) * e(a2)) * (1 - qp(n - a1) * e(-a2))
        return v


def test_siegel_at_ten_i_against_direct_product():
    tau = mpmath.mpc(0, 10)
    got = siegel_g((F(1, 5), F(0)), tau, 256)
    ref = reference_g(F(1, 5), F(0), tau, 200, 512)
    assert abs(abs(got.value) - abs(ref)) < mpmath.mpf(2) ** -240 * abs(ref)


@pytest.mark.parametrize("a", [(F(1, 7), F(3, 7)), (F(5, 12), F(-1, 4)), (F(2, 3), F(1, 9))])
def test_siegel_matches_reference_product(a):
    tau = mpmath.mpc("0.13", "0.91")
    got = siegel_g(a, tau, 200)
    ref = reference_g(a[0], a[1], tau, 400, 400)
    assert abs(got.value - ref) < got.err + mpmath.mpf(2) ** -190


@pytest.mark.parametrize("a", [(F(1, 5), F(2, 5)), (F(3, 8), F(-1, 3)), (F(1, 2), F(1, 6))])
def test_siegel_oddness(a):
    tau = mpmath.mpc("-0.2", "1.3")
    g1, g2 = siegel_g(a, tau, 200), siegel_g((-a[0], -a[1]), tau, 200)
    assert abs(g1.value + g2.value) < g1.err + g2.err + mpmath.mpf(2) ** -190


@pytest.mark.parametrize("b", [(1, 0), (0, 1), (1, 1), (-1, 2), (2, -3)])
def test_siegel_integer_shift_multiplier(b):
    a = (F(2, 7), F(1, 5))
    tau = mpmath.mpc("0.3", "1.1")
    shifted = siegel_g_direct((a[0] + b[0], a[1] + b[1]), tau, 200)
    base = siegel_g_direct(a, tau, 200)
    with mpmath.workprec(240):
        k = F(b[0] * b[1] + b[0] + b[1], 1) - b[0] * a[1] + b[1] * a[0]
        mult = mpmath.expjpi(mpmath.mpf(k.numerator) / k.denominator)
        assert abs(shifted.value - mult * base.value) < mpmath.mpf(2) ** -180
    # the reduced evaluation applies the same rule internally
    assert abs(siegel_g((a[0] + b[0], a[1] + b[1]), tau, 200).value - shifted.value) < mpmath.mpf(2) ** -180


def test_j_at_elliptic_points():
    j_i = j_invariant(parse_tau("i").value(300), 256)
    assert abs(j_i.value - 1728) < mpmath.mpf(2) ** -200
    j_rho = j_invariant(parse_tau("(1+sqrt(-3))/2").value(300), 256)
    assert abs(j_rho.value) < mpmath.mpf(2) ** -200


def test_klein_form_relation():
    a, tau = (F(1, 6), F(1, 3)), mpmath.mpc("0.1", "1.2")
    t, g, h = klein_t(a, tau, 200), siegel_g(a, tau, 200), eta(tau, 200)
    with mpmath.workprec(220):
        assert abs(t.value * h.value ** 2 - g.value) < mpmath.mpf(2) ** -190


def test_eta_at_i():
    # eta(i) = Gamma(1/4) / (2 pi^(3/4))
    with mpmath.workprec(300):
        expected = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
        assert abs(eta(mpmath.mpc(0, 1), 256).value - expected) < mpmath.mpf(2) ** -250
