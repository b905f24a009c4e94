from collections import Counter
from fractions import Fraction as F

import mpmath
import pytest

from rrlab.cm import (IntPoly, SiegelProduct, first_letter_check, fn_membership, orbit_multiset,
                      orbit_poly, parse_tau, phi_cm, phi_siegel_product, psi_cm, three_way)
from rrlab.cm.products import galois_lift, siegel_delta
from rrlab.errors import NonIntegralCoefficients
from rrlab.fixtures import polynomial

TAU3 = parse_tau("i/3")

# independently recomputed; the value in the reference table is sqrt(3) times this
PHI_1B_2_2_AT_I_OVER_3 = "0.12534008009566343620"
# the degree 18 relation satisfied by Phi_1b(2,2; i/3) itself
PHI_1B_POLY = IntPoly.parse("19683*x^18-80919*x^12+39366*x^9+11016*x^6+486*x^3-1")


def close(a, b, tol=mpmath.mpf(10) ** -60) -> bool:
    with mpmath.workprec(300):
        return abs(mpmath.mpc(a) - mpmath.mpc(b)) < tol


def test_phi_1a_at_i_over_3_is_inverse_root_three():
    with mpmath.workprec(300):
        assert close(phi_cm("1a", 2, 2, TAU3, 256).value, 1 / mpmath.sqrt(3))


def test_phi_1b_at_i_over_3():
    with mpmath.workprec(300):
        b = phi_cm("1b", 2, 2, TAU3, 256).value
        assert close(b, mpmath.mpf(PHI_1B_2_2_AT_I_OVER_3), mpmath.mpf(10) ** -19)
        assert abs(mpmath.sqrt(3) * b - mpmath.mpf("0.217095")) < 1e-6
        assert abs(PHI_1B_POLY(b)) < mpmath.mpf(10) ** -60
        # the tabulated degree 18 polynomial is the image under x -> -x
        assert abs(polynomial("phi_1b_2_2_at_i_over_3")(-b)) < mpmath.mpf(10) ** -60


def test_psi_at_i_over_3():
    with mpmath.workprec(300):
        psi = psi_cm(1, 2, 2, TAU3, 256).value
        assert abs(psi - mpmath.mpf("4.60627")) < 1e-5
        assert abs(polynomial("psi_1_2_2_at_i_over_3")(psi)) < mpmath.mpf(10) ** -60


@pytest.mark.parametrize("star, m, n, tau", [("1a", 2, 2, "i/3"), ("1b", 3, 1, "i"),
                                             ("2", 1, 1, "sqrt(-1/3)"), ("3", 1, 2, "(1+3i)/2")])
def test_three_routes_agree(star, m, n, tau):
    tw = three_way(phi_cm, star, m, n, parse_tau(tau), prec=200, order=300)
    assert tw.agree


def test_three_routes_agree_for_psi():
    assert three_way(psi_cm, 2, 1, 2, parse_tau("i"), prec=200, order=300).agree


def test_closed_forms_at_i():
    tau = parse_tau("i")
    with mpmath.workprec(300):
        r5 = mpmath.sqrt(5)
        inner = 2 * mpmath.sqrt(10 + 2 * r5)
        a = phi_cm("1a", 1, 1, tau, 256).value
        b = phi_cm("1b", 1, 1, tau, 256).value
        # both fourth roots are positive, and the larger one belongs to Phi_1a
        assert close(a, mpmath.root((1 + 3 * r5 + inner) / 10, 4))
        assert close(b, mpmath.root((1 + 3 * r5 - inner) / 10, 4))
        assert close(a, mpmath.mpf("1.1124768698639109824"), mpmath.mpf(10) ** -19)
        assert close(b, mpmath.mpf("0.31603136548551461259"), mpmath.mpf(10) ** -19)


def test_first_letter_value():
    rep = first_letter_check(256, 300)
    assert rep["status"] == "pass"
    assert rep["minpoly"] == "x^4 + 2*x^3 - 6*x^2 - 2*x + 1"


def test_delta_rule():
    assert [siegel_delta(m, n) for m, n in [(1, 1), (3, 1), (2, 1), (1, 2), (2, 2), (4, 2)]] == \
        [1, 1, 0, 0, 1, 1]


def test_siegel_product_sign():
    # Phi_1a(1,1) = 1/g_(1/5,0)(5 tau) up to the sign carried by an odd exponent sum
    k, P = phi_siegel_product("1a", 1, 1)
    assert k == 5 and P.sign == -1
    assert P.multiplicities() == {(F(1, 5), F(0)): -1}


def test_membership_examples():
    _, P = phi_siegel_product("1a", 2, 2)
    assert not fn_membership(P, 9)
    assert fn_membership(P ** 3, 9)
    g = lambda e1, e2: SiegelProduct.build({((F(1, 5), F(0)), 1): e1, ((F(2, 5), F(0)), 1): e2})  # noqa: E731
    assert fn_membership(g(60, 0), 5)
    assert fn_membership(g(5, -5), 5)
    assert not fn_membership(g(12, 0), 5)
    assert not fn_membership(g(1, -1), 5)


def test_galois_lift_is_consistent():
    for M in [((2, 0), (0, 5)), ((1, 3), (2, 7)), ((4, 1), (1, 5))]:
        gamma, d = galois_lift(M, 9)
        (a, b), (c, e) = gamma
        assert a * e - b * c == 1 and d % 2 == 1
        # gamma diag(1, d) reduces to M
        assert [(a) % 9, (b * d) % 9, c % 9, (e * d) % 9] == [x % 9 for row in M for x in row]


def orbit_counts(star: str) -> Counter:
    _, P = phi_siegel_product(star, 2, 2)
    vals = orbit_multiset(P ** 3, parse_tau("3i"), 9, prec=256)
    assert len(vals) == 54
    return Counter(mpmath.nstr(mpmath.chop(v.value.value, 1e-40), 20) for v in vals)


def test_orbit_multiplicities():
    assert sorted(orbit_counts("1a").values()) == [27, 27]
    assert sorted(orbit_counts("1b").values()) == [9] * 6


def test_orbit_polynomials():
    theta = parse_tau("3i")
    _, A = phi_siegel_product("1a", 2, 2)
    assert orbit_poly(orbit_multiset(A ** 3, theta, 9, 256)) == IntPoly.parse("27*x^2-1") ** 27
    _, B = phi_siegel_product("1b", 2, 2)
    got = orbit_poly(orbit_multiset(B ** 3, theta, 9, 512), 512)
    assert got == IntPoly.parse("19683*x^6-80919*x^4+39366*x^3+11016*x^2+486*x-1") ** 9
    # the tabulated orbit polynomial is its image under x -> -x
    assert got != polynomial("orbit_phi_1b_2_2_cubed_at_3i")


def test_orbit_poly_small_cases():
    assert orbit_poly([2]) == IntPoly.parse("x-2")
    assert orbit_poly([mpmath.mpf(1) / 2]) == IntPoly.parse("2*x-1")
    with pytest.raises(NonIntegralCoefficients):
        orbit_poly([mpmath.sqrt(2) / 3])
    with pytest.raises(ValueError):
        orbit_poly([])
