import math
from fractions import Fraction as F
from itertools import product

import pytest

from rrlab.cm import (CMPoint, QuadForm, beta_matrix, canonical_tau, parse_tau, reduced_forms,
                      tau_of_form, w_group)
from rrlab.cm.forms import lift_sl2, mat_det
from rrlab.errors import NotADiscriminant, NotUpperHalfPlane, UsageError


def brute_force_forms(D: int) -> set[tuple[int, int, int]]:
    out = set()
    for a in range(1, D + 1):
        for b in range(-a, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or math.gcd(a, b, c) != 1:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            out.add((a, b, c))
    return out


def as_tuples(forms) -> set[tuple[int, int, int]]:
    return {(f.a, f.b, f.c) for f in forms}


def test_class_group_of_discriminant_minus_36():
    assert as_tuples(reduced_forms(36)) == {(1, 0, 9), (2, 2, 5)}


@pytest.mark.parametrize("D", [3, 4, 15, 20, 23, 36, 56, 71, 84, 104])
def test_reduced_forms_against_enumeration(D):
    assert as_tuples(reduced_forms(D)) == brute_force_forms(D)


def test_small_discriminants():
    assert as_tuples(reduced_forms(4)) == {(1, 0, 1)}
    assert as_tuples(reduced_forms(3)) == {(1, 1, 1)}
    with pytest.raises(NotADiscriminant):
        reduced_forms(5)


def test_canonical_points():
    assert canonical_tau(36) == parse_tau("3i")
    assert canonical_tau(3) == parse_tau("(1+sqrt(-3))/2")
    assert tau_of_form(QuadForm(2, 2, 5)) == parse_tau("(-1+3i)/2")


def test_discriminant_and_d0():
    theta = parse_tau("3i")
    assert (theta.D, theta.D0) == (36, 9)
    assert canonical_tau(3).D0 == (-3 - 1) // 4


@pytest.mark.parametrize("text, abc", [("i/3", (9, 0, 1)), ("sqrt(-1/3)", (3, 0, 1)),
                                        ("(-1+3i)/2", (2, 2, 5)), ("i", (1, 0, 1)),
                                        ("form:2,2,5", (2, 2, 5)), ("2+i", (1, -4, 5))])
def test_parse_tau(text, abc):
    tau = parse_tau(text)
    assert (tau.A, tau.B, tau.C) == abc


def test_parse_tau_errors():
    with pytest.raises(NotUpperHalfPlane):
        parse_tau("sqrt(3)")
    with pytest.raises(NotUpperHalfPlane):
        parse_tau("-i")
    with pytest.raises(UsageError):
        parse_tau("banana")
    assert parse_tau("0.1+1.5j") == complex(0.1, 1.5)


def test_scaling():
    assert parse_tau("i/3").scaled(9) == parse_tau("3i")
    assert CMPoint.from_parts(F(1, 2), F(3, 4)).scaled(2) == parse_tau("1+sqrt(-3)")


def test_beta_matrices():
    q1, q2 = sorted(reduced_forms(36), key=lambda f: f.a)
    assert beta_matrix(q1, 9) == ((1, 0), (0, 1))
    assert beta_matrix(q2, 9) == ((2, 1), (0, 1))


@pytest.mark.parametrize("D, N", [(36, 9), (20, 15), (56, 7), (84, 12), (23, 10)])
def test_beta_matrices_are_invertible(D, N):
    for f in reduced_forms(D):
        assert math.gcd(mat_det(beta_matrix(f, N), N), N) == 1


def test_w_group_sizes():
    theta = parse_tau("3i")
    W = w_group(9, theta)
    assert len(W) == 27
    assert ((1, 0), (0, 1)) in W
    # the elements are (t, -9s; s, t) reduced mod 9, i.e. (t, 0; s, t)
    assert all(M[0][1] == 0 and M[0][0] == M[1][1] for M in W)


def test_w_group_level_two_at_i():
    seen = set()
    for t, s in product(range(2), repeat=2):
        M = ((t, -s % 2), (s, t))
        if (t * t + s * s) % 2:
            seen.add(M)
    assert set(w_group(2, parse_tau("i"))) == seen


def test_sl2_lift():
    L = lift_sl2(((2, 0), (0, 5)), 9)
    assert L[0][0] * L[1][1] - L[0][1] * L[1][0] == 1
    assert all((L[i][j] - ((2, 0), (0, 5))[i][j]) % 9 == 0 for i in range(2) for j in range(2))
