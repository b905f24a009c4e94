"""Structural invariants checked on seeded samples; each returns ``(name, ok)`` pairs."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

import mpmath

from .hl import sums
from .hl.core import hl_branching
from .hl.partitions import conjugate, double, partitions_of
from .identities import TWO_BRANCH, product_side
from .qcore import (QSeries, geometric_xspec, poch_finite, pochhammer_inf, theta_series,
                    triple_product_sum)

Check = Iterator[tuple[str, bool]]


def random_series(rng: random.Random, order: int = 30, scale: int = 1) -> QSeries:
    coeffs = [Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3))) for _ in range(order * scale)]
    coeffs[0] = Fraction(rng.choice((1, -1, 2)))
    return QSeries.from_coeffs(coeffs, 0, scale, order)


def ring_laws(rng: random.Random, trials: int = 5) -> Check:
    for _ in range(trials):
        a, b, c = (random_series(rng) for _ in range(3))
        yield "addition associates", ((a + b) + c).agrees(a + (b + c))
        yield "multiplication commutes", (a * b).agrees(b * a)
        yield "distributive law", (a * (b + c)).agrees(a * b + a * c)
        yield "inverse", (a * a.inv()).agrees(QSeries.one(30))


def triple_product(rng: random.Random, trials: int = 6) -> Check:
    for _ in range(trials):
        b = Fraction(rng.randint(1, 6), rng.choice((1, 2)))
        a = Fraction(rng.randint(1, 12), 4)
        sign = rng.choice((1, -1))
        if sign == 1 and (a / b).denominator == 1:
            continue
        lhs = triple_product_sum(sign, a, b, 200)
        rhs = theta_series(sign, a, b, 200) * pochhammer_inf(1, b, b, 200)
        yield f"triple product ({sign}, {a}, {b})", lhs.agrees(rhs)


def theta_symmetry(rng: random.Random, trials: int = 6) -> Check:
    for _ in range(trials):
        b = Fraction(rng.randint(2, 7))
        a = Fraction(rng.randint(1, int(b) * 3 - 1), 3)
        if a >= b or (a / b).denominator == 1:
            continue
        t1 = theta_series(1, a, b, 150)
        yield f"theta(q^{a}) = theta(q^{b - a})", t1.agrees(theta_series(1, b - a, b, 150))
        # theta(p x; p) = -x^-1 theta(x; p) with x = q^a, p = q^b
        # from the raw products: (q^(a+b); q^b) (q^-a; q^b)
        lhs = (pochhammer_inf(1, a + b, b, 150) * poch_finite(1, -a, b, 1)
               * pochhammer_inf(1, b - a, b, 150))
        rhs = -theta_series(1, a, b, 150).shift(-a)
        yield f"theta quasi-period at q^{a}", lhs.agrees(rhs, 150 - a)


def geometric_specialization(rng: random.Random) -> Check:
    # P_lambda(1, q, ...; q^n) against the branching rule in N + 1 variables
    N = 14
    for lam in [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1)]:
        for n in (1, 2, 3):
            direct = sums.hl_geometric(lam, n, N)
            branch = hl_branching(lam, geometric_xspec(N + 1), n, N)
            yield f"P{lam} at q^{n}", direct.agrees(branch, N)


def specialization_formula(rng: random.Random) -> Check:
    for size in range(0, 9):
        for lam in partitions_of(size):
            for sigma in (0, 1):
                r = list(conjugate(lam)) + [0]
                lhs = sums.hl_geometric(double(lam), 1, 60).shift((sigma + 1) * sum(lam))
                rhs = QSeries.one(60)
                for i in range(len(r) - 1):
                    rhs = rhs.shift(r[i] * (r[i] + sigma)).div(poch_finite(1, 1, 1, r[i] - r[i + 1]), 60)
                yield f"specialization lambda={lam} sigma={sigma}", lhs.agrees(rhs, 60)


def chain_vs_lambda(rng: random.Random) -> Check:
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            sigma = rng.choice((0, 1))
            a = sums.sum_side(m, n, sigma, 40, route="chain")
            b = sums.sum_side(m, n, sigma, 40, route="lambda")
            yield f"chain = lambda route m={m} n={n} sigma={sigma}", a.agrees(b)


def level_rank(rng: random.Random) -> Check:
    for family in TWO_BRANCH:
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                if family == "Dn1_2" and n < 2:
                    continue
                a = product_side(family, m, n, None, "n_form").expand(80)
                b = product_side(family, m, n, None, "m_form").expand(80)
                yield f"{family} product forms agree at m={m} n={n}", a.agrees(b)


def membership(rng: random.Random) -> Check:
    from .cm import SiegelProduct, SiegelTerm, fn_membership, phi_siegel_product
    for star in ("1a", "1b"):
        _, F = phi_siegel_product(star, 2, 2)
        yield f"Phi_{star}(2,2)^3 in F_9", fn_membership(F ** 3, 9)
    single = SiegelProduct((SiegelTerm((Fraction(1, 5), Fraction(0)), 1, 1),))
    yield "g_(1/5,0) not in F_5", not fn_membership(single, 5)
    for _ in range(4):
        N = rng.randint(2, 12)
        a = (Fraction(rng.randint(0, N - 1), N), Fraction(rng.randint(1, N - 1), N))
        g = SiegelProduct((SiegelTerm(a, 1, 1),), 1, 12 * N)
        yield f"g_{a}^(12N) in F_{N}", fn_membership(g, N)


def siegel_oddness(rng: random.Random, trials: int = 5) -> Check:
    from .cm.numeric import siegel_g
    for _ in range(trials):
        a = (Fraction(rng.randint(1, 11), 12), Fraction(rng.randint(-11, 11), 12))
        tau = mpmath.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))
        g1 = siegel_g(a, tau, 128)
        g2 = siegel_g((-a[0], -a[1]), tau, 128)
        yield f"g_-a = -g_a at a={a}", abs(g1.value + g2.value) <= g1.err + g2.err + mpmath.mpf(2) ** -120


def three_way_agreement(rng: random.Random) -> Check:
    from .cm import parse_tau, phi_cm, three_way
    for star, m, n, t in (("1a", 1, 1, "i"), ("1b", 2, 1, "i/2"), ("2", 1, 2, "sqrt(-1/3)"),
                          ("3", 2, 2, "i/3")):
        res = three_way(phi_cm, star, m, n, parse_tau(t), prec=128, order=250)
        yield f"three-way Phi_{star}({m},{n};{t})", res.agree


def doubling(rng: random.Random) -> Check:
    from . import macdonald
    from .cm.numeric import siegel_g
    for kind in macdonald.MACDONALD_KINDS:
        x = macdonald.seeded_specializations(kind, 2)[0]
        lhs, _ = macdonald.macdonald_sum(kind, x).evaluate_checked(40)
        yield f"{kind} window doubling", not lhs.is_zero
    a = (Fraction(1, 7), Fraction(2, 7))
    lo = siegel_g(a, mpmath.mpc(0.1, 1.1), 128)
    with mpmath.workprec(300):
        hi = siegel_g(a, mpmath.mpc(0.1, 1.1), 256)
        yield "Siegel truncation doubling", abs(lo.value - hi.value) <= lo.err + hi.err


SUITES = (ring_laws, triple_product, theta_symmetry, geometric_specialization,
          specialization_formula, chain_vs_lambda, level_rank, membership, siegel_oddness,
          three_way_agreement, doubling)


def run_all(rng: random.Random) -> list[tuple[str, bool]]:
    return [res for suite in SUITES for res in suite(rng)]
