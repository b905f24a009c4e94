"""The acceptance grid: one function per criterion, shared by the CLI and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import macdonald
from .hl import sums
from .identities import sum_side_series, verify
from .fixtures import polynomial, value
from .qcore import pochhammer_inf, theta_series, triple_product_sum


@dataclass
class Outcome:
    number: int
    title: str
    checks: list[tuple[str, bool]] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    seconds: float = 0.0

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return ok

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({len(self.checks)} checks, {self.seconds:.1f}s)"
        if not self.passed:
            tail += "; failed: " + ", ".join(self.failures[:4])
        return f"[{status}] {self.number:2d}. {self.title}{tail}"

    def to_json(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "checks": len(self.checks), "failed": self.failures, "notes": self.notes,
                "seconds": round(self.seconds, 3)}


CRITERIA: dict[int, tuple[str, Callable[[Outcome], None]]] = {}


def criterion(number: int, title: str):
    def deco(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return deco


def run_criterion(number: int) -> Outcome:
    title, fn = CRITERIA[number]
    out = Outcome(number, title)
    t0 = time.perf_counter()
    fn(out)
    out.seconds = time.perf_counter() - t0
    return out


def _verify_all(out: Outcome, family: str, grid, order: int, branch: str = "both") -> None:
    for m, n, extra in grid:
        rep = verify(family, m, n, extra, order, branch)
        out.check(f"{family}(m={m},n={n},extra={extra})", rep.passed)


# ---------------------------------------------------------------------------
# independent oracles


def count_partitions(allowed: Callable[[int], bool], order: int) -> list[int]:
    """Number of partitions of ``k < order`` into parts satisfying ``allowed``."""
    c = [1] + [0] * (order - 1)
    for part in range(1, order):
        if allowed(part):
            for k in range(part, order):
                c[k] += c[k - part]
    return c


# ---------------------------------------------------------------------------


@criterion(1, "Classical Rogers-Ramanujan identities G and H to order 500")
def _c1(out: Outcome) -> None:
    t0 = time.perf_counter()
    for fam, res in (("G", (1, 4)), ("H", (2, 3))):
        rep = verify(fam, order=500)
        out.check(f"{fam} sum = product", rep.passed)
        lhs = sum_side_series(fam, order=500)
        oracle = count_partitions(lambda p, r=res: p % 5 in r, 500)
        out.check(f"{fam} counts partitions into parts = {res} mod 5",
                  lhs.int_coeffs(500) == oracle)
    elapsed = time.perf_counter() - t0
    out.notes["runtime_s"] = round(elapsed, 2)
    out.check("runtime below 10 s", elapsed < 10)


@criterion(2, "A2n2 identities for 1 <= m, n <= 4, both products, order 200; Dyson mod 9 to 500")
def _c2(out: Outcome) -> None:
    t0 = time.perf_counter()
    grid = [(m, n, None) for m in range(1, 5) for n in range(1, 5)]
    _verify_all(out, "A2n2_a", grid, 200)
    _verify_all(out, "A2n2_b", grid, 200)
    out.check("Dyson9 to order 500", verify("Dyson9", 2, 2, None, 500).passed)
    out.check("Dyson9 counts partitions with no part = 0 mod 9",
              sum_side_series("Dyson9", 2, 2, order=500).int_coeffs(500)
              == count_partitions(lambda p: p % 9 != 0, 500))
    elapsed = time.perf_counter() - t0
    out.notes["runtime_s"] = round(elapsed, 2)
    out.check("runtime below 10 min", elapsed < 600)


@criterion(3, "Cn1 identities for 1 <= m, n <= 4, both products, order 200; m = 1 reduction")
def _c3(out: Outcome) -> None:
    grid = [(m, n, None) for m in range(1, 5) for n in range(1, 5)]
    _verify_all(out, "Cn1", grid, 200)
    # m = 1 with n -> n - 1 against Bressoud's sum with i = 1, as the criterion states
    matches = {}
    for n in range(2, 5):
        lhs = sum_side_series("Cn1", 1, n - 1, order=200)
        out.check(f"Cn1(1,{n - 1}) = bressoud_sum({n}, i=1)", lhs.agrees(sums.bressoud_sum(n, 1, 200)))
        matches[n] = [i for i in range(1, n + 2) if lhs.agrees(sums.bressoud_sum(n, i, 200))]
    out.notes["bressoud_i_matching_Cn1_m1"] = matches


@criterion(4, "Dn1_2 identities for 1 <= m <= 4, 2 <= n <= 4, both products, order 200")
def _c4(out: Outcome) -> None:
    grid = [(m, n, None) for m in range(1, 5) for n in range(2, 5)]
    _verify_all(out, "Dn1_2", grid, 200)
    # the (1, 2) case is the modulus-6 identity with product (q^6;q^6) theta(q;q^6) / (q;q)
    rep = verify("Dn1_2", 1, 2, None, 200, "n_form")
    out.check("modulus 6 at (m, n) = (1, 2)", rep.passed and rep.params["n"] == 2)


@criterion(5, "Mixed identities for sigma in {0, 1}, 1 <= m <= 3, 1 <= n <= 4, order 150")
def _c5(out: Outcome) -> None:
    grid = [(m, n, s) for s in (0, 1) for m in range(1, 4) for n in range(1, 5)]
    _verify_all(out, "Mixed", grid, 150, "n_form")


@criterion(6, "Andrews-Gordon for m <= 4, all i, order 200; n = 1 sum sides")
def _c6(out: Outcome) -> None:
    grid = [(m, 1, i) for m in range(1, 5) for i in range(1, m + 2)]
    _verify_all(out, "AG", grid, 200, "n_form")
    for m in range(1, 5):
        for sigma, i in ((0, m + 1), (1, 1)):
            out.check(f"sum_side({m},1,{sigma}) = ag_sum({m},{i})",
                      sums.sum_side(m, 1, sigma, 200).agrees(sums.ag_sum(m, i, 200)))


@criterion(7, "Bressoud even modulus for n <= 4, i in {1, 2}, order 200")
def _c7(out: Outcome) -> None:
    extra = {}
    for n in range(1, 5):
        for i in range(1, n + 2):
            rep = verify("Bressoud", 1, n, i, 200, "n_form")
            if i <= 2:
                out.check(f"Bressoud(n={n}, i={i})", rep.passed)
            else:
                extra[f"n={n},i={i}"] = rep.status
    out.notes["other_i"] = extra


@criterion(8, "Stabilized limits: m, n <= 3, k <= m, order 100; k > m at (2, 3, 2), order 60")
def _c8(out: Outcome) -> None:
    grid = [(m, n, k) for m in range(1, 4) for n in range(1, 4) for k in range(0, m + 1)]
    _verify_all(out, "NearRect", grid, 100, "n_form")
    _verify_all(out, "An11_limit", [(m, n, None) for m in range(1, 4) for n in range(1, 4)], 100)
    out.check("NearRect(m=2,k=3,n=2)", verify("NearRect", 2, 2, 3, 60, "n_form").passed)


@criterion(9, "(2^r) sums against Hall-Littlewood evaluation, r <= 4, n <= 3, order 80")
def _c9(out: Outcome) -> None:
    for r in range(0, 5):
        for n in range(1, 4):
            for delta in (0, 1):
                lhs = sums.q2r_sum(r, n, delta, 80)
                rhs = sums.hl_geometric((2,) * r, 2 * n + delta, 80)
                out.check(f"r={r},n={n},delta={delta}", lhs.agrees(rhs))


@criterion(10, "Machinery: triple product, Watson, Rogers-Selberg, C_n Rogers-Selberg, Macdonald")
def _c10(out: Outcome) -> None:
    for sign in (1, -1):
        for a in ("1/3", "1/2", "1", "3/2", "5/2"):
            for b in ("1", "2", "5/2", "3"):
                if sign == 1 and (Fraction(a) / Fraction(b)).denominator == 1:
                    continue
                lhs = triple_product_sum(sign, a, b, 1000)
                rhs = theta_series(sign, a, b, 1000) * pochhammer_inf(1, b, b, 1000)
                out.check(f"triple product sign={sign} a={a} b={b}", lhs.agrees(rhs, 1000))
    for t in macdonald.seeded_watson_tuples():
        for nterm in range(0, 6):
            rep = macdonald.watson_check(*t, nterm)
            out.check(f"Watson {rep.params} ", rep.passed)
    for a in range(4):
        out.check(f"Rogers-Selberg a=q^{a}", macdonald.rogers_selberg_check(a, 200).passed)
    windows = {}
    for m, n in ((1, 1), (1, 2), (2, 2)):
        for x in macdonald.seeded_specializations("Cn-RS", n):
            rep = macdonald.rogers_selberg_cn_check(m, x, 80)
            out.check(f"Cn-RS m={m} x={rep.params['x']}", rep.passed)
            windows[f"Cn-RS m={m} x={rep.params['x']}"] = rep.params["windows"]
    for kind in macdonald.MACDONALD_KINDS:
        for n in (1, 2):
            if kind == "Dn1_variant" and n < 2:
                continue
            for x in macdonald.seeded_specializations(kind, n):
                rep = macdonald.macdonald_check(kind, n, x, 100)
                out.check(f"{kind} x={rep.params['x']}", rep.passed)
                windows[f"{kind} x={rep.params['x']}"] = rep.params["windows"]
    out.notes["windows"] = {k: [list(w) for w in v] for k, v in windows.items()}


# ---------------------------------------------------------------------------
# CM values


def _near(v, target, tol) -> bool:
    return abs(mpmath.mpc(v) - target) < tol


@criterion(11, "Singular values at tau = i/3 at 512 bits, minimal polynomials and units")
def _c11(out: Outcome) -> None:
    from .cm import minpoly, parse_tau, phi_cm, psi_cm, unit_flags
    tau = parse_tau("i/3")
    prec = 512
    with mpmath.workprec(prec):
        r3 = mpmath.sqrt(3)
        a = phi_cm("1a", 2, 2, tau, prec).value
        b = phi_cm("1b", 2, 2, tau, prec).value
        psi = psi_cm(1, 2, 2, tau, prec).value
        tiny = mpmath.mpf(10) ** -80
        out.notes["phi_1a"] = mpmath.nstr(a, 30)
        out.notes["phi_1b"] = mpmath.nstr(b, 30)
        out.notes["psi_1"] = mpmath.nstr(psi, 30)
        out.check("Phi_1a = 1/sqrt 3 to 1e-100", _near(a, 1 / r3, mpmath.mpf(10) ** -100))
        out.check(f"Phi_1b = {value('phi_1b_2_2_at_i_over_3')}...",
                  _near(b, mpmath.mpf(value("phi_1b_2_2_at_i_over_3")), mpmath.mpf(1e-6)))
        out.check(f"Psi_1 = {value('psi_1_2_2_at_i_over_3')}...",
                  _near(psi, mpmath.mpf(value("psi_1_2_2_at_i_over_3")), mpmath.mpf(1e-5)))
        cases = [
            ("Phi_1b", lambda p: phi_cm("1b", 2, 2, tau, p).value, "phi_1b_2_2_at_i_over_3"),
            ("sqrt3*Phi_1a", lambda p: mpmath.sqrt(3) * phi_cm("1a", 2, 2, tau, p).value,
             "sqrt3_phi_1a_2_2_at_i_over_3"),
            ("sqrt3*Phi_1b", lambda p: mpmath.sqrt(3) * phi_cm("1b", 2, 2, tau, p).value,
             "sqrt3_phi_1b_2_2_at_i_over_3"),
            ("Psi_1", lambda p: psi_cm(1, 2, 2, tau, p).value, "psi_1_2_2_at_i_over_3"),
        ]
        values = {"Phi_1b": b, "sqrt3*Phi_1a": r3 * a, "sqrt3*Phi_1b": r3 * b, "Psi_1": psi}
        for name, fn, key in cases:
            expected = polynomial(key)
            found = minpoly(fn, 18)
            out.notes[f"minpoly {name}"] = str(found)
            out.check(f"minpoly {name}", found == expected)
            out.check(f"residual {name}", abs(expected(values[name])) < tiny)
        flags = unit_flags(polynomial("psi_1_2_2_at_i_over_3"))
        out.check("Psi_1 is a unit", flags["unit"])


@criterion(12, "Galois orbits at theta = 3i, kappa = 9: orbit polynomials, W and the class group")
def _c12(out: Outcome) -> None:
    from .cm import (beta_matrix, orbit_multiset, orbit_poly, parse_tau,
                     phi_siegel_product, reduced_forms, w_group)
    theta = parse_tau("3i")
    out.check("|W_{9,3i}| = 27", len(w_group(9, theta)) == 27)
    forms = reduced_forms(theta.D)
    out.check("two reduced forms of discriminant -36", len(forms) == 2)
    out.check("beta_{Q2} = (2 1; 0 1)", beta_matrix(forms[1], 9) == ((2, 1), (0, 1)))
    expected = {star: polynomial(f"orbit_phi_{star}_2_2_cubed_at_3i") for star in ("1a", "1b")}
    for star in ("1a", "1b"):
        _, F = phi_siegel_product(star, 2, 2)
        vals = orbit_multiset(F ** 3, theta, 9, prec=512)
        out.check(f"Phi_{star}^3 multiset has 54 values", len(vals) == 54)
        p = orbit_poly(vals, 512)
        out.notes[f"orbit_poly Phi_{star}^3"] = " * ".join(f"({f})^{e}" for f, e in p.factor())
        out.check(f"orbit polynomial of Phi_{star}^3", p == expected[star])


@criterion(13, "Example at tau = sqrt(-1/3): values, 24th-power polynomials, ratio")
def _c13(out: Outcome) -> None:
    from .cm import IntPoly, minpoly, parse_tau, phi_cm, unit_flags
    tau = parse_tau("sqrt(-1/3)")
    prec = 512
    with mpmath.workprec(prec):
        p2 = phi_cm("2", 1, 1, tau, prec).value
        p3 = phi_cm("3", 1, 2, tau, prec).value
        for name, v, key in (("Phi_2(1,1)", p2, "phi_2_1_1_at_sqrt_minus_third"),
                             ("Phi_3(1,2)", p3, "phi_3_1_2_at_sqrt_minus_third")):
            out.check(f"{name} = {value(key)}...", _near(v, mpmath.mpf(value(key)), mpmath.mpf(1e-6)))
        targets = [("Phi_2^24", "2", 1, 1, polynomial("phi_2_1_1_at_sqrt_minus_third")),
                   ("Phi_3^24", "3", 1, 2, polynomial("phi_3_1_2_at_sqrt_minus_third"))]
        for name, star, m, n, full in targets:
            # the published polynomial is a polynomial in x^24
            target = IntPoly(full.coeffs[::24])
            got = minpoly(lambda wp, s=star, m=m, n=n: phi_cm(s, m, n, tau, wp).value ** 24, 2)
            out.check(f"minpoly {name}", got == target)
            out.check(f"{name[:-3]} is a root of the degree-48 polynomial",
                      abs(full(p2 if star == "2" else p3)) < mpmath.mpf(10) ** -80)
        ratio = minpoly(lambda wp: phi_cm("2", 1, 1, tau, wp).value / phi_cm("3", 1, 2, tau, wp).value, 4)
        key = "ratio_phi_2_phi_3_at_sqrt_minus_third"
        out.check(f"ratio = {value(key)}...", _near(p2 / p3, mpmath.mpf(value(key)), mpmath.mpf(1e-6)))
        out.check("ratio minpoly x^4-6x^2-3", ratio == polynomial(key))
        out.check("ratio is not a unit", not unit_flags(ratio)["unit"])


@criterion(14, "First letter value 1/Psi_1(1,1; i) and the shared polynomial of the Phi values")
def _c14(out: Outcome) -> None:
    from .cm import first_letter_check, minpoly, parse_tau, phi_cm
    rep = first_letter_check(256)
    out.notes.update({k: rep[k] for k in ("closed_form", "max_error", "minpoly")})
    out.check("three routes agree, closed form to 1e-50, quartic", rep["status"] == "pass")
    tau = parse_tau("i")
    target = polynomial("phi_1_1_1_at_i")
    for star in ("1a", "1b"):
        got = minpoly(lambda wp, s=star: phi_cm(s, 1, 1, tau, wp).value, 16)
        out.check(f"minpoly Phi_{star}(1,1;i)", got == target)


@criterion(15, "Property suites on seeded samples")
def _c15(out: Outcome) -> None:
    from . import properties
    for name, ok in properties.run_all(random.Random(20240611)):
        out.check(name, ok)


def run(numbers=None) -> list[Outcome]:
    return [run_criterion(k) for k in (numbers or sorted(CRITERIA))]
