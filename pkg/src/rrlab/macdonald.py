"""Specialised checks of the Weyl denominator, Macdonald, Rogers-Selberg and Watson identities.

Every identity is tested at x-variables specialised to signed powers of q.
Lattice sums over ``r in Z^n`` are truncated to windows outside which every
summand provably has q-exponent at least the target order, and each window is
cross-checked by doubling it.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from .errors import DegenerateSpecialization, PrecisionFailure
from .hl.core import b_lambda, hl_modified_q_truncated
from .hl.partitions import double, partitions_in_box
from .identities import VerificationReport, compare
from .qcore import (QPower, QSeries, XSpec, as_qexp, binomial_factor, poch_finite,
                    pochhammer_inf, theta_series, xspec)

MACDONALD_KINDS = ("Dn1_2", "Bn1_variant", "Dn1_variant")

# A monomial s * q^(c + u.r) in the lattice index r.
Mono = tuple[int, Fraction, tuple[int, ...]]


def _mono_series(m: Mono, r: Sequence[int]) -> QSeries:
    s, c, u = m
    return QSeries.monomial(c + sum(ui * ri for ui, ri in zip(u, r)), s)


def _unit(n: int, i: int, k: int = 1) -> tuple[int, ...]:
    return tuple(k if j == i else 0 for j in range(n))


def _add(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Weyl denominators


def _weyl_factors(kind: str, x: XSpec, shifted: bool = True) -> list[tuple[Mono, Mono]]:
    """Binomial factors of the Weyl denominator in the variables ``x_i q^(r_i)``."""
    n = len(x)
    zero = (0,) * n
    out: list[tuple[Mono, Mono]] = []

    def var(i: int, k: int = 1) -> Mono:
        p = x[i] ** k
        return (p.sign, p.exp, _unit(n, i, k) if shifted else zero)

    one: Mono = (1, Fraction(0), zero)
    for i in range(n):
        if kind == "C":
            s, c, u = var(i, 2)
            out.append((one, (-s, c, u)))
        elif kind == "B":
            s, c, u = var(i)
            out.append((one, (-s, c, u)))
        elif kind != "D":
            raise ValueError(f"unknown Weyl denominator kind {kind!r}")
    for i in range(n):
        for j in range(i + 1, n):
            si, ci, ui = var(i)
            sj, cj, uj = var(j)
            out.append(((si, ci, ui), (-sj, cj, uj)))
            out.append(((si * sj, ci + cj, _add(ui, uj)), (-1, Fraction(0), zero)))
    return out


def _binomial_value(f: tuple[Mono, Mono], r: Sequence[int]) -> QSeries:
    return _mono_series(f[0], r) + _mono_series(f[1], r)


def weyl_denominator(kind: str, x: XSpec, order_q=None) -> QSeries:
    """``Delta_C``, ``Delta_B`` or ``Delta_D`` at the specialisation ``x`` (exact unless truncated)."""
    x = xspec(*x)
    r = (0,) * len(x)
    res = QSeries.one()
    for f in _weyl_factors(kind, x):
        v = _binomial_value(f, r)
        if v.is_zero:
            raise DegenerateSpecialization(f"a factor of Delta_{kind} vanishes at {_fmt(x)}")
        res = res * v
    return res if order_q is None else res.truncate(order_q)


def weyl_determinant(kind: str, x: XSpec) -> QSeries:
    """The determinant form of ``Delta_C``, ``Delta_B`` or ``Delta_D``.

    C: ``det(x_i^(j-1) - x_i^(2n-j+1))``; B: ``det(x_i^(j-1) - x_i^(2n-j))``;
    D: ``det(x_i^(j-1) + x_i^(2n-j-1)) / 2``.
    """
    x = xspec(*x)
    n = len(x)
    xs = [p.series() for p in x]

    def entry(i: int, j: int) -> QSeries:
        # j is 1-based
        if kind == "C":
            return xs[i] ** (j - 1) - xs[i] ** (2 * n - j + 1)
        if kind == "B":
            return xs[i] ** (j - 1) - xs[i] ** (2 * n - j)
        if kind == "D":
            lo, hi = j - 1, 2 * n - j - 1
            return _signed_power(x[i], lo) + _signed_power(x[i], hi)
        raise ValueError(f"unknown Weyl denominator kind {kind!r}")

    M = [[entry(i, j) for j in range(1, n + 1)] for i in range(n)]
    det = QSeries.zero()
    for w in permutations(range(n)):
        term = QSeries.monomial(0, _perm_sign(w))
        for i in range(n):
            term = term * M[i][w[i]]
        det = det + term
    return det * Fraction(1, 2) if kind == "D" else det


def _signed_power(p: QPower, k: int) -> QSeries:
    q = p ** k if k >= 0 else QPower(-p.exp, p.sign) ** (-k)
    return q.series()


def _perm_sign(w: Sequence[int]) -> int:
    sign = 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# lattice sums


@dataclass(frozen=True)
class LatticeSum:
    """``sum_r sign(r) q^E(r) prod_f f(r) * extra(r)`` over ``Z^n`` or ``Z_+^n``.

    ``E(r) = const + sum_i (quad_i r_i^2 + lin_i r_i)``; each ``f`` is a binomial
    ``s1 q^(c1 + u1.r) + s2 q^(c2 + u2.r)``.  ``extra(r, order)`` returns a series
    whose valuation is at least ``extra_floor``.
    """

    quad: tuple[Fraction, ...]
    lin: tuple[Fraction, ...]
    const: Fraction
    binomials: tuple[tuple[Mono, Mono], ...]
    sign: Callable[[Sequence[int]], int]
    nonnegative: bool = False
    extra: Callable[[Sequence[int], Fraction], QSeries] | None = None
    extra_floor: Fraction = Fraction(0)

    @property
    def n(self) -> int:
        return len(self.quad)

    def _slopes(self) -> tuple[list[Fraction], Fraction]:
        # min(c1 + u1.r, c2 + u2.r) >= min(c1, c2) - sum_i max(|u1_i|, |u2_i|) |r_i|
        K = [Fraction(0)] * self.n
        C0 = self.const + self.extra_floor
        for (_, c1, u1), (_, c2, u2) in self.binomials:
            C0 += min(c1, c2)
            for i in range(self.n):
                K[i] += max(abs(u1[i]), abs(u2[i]))
        return K, C0

    def windows(self, order: Fraction) -> list[tuple[int, int]]:
        """Per-coordinate ranges outside which every summand is ``O(q^order)``."""
        K, C0 = self._slopes()
        if any(a <= 0 for a in self.quad):
            raise ValueError("lattice sum needs positive quadratic growth in every index")

        def g(i: int, r: int) -> Fraction:
            return self.quad[i] * r * r + self.lin[i] * r - K[i] * abs(r)

        def argmin(i: int) -> int:
            lo = 0 if self.nonnegative else None
            # vertex of the convex piecewise quadratic
            cands = {0}
            for s in (1, -1):
                v = -(self.lin[i] - s * K[i]) / (2 * self.quad[i])
                cands |= {math.floor(v), math.ceil(v)}
            cands = {c for c in cands if lo is None or c >= lo}
            return min(cands, key=lambda r: g(i, r))

        mins = [g(i, argmin(i)) for i in range(self.n)]
        total_min = sum(mins)
        out = []
        for i in range(self.n):
            budget = order - C0 - (total_min - mins[i])
            c = argmin(i)
            hi = c
            while g(i, hi + 1) < budget:
                hi += 1
            lo = c
            while (not self.nonnegative or lo - 1 >= 0) and g(i, lo - 1) < budget:
                lo -= 1
            out.append((lo, hi))
        return out

    def term(self, r: Sequence[int], order: Fraction) -> QSeries:
        e = self.const + sum(a * ri * ri + b * ri for a, b, ri in zip(self.quad, self.lin, r))
        acc = QSeries.monomial(e, self.sign(r))
        for f in self.binomials:
            v = _binomial_value(f, r)
            if v.is_zero:
                return QSeries.zero(order)
            acc = acc * v
        if self.extra is not None:
            if acc.valuation + self.extra_floor >= order:
                return QSeries.zero(order)
            acc = (acc * self.extra(r, order - acc.valuation)).truncate(order)
        return acc

    def evaluate(self, order, windows: list[tuple[int, int]] | None = None) -> QSeries:
        order = as_qexp(order)
        windows = self.windows(order) if windows is None else windows
        total = QSeries.zero(order)
        for r in product(*(range(lo, hi + 1) for lo, hi in windows)):
            t = self.term(r, order)
            if not t.is_zero:
                total = total + t
        return total

    def evaluate_checked(self, order) -> tuple[QSeries, list[tuple[int, int]]]:
        """Evaluate, then confirm that doubling every window changes nothing below ``order``."""
        order = as_qexp(order)
        w = self.windows(order)
        base = self.evaluate(order, w)
        wide = []
        for lo, hi in w:
            span = hi - lo + 1
            wide.append((max(lo - span, 0) if self.nonnegative else lo - span, hi + span))
        check = self.evaluate(order, wide)
        if not base.agrees(check, order):
            raise PrecisionFailure(f"lattice window {w} is not wide enough")
        return base, w


def _x_parts(x: XSpec) -> tuple[list[int], list[Fraction]]:
    return [p.sign for p in x], [p.exp for p in x]


def macdonald_sum(kind: str, x: XSpec) -> LatticeSum:
    """The lattice side of one of the three Macdonald identity variants."""
    n = len(x)
    s, a = _x_parts(x)
    if kind == "Dn1_2":
        # Delta_B(xq^r) prod x_i^(2n r_i - i + 1) q^(2n C(r_i,2) + r_i/2)
        k, weyl, alt, half = 2 * n, "B", False, Fraction(1, 2)
    elif kind == "Bn1_variant":
        # Delta_B(xq^r) prod (-1)^r_i x_i^((2n-1) r_i - i + 1) q^((2n-1) C(r_i,2))
        k, weyl, alt, half = 2 * n - 1, "B", True, Fraction(0)
    elif kind == "Dn1_variant":
        # Delta_D(xq^r) prod x_i^(2(n-1) r_i - i + 1) q^(2(n-1) C(r_i,2))
        if n < 2:
            raise ValueError("the D_n variant needs n >= 2")
        k, weyl, alt, half = 2 * (n - 1), "D", False, Fraction(0)
    else:
        raise ValueError(f"unknown Macdonald variant {kind!r}")
    quad = tuple(Fraction(k, 2) for _ in range(n))
    lin = tuple(k * a[i] - Fraction(k, 2) + half for i in range(n))
    const = sum(-i * a[i] for i in range(n))

    def sign(r: Sequence[int]) -> int:
        sg = 1
        for i in range(n):
            e = k * r[i] - i
            if s[i] < 0 and e % 2:
                sg = -sg
            if alt and r[i] % 2:
                sg = -sg
        return sg

    return LatticeSum(quad, lin, const, tuple(_weyl_factors(weyl, x)), sign)


def macdonald_product(kind: str, x: XSpec, order) -> QSeries:
    """The product side of one of the three Macdonald identity variants."""
    n = len(x)
    s, a = _x_parts(x)
    order = as_qexp(order)
    res = QSeries.one(order)
    if kind == "Dn1_2":
        res = res * pochhammer_inf(1, Fraction(1, 2), Fraction(1, 2), order)
        res = res * pochhammer_inf(1, 1, 1, order, n - 1)
        for i in range(n):
            res = res * theta_series(s[i], a[i], Fraction(1, 2), order)
    elif kind in ("Bn1_variant", "Dn1_variant"):
        res = res * pochhammer_inf(1, 1, 1, order, n) * 2
        if kind == "Bn1_variant":
            for i in range(n):
                res = res * theta_series(s[i], a[i], 1, order)
    else:
        raise ValueError(f"unknown Macdonald variant {kind!r}")
    for i in range(n):
        for j in range(i + 1, n):
            res = res * theta_series(s[i] * s[j], a[i] - a[j], 1, order)
            res = res * theta_series(s[i] * s[j], a[i] + a[j], 1, order)
    return res


def _report(name: str, params: dict, order, lhs: QSeries, rhs: QSeries, t0: float,
            **extra) -> VerificationReport:
    mismatch = compare(lhs, rhs, order)
    timings = {"total_s": time.perf_counter() - t0}
    rep = VerificationReport(name, params, int(order) if Fraction(order).denominator == 1 else str(order),
                             "pass" if mismatch is None else "fail", mismatch, timings)
    if extra:
        rep.params.update(extra)
    return rep


def _fmt(x: XSpec) -> list[str]:
    return [str(p) for p in x]


def macdonald_check(kind: str, n: int, x: XSpec, order) -> VerificationReport:
    """Compare the windowed lattice sum with the product side at ``x``."""
    t0 = time.perf_counter()
    x = xspec(*x)
    if len(x) != n:
        raise ValueError(f"expected {n} variables, got {len(x)}")
    if n > 3:
        raise ValueError("lattice sums are limited to n <= 3")
    weyl_denominator("D" if kind == "Dn1_variant" else "B", x)
    lhs, windows = macdonald_sum(kind, x).evaluate_checked(order)
    rhs = macdonald_product(kind, x, order)
    return _report(kind, {"n": n, "x": _fmt(x)}, order, lhs, rhs, t0, windows=windows)


# ---------------------------------------------------------------------------
# level-m C_n Rogers-Selberg identity


def _poch_ratio(x: XSpec, r: Sequence[int], order: Fraction) -> QSeries:
    """``prod_{i,j} (x_i x_j)_{r_i} / (q x_i/x_j)_{r_i}`` to ``O(q^order)``."""
    num, den = QSeries.one(), QSeries.one()
    n = len(x)
    for i in range(n):
        for j in range(n):
            p, d = x[i] * x[j], x[i] / x[j]
            num = num * poch_finite(p.sign, p.exp, 1, r[i])
            den = den * poch_finite(d.sign, d.exp + 1, 1, r[i])
    return num.div(den, order)


def _check_cn_degenerate(x: XSpec) -> None:
    n = len(x)
    for i in range(n):
        for j in range(n):
            d = x[i] / x[j]
            k = -(d.exp + 1)
            if d.sign == 1 and k >= 0 and k.denominator == 1:
                raise DegenerateSpecialization(
                    f"(q x_{i + 1}/x_{j + 1}; q)_r vanishes for r > {k} at {_fmt(x)}")


def cn_rs_lattice(m: int, x: XSpec) -> LatticeSum:
    """``L_m^(0)(x; q)`` as a sum over ``r in Z_+^n``."""
    n = len(x)
    s, a = _x_parts(x)
    A = sum(a)
    delta = weyl_denominator("C", x)
    quad = tuple(Fraction(m + 1) + Fraction(n, 2) for _ in range(n))
    # (m+1) r^2 + n C(r,2) + 2(m+1) a_i r + sum_j (a_i - a_j) r
    lin = tuple(-Fraction(n, 2) + 2 * (m + 1) * a[i] + n * a[i] - A for i in range(n))
    floor = -delta.valuation
    for i in range(n):
        for j in range(n):
            e = a[i] + a[j]
            k = 0
            while e + k < 0:
                floor += e + k
                k += 1

    def sign(r: Sequence[int]) -> int:
        sg = 1
        for i in range(n):
            for j in range(n):
                if r[i] % 2 and s[i] * s[j] > 0:
                    sg = -sg
        return sg

    def extra(r: Sequence[int], order: Fraction) -> QSeries:
        return _poch_ratio(x, r, order + delta.valuation).div(delta, order)

    return LatticeSum(quad, lin, Fraction(0), tuple(_weyl_factors("C", x)), sign,
                      nonnegative=True, extra=extra, extra_floor=floor)


def cn_rs_sum_side(m: int, x: XSpec, order) -> QSeries:
    """``sum_{lambda_1 <= m} q^|lambda| Q'_{2 lambda}(x; q) / b_{2 lambda}(q)``."""
    order = as_qexp(order)
    amin = min(p.exp for p in x)
    if amin <= Fraction(-1, 2):
        raise ValueError("the sum side needs every exponent above -1/2")
    # the lambda term has valuation at least |lambda| (1 + 2 min(amin, 0))
    rate = 1 + 2 * min(amin, 0)
    cap = math.ceil(order / rate)
    total = QSeries.zero(order)
    for lam in partitions_in_box(m, cap, cap):
        size = sum(lam)
        if size * rate >= order:
            continue
        two = double(lam)
        qp = hl_modified_q_truncated(two, x, 1, order - size)
        if qp.is_zero:
            continue
        total = total + qp.div(b_lambda(two), order - size).shift(size)
    return total


def cn_rs_normalizer(x: XSpec, order) -> QSeries:
    """``prod_{1 <= i <= j <= n} (q x_i x_j; q)_inf``."""
    res = QSeries.one(order)
    for i in range(len(x)):
        for j in range(i, len(x)):
            p = x[i] * x[j]
            res = res * pochhammer_inf(p.sign, p.exp + 1, 1, order)
    return res


def rogers_selberg_cn_check(m: int, x: XSpec, order, *, printed: bool = False) -> VerificationReport:
    """Level-``m`` C_n Rogers-Selberg identity at the specialisation ``x``.

    The sum side equals ``L_m^(0)(x; q) / prod_{i <= j} (q x_i x_j)_inf``.
    ``printed=True`` drops that normalising product, which already fails for
    ``n = 1`` (it turns the identity into the Rogers-Selberg one times ``(x^2 q)_inf``).
    """
    t0 = time.perf_counter()
    x = xspec(*x)
    if not 1 <= len(x) <= 3 or not 1 <= m <= 3:
        raise ValueError("need 1 <= n <= 3 and 1 <= m <= 3")
    _check_cn_degenerate(x)
    order = as_qexp(order)
    lhs = cn_rs_sum_side(m, x, order)
    rhs, windows = cn_rs_lattice(m, x).evaluate_checked(order)
    if not printed:
        rhs = rhs.div(cn_rs_normalizer(x, order), order)
    return _report("Cn-RS", {"m": m, "n": len(x), "x": _fmt(x), "printed": printed},
                   order, lhs, rhs, t0, windows=windows)


# ---------------------------------------------------------------------------
# rank-one Rogers-Selberg identity


def rs_sum_side(a_exp, order) -> QSeries:
    """``sum_r a^r q^(r^2) / (q)_r`` with ``a = q^a_exp``."""
    a, order = as_qexp(a_exp), as_qexp(order)
    total = QSeries.zero(order)
    r = 0
    while a * r + r * r < order:
        total = total + QSeries.monomial(a * r + r * r).div(poch_finite(1, 1, 1, r), order)
        r += 1
    return total


def rs_product_side(a_exp, order) -> QSeries:
    """``(1/(aq)_inf) sum_r (1 - a q^(2r))/(1 - a) (a)_r/(q)_r (-1)^r a^(2r) q^(5 C(r,2) + 2r)``.

    ``(1 - a q^(2r)) (a)_r / (1 - a)`` is used as ``(1 - a q^(2r)) (aq)_(r-1)`` for
    ``r >= 1``, which stays finite at ``a = 1``.
    """
    a, order = as_qexp(a_exp), as_qexp(order)
    if a < 0:
        raise ValueError("need a_exp >= 0")
    total = QSeries.zero(order)
    r = 0
    while 2 * a * r + 5 * r * (r - 1) // 2 + 2 * r < order:
        e = 2 * a * r + 5 * r * (r - 1) // 2 + 2 * r
        if r == 0:
            num = QSeries.one()
        else:
            num = binomial_factor(-1, a + 2 * r) * poch_finite(1, a + 1, 1, r - 1)
        total = total + (num * QSeries.monomial(e, (-1) ** r)).div(poch_finite(1, 1, 1, r), order)
        r += 1
    return total.div(pochhammer_inf(1, a + 1, 1, order + 1), order)


def rogers_selberg_check(a_exp, order) -> VerificationReport:
    t0 = time.perf_counter()
    lhs = rs_sum_side(a_exp, order)
    rhs = rs_product_side(a_exp, order)
    return _report("RS", {"a_exp": str(as_qexp(a_exp))}, order, lhs, rhs, t0)


# ---------------------------------------------------------------------------
# Watson's transformation, compared exactly as rational functions of q


@dataclass
class _Frac:
    num: QSeries
    den: QSeries

    def __add__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.num, self.den * other.den)

    def same(self, other: "_Frac") -> bool:
        return (self.num * other.den - other.num * self.den).is_zero


def _poch_list(ps: Iterable[QPower], r: int) -> QSeries:
    res = QSeries.one()
    for p in ps:
        res = res * poch_finite(p.sign, p.exp, 1, r)
    return res


def _nonzero(v: QSeries, what: str) -> QSeries:
    if v.is_zero:
        raise DegenerateSpecialization(f"{what} vanishes")
    return v


def watson_sides(b, c, d, e, a, nterm: int, *, printed: bool = False) -> tuple[_Frac, _Frac]:
    """Both sides of the terminating very-well-poised transformation as exact fractions.

    The very-well-poised side carries ``(aq^(N+1); q)_r`` in its denominator;
    ``printed=True`` omits it, and the two sides then differ from ``N = 1`` on.
    """
    a, b, c, d, e = (xspec(v)[0] for v in (a, b, c, d, e))
    if nterm < 0:
        raise ValueError("need Nterm >= 0")
    q = QPower(Fraction(1))
    qn = QPower(Fraction(-nterm))
    aq = a * q
    pre = _Frac(_poch_list([aq, aq / (b * c)], nterm),
                _nonzero(_poch_list([aq / b, aq / c], nterm), "(aq/b, aq/c)_N"))
    lhs = _Frac(QSeries.zero(), QSeries.one())
    for r in range(nterm + 1):
        num = _poch_list([b, c, aq / (d * e), qn], r) * QSeries.monomial(r)
        den = _nonzero(_poch_list([q, aq / d, aq / e, b * c * qn / a], r),
                       f"a denominator of the left sum at r={r}")
        lhs = lhs + _Frac(num, den)
    lhs = pre * lhs
    z = (a * a * QPower(Fraction(nterm + 2))) / (b * c * d * e)
    rhs = _Frac(QSeries.zero(), QSeries.one())
    for r in range(nterm + 1):
        if r == 0:
            wp = QSeries.one()
        else:
            # (1 - a q^(2r)) (a)_r / (1 - a) = (1 - a q^(2r)) (aq)_(r-1)
            wp = (QSeries.one() - (a * QPower(Fraction(2 * r))).series()) * _poch_list([aq], r - 1)
        num = wp * _poch_list([b, c, d, e, qn], r) * (z ** r).series()
        tail = [] if printed else [aq * QPower(Fraction(nterm))]
        den = _nonzero(_poch_list([q, aq / b, aq / c, aq / d, aq / e] + tail, r),
                       f"a denominator of the right sum at r={r}")
        rhs = rhs + _Frac(num, den)
    return lhs, rhs


def watson_check(b, c, d, e, a, nterm: int, order=None, *, printed: bool = False) -> VerificationReport:
    """Exact comparison of both sides; ``order`` only labels the report."""
    t0 = time.perf_counter()
    lhs, rhs = watson_sides(b, c, d, e, a, nterm, printed=printed)
    ok = lhs.same(rhs)
    mismatch = None
    if not ok:
        diff = lhs.num * rhs.den - rhs.num * lhs.den
        mismatch = {"exponent": str(diff.valuation), "lhs": None, "rhs": None}
    params = {"a": str(xspec(a)[0]), "b": str(xspec(b)[0]), "c": str(xspec(c)[0]),
              "d": str(xspec(d)[0]), "e": str(xspec(e)[0]), "Nterm": nterm,
              "printed": printed}
    return VerificationReport("Watson", params, "exact" if order is None else order,
                              "pass" if ok else "fail", mismatch,
                              {"total_s": time.perf_counter() - t0})


# ---------------------------------------------------------------------------
# seeded generic specialisations

SPECIALIZATION_SEED = 20240611
_EXPONENTS = [Fraction(k, 6) for k in range(1, 12)]


def _generic(kind: str, x: XSpec) -> bool:
    """True when no product factor vanishes and no denominator degenerates."""
    n = len(x)
    try:
        if kind == "Cn-RS":
            weyl_denominator("C", x)
            _check_cn_degenerate(x)
            return True
        weyl_denominator("D" if kind == "Dn1_variant" else "B", x)
    except DegenerateSpecialization:
        return False
    per = Fraction(1, 2) if kind == "Dn1_2" else Fraction(1)
    args = []
    if kind != "Dn1_variant":
        args += [(p.sign, p.exp, per) for p in x]
    for i in range(n):
        for j in range(i + 1, n):
            args.append((x[i].sign * x[j].sign, x[i].exp - x[j].exp, Fraction(1)))
            args.append((x[i].sign * x[j].sign, x[i].exp + x[j].exp, Fraction(1)))
    return all(not (s == 1 and (e / b).denominator == 1) for s, e, b in args)


def seeded_specializations(kind: str, n: int, count: int = 3,
                           seed: int = SPECIALIZATION_SEED) -> list[XSpec]:
    """Reproducible generic signed q-power tuples for the named identity."""
    rng = random.Random(f"{seed}:{kind}:{n}")
    out: list[XSpec] = []
    while len(out) < count:
        x = tuple(QPower(rng.choice(_EXPONENTS), rng.choice((1, -1)) if kind != "Cn-RS" else 1)
                  for _ in range(n))
        if _generic(kind, x) and x not in out:
            out.append(x)
    return out


def seeded_watson_tuples(count: int = 3, seed: int = SPECIALIZATION_SEED) -> list[XSpec]:
    """Reproducible ``(b, c, d, e, a)`` tuples for which both sides of Watson's formula are defined."""
    rng = random.Random(f"{seed}:Watson")
    out: list[XSpec] = []
    while len(out) < count:
        x = tuple(QPower(rng.choice(_EXPONENTS), rng.choice((1, -1))) for _ in range(5))
        try:
            watson_sides(*x, 2)
        except DegenerateSpecialization:
            continue
        if x not in out:
            out.append(x)
    return out
