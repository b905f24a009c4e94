"""Products of Siegel functions: the normalized series at CM points and their Galois orbits."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import DenominatorMismatch, NonIntegralCoefficients, UsageError
from ..identities import (ProductSpec, _check_star, phi_kappa, phi_product, phi_series,
                          psi_product, psi_series)
from ..qcore import QSeries
from .forms import (CMPoint, as_complex, delta_matrix, lift_sl2, mat_det, mat_mul, reduced_forms,
                    tau_of_form, w_group)
from .minpoly import IntPoly
from .numeric import GUARD_BITS, HPComplex, siegel_g

Index = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SiegelTerm:
    """``g_a(scale * tau) ** e``."""

    a: Index
    scale: int
    e: int


@dataclass(frozen=True)
class SiegelProduct:
    """``(sign * prod g_a(scale * tau) ** e) ** power``."""

    terms: tuple[SiegelTerm, ...]
    sign: int = 1
    power: int = 1

    @classmethod
    def build(cls, exps: dict[tuple[Index, int], int], sign: int = 1, power: int = 1) -> "SiegelProduct":
        terms = tuple(SiegelTerm(a, s, v) for (a, s), v in sorted(exps.items()) if v)
        return cls(terms, sign, power)

    def __pow__(self, k: int) -> "SiegelProduct":
        return SiegelProduct(self.terms, self.sign, self.power * k)

    def __truediv__(self, other: "SiegelProduct") -> "SiegelProduct":
        if self.power != other.power:
            raise ValueError("quotients need equal powers")
        c: Counter = Counter()
        for t in self.terms:
            c[(t.a, t.scale)] += t.e
        for t in other.terms:
            c[(t.a, t.scale)] -= t.e
        return SiegelProduct.build(dict(c), self.sign * other.sign, self.power)

    @property
    def level(self) -> int:
        return math.lcm(*(math.lcm(t.a[0].denominator, t.a[1].denominator) for t in self.terms))

    def multiplicities(self) -> dict[Index, int]:
        """``m(a)`` over indices reduced into ``[0,1)^2``; needs every ``scale == 1``."""
        if any(t.scale != 1 for t in self.terms):
            raise UsageError("only products of g_a(tau) have index multiplicities")
        m: Counter = Counter()
        for t in self.terms:
            m[(t.a[0] % 1, t.a[1] % 1)] += t.e * self.power
        return {a: v for a, v in m.items() if v}

    def evaluate(self, tau, prec: int = 256, cache: dict | None = None) -> HPComplex:
        wp = prec + GUARD_BITS
        with mpmath.workprec(wp):
            tau = as_complex(tau, wp)
            v = mpmath.mpc(self.sign)
            rel = mpmath.mpf(0)
            for t in self.terms:
                key = (t.a, t.scale)
                g = cache.get(key) if cache is not None else None
                if g is None:
                    g = siegel_g(t.a, t.scale * tau, wp)
                    if cache is not None:
                        cache[key] = g
                v *= g.value ** t.e
                rel += abs(t.e) * g.err / abs(g.value)
            v = v ** self.power
            rel = rel * self.power + mpmath.ldexp(1, -wp + 8)
            return HPComplex(+v, abs(v) * rel, prec)

    def to_json(self) -> dict:
        return {"terms": [{"a": [str(t.a[0]), str(t.a[1])], "scale": t.scale, "e": t.e}
                          for t in self.terms], "sign": self.sign, "power": self.power}


# ---------------------------------------------------------------------------
# the normalized series as Siegel products


def siegel_delta(m: int, n: int) -> int:
    """Extra exponent on the ``g_(1/4,0)(2 kappa tau)`` factor: 1 iff ``m >= n`` and ``m = n mod 2``."""
    return int(m >= n and (m - n) % 2 == 0)


def _ceil_half(j: int) -> int:
    return -(-j // 2)


def phi_siegel_exponents(star: str, m: int, n: int) -> tuple[int, dict[tuple[Index, int], int]]:
    """Exponents of ``g_(j/kappa, 0)(kappa tau)`` (scale 1) and ``g_(1/4,0)(2 kappa tau)`` (scale 2)."""
    _check_star(star, m, n)
    k = phi_kappa(star, m, n)
    c: Counter = Counter()

    def g(j: int, v: int) -> None:
        c[((Fraction(j, k), Fraction(0)), 1)] += v

    if star == "1a":
        for j in range(1, m + 1):
            g(j, -1)
        for j in range(1, m + n + 1):
            g(j, -min(m, n - 1, _ceil_half(j) - 1))
    elif star == "1b":
        for j in range(1, m + n + 1):
            g(j, -min(m, n, j // 2))
    elif star == "2":
        c[((Fraction(1, 4), Fraction(0)), 2)] -= min(m, n - 1) + siegel_delta(m, n)
        for j in range(1, m + 1):
            g(j, -1)
        for j in range(1, m + n + 1):
            g(j, -min(m, n - 1, _ceil_half(j) - 1))
        for j in range(n, (m + n - 1) // 2 + 1):
            g(2 * j + 1, -1)
    else:
        c[((Fraction(1, 4), Fraction(0)), 2)] -= min(m, n - 1) + siegel_delta(m, n)
        for j in range(1, m + n):
            g(j, -min(m, n - 1, j // 2))
        for j in range(n, (m + n - 1) // 2 + 1):
            g(2 * j, -1)
    return k, {key: v for key, v in c.items() if v}


def phi_siegel_product(star: str, m: int, n: int) -> tuple[int, SiegelProduct]:
    """``(kappa, F)`` with ``Phi_star(m, n; tau) = F(kappa tau)``.

    Each ``g_(j/kappa,0)(kappa tau)`` is ``-q^(kappa B2(j/kappa)/2) theta(q^j; q^kappa)``, so the
    product carries the sign ``(-1)^(sum of exponents)``.
    """
    k, exps = phi_siegel_exponents(star, m, n)
    total = sum(exps.values())
    return k, SiegelProduct.build(exps, sign=(-1) ** (total % 2))


def psi_siegel_product(which: int, m: int, n: int) -> tuple[int, SiegelProduct]:
    """``prod_{j<=m} g_(2j/kappa,0) / g_(j/kappa,0)`` at ``kappa tau``."""
    k = 2 * m + 2 * n + 1 if which == 1 else 2 * m + 2 * n + 2
    c: Counter = Counter()
    for j in range(1, m + 1):
        c[((Fraction(2 * j, k), Fraction(0)), 1)] += 1
        c[((Fraction(j, k), Fraction(0)), 1)] -= 1
    return k, SiegelProduct.build(dict(c))


# ---------------------------------------------------------------------------
# three evaluation routes


def _poch_numeric(sign: int, a: Fraction, b: Fraction, tau, wp: int):
    # (sign q^a; q^b)_inf
    eps = mpmath.ldexp(1, -wp)
    step = mpmath.expjpi(2 * tau * mpmath.mpf(b.numerator) / b.denominator)
    z = sign * mpmath.expjpi(2 * tau * mpmath.mpf(a.numerator) / a.denominator)
    prod = mpmath.mpc(1)
    while abs(z) >= eps:
        prod *= 1 - z
        z *= step
    return prod, abs(z) * 4 / (1 - abs(step))


def product_spec_value(spec: ProductSpec, tau, prec: int) -> HPComplex:
    """Numeric value of ``q^prefactor prod factors`` at ``q = e(tau)``."""
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        pre = Fraction(spec.prefactor)
        v = mpmath.expjpi(2 * tau * mpmath.mpf(pre.numerator) / pre.denominator)
        rel = mpmath.mpf(0)
        for f in spec.factors:
            parts = [(f.sign, Fraction(f.a))]
            if f.kind == "theta":
                parts.append((f.sign, Fraction(f.b) - Fraction(f.a)))
            for s, a in parts:
                p, tail = _poch_numeric(s, a, Fraction(f.b), tau, wp)
                v *= p ** f.power
                rel += abs(f.power) * tail
        return HPComplex(+v, abs(v) * (rel + mpmath.ldexp(1, -wp + 8)), prec)


def series_value(s: QSeries, tau, prec: int) -> HPComplex:
    """Evaluate a truncated series at ``q = e(tau)`` with a tail estimate from its last coefficients."""
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        root = mpmath.expjpi(2 * tau / s.scale)
        v = s.evaluate(root)
        aq = abs(mpmath.expjpi(2 * tau))
        tail_size = mpmath.mpf(0)
        if s.order is not None:
            last = [abs(mpmath.mpf(c)) for c in s.numerators()[-4 * s.scale:]] or [mpmath.mpf(1)]
            growth = 4 * max(last) / s.denominator + 1
            tail_size = growth * aq ** (s.order_q) / (1 - aq) * 16
        return HPComplex(+v, +(tail_size + abs(v) * mpmath.ldexp(1, -wp + 8)), prec)


def phi_cm(star: str, m: int, n: int, tau, prec: int = 256, *, method: str = "siegel",
           order: int = 400) -> HPComplex:
    """``Phi_star(m, n; tau)`` by the Siegel product, the theta product or the truncated series."""
    tau_c = as_complex(tau, prec + GUARD_BITS)
    if method == "siegel":
        k, F = phi_siegel_product(star, m, n)
        with mpmath.workprec(prec + GUARD_BITS):
            return F.evaluate(k * tau_c, prec)
    if method == "theta":
        return product_spec_value(phi_product(star, m, n), tau_c, prec)
    if method == "series":
        return series_value(phi_series(star, m, n, order), tau_c, prec)
    raise ValueError(f"unknown method {method!r}")


def psi_cm(which: int, m: int, n: int, tau, prec: int = 256, *, method: str = "siegel",
           order: int = 400) -> HPComplex:
    """``Phi_1a/Phi_1b`` (which=1) or ``Phi_2(m,n)/Phi_3(m,n+1)`` (which=2) at ``tau``."""
    tau_c = as_complex(tau, prec + GUARD_BITS)
    if method == "siegel":
        k, F = psi_siegel_product(which, m, n)
        with mpmath.workprec(prec + GUARD_BITS):
            return F.evaluate(k * tau_c, prec)
    if method == "theta":
        return product_spec_value(psi_product(which, m, n), tau_c, prec)
    if method == "series":
        return series_value(psi_series(which, m, n, order), tau_c, prec)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class ThreeWay:
    values: dict[str, HPComplex]
    diffs: dict[str, object]
    bounds: dict[str, object]
    agree: bool

    def to_json(self) -> dict:
        return {"values": {k: v.to_json() for k, v in self.values.items()},
                "diffs": {k: mpmath.nstr(v, 5) for k, v in self.diffs.items()},
                "bounds": {k: mpmath.nstr(v, 5) for k, v in self.bounds.items()},
                "agree": self.agree}


def three_way(fn, *args, prec: int = 256, order: int = 400) -> ThreeWay:
    """Evaluate ``fn(*args)`` by all three methods and compare against the tracked bounds."""
    vals = {mth: fn(*args, prec, method=mth, order=order) for mth in ("siegel", "theta", "series")}
    with mpmath.workprec(prec + GUARD_BITS):
        floor = abs(vals["siegel"].value) * mpmath.ldexp(1, -prec + 4)
        diffs, bounds = {}, {}
        for other in ("theta", "series"):
            diffs[other] = abs(vals["siegel"].value - vals[other].value)
            bounds[other] = vals["siegel"].err + vals[other].err + floor
        agree = all(diffs[k] <= bounds[k] for k in diffs)
    return ThreeWay(vals, diffs, bounds, agree)


# ---------------------------------------------------------------------------
# modularity and Galois orbits


def fn_membership(F: SiegelProduct, N: int) -> bool:
    """The three congruence conditions for ``prod g_a^m(a)`` to lie in ``F_N``."""
    m = F.multiplicities()
    for a in m:
        den = math.lcm(a[0].denominator, a[1].denominator)
        if N % den:
            raise DenominatorMismatch(f"Den({a[0]}, {a[1]}) = {den} does not divide {N}")
    s11 = sum(v * int(N * a[0]) ** 2 for a, v in m.items())
    s22 = sum(v * int(N * a[1]) ** 2 for a, v in m.items())
    s12 = sum(v * int(N * a[0]) * int(N * a[1]) for a, v in m.items())
    mod = math.gcd(2, N) * N
    c1 = s11 % mod == 0 and s22 % mod == 0
    c2 = s12 % N == 0
    c3 = (math.gcd(12, N) * sum(m.values())) % 12 == 0
    return c1 and c2 and c3


def galois_lift(M, N: int) -> tuple[tuple, int]:
    """Split ``M`` in ``GL2(Z/N)`` as ``gamma diag(1, d)`` with ``gamma`` in ``SL2(Z)``.

    ``d`` is lifted to an odd integer prime to ``N``, so ``e(x) -> e(d x)`` is a
    consistent automorphism on every root of unity in the Siegel coefficients.
    """
    d = mat_det(M, N)
    gamma = lift_sl2(mat_mul(M, ((1, 0), (0, pow(d, -1, N))), N), N)
    d = d or N
    while d % 2 == 0 or math.gcd(d, N) != 1:
        d += N
    return gamma, d


def _act(a: Index, gamma, d: int) -> Index:
    # exact a gamma, then the coefficient automorphism on the second entry
    (p, q), (r, s) = gamma
    return (a[0] * p + a[1] * r, (a[0] * q + a[1] * s) * d)


@dataclass
class OrbitEntry:
    gamma: tuple
    form: object
    value: HPComplex


def orbit_multiset(F: SiegelProduct, theta: CMPoint, N: int, prec: int = 256) -> list[OrbitEntry]:
    """``{F(tau_Q) acted on by gamma * delta_Q(theta)}`` over ``W_(N,theta) x Q_D``.

    The action moves every index ``a`` to ``a M`` computed exactly through
    :func:`galois_lift`; the reduction mod 1 happens inside :func:`siegel_g` with its multiplier.
    """
    m = F.multiplicities()
    for a in m:
        if N % math.lcm(a[0].denominator, a[1].denominator):
            raise DenominatorMismatch(f"index {a} is not of level {N}")
    W = w_group(N, theta)
    out = []
    for Q in reduced_forms(theta.D):
        tq = tau_of_form(Q)
        dQ = delta_matrix(Q, theta, N)
        cache: dict = {}
        for gamma in W:
            lift = galois_lift(mat_mul(gamma, dQ, N), N)
            exps: Counter = Counter()
            for a, v in m.items():
                exps[(_act(a, *lift), 1)] += v
            G = SiegelProduct.build(dict(exps), sign=F.sign ** (F.power % 2))
            out.append(OrbitEntry(gamma, Q, G.evaluate(tq, prec, cache)))
    return out


def _poly_from_roots(roots, wp: int):
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * r
        coeffs = nxt
    return coeffs          # lowest degree first, monic


def _round_all(coeffs, tol) -> list[int] | None:
    out = []
    for c in coeffs:
        r = mpmath.nint(mpmath.re(c))
        if abs(c - r) > tol:
            return None
        out.append(int(r))
    return out


def orbit_poly(values, prec: int = 256, tol: float = 1e-10) -> IntPoly:
    """Integer polynomial with the given multiset of roots.

    Tries ``prod (x - v)`` first; if that is not integral, expands ``prod (x - 1/v)``
    (algebraic integers when the values have denominators) and reverses it.
    """
    vals = [v.value if isinstance(v, OrbitEntry) else v for v in values]
    vals = [v.value if isinstance(v, HPComplex) else v for v in vals]
    if not vals:
        raise ValueError("empty multiset")
    with mpmath.workprec(prec + GUARD_BITS):
        t = mpmath.mpf(tol)
        direct = _round_all(_poly_from_roots([mpmath.mpc(v) for v in vals], prec), t)
        if direct is not None:
            return IntPoly(tuple(direct)).normalized()
        inv = _round_all(_poly_from_roots([1 / mpmath.mpc(v) for v in vals], prec), t)
        if inv is not None:
            return IntPoly(tuple(reversed(inv))).normalized()
    raise NonIntegralCoefficients("orbit polynomial coefficients are not integral")


def rr_fraction_closed_form(prec: int = 256):
    """``sqrt((5 + sqrt 5)/2) - (sqrt 5 + 1)/2``, the continued fraction at ``q = e^(-2 pi)``."""
    with mpmath.workprec(prec + GUARD_BITS):
        r5 = mpmath.sqrt(5)
        return mpmath.sqrt((5 + r5) / 2) - (r5 + 1) / 2


def first_letter_check(prec: int = 256, order: int = 300) -> dict:
    """``1/Psi_1(1,1; i)`` three ways against its closed form and minimal polynomial."""
    from .forms import parse_tau
    from .minpoly import minpoly
    from ..fixtures import polynomial

    tau = parse_tau("i")
    tw = three_way(psi_cm, 1, 1, 1, tau, prec=prec, order=order)
    with mpmath.workprec(prec + GUARD_BITS):
        inv = {k: 1 / v.value for k, v in tw.values.items()}
        closed = rr_fraction_closed_form(prec)
        err = max(abs(v - closed) for v in inv.values())
        p = minpoly(lambda wp: 1 / psi_cm(1, 1, 1, tau, wp).value, 4)
        ok = tw.agree and err < mpmath.mpf(10) ** (-50) and p == polynomial("first_letter_value")
        return {"value": HPComplex(inv["siegel"], tw.values["siegel"].err / abs(tw.values["siegel"].value) ** 2,
                                   prec).to_json(),
                "closed_form": mpmath.nstr(closed, 30), "max_error": mpmath.nstr(err, 5),
                "three_way": tw.agree, "minpoly": str(p), "status": "pass" if ok else "fail"}
