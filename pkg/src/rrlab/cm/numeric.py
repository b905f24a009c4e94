"""High-precision evaluation of Siegel functions, the Dedekind eta function and ``j``.

All routines take a target precision in bits and work internally with extra
guard bits inside a local :func:`mpmath.workprec` context.  Results carry a
heuristic error bound made of the product-truncation tail plus rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath
from mpmath import mp

from ..errors import NotUpperHalfPlane, PrecisionFailure

GUARD_BITS = 32


@dataclass(frozen=True)
class HPComplex:
    """A complex value together with an error estimate and the precision it was computed at."""

    value: Any
    err: Any
    prec: int

    @property
    def re(self):
        return mpmath.re(self.value)

    @property
    def im(self):
        return mpmath.im(self.value)

    def __complex__(self) -> complex:
        return complex(self.value)

    def to_json(self, digits: int = 40) -> dict:
        return {"value": {"re": mpmath.nstr(self.re, digits), "im": mpmath.nstr(self.im, digits)},
                "err_bound": mpmath.nstr(self.err, 5), "prec": self.prec}


def e(x) -> Any:
    """``exp(2 pi i x)``; exact rationals go through ``mpmath.expjpi``."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x) % 1
        return mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator)
    return mpmath.expjpi(2 * x)


def _frac(x) -> Any:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def q_of(tau) -> Any:
    if mpmath.im(tau) <= 0:
        raise NotUpperHalfPlane(f"Im(tau) must be positive, got {tau}")
    return mpmath.expjpi(2 * tau)


def qpow(tau, x) -> Any:
    """``q^x = exp(2 pi i tau x)`` for rational ``x``."""
    return mpmath.expjpi(2 * tau * _frac(x))


def bernoulli2(x: Fraction) -> Fraction:
    return x * x - x + Fraction(1, 6)


def siegel_multiplier(a: tuple[Fraction, Fraction], b: tuple[int, int]) -> Fraction:
    """``t`` with ``g_{a+b} = e(t) g_a`` for integral ``b``, as an exact rational mod 1."""
    a1, a2 = a
    b1, b2 = b
    return (Fraction(b1 * b2 + b1 + b2) - b1 * a2 + b2 * a1) / 2 % 1


def reduce_index(a) -> tuple[tuple[Fraction, Fraction], Fraction]:
    """``(a', t)`` with ``a' in [0,1)^2`` and ``g_a = e(t) g_{a'}``."""
    a1, a2 = Fraction(a[0]), Fraction(a[1])
    b = (a1.numerator // a1.denominator, a2.numerator // a2.denominator)
    red = (a1 - b[0], a2 - b[1])
    return red, siegel_multiplier(red, b)


def _product_terms(tau, a1: Fraction, a2: Fraction, wp: int):
    """Direct product in the definition of ``g_a`` with its truncation tail estimate."""
    q = q_of(tau)
    aq = abs(q)
    if aq >= 1:
        raise NotUpperHalfPlane("|q| must be below 1")
    eps = mpmath.ldexp(1, -wp)
    za, zb = qpow(tau, a1) * e(a2), qpow(tau, -a1) * e(-a2)
    prod = mpmath.mpc(1)
    qn = mpmath.mpc(1)     # q^(n-1)
    n = 0
    while True:
        n += 1
        t1, t2 = qn * za, qn * q * zb
        prod *= (1 - t1) * (1 - t2)
        qn *= q
        if abs(t1) < eps and abs(t2) < eps and n > 1:
            break
        if n > 10 ** 6:
            raise PrecisionFailure("Siegel product did not converge")
    # the remaining factors multiply by 1 + O(|t1| + |t2|) with geometric decay
    tail = 2 * (abs(t1) + abs(t2)) / (1 - aq)
    return prod, tail, n


def siegel_g(a, tau, prec: int = 256) -> HPComplex:
    """``g_a(tau) = -q^(B2(a1)/2) e(a2(a1-1)/2) prod (1 - q^(n-1+a1) e(a2)) (1 - q^(n-a1) e(-a2))``.

    The index is first reduced to ``[0,1)^2`` with the exact multiplier for integral shifts.
    """
    red, t = reduce_index(a)
    a1, a2 = red
    if a1 == 0 and a2 == 0:
        raise ValueError("g_a vanishes identically for integral a")
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        prod, tail, _ = _product_terms(tau, a1, a2, wp)
        pre = -qpow(tau, bernoulli2(a1) / 2) * e(a2 * (a1 - 1) / 2) * e(t)
        v = pre * prod
        err = abs(v) * (tail + mpmath.ldexp(1, -wp + 8))
        return HPComplex(+v, +err, prec)


def siegel_g_direct(a, tau, prec: int = 256) -> HPComplex:
    """``g_a`` from the defining product without index reduction (reference route)."""
    a1, a2 = Fraction(a[0]), Fraction(a[1])
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        prod, tail, _ = _product_terms(tau, a1, a2, wp)
        v = -qpow(tau, bernoulli2(a1) / 2) * e(a2 * (a1 - 1) / 2) * prod
        return HPComplex(+v, +abs(v) * (tail + mpmath.ldexp(1, -wp + 8)), prec)


def eta(tau, prec: int = 256) -> HPComplex:
    """Dedekind ``eta(tau) = q^(1/24) prod (1 - q^n)``."""
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        q = q_of(tau)
        eps = mpmath.ldexp(1, -wp)
        prod, qn = mpmath.mpc(1), q
        while abs(qn) >= eps:
            prod *= 1 - qn
            qn *= q
        v = qpow(tau, Fraction(1, 24)) * prod
        return HPComplex(+v, +abs(v) * 4 * (abs(qn) / (1 - abs(q)) + eps), prec)


def klein_t(a, tau, prec: int = 256) -> HPComplex:
    """Klein form ``t_a = g_a / eta^2``."""
    g, h = siegel_g(a, tau, prec), eta(tau, prec)
    with mpmath.workprec(prec + GUARD_BITS):
        v = g.value / h.value ** 2
        return HPComplex(v, abs(v) * (g.err / abs(g.value) + 2 * h.err / abs(h.value)), prec)


def _j_eisenstein(tau, wp: int):
    q = q_of(tau)
    eps = mpmath.ldexp(1, -wp)
    s, qn, n = mpmath.mpc(0), q, 1
    prod = mpmath.mpc(1)
    while abs(qn) * n ** 4 >= eps:
        s += mpmath.mpf(sum(d ** 3 for d in range(1, n + 1) if n % d == 0)) * qn
        prod *= 1 - qn
        qn *= q
        n += 1
    e4 = 1 + 240 * s
    return e4 ** 3 / (q * prod ** 24)


def _j_eta(tau, wp: int):
    r = (eta(tau, wp).value / eta(2 * tau, wp).value) ** 24
    return r + 3 * 2 ** 8 + 3 * 2 ** 16 / r + 2 ** 24 / r ** 2


def j_invariant(tau, prec: int = 256) -> HPComplex:
    """``j(tau)`` by the Eisenstein quotient and by the ``eta(tau)/eta(2 tau)`` formula.

    Raises :class:`PrecisionFailure` unless both agree to ``prec`` bits relative to ``max(1, |j|)``.
    """
    wp = prec + GUARD_BITS
    with mpmath.workprec(wp):
        tau = mpmath.mpc(tau)
        a, b = _j_eisenstein(tau, wp), _j_eta(tau, wp)
        diff = abs(a - b)
        scale = max(1, abs(a))
        if diff > scale * mpmath.ldexp(1, -prec):
            raise PrecisionFailure(f"the two j formulas differ by {mpmath.nstr(diff, 5)}")
        return HPComplex(+a, +(diff + scale * mpmath.ldexp(1, -wp + 8)), prec)


def current_prec() -> int:
    return mp.prec
