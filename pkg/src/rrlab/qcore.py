"""Exact truncated q-series with rational exponents and rational coefficients.

A :class:`QSeries` stores coefficients of ``q^(k/scale)`` for ``k`` in a
dense window.  Coefficients are Python integers over one common positive
denominator, so integer series (the common case) never touch ``Fraction``.
``order`` is the first untrusted exponent index (in units of ``1/scale``);
``order=None`` marks an exact Laurent polynomial.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ZeroLeadingCoefficient

QExp = Fraction
Number = int | Fraction


def as_qexp(x: Number | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _units(x: Fraction, scale: int) -> int:
    """Exponent ``x`` in units of ``1/scale``; raises if not representable."""
    n = x * scale
    if n.denominator != 1:
        raise ValueError(f"exponent {x} not a multiple of 1/{scale}")
    return n.numerator


def _ceil_units(x: Fraction, scale: int) -> int:
    return -((-x.numerator * scale) // x.denominator)


class QSeries:
    __slots__ = ("scale", "offset", "order", "_num", "_den")

    def __init__(self, num: list[int], den: int = 1, offset: int = 0,
                 scale: int = 1, order: int | None = None, *, _normalized: bool = False):
        if scale < 1:
            raise ValueError("scale must be positive")
        self.scale = scale
        self.offset = offset
        self.order = order
        self._num = num
        self._den = den
        if not _normalized:
            self._normalize()

    # construction ---------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number], offset: int = 0, scale: int = 1,
                    order: int | None = None) -> "QSeries":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        return cls(num, den, offset, scale, order)

    @classmethod
    def zero(cls, order_q: Number | None = None, scale: int = 1) -> "QSeries":
        order = None if order_q is None else _ceil_units(as_qexp(order_q), scale)
        return cls([], 1, 0 if order is None else order, scale, order)

    @classmethod
    def one(cls, order_q: Number | None = None) -> "QSeries":
        return cls.monomial(0, 1, order_q)

    @classmethod
    def monomial(cls, exp: Number, coeff: Number = 1,
                 order_q: Number | None = None) -> "QSeries":
        exp = as_qexp(exp)
        scale = exp.denominator
        if order_q is not None:
            scale = _lcm(scale, as_qexp(order_q).denominator)
        order = None if order_q is None else _units(as_qexp(order_q), scale)
        c = Fraction(coeff)
        off = _units(exp, scale)
        if order is not None and off >= order:
            return cls([], 1, order, scale, order)
        return cls([c.numerator], c.denominator, off, scale, order)

    @classmethod
    def from_terms(cls, terms: dict[Fraction, Number] | Iterable[tuple[Fraction, Number]],
                   order_q: Number | None = None) -> "QSeries":
        items = list(terms.items()) if isinstance(terms, dict) else list(terms)
        scale = 1
        for e, _ in items:
            scale = _lcm(scale, as_qexp(e).denominator)
        if order_q is not None:
            scale = _lcm(scale, as_qexp(order_q).denominator)
        order = None if order_q is None else _units(as_qexp(order_q), scale)
        if not items:
            return cls([], 1, order or 0, scale, order)
        idx = [(_units(as_qexp(e), scale), Fraction(c)) for e, c in items]
        lo = min(k for k, _ in idx)
        hi = max(k for k, _ in idx) + 1
        if order is not None:
            hi = min(hi, order)
        vals = [Fraction(0)] * max(hi - lo, 0)
        for k, c in idx:
            if k < hi:
                vals[k - lo] += c
        return cls.from_coeffs(vals, lo, scale, order)

    # normalization ----------------------------------------------------------

    def _normalize(self) -> None:
        num = self._num
        if self.order is not None and self.offset + len(num) > self.order:
            del num[max(self.order - self.offset, 0):]
        i = 0
        while i < len(num) and num[i] == 0:
            i += 1
        if i:
            del num[:i]
            self.offset += i
        while num and num[-1] == 0:
            num.pop()
        if not num:
            self._den = 1
            if self.order is not None:
                self.offset = self.order
            else:
                self.offset = 0
            return
        if self._den < 0:
            self._den = -self._den
            for k in range(len(num)):
                num[k] = -num[k]
        if self._den != 1:
            g = self._den
            for c in num:
                g = math.gcd(g, c)
                if g == 1:
                    break
            if g > 1:
                self._den //= g
                for k in range(len(num)):
                    num[k] //= g

    def _with(self, num: list[int], den: int, offset: int, scale: int,
              order: int | None) -> "QSeries":
        return QSeries(num, den, offset, scale, order)

    # basic accessors --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def valuation(self) -> Fraction | None:
        """Exponent of the first nonzero trusted coefficient."""
        if not self._num:
            return None
        return Fraction(self.offset, self.scale)

    @property
    def order_q(self) -> Fraction | None:
        return None if self.order is None else Fraction(self.order, self.scale)

    @property
    def denominator(self) -> int:
        return self._den

    def numerators(self) -> list[int]:
        return list(self._num)

    def coeff(self, exp: Number) -> Fraction:
        x = as_qexp(exp) * self.scale
        if x.denominator != 1:
            return Fraction(0)
        k = x.numerator
        if self.order is not None and k >= self.order:
            raise ValueError(f"coefficient of q^{exp} is beyond the trusted order")
        j = k - self.offset
        if 0 <= j < len(self._num):
            return Fraction(self._num[j], self._den)
        return Fraction(0)

    def terms(self) -> list[tuple[Fraction, Fraction]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing order."""
        return [(Fraction(self.offset + j, self.scale), Fraction(c, self._den))
                for j, c in enumerate(self._num) if c]

    def int_coeffs(self, n: int) -> list[int]:
        """First ``n`` integer coefficients of a scale-1 series starting at q^0."""
        if self.scale != 1 or self._den != 1:
            raise ValueError("series is not an integral power series in q")
        out = [0] * n
        for j, c in enumerate(self._num):
            k = self.offset + j
            if 0 <= k < n:
                out[k] = c
            elif k < 0 and c:
                raise ValueError("series has negative exponents")
        return out

    def max_abs_coeff(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(max(abs(c) for c in self._num), self._den)

    def __repr__(self) -> str:
        shown = []
        for e, c in self.terms()[:8]:
            shown.append(f"{c}*q^{e}")
        body = " + ".join(shown) if shown else "0"
        if len(self.terms()) > 8:
            body += " + ..."
        tail = "" if self.order is None else f" + O(q^{self.order_q})"
        return f"QSeries({body}{tail})"

    # scale handling ---------------------------------------------------------

    def rescale(self, scale: int) -> "QSeries":
        """Same series expressed with a finer exponent grid."""
        if scale == self.scale:
            return self
        if scale % self.scale:
            raise ValueError("new scale must be a multiple of the old one")
        t = scale // self.scale
        num = [0] * ((len(self._num) - 1) * t + 1) if self._num else []
        num[::t] = self._num
        order = None if self.order is None else self.order * t
        return QSeries(num, self._den, self.offset * t, scale, order, _normalized=True)

    def reduced(self) -> "QSeries":
        """Coarsest scale that still represents every exponent."""
        g = self.scale
        for j, c in enumerate(self._num):
            if c:
                g = math.gcd(g, self.offset + j)
        if self.order is not None:
            g = math.gcd(g, self.order)
        if g <= 1:
            return self
        return QSeries(self._num[::g], self._den, self.offset // g, self.scale // g,
                       None if self.order is None else self.order // g, _normalized=True)

    @staticmethod
    def _unify(a: "QSeries", b: "QSeries") -> tuple["QSeries", "QSeries"]:
        if a.scale == b.scale:
            return a, b
        s = _lcm(a.scale, b.scale)
        return a.rescale(s), b.rescale(s)

    def truncate(self, order_q: Number) -> "QSeries":
        o = as_qexp(order_q)
        s = _lcm(self.scale, o.denominator)
        a = self.rescale(s)
        n = _units(o, s)
        if a.order is not None and a.order < n:
            raise ValueError("cannot truncate beyond the trusted order")
        return QSeries(list(a._num), a._den, a.offset, s, n)

    # ring operations --------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries.monomial(0, other)
        return NotImplemented

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self._num], self._den, self.offset, self.scale,
                       self.order, _normalized=True)

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._unify(self, other)
        orders = [o for o in (a.order, b.order) if o is not None]
        order = min(orders) if orders else None
        if not a._num:
            return QSeries(list(b._num), b._den, b.offset, b.scale, order)
        if not b._num:
            return QSeries(list(a._num), a._den, a.offset, a.scale, order)
        lo = min(a.offset, b.offset)
        hi = max(a.offset + len(a._num), b.offset + len(b._num))
        if order is not None:
            hi = min(hi, order)
        if hi <= lo:
            return QSeries([], 1, order, a.scale, order)
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        out = [0] * (hi - lo)
        for j, c in enumerate(a._num):
            k = a.offset + j - lo
            if k >= len(out):
                break
            out[k] += c * fa
        for j, c in enumerate(b._num):
            k = b.offset + j - lo
            if k >= len(out):
                break
            out[k] += c * fb
        return QSeries(out, den, lo, a.scale, order)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return QSeries([x * c.numerator for x in self._num], self._den * c.denominator,
                           self.offset, self.scale, self.order)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._unify(self, other)
        # Trusted range of a product: valuation of one factor plus order of the other.
        va = a.offset if a._num else a.order
        vb = b.offset if b._num else b.order
        cands = []
        if b.order is not None and va is not None:
            cands.append(va + b.order)
        if a.order is not None and vb is not None:
            cands.append(vb + a.order)
        order = min(cands) if cands else None
        if not a._num or not b._num:
            return QSeries([], 1, order or 0, a.scale, order)
        lo = a.offset + b.offset
        length = len(a._num) + len(b._num) - 1
        if order is not None:
            length = min(length, order - lo)
        if length <= 0:
            return QSeries([], 1, order, a.scale, order)
        out = _convolve(a._num, b._num, length)
        return QSeries(out, a._den * b._den, lo, a.scale, order)

    __rmul__ = __mul__

    def inv(self, order_q: Number | None = None) -> "QSeries":
        """Multiplicative inverse.

        For an exact non-monomial series the target order must be supplied.
        The trusted order of ``1/a`` for ``a = c q^v (1 + ...) + O(q^N)`` is
        ``N - 2v``.
        """
        if not self._num:
            raise ZeroLeadingCoefficient("series vanishes on its trusted window")
        v = self.offset
        if len(self._num) == 1 and self.order is None:
            c = Fraction(self._den, self._num[0])
            res = QSeries([c.numerator], c.denominator, -v, self.scale, None)
            return res if order_q is None else res.truncate(order_q)
        orders = []
        if self.order is not None:
            orders.append(self.order - 2 * v)
        scale = self.scale
        if order_q is not None:
            o = as_qexp(order_q)
            s = _lcm(scale, o.denominator)
            if s != scale:
                return self.rescale(s).inv(order_q)
            orders.append(_units(o, scale))
        if not orders:
            raise ValueError("an explicit order is needed to invert an exact series")
        order = min(orders)
        length = order + v
        if length <= 0:
            return QSeries([], 1, order, scale, order)
        inv_num, inv_den = _power_series_inverse(self._num, length)
        return QSeries(inv_num, inv_den * 1, -v, scale, order)._times_int(self._den)

    def _times_int(self, c: int) -> "QSeries":
        return QSeries([x * c for x in self._num], self._den, self.offset, self.scale, self.order)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.is_exact and len(other._num) > 1:
            if self.is_exact:
                raise ValueError("use div(other, order_q) for two exact series")
            va = self.valuation if self._num else self.order_q
            vb = other.valuation
            return self * other.inv(self.order_q - vb - va)
        return self * other.inv()

    def __rtruediv__(self, other) -> "QSeries":
        return self._coerce(other).__truediv__(self)

    def div(self, other: "QSeries", order_q: Number) -> "QSeries":
        """``self / other`` trusted to ``order_q``, for exact operands."""
        o = as_qexp(order_q)
        if other.valuation is None:
            raise ZeroLeadingCoefficient("division by zero series")
        if not self._num:
            return QSeries.zero(o, self.scale)
        res = self * other.inv(o - self.valuation)
        if res.order is None or res.order_q > o:
            res = res.truncate(o)
        return res

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = QSeries.monomial(0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, exp: Number) -> "QSeries":
        """Multiply by ``q^exp``."""
        exp = as_qexp(exp)
        s = _lcm(self.scale, exp.denominator)
        a = self.rescale(s)
        k = _units(exp, s)
        return QSeries(list(a._num), a._den, a.offset + k, s,
                       None if a.order is None else a.order + k, _normalized=True)

    def subst_power(self, t: Number) -> "QSeries":
        """Substitute ``q -> q^t`` for a positive rational ``t``."""
        t = as_qexp(t)
        if t <= 0:
            raise ValueError("power must be positive")
        k, scale = t.numerator, self.scale * t.denominator
        order = None if self.order is None else self.order * k
        if k == 1 or not self._num:
            return QSeries(list(self._num), self._den, self.offset * k, scale, order)
        num = [0] * ((len(self._num) - 1) * k + 1)
        num[::k] = self._num
        return QSeries(num, self._den, self.offset * k, scale, order, _normalized=True)

    def mul_binomial(self, coeff: int, exp: Number) -> "QSeries":
        """Multiply by ``(1 + coeff*q^exp)`` with ``exp >= 0`` in linear time."""
        exp = as_qexp(exp)
        a = self.rescale(_lcm(self.scale, exp.denominator))
        k = _units(exp, a.scale)
        num = list(a._num)
        _mul_binom_inplace(num, coeff, k, extend=a.order is None or a.offset + len(num) + k <= a.order)
        return QSeries(num, a._den, a.offset, a.scale, a.order)

    def div_binomial(self, coeff: int, exp: Number) -> "QSeries":
        """Divide by ``(1 + coeff*q^exp)`` with ``exp > 0``; result is truncated."""
        if self.order is None:
            raise ValueError("series must carry a finite order")
        exp = as_qexp(exp)
        a = self.rescale(_lcm(self.scale, exp.denominator))
        k = _units(exp, a.scale)
        if k <= 0:
            raise ValueError("exponent must be positive")
        num = list(a._num) + [0] * max(a.order - a.offset - len(a._num), 0)
        _div_binom_inplace(num, coeff, k)
        return QSeries(num, a._den, a.offset, a.scale, a.order)

    # comparison -----------------------------------------------------------

    def agrees(self, other: "QSeries", order_q: Number | None = None) -> bool:
        """Coefficientwise agreement below the common trusted order."""
        d = self - other
        if not d._num:
            return True
        bound = d.order_q
        if order_q is not None:
            bound = as_qexp(order_q) if bound is None else min(bound, as_qexp(order_q))
        return bound is not None and d.valuation >= bound

    def first_mismatch(self, other: "QSeries") -> Fraction | None:
        d = self - other
        return d.valuation

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None  # type: ignore[assignment]

    # numerics -------------------------------------------------------------

    def evaluate(self, qroot, ctx=None):
        """Evaluate at a numeric ``q^(1/scale)`` (mpmath or Python number)."""
        if not self._num:
            return 0 * qroot
        acc = 0 * qroot
        for c in reversed(self._num):
            acc = acc * qroot + c
        acc = acc * qroot ** self.offset
        return acc / self._den

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        hi = self.order if self.order is not None else self.offset + len(self._num)
        lo = min(self.offset, hi) if self._num else hi
        coeffs = []
        for k in range(lo, hi):
            j = k - self.offset
            c = Fraction(self._num[j], self._den) if 0 <= j < len(self._num) else Fraction(0)
            coeffs.append([c.numerator, c.denominator])
        return {"scale": self.scale, "offset": lo, "order": self.order, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict | str) -> "QSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [Fraction(n, d) for n, d in data["coeffs"]]
        return cls.from_coeffs(coeffs, data["offset"], data["scale"], data["order"])

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _convolve(a: list[int], b: list[int], length: int) -> list[int]:
    """First ``length`` coefficients of the product of two dense lists."""
    if len(a) > len(b):
        a, b = b, a
    out = [0] * length
    nz = [(i, x) for i, x in enumerate(a) if x and i < length]
    for i, x in nz:
        lim = min(len(b), length - i)
        if x == 1:
            for j in range(lim):
                out[i + j] += b[j]
        elif x == -1:
            for j in range(lim):
                out[i + j] -= b[j]
        else:
            for j in range(lim):
                out[i + j] += x * b[j]
    return out


def _power_series_inverse(num: list[int], length: int) -> tuple[list[int], int]:
    """Integer numerators and denominator of ``1/sum(num[k] q^k)`` to ``length`` terms."""
    n0 = num[0]
    nz = [(j, c) for j, c in enumerate(num) if c and j > 0 and j < length]
    if abs(n0) == 1:
        w = [0] * length
        w[0] = 1
        for k in range(1, length):
            s = 0
            for j, c in nz:
                if j > k:
                    break
                s += c * w[k - j]
            w[k] = -s * n0
        return [x * n0 for x in w], 1
    fr = [Fraction(0)] * length
    fr[0] = Fraction(1, n0)
    for k in range(1, length):
        s = Fraction(0)
        for j, c in nz:
            if j > k:
                break
            s += c * fr[k - j]
        fr[k] = -s / n0
    den = 1
    for c in fr:
        den = _lcm(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in fr], den


def _mul_binom_inplace(num: list[int], coeff: int, k: int, extend: bool = True) -> None:
    if k == 0:
        for i in range(len(num)):
            num[i] *= 1 + coeff
        return
    if extend:
        num.extend([0] * k)
    for i in range(len(num) - 1, k - 1, -1):
        num[i] += coeff * num[i - k]


def _div_binom_inplace(num: list[int], coeff: int, k: int) -> None:
    for i in range(k, len(num)):
        num[i] -= coeff * num[i - k]


# ---------------------------------------------------------------------------
# infinite products


@dataclass(frozen=True)
class FactorSpec:
    """One factor of a product side.

    ``pochhammer_inf``: ``(sign*q^a; q^b)_inf ** power``
    ``theta``: ``theta(sign*q^a; q^b) ** power`` with ``theta(x;p) = (x;p)(p/x;p)``
    ``theta_half``: ``(q^(b/2); q^b)_inf ** power``, the self-paired half of a theta
    """

    kind: str
    a: Fraction
    b: Fraction
    power: int = 1
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", as_qexp(self.a))
        object.__setattr__(self, "b", as_qexp(self.b))
        if self.kind not in ("pochhammer_inf", "theta", "theta_half"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.b <= 0 or self.a <= 0:
            raise ValueError("factor arguments must be positive powers of q")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def poch(cls, a: Number, b: Number, power: int = 1, sign: int = 1) -> "FactorSpec":
        return cls("pochhammer_inf", as_qexp(a), as_qexp(b), power, sign)

    @classmethod
    def theta(cls, a: Number, b: Number, power: int = 1, sign: int = 1) -> "FactorSpec":
        return cls("theta", as_qexp(a), as_qexp(b), power, sign)

    @classmethod
    def theta_half(cls, kappa: Number, power: int = 1) -> "FactorSpec":
        kappa = as_qexp(kappa)
        return cls("theta_half", kappa / 2, kappa, power, 1)

    def to_json(self) -> dict:
        return {"kind": self.kind, "a": str(self.a), "b": str(self.b),
                "power": self.power, "sign": self.sign}


def _order_units(order_q: Number, scale: int) -> int:
    return _ceil_units(as_qexp(order_q), scale)


def pochhammer_inf(sign: int, a: Number, b: Number, order_q: Number, power: int = 1) -> QSeries:
    """``(sign*q^a; q^b)_inf ** power`` to ``O(q^order_q)``, with ``a >= 0``, ``b > 0``."""
    a, b, o = as_qexp(a), as_qexp(b), as_qexp(order_q)
    if b <= 0 or a < 0:
        raise ValueError("need a >= 0 and b > 0")
    scale = _lcm(_lcm(a.denominator, b.denominator), o.denominator)
    n = _order_units(o, scale)
    if n <= 0:
        return QSeries([], 1, n, scale, n)
    num = [0] * n
    num[0] = 1
    ka, kb = _units(a, scale), _units(b, scale)
    if ka == 0:
        # constant factor (1 - sign)
        if sign == 1 and power > 0:
            return QSeries([], 1, n, scale, n)
        if sign == 1:
            raise ZeroLeadingCoefficient("(1;q)_inf is zero")
        const = 2 ** abs(power)
        num[0] = const if power > 0 else 1
        den = 1 if power > 0 else const
        ka += kb
    else:
        den = 1
    k = ka
    while k < n:
        for _ in range(abs(power)):
            if power > 0:
                _mul_binom_inplace(num, -sign, k, extend=False)
            else:
                _div_binom_inplace(num, -sign, k)
        k += kb
    return QSeries(num, den, 0, scale, n)


def poch_finite(sign: int, a: Number, b: Number, r: int) -> QSeries:
    """Exact ``(sign*q^a; q^b)_r`` for ``r >= 0`` (``a`` may be any rational)."""
    a, b = as_qexp(a), as_qexp(b)
    scale = _lcm(a.denominator, b.denominator)
    res = QSeries([1], 1, 0, scale, None)
    for j in range(r):
        e = a + j * b
        res = res * binomial_factor(-sign, e)
    return res


def binomial_factor(coeff: int, exp: Number) -> QSeries:
    """Exact ``1 + coeff*q^exp``."""
    exp = as_qexp(exp)
    if exp == 0:
        return QSeries.monomial(0, 1 + coeff)
    return QSeries.from_terms({Fraction(0): 1, exp: coeff})


def theta_series(sign: int, a: Number, b: Number, order_q: Number, power: int = 1) -> QSeries:
    """``theta(sign*q^a; q^b) ** power`` for any rational ``a`` via quasi-periodicity."""
    a, b = as_qexp(a), as_qexp(b)
    t = math.floor(a / b)
    a0 = a - t * b
    # theta(p^t x) = (-1)^t x^(-t) p^(-t(t-1)/2) theta(x)
    shift = -t * a0 - b * Fraction(t * (t - 1), 2)
    const = (-1) ** (t % 2) * (sign ** (t % 2))
    if a0 == 0 and sign == 1:
        if power > 0:
            return QSeries.zero(order_q)
        raise ZeroLeadingCoefficient("theta(1; p) vanishes")
    # Exponent bookkeeping for the base theta and the monomial prefactor.
    base_order = as_qexp(order_q) - shift * power
    if a0 == 0:
        core = pochhammer_inf(sign, 0, b, base_order, power) * pochhammer_inf(sign, b, b, base_order, power)
    else:
        core = pochhammer_inf(sign, a0, b, base_order, power) * pochhammer_inf(sign, b - a0, b, base_order, power)
    return (core * const ** abs(power)).shift(shift * power)


def expand_factor(spec: FactorSpec, order_q: Number) -> QSeries:
    if spec.kind == "pochhammer_inf":
        return pochhammer_inf(spec.sign, spec.a, spec.b, order_q, spec.power)
    if spec.kind == "theta":
        return theta_series(spec.sign, spec.a, spec.b, order_q, spec.power)
    return pochhammer_inf(1, spec.b / 2, spec.b, order_q, spec.power)


def expand_factors(factors: Iterable[FactorSpec], order_q: Number) -> QSeries:
    res = QSeries.one(order_q)
    for f in factors:
        res = res * expand_factor(f, order_q)
    return res


def triple_product_sum(sign: int, a: Number, b: Number, order_q: Number) -> QSeries:
    """Bilateral sum of ``(-1)^r x^r q^(b*C(r,2))`` with ``x = sign*q^a``."""
    a, b, o = as_qexp(a), as_qexp(b), as_qexp(order_q)
    if b <= 0:
        raise ValueError("b must be positive")
    terms: dict[Fraction, int] = {}

    def expo(r: int) -> Fraction:
        return a * r + b * Fraction(r * (r - 1), 2)

    vertex = Fraction(1, 2) - a / b
    for direction in (1, -1):
        r = math.floor(vertex) if direction == -1 else math.floor(vertex) + 1
        while True:
            e = expo(r)
            if e >= o:
                break
            terms[e] = terms.get(e, 0) + (-1) ** (r % 2) * sign ** (r % 2)
            r += direction
    return QSeries.from_terms(terms, o)


def series_to_json(s: QSeries) -> str:
    return s.dumps()


def series_from_json(text: str) -> QSeries:
    return QSeries.from_json(text)


# ---------------------------------------------------------------------------
# specializations and exact polynomial helpers


@dataclass(frozen=True)
class QPower:
    """A signed rational power of ``q``: ``sign * q^exp``."""

    exp: Fraction
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "exp", as_qexp(self.exp))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def series(self) -> QSeries:
        return QSeries.monomial(self.exp, self.sign)

    def __mul__(self, other: "QPower") -> "QPower":
        return QPower(self.exp + other.exp, self.sign * other.sign)

    def __truediv__(self, other: "QPower") -> "QPower":
        return QPower(self.exp - other.exp, self.sign * other.sign)

    def __pow__(self, k: int) -> "QPower":
        return QPower(self.exp * k, self.sign ** (k % 2))

    def times_q(self, e: Number) -> "QPower":
        return QPower(self.exp + as_qexp(e), self.sign)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}q^{self.exp}"


XSpec = tuple[QPower, ...]


def parse_qpower(text: str | Number | QPower) -> QPower:
    """Parse ``"q^3/2"``, ``"-q^-1"``, ``"-1"``, ``"1"``, ``"q"`` or a bare exponent."""
    if isinstance(text, QPower):
        return text
    if isinstance(text, (int, Fraction)):
        return QPower(as_qexp(text))
    t = text.replace(" ", "").replace("−", "-")
    sign = 1
    if t.startswith("-"):
        sign, t = -1, t[1:]
    elif t.startswith("+"):
        t = t[1:]
    if t == "1":
        return QPower(Fraction(0), sign)
    if t == "q":
        return QPower(Fraction(1), sign)
    if t.startswith("q^"):
        e = t[2:].strip("()")
        return QPower(Fraction(e), sign)
    raise ValueError(f"cannot parse q-power {text!r}")


def xspec(*items: str | Number | QPower) -> XSpec:
    return tuple(parse_qpower(i) for i in items)


def geometric_xspec(n: int) -> XSpec:
    """``(1, q, ..., q^(n-1))``."""
    return tuple(QPower(Fraction(i)) for i in range(n))


def degree(p: QSeries) -> Fraction:
    if p.order is not None:
        raise ValueError("degree is defined for exact series only")
    if p.is_zero:
        raise ValueError("zero polynomial has no degree")
    return Fraction(p.offset + len(p._num) - 1, p.scale)


def exact_divide(a: QSeries, b: QSeries) -> QSeries:
    """Quotient of exact Laurent polynomials; raises if ``b`` does not divide ``a``."""
    if b.is_zero:
        raise ZeroLeadingCoefficient("division by the zero polynomial")
    if a.is_zero:
        return QSeries.zero()
    top = degree(a) - degree(b)
    c = a.div(b, top + Fraction(1, _lcm(a.scale, b.scale)))
    c = QSeries(list(c._num), c._den, c.offset, c.scale, None)
    if not (c * b - a).is_zero:
        raise ValueError("polynomial division is not exact")
    return c
