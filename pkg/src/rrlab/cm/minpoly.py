"""Integer polynomials and minimal polynomials of numerically known algebraic numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import flint
import mpmath

from ..errors import NoRelationFound


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients listed from the constant term up."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c) or (0,))

    @classmethod
    def from_flint(cls, p: flint.fmpz_poly) -> "IntPoly":
        return cls(tuple(int(c) for c in p.coeffs()))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Read ``"27*x^2 - 1"``-style text, including ``(...)^k`` powers."""
        x = flint.fmpz_poly([0, 1])
        expr = text.replace("^", "**")
        return cls.from_flint(eval(expr, {"__builtins__": {}}, {"x": x}) + flint.fmpz_poly([0]))

    def to_flint(self) -> flint.fmpz_poly:
        return flint.fmpz_poly(list(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coeffs)

    def normalized(self) -> "IntPoly":
        """Positive leading coefficient."""
        return self if self.leading >= 0 else IntPoly(tuple(-c for c in self.coeffs))

    def primitive(self) -> "IntPoly":
        g = math.gcd(*self.coeffs) or 1
        return IntPoly(tuple(c // g for c in self.coeffs)).normalized()

    def reversed(self) -> "IntPoly":
        return IntPoly(tuple(reversed(self.coeffs)))

    def compose_power(self, k: int) -> "IntPoly":
        """``p(x^k)``."""
        out = [0] * (k * self.degree + 1)
        out[::k] = self.coeffs
        return IntPoly(tuple(out))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_flint(self.to_flint() * other.to_flint())

    def __pow__(self, k: int) -> "IntPoly":
        return IntPoly.from_flint(self.to_flint() ** k)

    def __call__(self, v):
        acc = 0 * v
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def factor(self) -> list[tuple["IntPoly", int]]:
        _, facs = self.to_flint().factor()
        return [(IntPoly.from_flint(f), e) for f, e in facs]

    def is_irreducible(self) -> bool:
        facs = self.factor()
        return len(facs) == 1 and facs[0][1] == 1 and math.gcd(*self.coeffs) == 1

    def __str__(self) -> str:
        out = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "x" if k == 1 else f"x^{k}" if k else ""
            term = f"{mag}*{body}" if body and mag != 1 else body or str(mag)
            out += (" - " if c < 0 else " + ") + term if out else ("-" if c < 0 else "") + term
        return out or "0"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "text": str(self)}


def unit_flags(p: IntPoly) -> dict:
    """Integrality and unit status of the roots of an irreducible ``p``."""
    monic = abs(p.leading) == 1
    return {"irreducible": p.is_irreducible(), "algebraic_integer": monic,
            "unit": monic and abs(p.constant) == 1}


def default_prec(maxdeg: int, size: float) -> int:
    """Starting precision in bits for a degree ``maxdeg`` search around ``|v| = size``."""
    return int(32 * maxdeg + 10 * math.log2(1 + size) * maxdeg)


def _relation(v, d: int, wp: int) -> IntPoly | None:
    # LLL on [I | 2^s v^i]; accept only a residual well below the lattice resolution 2^-s
    size = float(abs(v))
    guard = 96 + int(d * math.log2(1 + size))
    s = wp - guard
    if s < 32 * d:
        return None
    cplx = abs(mpmath.im(v)) > mpmath.ldexp(1, -wp // 2)
    rows = []
    pw = mpmath.mpc(1)
    for i in range(d + 1):
        row = [0] * (d + 1)
        row[i] = 1
        row.append(int(mpmath.nint(mpmath.ldexp(mpmath.re(pw), s))))
        if cplx:
            row.append(int(mpmath.nint(mpmath.ldexp(mpmath.im(pw), s))))
        rows.append(row)
        pw *= v
    red = flint.fmpz_mat(rows).lll()
    for k in range(red.nrows()):
        c = [int(red[k, j]) for j in range(d + 1)]
        if c[-1] == 0 or not any(c):
            continue
        p = IntPoly(tuple(c)).primitive()
        if abs(p(v)) < mpmath.ldexp(1, -s - guard // 2):
            return p
        break
    return None


def _best_factor(p: IntPoly, v) -> IntPoly:
    facs = [f for f, _ in p.factor() if f.degree > 0]
    return min(facs, key=lambda f: abs(f(v))).primitive()


def minpoly(value: Callable[[int], object] | object, maxdeg: int = 20,
            prec: int | None = None, *, max_doublings: int = 3) -> IntPoly:
    """Minimal polynomial over ``Z`` of an algebraic number known numerically.

    ``value`` is a number (used at the current working precision) or a callable
    returning the value at a requested bit precision, in which case the
    precision is doubled on failure.  The smallest degree with a relation that
    passes the residual test ``|p(v)| < 2^(-prec/4)`` is returned.
    """
    if callable(value):
        with mpmath.workprec(64):
            size = float(abs(mpmath.mpc(complex(value(64)))))
        wp = max(prec or 0, default_prec(maxdeg, size))
        attempts = [wp * 2 ** k for k in range(max_doublings + 1)]
    else:
        attempts = [prec or mpmath.mp.prec]
    for wp in attempts:
        with mpmath.workprec(wp):
            v = value(wp) if callable(value) else value
            v = mpmath.mpc(getattr(v, "value", v))
            for d in range(1, maxdeg + 1):
                p = _relation(v, d, wp)
                if p is None:
                    continue
                p = _best_factor(p, v)
                if abs(p(v)) < mpmath.ldexp(1, -wp // 4):
                    return p
    raise NoRelationFound(f"no integer relation of degree <= {maxdeg}")


def findpoly_check(v, degree: int, maxcoeff: int) -> IntPoly | None:
    """Independent cross-check with :func:`mpmath.findpoly` (real values only)."""
    c = mpmath.findpoly(mpmath.re(v), degree, maxcoeff=maxcoeff)
    if c is None:
        return None
    return IntPoly(tuple(int(x) for x in reversed(c))).primitive()
