"""CM points, reduced binary quadratic forms and the matrices acting on singular values."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import mpmath

from ..errors import NonInvertibleResult, NotADiscriminant, NotUpperHalfPlane, UsageError

Matrix = tuple[tuple[int, int], tuple[int, int]]


def _check_disc(D: int) -> None:
    if D <= 0 or (-D) % 4 not in (0, 1):
        raise NotADiscriminant(f"-{D} is not a negative discriminant")


@dataclass(frozen=True)
class QuadForm:
    """``a x^2 + b x y + c y^2``."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def D(self) -> int:
        return -self.disc

    @property
    def primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    @property
    def reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def __str__(self) -> str:
        return f"{self.a}x^2{self.b:+d}xy{self.c:+d}y^2"


@dataclass(frozen=True)
class CMPoint:
    """The root ``(-B + sqrt(B^2 - 4AC)) / (2A)`` of ``A x^2 + B x + C`` in the upper half-plane."""

    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A <= 0:
            raise NotUpperHalfPlane("need A > 0")
        if math.gcd(self.A, self.B, self.C) != 1:
            raise ValueError("coefficients must be coprime")
        if self.B * self.B - 4 * self.A * self.C >= 0:
            raise NotUpperHalfPlane("the polynomial has no root off the real line")

    @classmethod
    def from_poly(cls, A: int, B: int, C: int) -> "CMPoint":
        g = math.gcd(A, B, C)
        if A < 0:
            g = -g
        return cls(A // g, B // g, C // g)

    @classmethod
    def from_parts(cls, x: Fraction, y2: Fraction) -> "CMPoint":
        """``tau = x + i sqrt(y2)`` with rational ``x`` and ``y2 > 0``."""
        if y2 <= 0:
            raise NotUpperHalfPlane("imaginary part must be positive")
        # t^2 - 2x t + x^2 + y2
        b, c = -2 * x, x * x + y2
        den = math.lcm(b.denominator, c.denominator)
        return cls.from_poly(den, int(b * den), int(c * den))

    @property
    def D(self) -> int:
        return 4 * self.A * self.C - self.B * self.B

    @property
    def D0(self) -> int:
        D = self.D
        return D // 4 if D % 4 == 0 else (-D - 1) // 4

    @property
    def real(self) -> Fraction:
        return Fraction(-self.B, 2 * self.A)

    @property
    def imag_sq(self) -> Fraction:
        return Fraction(self.D, 4 * self.A * self.A)

    def value(self, prec: int = 256):
        with mpmath.workprec(prec):
            x = self.real
            return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator,
                              mpmath.sqrt(mpmath.mpf(self.D)) / (2 * self.A))

    def scaled(self, k: int) -> "CMPoint":
        """The CM point ``k * tau``."""
        return CMPoint.from_poly(self.A, k * self.B, k * k * self.C)

    def form(self) -> QuadForm:
        return QuadForm(self.A, self.B, self.C)

    def __str__(self) -> str:
        return f"root of {self.A}x^2{self.B:+d}x{self.C:+d}"


_NUM = r"[0-9]+(?:/[0-9]+)?"


def parse_tau(text: str) -> CMPoint | complex:
    """Parse ``i/3``, ``sqrt(-1/3)``, ``(-1+3i)/2``, ``2+i``, ``form:a,b,c`` or a float complex.

    Exact inputs become a :class:`CMPoint`; anything else is returned as a Python complex.
    """
    t = text.replace(" ", "").replace("−", "-").replace("I", "i").replace("j", "i")
    if t.startswith("form:"):
        try:
            a, b, c = (int(v) for v in t[5:].split(","))
        except ValueError as exc:
            raise UsageError(f"bad form spec {text!r}") from exc
        return tau_of_form(QuadForm(a, b, c))
    m = re.fullmatch(r"sqrt\((-)?(" + _NUM + r")\)", t)
    if m:
        if not m.group(1):
            raise NotUpperHalfPlane("sqrt of a positive number is real")
        return CMPoint.from_parts(Fraction(0), Fraction(m.group(2)))
    m = re.fullmatch(r"\(?([+-]?" + _NUM + r")?\+sqrt\(-(" + _NUM + r")\)\)?(?:/(" + _NUM + r"))?", t)
    if m:
        d = Fraction(m.group(3) or 1)
        return CMPoint.from_parts(Fraction(m.group(1) or 0) / d, Fraction(m.group(2)) / (d * d))
    m = re.fullmatch(r"\(?([^()/]*)\)?(?:/(" + _NUM + r"))?", t)
    if m and "i" in m.group(1):
        try:
            x, y = _parse_gaussian(m.group(1))
        except ValueError:
            pass
        else:
            d = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            return CMPoint.from_parts(x / d, (y / d) ** 2)
    try:
        z = complex(t.replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"cannot parse tau {text!r}") from exc
    if z.imag <= 0:
        raise NotUpperHalfPlane(f"Im(tau) must be positive, got {text!r}")
    return z


def _parse_gaussian(s: str) -> tuple[Fraction, Fraction]:
    m = re.fullmatch(r"(?P<x>[+-]?" + _NUM + r")(?P<s>[+-])(?P<y>" + _NUM + r")?\*?i", s)
    if m is None:
        m = re.fullmatch(r"(?P<s>[+-]?)(?P<y>" + _NUM + r")?\*?i", s)
    if m is None:
        raise ValueError(s)
    x = Fraction(m.groupdict().get("x") or 0)
    y = Fraction(m.group("y") or 1) * (-1 if m.group("s") == "-" else 1)
    if y <= 0:
        raise NotUpperHalfPlane("imaginary part must be positive")
    return x, y


def as_complex(tau, prec: int = 256):
    if isinstance(tau, CMPoint):
        return tau.value(prec)
    if isinstance(tau, str):
        return as_complex(parse_tau(tau), prec)
    return mpmath.mpc(tau)


# ---------------------------------------------------------------------------
# class group representatives


def reduced_forms(D: int) -> list[QuadForm]:
    """All primitive reduced positive definite forms of discriminant ``-D``."""
    _check_disc(D)
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b + D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.reduced and f.primitive:
                out.append(f)
        a += 1
    return out


def canonical_tau(D: int) -> CMPoint:
    """``sqrt(-D)/2`` or ``(1 + sqrt(-D))/2`` according to ``-D mod 4``."""
    _check_disc(D)
    if D % 4 == 0:
        return CMPoint(1, 0, D // 4)
    return CMPoint(1, -1, (D + 1) // 4)


def tau_of_form(Q: QuadForm) -> CMPoint:
    """``(-b + sqrt(-D)) / (2a)``."""
    if Q.disc >= 0:
        raise NotADiscriminant(f"{Q} is not positive definite")
    _check_disc(Q.D)
    return CMPoint.from_poly(Q.a, Q.b, Q.c)


# ---------------------------------------------------------------------------
# matrices mod N


def _factor(N: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= N:
        while N % p == 0:
            out[p] = out.get(p, 0) + 1
            N //= p
        p += 1
    if N > 1:
        out[N] = out.get(N, 0) + 1
    return out


def mat_mul(X: Matrix, Y: Matrix, N: int) -> Matrix:
    return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(2)) % N for j in range(2))
                 for i in range(2))  # type: ignore[return-value]


def mat_det(X: Matrix, N: int) -> int:
    return (X[0][0] * X[1][1] - X[0][1] * X[1][0]) % N


def mat_inv(X: Matrix, N: int) -> Matrix:
    d = mat_det(X, N)
    if math.gcd(d, N) != 1:
        raise NonInvertibleResult(f"matrix {X} is singular mod {N}")
    di = pow(d, -1, N)
    (a, b), (c, dd) = X
    return ((dd * di % N, -b * di % N), (-c * di % N, a * di % N))


def lift_sl2(X: Matrix, N: int) -> Matrix:
    """Integer matrix of determinant 1 congruent to ``X`` (of determinant 1) mod ``N``."""
    (a, b), (c, d) = ((v % N for v in row) for row in X)
    if (a * d - b * c - 1) % N:
        raise ValueError(f"{X} is not in SL2(Z/{N}Z)")
    if N == 1:
        return ((1, 0), (0, 1))
    if b == 0:
        b = N
    while math.gcd(a, b) != 1:
        a += N
    g, u, v = _egcd(a, -b)     # a u - b v = 1
    t = (a * d - b * c - 1) // N
    return ((a, b), (c - t * N * v, d - t * N * u))


def _egcd(x: int, y: int) -> tuple[int, int, int]:
    # g = x u + y v with g = gcd > 0
    old_r, r, old_u, u, old_v, v = x, y, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_u, u = u, old_u - k * u
        old_v, v = v, old_v - k * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _beta_local(Q: QuadForm, p: int) -> tuple[tuple, tuple]:
    a, b, c = Q.a, Q.b, Q.c
    if Q.disc % 4 == 0:
        h = b // 2
        if a % p:
            return (a, h), (0, 1)
        if c % p:
            return (-h, -c), (1, 0)
        return (-h - a, -h - c), (1, -1)
    if a % p:
        return (a, (b - 1) // 2), (0, 1)
    if c % p:
        return (-(b + 1) // 2, -c), (1, 0)
    return (-(b + 1) // 2 - a, (1 - b) // 2 - c), (1, -1)


def beta_matrix(Q: QuadForm, N: int) -> Matrix:
    """``beta_Q`` in ``GL_2(Z/NZ)``, assembled prime by prime with the CRT."""
    if N < 1:
        raise ValueError("N must be positive")
    if N == 1:
        return ((0, 0), (0, 0))
    entries = [[0, 0], [0, 0]]
    modulus = 1
    for p, k in _factor(N).items():
        pk = p ** k
        local = _beta_local(Q, p)
        for i, j in product(range(2), range(2)):
            x, y = entries[i][j], local[i][j] % pk
            # combine x mod modulus with y mod pk
            t = ((y - x) * pow(modulus, -1, pk)) % pk
            entries[i][j] = x + modulus * t
        modulus *= pk
    M: Matrix = ((entries[0][0] % N, entries[0][1] % N), (entries[1][0] % N, entries[1][1] % N))
    if math.gcd(mat_det(M, N), N) != 1:
        raise NonInvertibleResult(f"beta_Q for {Q} is singular mod {N}")
    return M


def _canon(M: Matrix, N: int) -> Matrix:
    neg = tuple(tuple(-v % N for v in row) for row in M)
    return min(M, neg)  # type: ignore[return-value]


def w_group(N: int, theta: CMPoint) -> list[Matrix]:
    """``{(t - sB, -sC; sA, t)}`` invertible mod ``N``, one representative per ``+-I`` class."""
    A, B, C = theta.A, theta.B, theta.C
    seen: dict[Matrix, None] = {}
    for t, s in product(range(N), repeat=2):
        M: Matrix = (((t - s * B) % N, (-s * C) % N), ((s * A) % N, t % N))
        if math.gcd(mat_det(M, N), N) == 1:
            seen.setdefault(_canon(M, N), None)
    return sorted(seen)


def delta_matrix(Q: QuadForm, theta: CMPoint, N: int) -> Matrix:
    """``beta_{Q'}^{-1} beta_Q`` where ``theta = tau_{Q'}``."""
    Qp = theta.form()
    if not (Qp.reduced and Qp.primitive):
        raise ValueError(f"theta must be the CM point of a reduced form, got {Qp}")
    return mat_mul(mat_inv(beta_matrix(Qp, N), N), beta_matrix(Q, N), N)
