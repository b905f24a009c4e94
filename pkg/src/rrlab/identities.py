"""Product sides of the identity families and the sum-versus-product harness.

Every product side is a :class:`ProductSpec`: a rational power of ``q`` times
a list of Pochhammer and theta factors.  Families offering two equivalent
product forms build both (``branch="n_form"`` and ``branch="m_form"``).
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import IndexOutOfRange, InvalidFamilyParams
from .hl import sums
from .qcore import FactorSpec, QSeries, expand_factors

FAMILIES = ("G", "H", "Dyson9", "AG", "Bressoud", "A2n2_a", "A2n2_b", "Cn1", "Dn1_2",
            "Mixed", "An11_limit", "NearRect")
TWO_BRANCH = ("A2n2_a", "A2n2_b", "Cn1", "Dn1_2", "An11_limit")
STARS = ("1a", "1b", "2", "3")


@dataclass(frozen=True)
class ProductSpec:
    """``q^prefactor * prod(factors)``; ``kappa`` is the family modulus when there is one."""

    prefactor: Fraction
    factors: tuple[FactorSpec, ...]
    kappa: int | None = None

    def expand(self, order_q) -> QSeries:
        body = expand_factors(self.factors, Fraction(order_q) - self.prefactor)
        return body.shift(self.prefactor)

    def to_json(self) -> dict:
        return {"prefactor": str(self.prefactor), "kappa": self.kappa,
                "factors": [f.to_json() for f in self.factors]}


def _poch(a, b, power=1):
    return FactorSpec.poch(a, b, power)


def _theta(a, b, power=1):
    return FactorSpec.theta(a, b, power)


def _ratio(kappa: int, width: int) -> list[FactorSpec]:
    """``(q^kappa; q^kappa)^width / (q; q)^width``."""
    return [_poch(kappa, kappa, width), _poch(1, 1, -width)]


def _pair_thetas(k: int, kappa: int, shift: int) -> list[FactorSpec]:
    """``prod_{1<=i<j<=k} theta(q^(j-i), q^(i+j+shift); q^kappa)``."""
    out = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out += [_theta(j - i, kappa), _theta(i + j + shift, kappa)]
    return out


def _qbinomial_factors(top: int, bottom: int) -> list[FactorSpec]:
    """``[top, bottom]_q`` as a ratio of infinite Pochhammer symbols."""
    return [_poch(bottom + 1, 1), _poch(top - bottom + 1, 1), _poch(1, 1, -1), _poch(top + 1, 1, -1)]


def _simple(kappa: int, i: int) -> ProductSpec:
    # (q^kappa;q^kappa)/(q) * theta(q^i; q^kappa)
    return ProductSpec(Fraction(0), tuple(_ratio(kappa, 1) + [_theta(i, kappa)]), kappa)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidFamilyParams(msg)


def kappa_of(family: str, m: int, n: int) -> int:
    """The modulus attached to a family."""
    if family in ("A2n2_a", "A2n2_b"):
        return 2 * m + 2 * n + 1
    if family == "Cn1":
        return 2 * m + 2 * n + 2
    if family == "Dn1_2":
        return 2 * m + 2 * n
    if family == "Mixed":
        raise InvalidFamilyParams("the mixed modulus depends on sigma")
    if family in ("An11_limit", "NearRect"):
        return m + n
    raise InvalidFamilyParams(f"no modulus for family {family}")


def product_side(family: str, m: int = 1, n: int = 1, extra: int | None = None,
                 branch: str = "n_form") -> ProductSpec:
    """Symbolic product side.

    ``extra`` is ``i`` for AG and Bressoud, ``sigma`` for Mixed and ``k`` for
    NearRect; ``k > m`` selects the nearly-rectangular variant with a
    leading Gaussian binomial.
    """
    if branch not in ("n_form", "m_form"):
        raise InvalidFamilyParams(f"unknown branch {branch!r}")
    if family == "G":
        return ProductSpec(Fraction(0), (_theta(1, 5, -1),), 5)
    if family == "H":
        return ProductSpec(Fraction(0), (_theta(2, 5, -1),), 5)
    if family == "Dyson9":
        return ProductSpec(Fraction(0), tuple(_ratio(9, 1)), 9)
    if family == "AG":
        i = extra
        _need(m >= 1, "AG needs m >= 1")
        if i is None or not 1 <= i <= m + 1:
            raise IndexOutOfRange(f"AG needs 1 <= i <= {m + 1}")
        return _simple(2 * m + 3, i)
    if family == "Bressoud":
        i = extra
        _need(n >= 1, "Bressoud needs n >= 1")
        if i is None or not 1 <= i <= n + 1:
            raise IndexOutOfRange(f"Bressoud needs 1 <= i <= {n + 1}")
        return _simple(2 * n + 2, i)
    _need(m >= 1 and n >= 1, f"{family} needs positive m and n")
    if family in ("A2n2_a", "A2n2_b"):
        kappa = 2 * m + 2 * n + 1
        b = family == "A2n2_b"
        if branch == "n_form":
            single = [_theta(i if b else i + m, kappa) for i in range(1, n + 1)]
            fs = _ratio(kappa, n) + single + _pair_thetas(n, kappa, 0 if b else -1)
        else:
            single = [_theta(i if b else i + 1, kappa) for i in range(1, m + 1)]
            fs = _ratio(kappa, m) + single + _pair_thetas(m, kappa, 0 if b else 1)
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    if family == "Cn1":
        kappa = 2 * m + 2 * n + 2
        h = kappa // 2
        if branch == "n_form":
            fs = [_poch(2, 2), _poch(h, h), _poch(kappa, kappa, n - 1), _poch(1, 1, -(n + 1))]
            fs += [_theta(i, h) for i in range(1, n + 1)] + _pair_thetas(n, kappa, 0)
        else:
            fs = _ratio(kappa, m) + [_theta(i + 1, kappa) for i in range(1, m + 1)]
            fs += _pair_thetas(m, kappa, 1)
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    if family == "Dn1_2":
        _need(n >= 2, "Dn1_2 needs n >= 2")
        kappa = 2 * m + 2 * n
        if branch == "n_form":
            fs = [_poch(kappa, kappa, n), _poch(2, 2, -1), _poch(1, 1, -(n - 1))]
            fs += _pair_thetas(n, kappa, -1)
        else:
            fs = _ratio(kappa, m) + [_theta(i, kappa) for i in range(1, m + 1)]
            fs += _pair_thetas(m, kappa, 0)
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    if family == "Mixed":
        sigma = extra
        _need(sigma in (0, 1), "Mixed needs sigma in {0, 1}")
        kappa = 2 * m + n + 2
        fs = _ratio(kappa, m) + [_theta(i - sigma + 1, kappa) for i in range(1, m + 1)]
        fs += _pair_thetas(m, kappa, 1 - sigma)
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    if family == "An11_limit":
        kappa = m + n
        k = n if branch == "n_form" else m
        fs = [_poch(kappa, kappa, k - 1), _poch(1, 1, -k)]
        fs += [_theta(j - i, kappa) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    if family == "NearRect":
        k = extra
        _need(k is not None and k >= 0, "NearRect needs k >= 0")
        kappa = m + n
        fs = [_poch(n, n), _poch(kappa, kappa, n - 1), _poch(1, 1, -n)]
        if k <= m:
            fs += [_theta(i + k, kappa) for i in range(1, n)]
            fs += [_theta(j - i, kappa) for i in range(1, n) for j in range(i + 1, n)]
        else:
            fs += _qbinomial_factors(k - m + n - 1, n - 1)
            fs += [_theta(j - i, kappa) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        return ProductSpec(Fraction(0), tuple(fs), kappa)
    raise InvalidFamilyParams(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# sum sides


def sum_side_series(family: str, m: int = 1, n: int = 1, extra: int | None = None,
                    order: int = 100, *, kind: str | None = None) -> QSeries:
    """The multi-sum or Hall-Littlewood side of a family to ``O(q^order)``."""
    if family == "G":
        return sums.ag_sum(1, 2, order)
    if family == "H":
        return sums.ag_sum(1, 1, order)
    if family == "Dyson9":
        return sums.sum_side(2, 3, 0, order, kind=kind)
    if family == "AG":
        if extra is None:
            raise IndexOutOfRange("AG needs i")
        return sums.ag_sum(m, extra, order)
    if family == "Bressoud":
        if extra is None:
            raise IndexOutOfRange("Bressoud needs i")
        return sums.bressoud_sum(n, extra, order)
    _need(m >= 1 and n >= 1, f"{family} needs positive m and n")
    if family == "A2n2_a":
        return sums.sum_side(m, 2 * n - 1, 0, order, kind=kind)
    if family == "A2n2_b":
        return sums.sum_side(m, 2 * n - 1, 1, order, kind=kind)
    if family == "Cn1":
        return sums.sum_side(m, 2 * n, 0, order, kind=kind)
    if family == "Dn1_2":
        _need(n >= 2, "Dn1_2 needs n >= 2")
        return sums.sum_side(m, 2 * n - 2, 1, order, kind=kind)
    if family == "Mixed":
        _need(extra in (0, 1), "Mixed needs sigma in {0, 1}")
        return sums.sum_side(m, n, extra, order, kind=kind)
    if family == "An11_limit":
        return sums.rect_limit(m, 0, n, order, p_normalized=True, kind=kind)
    if family == "NearRect":
        _need(extra is not None and extra >= 0, "NearRect needs k >= 0")
        return sums.rect_limit(m, extra, n, order, kind=kind)
    raise InvalidFamilyParams(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class VerificationReport:
    family: str
    params: dict
    order: int
    status: str
    first_mismatch: dict | None = None
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"family": self.family, "params": self.params, "order": self.order,
               "status": self.status}
        if self.first_mismatch is not None:
            out["first_mismatch"] = self.first_mismatch
        return out


def compare(lhs: QSeries, rhs: QSeries, order) -> dict | None:
    """``None`` when the series agree below ``order``, else the first differing exponent."""
    order = Fraction(order)
    d = (lhs - rhs)
    v = d.valuation
    bound = order if d.order_q is None else min(order, d.order_q)
    if v is None or v >= bound:
        return None
    return {"exponent": str(v), "lhs": str(_coeff(lhs, v)), "rhs": str(_coeff(rhs, v))}


def _coeff(s: QSeries, e: Fraction) -> Fraction:
    try:
        return s.coeff(e)
    except ValueError:
        return Fraction(0)


def verify(family: str, m: int = 1, n: int = 1, extra: int | None = None, order: int = 100,
           branch: str = "n_form", *, product: ProductSpec | None = None,
           kind: str | None = None) -> VerificationReport:
    """Compare a family's sum side with a product side to ``O(q^order)``.

    ``branch="both"`` checks every product form against the same sum side.
    ``product`` overrides the product side (used to test the harness itself).
    """
    params = {"m": m, "n": n, "extra": extra, "branch": branch}
    t0 = time.perf_counter()
    lhs = sum_side_series(family, m, n, extra, order, kind=kind)
    t1 = time.perf_counter()
    if product is not None:
        specs = [product]
    elif branch == "both":
        forms = ("n_form", "m_form") if family in TWO_BRANCH else ("n_form",)
        specs = [product_side(family, m, n, extra, b) for b in forms]
    else:
        specs = [product_side(family, m, n, extra, branch)]
    mismatch = None
    for spec in specs:
        mismatch = compare(lhs, spec.expand(order), order)
        if mismatch is not None:
            break
    t2 = time.perf_counter()
    return VerificationReport(family, params, order, "pass" if mismatch is None else "fail",
                              mismatch, {"sum_side": t1 - t0, "product_side": t2 - t1})


# ---------------------------------------------------------------------------
# normalized series and their theta-product forms


def phi_kappa(star: str, m: int, n: int) -> int:
    if star in ("1a", "1b"):
        return 2 * m + 2 * n + 1
    if star == "2":
        return 2 * m + 2 * n + 2
    if star == "3":
        return 2 * m + 2 * n
    raise InvalidFamilyParams(f"unknown series {star!r}")


def phi_prefactor(star: str, m: int, n: int) -> Fraction:
    """Rational exponent of the normalizing power of ``q``."""
    k = phi_kappa(star, m, n)
    if star == "1a":
        return Fraction(m * n * (4 * m * n - 4 * m + 2 * n - 3), 12 * k)
    if star == "1b":
        return Fraction(m * n * (4 * m * n + 2 * m + 2 * n + 3), 12 * k)
    if star == "2":
        return Fraction(m * (2 * n + 1) * (2 * m * n - m + n - 1), 12 * k)
    return Fraction(m * (2 * n - 1) * (2 * m * n + n + 1), 12 * k)


def _check_star(star: str, m: int, n: int) -> None:
    if star not in STARS:
        raise InvalidFamilyParams(f"unknown series {star!r}")
    _need(m >= 1 and n >= 1, "need positive m and n")
    if star == "3":
        _need(n >= 2, "the third series needs n >= 2")


def phi_sum_params(star: str, m: int, n: int) -> tuple[int, int]:
    """``(hall_littlewood_base, sigma)`` of the sum behind a normalized series."""
    return {"1a": (2 * n - 1, 0), "1b": (2 * n - 1, 1), "2": (2 * n, 0), "3": (2 * n - 2, 1)}[star]


def phi_series(star: str, m: int, n: int, order, *, kind: str | None = None) -> QSeries:
    """``q^prefactor * sum_{lambda_1<=m} q^((sigma+1)|lambda|) P_{2 lambda}(1, q, ...; q^base)``."""
    _check_star(star, m, n)
    pre = phi_prefactor(star, m, n)
    base, sigma = phi_sum_params(star, m, n)
    inner = int(-(-(Fraction(order) - pre) // 1))
    return sums.sum_side(m, base, sigma, max(inner, 0), kind=kind).shift(pre)


def theta_exponents(star: str, m: int, n: int) -> tuple[int, Counter]:
    """``(kappa, {j: e_j})`` with the normalized series equal to ``q^pre prod theta_j^e_j``.

    ``theta_j = theta(q^j; q^kappa)`` for ``j < kappa/2`` and
    ``theta_{kappa/2} = (q^(kappa/2); q^kappa)``.
    """
    _check_star(star, m, n)
    k = phi_kappa(star, m, n)
    c: Counter = Counter()

    def ceil_half(j: int) -> int:
        return -(-j // 2)

    if star == "1a":
        for j in range(1, m + 1):
            c[j] -= 1
        for j in range(1, m + n + 1):
            c[j] -= min(m, n - 1, ceil_half(j) - 1)
    elif star == "1b":
        for j in range(1, m + n + 1):
            c[j] -= min(m, n, j // 2)
    elif star == "2":
        for j in range(1, m + 1):
            c[j] -= 1
        for j in range(1, m + n + 2):
            c[j] -= min(m, n - 1, ceil_half(j) - 1)
        for j in range(n, (m + n) // 2 + 1):
            c[2 * j + 1] -= 1
    else:
        for j in range(1, m + n + 1):
            c[j] -= min(m, n - 1, j // 2)
        for j in range(n, (m + n) // 2 + 1):
            c[2 * j] -= 1
    return k, Counter({j: e for j, e in c.items() if e})


def _theta_j(j: int, kappa: int, power: int) -> FactorSpec:
    if 2 * j == kappa:
        return FactorSpec.theta_half(kappa, power)
    return _theta(j, kappa, power)


def phi_product(star: str, m: int, n: int) -> ProductSpec:
    """Pure theta-product form of a normalized series."""
    k, exps = theta_exponents(star, m, n)
    fs = tuple(_theta_j(j, k, e) for j, e in sorted(exps.items()))
    return ProductSpec(phi_prefactor(star, m, n), fs, k)


def psi_exponent(which: int, m: int, n: int) -> tuple[int, Fraction]:
    """``(kappa, exponent)`` of the leading power in the theta-ratio form."""
    if which == 1:
        k = 2 * m + 2 * n + 1
        return k, Fraction(-m * n * (m + 1), 2 * k)
    if which == 2:
        k = 2 * m + 2 * n + 2
        return k, Fraction(-m * (m + 1) * (2 * n + 1), 4 * k)
    raise InvalidFamilyParams(f"unknown ratio {which!r}")


def psi_product(which: int, m: int, n: int) -> ProductSpec:
    """``q^e prod_{j<=m} theta(q^(2j); q^kappa) / theta(q^j; q^kappa)``."""
    _need(m >= 1 and n >= 1, "need positive m and n")
    k, e = psi_exponent(which, m, n)
    exps: Counter = Counter()
    for j in range(1, m + 1):
        exps[j] -= 1
        exps[2 * j] += 1
    # theta(q^a; q^k) = theta(q^(k-a); q^k) folds every index below k/2
    folded: Counter = Counter()
    for j, v in exps.items():
        folded[min(j, k - j)] += v
    fs = tuple(_theta_j(j, k, v) if 2 * j != k else _theta(j, k, v)
               for j, v in sorted(folded.items()) if v)
    return ProductSpec(e, fs, k)


def psi_series(which: int, m: int, n: int, order, *, kind: str | None = None) -> QSeries:
    """Quotient of two normalized series: ``1a/1b`` (which=1) or ``2(m,n)/3(m,n+1)`` (which=2)."""
    if which == 1:
        num, den = ("1a", m, n), ("1b", m, n)
    elif which == 2:
        num, den = ("2", m, n), ("3", m, n + 1)
    else:
        raise InvalidFamilyParams(f"unknown ratio {which!r}")
    # both series start at q^prefactor with coefficient 1
    vnum, vden = phi_prefactor(*num), phi_prefactor(*den)
    top = phi_series(*num, Fraction(order) + vnum, kind=kind)
    bot = phi_series(*den, Fraction(order) + 2 * vden - vnum, kind=kind)
    res = top / bot
    return res.truncate(min(res.order_q, Fraction(order)))


def rr_cfrac(depth: int, order: int) -> QSeries:
    """``1/(1 + q/(1 + q^2/(1 + ...)))`` cut after ``q^depth``, to ``O(q^order)``."""
    if depth < 1:
        raise ValueError("depth must be positive")
    t = QSeries.one(order) + QSeries.monomial(depth, 1, order)
    for k in range(depth - 1, 0, -1):
        t = QSeries.one(order) + QSeries.monomial(k, 1, order) * t.inv(order)
    return t.inv(order)

