"""Explicit multi-sum sides and Hall-Littlewood series at geometric arguments.

Nested sums over ``r_1 >= ... >= r_m >= 0`` are evaluated from the innermost
index outwards on plain integer coefficient lists, so each level costs
``O(R^2)`` list convolutions where ``R ~ sqrt(N)`` bounds the indices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from ..errors import IndexOutOfRange, NoStabilization
from ..qcore import QSeries
from . import engine
from .core import b_lambda, qbinom_coeffs
from .partitions import double, make_partition, n_stat, partitions_in_box

Coeffs = list[int]


# ---------------------------------------------------------------------------
# integer-list helpers (power series in q with integer coefficients, length N)


@lru_cache(maxsize=4096)
def _inv_poch(k: int, base: int, order: int) -> tuple[int, ...]:
    """``1/(q^base; q^base)_k`` to ``O(q^order)``."""
    c = [0] * order
    if order:
        c[0] = 1
    for i in range(1, k + 1):
        step = base * i
        for j in range(step, order):
            c[j] += c[j - step]
    return tuple(c)


def _mul_into(out: Coeffs, a: Coeffs | tuple[int, ...], b: Coeffs | tuple[int, ...], shift: int) -> None:
    """``out += q^shift * a * b`` truncated to ``len(out)``."""
    n = len(out)
    if shift >= n:
        return
    for i, x in enumerate(a):
        if not x:
            continue
        lim = n - shift - i
        if lim <= 0:
            break
        if lim > len(b):
            lim = len(b)
        base = shift + i
        for j in range(lim):
            y = b[j]
            if y:
                out[base + j] += x * y


def _to_series(c: Coeffs, order: int) -> QSeries:
    return QSeries(list(c), 1, 0, 1, order)


def _nested_sum(m: int, order: int, exponent: Callable[[int, int], int],
                last_base: int = 1) -> QSeries:
    """``sum_{r_1>=...>=r_m>=0} q^(sum_j exponent(j, r_j)) / prod_j D_j(r_j - r_{j+1})``.

    ``D_j = (q;q)`` for ``j < m`` and ``(q^last_base; q^last_base)`` for ``j = m``,
    with ``r_{m+1} = 0``.  ``exponent(j, r)`` must be at least ``r^2``.
    """
    rmax = 0
    while (rmax + 1) ** 2 < order:
        rmax += 1
    # G[r] = series for level j with r_j = r
    G: list[Coeffs] = []
    for r in range(rmax + 1):
        e = exponent(m, r)
        g = [0] * order
        if e < order:
            _mul_into(g, [1], _inv_poch(r, last_base, order), e)
        G.append(g)
    for j in range(m - 1, 0, -1):
        H: list[Coeffs] = []
        for r in range(rmax + 1):
            e = exponent(j, r)
            h = [0] * order
            if e < order:
                for s in range(r + 1):
                    _mul_into(h, G[s], _inv_poch(r - s, 1, order - e), e)
            H.append(h)
        G = H
    total = [0] * order
    for g in G:
        for k, x in enumerate(g):
            total[k] += x
    return _to_series(total, order)


# ---------------------------------------------------------------------------
# classical multi-sums


def ag_sum(m: int, i: int, order: int) -> QSeries:
    """Andrews-Gordon sum ``sum q^(r_1^2+...+r_m^2+r_i+...+r_m) / ((q)_{r_1-r_2}...(q)_{r_m})``."""
    if m < 1:
        raise ValueError("m must be positive")
    if not 1 <= i <= m + 1:
        raise IndexOutOfRange(f"i={i} outside 1..{m + 1}")
    return _nested_sum(m, order, lambda j, r: r * r + (r if j >= i else 0))


def bressoud_sum(n: int, i: int, order: int) -> QSeries:
    """Bressoud's even-modulus sum, with ``(q^2;q^2)_{r_n}`` as the last denominator."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= i <= n + 1:
        raise IndexOutOfRange(f"i={i} outside 1..{n + 1}")
    return _nested_sum(n, order, lambda j, r: r * r + (r if j >= i else 0), last_base=2)


def q2r_sum(r: int, n: int, delta: int, order: int) -> QSeries:
    """``sum_{r>=r_1>=...>=r_n>=0} q^(r^2-r+sum r_j^2+r_j) / ((q)_{r-r_1}...(q^(2-delta);q^(2-delta))_{r_n})``.

    Equals ``P_{(2^r)}(1, q, q^2, ...; q^(2n+delta))``.
    """
    if r < 0 or n < 1 or delta not in (0, 1):
        raise ValueError("need r >= 0, n >= 1 and delta in {0, 1}")
    lead = r * r - r
    if lead >= order:
        return QSeries.zero(order)
    budget = order - lead
    # G[s] = inner sum with r_n = s, built upwards to r_1
    G: list[Coeffs] = []
    for s in range(r + 1):
        g = [0] * budget
        e = s * s + s
        if e < budget:
            _mul_into(g, [1], _inv_poch(s, 2 - delta, budget), e)
        G.append(g)
    for _ in range(n - 1):
        H: list[Coeffs] = []
        for t in range(r + 1):
            h = [0] * budget
            e = t * t + t
            if e < budget:
                for s in range(t + 1):
                    _mul_into(h, G[s], _inv_poch(t - s, 1, budget), e)
            H.append(h)
        G = H
    total = [0] * budget
    for s in range(r + 1):
        _mul_into(total, G[s], _inv_poch(r - s, 1, budget), 0)
    return _to_series(total, budget).shift(lead)


def m1_pair_sum(n: int, sigma: int, order: int) -> QSeries:
    """The ``m = 1`` chain sum written over pairs ``(r_j, s_j)`` with ``r_0 = s_0``.

    Summand: ``q^((sigma+1) r_0) / (q^n;q^n)_{r_0}`` times, for ``j = 1..n``,
    ``q^(r_j + s_j + n C(r_{j-1}-r_j, 2) + n C(s_{j-1}-s_j, 2))``
    ``[r_{j-1}-s_j, r_{j-1}-r_j]_{q^n} [s_{j-1}, s_j]_{q^n}``, with ``r_n = s_n = 0``.
    """
    if n < 1 or sigma not in (0, 1):
        raise ValueError("need n >= 1 and sigma in {0, 1}")

    def qb(a: int, b: int) -> tuple[int, ...]:
        c = qbinom_coeffs(a, b)
        if not c or n == 1:
            return c
        out = [0] * ((len(c) - 1) * n + 1)
        out[::n] = c
        return tuple(out)

    def c2(d: int) -> int:
        return n * d * (d - 1) // 2

    def drop_cost(r: int) -> int:
        # least n*sum C(d_j, 2) over n drops d_j summing to r
        q_, rem = divmod(r, n)
        return n * ((n - rem) * q_ * (q_ - 1) // 2 + rem * (q_ + 1) * q_ // 2)

    # levels j..n given (r_{j-1}, s_{j-1}) = (r, s)
    @lru_cache(maxsize=None)
    def tail(j: int, r: int, s: int) -> tuple[int, ...]:
        out = [0] * order
        if j == n:
            # r_n = s_n = 0
            e = c2(r) + c2(s)
            if e < order:
                out[e] = 1
            return tuple(out)
        for rj in range(r + 1):
            for sj in range(min(s, r) + 1):
                a = qb(r - sj, r - rj)
                if not a:
                    continue
                e = rj + sj + c2(r - rj) + c2(s - sj)
                if e >= order:
                    continue
                _mul_into(out, _conv(a, qb(s, sj), order - e), tail(j + 1, rj, sj), e)
        return tuple(out)

    total = [0] * order
    r0 = 0
    while (sigma + 1) * r0 + 2 * drop_cost(r0) < order:
        e = (sigma + 1) * r0
        _mul_into(total, _inv_poch(r0, n, order - e), tail(1, r0, r0), e)
        r0 += 1
    return _to_series(total, order)


def _conv(a, b, length: int) -> Coeffs:
    out = [0] * length
    _mul_into(out, a, b, 0)
    return out


# ---------------------------------------------------------------------------
# Hall-Littlewood series at geometric arguments


def hl_geometric(lam, n: int, order: int, *, kind: str | None = None) -> QSeries:
    """``P_lambda(1, q, q^2, ...; q^n) = Q'_lambda(1, ..., q^(n-1); q^n) / b_lambda(q^n)``."""
    lam = make_partition(lam)
    qp = engine.geometric_q_prime(lam, n, order, kind=kind)
    return qp.div(b_lambda(lam, n), order) if not qp.is_zero else qp


def _sum_side_lambda(m: int, n: int, sigma: int, order: int, kind: str | None) -> QSeries:
    total = QSeries.zero(order)
    for lam in partitions_in_box(m, order, order):
        two = double(lam)
        e = (sigma + 1) * sum(lam)
        if e + n_stat(two) >= order:
            continue
        total = total + hl_geometric(two, n, order - e, kind=kind).shift(e)
    return total


def sum_side(m: int, n: int, sigma: int, order: int, *, route: str = "chain",
             kind: str | None = None) -> QSeries:
    """``sum_{lambda_1 <= m} q^((sigma+1)|lambda|) P_{2 lambda}(1, q, ...; q^n)`` to ``O(q^order)``.

    ``route="chain"`` sums the chain formula over all ``mu^(0)`` with even
    conjugate at once; ``route="lambda"`` enumerates ``lambda`` and evaluates
    each ``P_{2 lambda}`` separately.
    """
    if m < 1 or n < 1 or sigma not in (0, 1):
        raise ValueError("need m, n >= 1 and sigma in {0, 1}")
    if route == "chain":
        return engine.chain_sum_side(m, n, sigma, order, kind=kind)
    if route == "lambda":
        return _sum_side_lambda(m, n, sigma, order, kind)
    raise ValueError(f"unknown route {route!r}")


def _rect_term(m: int, k: int, n: int, r: int, order: int, kind: str | None,
               p_normalized: bool = False) -> QSeries:
    if k <= m:
        lam = (m,) * r + ((k,) if k else ())
        lead = m * r * (r - 1) // 2 + k * r
    else:
        lam = (k,) + (m,) * r
        lead = m * r * (r + 1) // 2
    # Q_lambda(1, q, q^2, ...; q^n) = Q'_lambda(1, ..., q^(n-1); q^n)
    q = engine.geometric_q_prime(lam, n, order + lead, kind=kind).shift(-lead)
    if p_normalized:
        return q.div(b_lambda(lam, n), order) if not q.is_zero else q
    return q


def rect_limit(m: int, k: int, n: int, order: int, *, r_cap: int | None = None,
               p_normalized: bool = False, kind: str | None = None,
               stats: dict | None = None) -> QSeries:
    """Stabilised ``q^(-m C(r,2) - k r) Q_{(m^r, k)}(1, q, ...; q^n)`` as ``r -> oo``.

    For ``k > m`` the partition is ``(k, m^r)`` with normalisation
    ``q^(-m C(r+1, 2))``.  With ``p_normalized`` the limit uses ``P`` in
    place of ``Q``.  The value is returned once two consecutive steps in ``r``
    leave the series unchanged below ``order``.
    """
    if m < 1 or n < 1 or k < 0:
        raise ValueError("need m, n >= 1 and k >= 0")
    cap = 4 * (order + m + k) if r_cap is None else r_cap
    prev = _rect_term(m, k, n, 1, order, kind, p_normalized)
    streak = 0
    for r in range(2, cap + 1):
        cur = _rect_term(m, k, n, r, order, kind, p_normalized)
        streak = streak + 1 if cur.agrees(prev) else 0
        prev = cur
        if streak >= 2:
            if stats is not None:
                stats["r"] = r
            return cur
    raise NoStabilization(f"no stabilization for (m, k, n) = ({m}, {k}, {n}) up to r = {cap}")
