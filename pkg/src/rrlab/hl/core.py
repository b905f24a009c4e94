"""Exact Hall-Littlewood evaluations.

These routines favour clarity over speed and serve as reference
implementations for the sweep engine in :mod:`rrlab.hl.engine`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from ..errors import TooManyVariables
from ..qcore import (QPower, QSeries, XSpec, _div_binom_inplace, _mul_binom_inplace,
                     as_qexp, exact_divide, geometric_xspec)
from .partitions import (Partition, conjugate, is_horizontal_strip, make_partition,
                         multiplicities, sub_partitions)

MAX_FINITE_VARIABLES = 7


@lru_cache(maxsize=None)
def qbinom_coeffs(n: int, k: int) -> tuple[int, ...]:
    """Coefficients of the Gaussian binomial ``[n choose k]_q``."""
    if k < 0 or k > n or n < 0:
        return ()
    k = min(k, n - k)
    deg = k * (n - k)
    c = [0] * (deg + 1)
    c[0] = 1
    for i in range(1, k + 1):
        # multiply by (1 - q^(n-k+i)), then divide by (1 - q^i); stays polynomial
        _mul_binom_inplace(c, -1, n - k + i, extend=False)
        _div_binom_inplace(c, -1, i)
    return tuple(c)


def qbinom(n: int, k: int, base: int = 1) -> QSeries:
    """Exact ``[n choose k]`` in ``q^base``; zero outside ``0 <= k <= n``."""
    c = qbinom_coeffs(n, k)
    if not c:
        return QSeries.zero()
    return QSeries(list(c), 1, 0, 1, None).subst_power(base)


def poch_t(k: int, base: int = 1) -> QSeries:
    """Exact ``(t;t)_k`` with ``t = q^base``."""
    c = [1] + [0] * (base * k * (k + 1) // 2)
    for i in range(1, k + 1):
        _mul_binom_inplace(c, -1, base * i, extend=False)
    return QSeries(c, 1, 0, 1, None)


def b_lambda(lam, base: int = 1) -> QSeries:
    """``prod_i (t;t)_{m_i(lambda)}`` with ``t = q^base``."""
    res = QSeries.one()
    for m in multiplicities(lam).values():
        res = res * poch_t(m, base)
    return res


def _v_m(m: int, base: int) -> QSeries:
    # prod_{i=1}^m (1 - t^i)/(1 - t)
    res = QSeries.one()
    for i in range(1, m + 1):
        res = res * QSeries(list(qbinom_coeffs(i, 1)), 1, 0, 1, None).subst_power(base)
    return res


def hl_finite(lam, x: XSpec, base: int = 1) -> QSeries:
    """``P_lambda(x_1..x_k; q^base)`` by symmetrising over all of ``S_k``."""
    lam = make_partition(lam)
    k = len(x)
    if k > MAX_FINITE_VARIABLES:
        raise TooManyVariables(f"{k} variables exceed the limit of {MAX_FINITE_VARIABLES}")
    if len(lam) > k:
        return QSeries.zero()
    xs = [p.series() for p in x]
    tq = QSeries.monomial(base)
    parts = list(lam) + [0] * (k - len(lam))
    total = QSeries.zero()
    for w in permutations(range(k)):
        sgn = _perm_sign(w)
        term = QSeries.monomial(0, sgn)
        for i in range(k):
            if parts[i]:
                term = term * xs[w[i]] ** parts[i]
        for i in range(k):
            for j in range(i + 1, k):
                term = term * (xs[w[i]] - tq * xs[w[j]])
        total = total + term
    vander = QSeries.one()
    for i in range(k):
        for j in range(i + 1, k):
            vander = vander * (xs[i] - xs[j])
    mult = multiplicities(lam)
    v = _v_m(k - len(lam), base)
    for m in mult.values():
        v = v * _v_m(m, base)
    return exact_divide(exact_divide(total, vander), v)


def _perm_sign(w) -> int:
    seen = [False] * len(w)
    sign = 1
    for i in range(len(w)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = w[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _psi(lam: Partition, mu: Partition, base: int) -> QSeries:
    # product of (1 - t^{m_j(mu)}) over columns j with a strip box in j+1 but not in j
    lc, mc = conjugate(lam), conjugate(mu)
    width = len(lc) + 1
    lc = lc + (0,) * (width - len(lc))
    mc = mc + (0,) * (width - len(mc))
    theta = [lc[i] - mc[i] for i in range(width)] + [0]
    mult = multiplicities(mu)
    res = QSeries.one()
    for j in range(1, width):
        if theta[j - 1] == 0 and theta[j] == 1:
            res = res * (1 - QSeries.monomial(base * mult.get(j, 0)))
    return res


def hl_branching(lam, x: XSpec, base: int = 1, order_q=None) -> QSeries:
    """``P_lambda(x_1..x_k; q^base)`` through the horizontal-strip branching rule.

    Suitable for many variables.  With ``order_q`` the result is truncated,
    which requires all variable exponents to be nonnegative.
    """
    lam = make_partition(lam)
    xs = [p.series() for p in x]
    subs = [m for m in sub_partitions(lam)]

    @lru_cache(maxsize=None)
    def rec(mu: Partition, k: int) -> QSeries:
        if k == 0:
            return QSeries.one(order_q) if not mu else QSeries.zero(order_q)
        if len(mu) > k:
            return QSeries.zero(order_q)
        total = QSeries.zero(order_q)
        xk = xs[k - 1]
        for nu in subs:
            if len(nu) > k - 1 or not is_horizontal_strip(mu, nu):
                continue
            if order_q is not None and x[k - 1].exp * (sum(mu) - sum(nu)) >= as_qexp(order_q):
                continue
            inner = rec(nu, k - 1)
            if inner.is_zero:
                continue
            term = inner * _psi(mu, nu, base) * xk ** (sum(mu) - sum(nu))
            total = total + term
        return total

    return rec(lam, len(x))


def hl_modified_q(lam, x: XSpec, base: int = 1) -> QSeries:
    """Exact ``Q'_lambda(x; q^base)`` from the chain formula over nested partitions."""
    lam = make_partition(lam)
    top = conjugate(lam)
    n = len(x)
    if not lam:
        return QSeries.one()
    xs = [p.series() for p in x]
    width = len(top)

    def column_weight(mu: Partition, nu: Partition, xa: QSeries) -> QSeries:
        mu = mu + (0,) * (width + 1 - len(mu))
        nu = nu + (0,) * (width + 1 - len(nu))
        w = QSeries.one()
        for i in range(width):
            d = mu[i] - nu[i]
            if d < 0:
                return QSeries.zero()
            qb = qbinom(mu[i] - nu[i + 1], d, base)
            if qb.is_zero:
                return qb
            w = w * qb * QSeries.monomial(base * d * (d - 1) // 2)
            if d:
                w = w * xa ** d
        return w

    @lru_cache(maxsize=None)
    def rec(a: int, mu: Partition) -> QSeries:
        # sum over mu^(a) inside mu = mu^(a-1); the last level must reach zero
        if a == n:
            return column_weight(mu, (), xs[a - 1])
        total = QSeries.zero()
        for nu in sub_partitions(mu):
            w = column_weight(mu, nu, xs[a - 1])
            if w.is_zero:
                continue
            total = total + w * rec(a + 1, nu)
        return total

    if n == 0:
        return QSeries.zero()
    return rec(1, top)


def hl_modified_p(lam, x: XSpec, base: int, order_q) -> QSeries:
    """``P'_lambda = Q'_lambda / b_lambda`` truncated at ``order_q``."""
    return hl_modified_q(lam, x, base).div(b_lambda(lam, base), order_q)


def hl_geometric_reference(lam, n: int, order_q) -> QSeries:
    """``P_lambda(1, q, q^2, ...; q^n)`` through the exact chain formula."""
    return hl_modified_p(lam, geometric_xspec(n), n, order_q)


def principal_specialization_t_equals_q(lam, order_q) -> QSeries:
    """``P_lambda(1, q, q^2, ...; q) = q^{n(lambda)} / b_lambda(q)``."""
    from .partitions import n_stat
    return QSeries.monomial(n_stat(make_partition(lam))).div(b_lambda(lam, 1), order_q)


def _least_lowering(exps: list[Fraction], base: int, vmax: int) -> list[list[Fraction | None]]:
    """``C[a][v]``: least q-exponent for a column of height ``v`` at level ``a`` to reach 0.

    Lowering by ``d`` at level ``a`` contributes ``exps[a]*d + base*C(d, 2)``;
    ``None`` marks heights that cannot reach 0.
    """
    n = len(exps)
    C: list[list[Fraction | None]] = [[None] * (vmax + 1) for _ in range(n + 1)]
    C[n][0] = Fraction(0)
    for a in range(n - 1, -1, -1):
        for v in range(vmax + 1):
            best = None
            for w in range(v + 1):
                rest = C[a + 1][w]
                if rest is None:
                    continue
                d = v - w
                c = exps[a] * d + base * d * (d - 1) // 2 + rest
                if best is None or c < best:
                    best = c
            C[a][v] = best
    return C


def hl_modified_q_truncated(lam, x: XSpec, base: int, order_q) -> QSeries:
    """``Q'_lambda(x; q^base)`` to ``O(q^order_q)`` by a pruned walk over the chains.

    Each column's remaining descent is bounded below by :func:`_least_lowering`,
    so branches that cannot reach below ``order_q`` are skipped.
    """
    lam = make_partition(lam)
    order = as_qexp(order_q)
    if not lam:
        return QSeries.one(order)
    n = len(x)
    if n == 0:
        return QSeries.zero(order)
    top = conjugate(lam)
    exps = [p.exp for p in x]
    C = _least_lowering(exps, base, max(top))
    floor = sum(C[0][v] for v in top)
    total = QSeries.zero(order)
    if floor >= order:
        return total
    xs = [p.series() for p in x]

    def walk(a: int, i: int, mu: Partition, nu: list[int], acc: QSeries, least: Fraction) -> None:
        # least bounds the exponent of every completion of acc
        nonlocal total
        if i == len(mu):
            if a == n - 1:
                total = total + acc
            else:
                walk(a + 1, 0, make_partition(nu), [], acc, least)
            return
        upper = mu[i] if i == 0 else min(mu[i], nu[i - 1])
        for v in range(upper, -1, -1):
            rest = C[a + 1][v]
            if rest is None:
                continue
            d = mu[i] - v
            bound = least + exps[a] * d + base * d * (d - 1) // 2 + rest - C[a][mu[i]]
            if bound >= order:
                continue
            w = acc * QSeries.monomial(base * d * (d - 1) // 2)
            if d:
                w = w * xs[a] ** d
            if i:
                # q-binomial of the previous column, which needs this column's child
                w = w * qbinom(mu[i - 1] - v, mu[i - 1] - nu[i - 1], base)
            if i == len(mu) - 1:
                w = w * qbinom(mu[i], d, base)
            if w.is_zero:
                continue
            nu.append(v)
            walk(a, i + 1, mu, nu, w, bound)
            nu.pop()

    # start with slack for the lowest possible exponent still to come
    walk(0, 0, top, [], QSeries.one(order - floor), floor)
    return total.truncate(order)
