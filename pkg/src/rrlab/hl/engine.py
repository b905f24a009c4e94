"""Truncated chain sums for Hall-Littlewood series at geometric arguments.

``Q'_lambda(1, q, ..., q^(n-1); q^n)`` is a sum over chains
``0 = mu^(n) <= ... <= mu^(1) <= mu^(0) = lambda'`` of products of column
factors ``q^(mu^(a)_i + n*C(d, 2)) * [mu^(a-1)_i - mu^(a)_{i+1} choose d]_{q^n}``
with ``d = mu^(a-1)_i - mu^(a)_i``.  Every factor has nonnegative coefficients,
so the least exponent reachable from a partial chain is additive and gives
exact pruning against the truncation order.

The sweep fixes one level at a time and, within a level, one column at a
time.  A state after choosing column ``j`` of level ``a`` is
``(nu_1..nu_j, mu_j..mu_L)``: the chosen child columns, the parent value of
the column whose q-binomial is still open, and the untouched parent columns.
States reached along different paths merge.  Each state carries its series on
the window ``[least exponent, N - lower bound of the remaining cost)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..qcore import QSeries
from . import _kernels
from .partitions import conjugate, make_partition

_INF = np.int64(1) << 50


@dataclass
class _Gen:
    rows: np.ndarray   # int32 (states, width)
    u: np.ndarray      # least exponent of the attached series
    lb: np.ndarray     # lower bound for the cost still to come
    off: np.ndarray
    lo: np.ndarray
    ln: np.ndarray
    SM: np.ndarray     # int64 residues (total, primes)
    SF: np.ndarray     # float64 copy


class _Weights:
    """Polynomials in ``t = q^n`` used as transition weights, stored densely in t."""

    def __init__(self, n: int, order: int, primes: np.ndarray):
        self.n = n
        self.cap = max(-(-order // n), 1)
        self.primes = primes
        self._index: dict = {}
        self._coeffs: list[list[int]] = []
        self.add(("one",), [1])
        self._frozen = None

    def add(self, key, coeffs: Sequence[int]) -> int:
        if key in self._index:
            return self._index[key]
        self._index[key] = len(self._coeffs)
        self._coeffs.append(list(coeffs[: self.cap]))
        self._frozen = None
        return self._index[key]

    def qbin_table(self, vmax: int) -> np.ndarray:
        # truncated Pascal rule [a, b] = [a-1, b-1] + t^b [a-1, b]
        table = np.zeros((vmax + 1, vmax + 1), dtype=np.int64)
        cap = self.cap
        prev: list[list[int]] = []
        for a in range(vmax + 1):
            row = []
            for b in range(a + 1):
                if b == 0 or b == a:
                    c = [1]
                else:
                    c = list(prev[b - 1]) + [0] * max(0, min(cap, len(prev[b]) + b) - len(prev[b - 1]))
                    for i, x in enumerate(prev[b]):
                        if i + b >= cap:
                            break
                        c[i + b] += x
                row.append(c)
                table[a, b] = self.add(("qbin", a, b), c)
            prev = row
        return table

    def invpoch_table(self, vmax: int) -> np.ndarray:
        # 1/(t;t)_k: partitions into parts <= k
        table = np.zeros(vmax + 1, dtype=np.int64)
        c = [1] + [0] * (self.cap - 1)
        table[0] = self.add(("invpoch", 0), c)
        for k in range(1, vmax + 1):
            for i in range(k, self.cap):
                c[i] += c[i - k]
            table[k] = self.add(("invpoch", k), c)
        return table

    def arrays(self):
        if self._frozen is None:
            lens = np.array([len(c) for c in self._coeffs], dtype=np.int64)
            offs = np.concatenate([[0], np.cumsum(lens)[:-1]]).astype(np.int64)
            flat = [x for c in self._coeffs for x in c]
            if max(flat, default=0) < 2 ** 62:
                F = np.array(flat, dtype=np.int64)
                WF = F.astype(np.float64)
                WM = F[:, None] % self.primes[None, :]
            else:
                WF = np.array([float(x) for x in flat], dtype=np.float64)
                WM = np.array([[x % int(p) for p in self.primes] for x in flat], dtype=np.int64)
            self._frozen = (offs, lens, WM.reshape(len(flat), len(self.primes)), WF)
        return self._frozen


def _step_costs(n: int, levels: int, vmax: int) -> np.ndarray:
    """``C[s][v]``: least cost to lower a column from ``v`` to 0 in ``s`` steps.

    A step ``v -> w`` costs ``w + n*C(v - w, 2)``; the final step must reach 0.
    """
    C = np.full((levels + 1, vmax + 1), _INF, dtype=np.int64)
    C[0, 0] = 0
    v = np.arange(vmax + 1)
    for s in range(1, levels + 1):
        for val in range(vmax + 1):
            w = v[: val + 1]
            d = val - w
            C[s, val] = np.min(w + n * (d * (d - 1) // 2) + C[s - 1, : val + 1])
    return np.minimum(C, _INF)


class ChainSweep:
    """Run chain sums to ``O(q^order)`` with geometric variables ``1..q^(n-1)``."""

    def __init__(self, n: int, order: int, vmax: int, n_primes: int = 4, kind: str | None = None,
                 slack: int | None = None):
        self.n = n
        self.N = int(order)
        self.vmax = vmax
        self.primes = _kernels.PRIMES[:n_primes].copy()
        self.kind = kind or _kernels.backend()
        # no weight coefficient beyond the slack above the least total exponent is ever used
        self.weights = _Weights(n, self.N if slack is None else slack, self.primes)
        self.qbin = self.weights.qbin_table(vmax)
        self.invpoch = self.weights.invpoch_table(vmax)
        self.C = _step_costs(n, n, vmax)
        self.stats = {"transitions": 0, "states": 0, "max_states": 0}

    # storage ----------------------------------------------------------------

    def _alloc(self, rows, u, lb) -> _Gen:
        ln = (self.N - lb - u).astype(np.int64)
        off = (np.cumsum(ln) - ln).astype(np.int64)
        total = int(ln.sum())
        P = len(self.primes)
        self.stats["states"] += len(u)
        self.stats["max_states"] = max(self.stats["max_states"], len(u))
        return _Gen(rows, u.astype(np.int64), lb.astype(np.int64), off, u.astype(np.int64), ln,
                    np.zeros((total, P), dtype=np.int64), np.zeros(total, dtype=np.float64))

    def _seed(self, rows: np.ndarray, lb: np.ndarray) -> _Gen:
        u = np.zeros(len(rows), dtype=np.int64)
        keep = lb < self.N
        gen = self._alloc(rows[keep], u[keep], lb[keep])
        gen.SM[gen.off] = 1
        gen.SF[gen.off] = 1.0
        return gen

    def _dedupe(self, rows: np.ndarray):
        if rows.shape[0] == 0:
            return rows, np.zeros(0, dtype=np.int64)
        width = rows.shape[1]
        bits = max(int(rows.max()).bit_length(), 1)
        if bits * width <= 62:
            key = np.zeros(rows.shape[0], dtype=np.int64)
            for c in range(width):
                key = (key << bits) | rows[:, c].astype(np.int64)
            _, first, inv = np.unique(key, return_index=True, return_inverse=True)
            return rows[first], inv.ravel()
        uniq, inv = np.unique(rows, axis=0, return_inverse=True)
        return uniq, inv.ravel()

    def _advance(self, gen: _Gen, rep, child_rows, shift, wid, child_lb) -> _Gen:
        """Apply one sweep step given candidate children of ``gen``'s states."""
        u_c = gen.u[rep] + shift
        keep = u_c + child_lb < self.N
        rep, child_rows, shift, wid = rep[keep], child_rows[keep], shift[keep], wid[keep]
        u_c, child_lb = u_c[keep], child_lb[keep]
        uniq, inv = self._dedupe(child_rows)
        u_new = np.full(len(uniq), _INF, dtype=np.int64)
        np.minimum.at(u_new, inv, u_c)
        lb_new = np.zeros(len(uniq), dtype=np.int64)
        lb_new[inv] = child_lb
        new = self._alloc(uniq, u_new, lb_new)
        offs, lens, WM, WF = self.weights.arrays()
        order = np.argsort(inv, kind="stable")
        _kernels.accumulate(rep[order].astype(np.int64), inv[order].astype(np.int64),
                            shift[order].astype(np.int64), wid[order].astype(np.int64),
                            gen.off, gen.lo, gen.ln, gen.SM, gen.SF,
                            new.off, new.lo, new.ln, new.SM, new.SF,
                            offs, lens, WM, WF, np.int64(self.n), self.primes, kind=self.kind)
        self.stats["transitions"] += len(rep)
        return new

    # sweeps -----------------------------------------------------------------

    def pairs_prefix(self, m: int, weight_exp: int) -> _Gen:
        """Level-0 states ``mu0 = (r1, r1, ..., rm, rm)`` weighted by
        ``q^(weight_exp * sum r) / prod (t;t)_{r_j - r_{j+1}}``."""
        Cn = self.C[self.n]
        rows = np.zeros((1, m), dtype=np.int32)
        gen = self._seed(rows, np.zeros(1, dtype=np.int64))
        for k in range(m):
            prev = gen.rows[:, k - 1] if k else np.full(len(gen.u), self.vmax, dtype=np.int32)
            counts = prev.astype(np.int64) + 1
            rep = np.repeat(np.arange(len(counts)), counts)
            r = (np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)).astype(np.int32)
            child = gen.rows[rep].copy()
            child[:, k] = r
            shift = weight_exp * r.astype(np.int64)
            wid = self.invpoch[prev[rep] - r] if k else np.zeros(len(r), dtype=np.int64)
            child_lb = gen.lb[rep] + 2 * Cn[r]
            gen = self._advance(gen, rep, child, shift, wid, child_lb)
        # close the last difference r_m - 0
        rep = np.arange(len(gen.u))
        wid = self.invpoch[gen.rows[:, m - 1]]
        gen = self._advance(gen, rep, gen.rows.copy(), np.zeros(len(rep), dtype=np.int64), wid, gen.lb.copy())
        L = 2 * m
        mu = np.zeros((len(gen.u), L + 2), dtype=np.int32)
        mu[:, 0:L:2] = gen.rows
        mu[:, 1:L:2] = gen.rows
        gen.rows = mu
        return gen

    def single(self, mu0: Sequence[int]) -> _Gen:
        L = len(mu0)
        rows = np.zeros((1, L + 2), dtype=np.int32)
        rows[0, :L] = mu0
        lb = np.array([int(self.C[self.n][list(mu0)].sum())], dtype=np.int64)
        return self._seed(rows, lb)

    def levels(self, gen: _Gen) -> _Gen:
        """Run the intermediate levels ``a = 1..n-1`` on level-0 states.

        Rows have width ``L + 2``: ``L`` columns, a zero guard column and the
        slot for the parent value of the open column.
        """
        n = self.n
        L = gen.rows.shape[1] - 2
        for a in range(1, n):
            s = n - a
            Cs, Cs1 = self.C[s], self.C[s + 1]
            for c in range(L + 1):
                rows = gen.rows
                mu_j = rows[:, c].astype(np.int64)
                if c:
                    prev = rows[:, c - 1].astype(np.int64)
                    upper = np.minimum(mu_j, prev)
                else:
                    upper = mu_j
                counts = upper + 1
                rep = np.repeat(np.arange(len(counts)), counts)
                nu = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
                mj = mu_j[rep]
                d = mj - nu
                shift = nu + n * (d * (d - 1) // 2)
                if c:
                    pend = rows[rep, L + 1].astype(np.int64)
                    pv = prev[rep]
                    wid = self.qbin[pend - nu, pend - pv]
                else:
                    wid = np.zeros(len(nu), dtype=np.int64)
                child = rows[rep].copy()
                child[:, c] = nu
                child[:, L + 1] = mj
                child_lb = gen.lb[rep] - Cs1[mj] + Cs[nu]
                gen = self._advance(gen, rep, child, shift, wid, child_lb)
            gen.rows[:, L + 1] = 0
        return gen

    def finish(self, gen: _Gen) -> QSeries:
        """Close the last level (all columns to zero) and read off the series."""
        n = self.n
        L = gen.rows.shape[1] - 2
        rows = gen.rows[:, :L].astype(np.int64)
        shift = (n * (rows * (rows - 1) // 2)).sum(axis=1)
        rep = np.arange(len(gen.u))
        sink_rows = np.zeros((len(rep), 1), dtype=np.int32)
        sink = self._advance(gen, rep, sink_rows, shift, np.zeros(len(rep), dtype=np.int64),
                             np.zeros(len(rep), dtype=np.int64))
        if len(sink.u) == 0:
            return QSeries.zero(self.N)
        # sink window starts at its least exponent
        lo = int(sink.lo[0])
        vals = _kernels.crt_nonnegative(sink.SM, self.primes)
        modulus = math.prod(int(p) for p in self.primes)
        fmax = float(sink.SF.max()) if len(sink.SF) else 0.0
        if fmax * 4.0 >= modulus:
            raise _NeedMorePrimes(fmax)
        for v, f in zip(vals, sink.SF.tolist()):
            if abs(v - f) > 1e-6 * max(1.0, f):
                raise ArithmeticError("residue and float channels disagree")
        return QSeries(vals, 1, lo, 1, self.N)


class _NeedMorePrimes(Exception):
    def __init__(self, magnitude: float):
        super().__init__(magnitude)
        self.magnitude = magnitude


def _primes_for(bound_bits: int) -> int:
    return max(2, -(-(bound_bits + 4) // 30))


def _run(build, n: int, order: int, vmax: int, kind: str | None, stats: dict | None,
         slack: int | None = None):
    n_primes = 4
    while True:
        sweep = ChainSweep(n, order, vmax, n_primes, kind, slack)
        try:
            res = build(sweep)
        except _NeedMorePrimes as exc:
            needed = _primes_for(int(math.log2(exc.magnitude)) + 2)
            if needed <= n_primes:
                raise OverflowError("coefficients exceed the available residue range")
            n_primes = needed
            continue
        if stats is not None:
            stats.update(sweep.stats)
        return res


def geometric_q_prime(lam, n: int, order: int, *, kind: str | None = None,
                      stats: dict | None = None) -> QSeries:
    """``Q'_lambda(1, q, ..., q^(n-1); q^n)`` to ``O(q^order)``."""
    lam = make_partition(lam)
    if not lam:
        return QSeries.one(order)
    mu0 = conjugate(lam)
    vmax = max(mu0)
    least = int(_step_costs(n, n, vmax)[n][list(mu0)].sum())
    if least >= order:
        return QSeries.zero(order)

    def build(sw: ChainSweep) -> QSeries:
        gen = sw.single(mu0)
        gen = sw.levels(gen)
        return sw.finish(gen)

    return _run(build, n, order, vmax, kind, stats, slack=order - least)


def chain_sum_side(m: int, n: int, sigma: int, order: int, *, kind: str | None = None,
                   stats: dict | None = None) -> QSeries:
    """``sum_{lambda_1 <= m} q^((sigma+1)|lambda|) P_{2 lambda}(1, q, ...; q^n)`` to ``O(q^order)``."""
    if m < 1 or n < 1 or sigma not in (0, 1):
        raise ValueError("need m, n >= 1 and sigma in {0, 1}")
    # each pair (r, r) of mu0 costs at least (sigma+1) r + 2 C_n(r)
    vmax = 0
    C = _step_costs(n, n, order + 2)
    while (sigma + 1) * (vmax + 1) + 2 * C[n][vmax + 1] < order:
        vmax += 1

    def build(sw: ChainSweep) -> QSeries:
        gen = sw.pairs_prefix(m, sigma + 1)
        gen = sw.levels(gen)
        return sw.finish(gen)

    return _run(build, n, order, max(vmax, 1), kind, stats)
