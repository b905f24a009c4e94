"""Accumulation kernels for the chain-sum sweep.

Series attached to sweep states are stored twice: as float64 (magnitude
tracking) and as residues modulo a handful of 31-bit primes (exact values,
recovered by CRT at the end).  ``accumulate`` adds ``q^shift * weight * src``
into ``dst`` for every transition of one sweep step.

The numba path is the default.  Setting ``RRLAB_DISABLE_NUMBA=1`` selects the
vectorised numpy path, which computes the same thing.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

PRIMES = np.array([2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
                   2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
                   2147483423, 2147483399], dtype=np.int64)

try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

_ENV_FLAG = "RRLAB_DISABLE_NUMBA"


def backend() -> str:
    """Name of the kernel backend selected for the next call."""
    flag = os.environ.get(_ENV_FLAG, "").strip().lower()
    if flag in ("1", "true", "yes", "on"):
        return "numpy"
    if not HAVE_NUMBA:
        warnings.warn("numba is not installed; using the slower numpy kernels",
                      RuntimeWarning, stacklevel=2)
        return "numpy"
    return "numba"


def _accumulate_loops(t_src, t_dst, t_shift, t_w,
                      s_off, s_lo, s_len, SM, SF,
                      d_off, d_lo, d_len, DM, DF,
                      w_off, w_len, WM, WF, stride, primes):
    n_primes = primes.shape[0]
    for t in range(t_src.shape[0]):
        s = t_src[t]
        d = t_dst[t]
        base = s_lo[s] + t_shift[t] - d_lo[d]
        dl = d_len[d]
        do = d_off[d]
        so = s_off[s]
        wo = w_off[t_w[t]]
        wl = w_len[t_w[t]]
        for k in range(s_len[s]):
            tgt0 = base + k
            if tgt0 >= dl:
                break
            sf = SF[so + k]
            if sf == 0.0:
                continue
            for j in range(wl):
                tgt = tgt0 + j * stride
                if tgt >= dl:
                    break
                DF[do + tgt] += sf * WF[wo + j]
                for p in range(n_primes):
                    DM[do + tgt, p] = (DM[do + tgt, p] + SM[so + k, p] * WM[wo + j, p]) % primes[p]


if HAVE_NUMBA:
    _accumulate_numba = numba.njit(cache=True, nogil=True)(_accumulate_loops)
else:  # pragma: no cover
    _accumulate_numba = None


def _accumulate_numpy(t_src, t_dst, t_shift, t_w,
                      s_off, s_lo, s_len, SM, SF,
                      d_off, d_lo, d_len, DM, DF,
                      w_off, w_len, WM, WF, stride, primes, chunk=1 << 18):
    n_t = t_src.shape[0]
    start = 0
    while start < n_t:
        # keep the expanded (transition, source index) arrays bounded in size
        stop = start + 1
        budget = int(s_len[t_src[start]])
        while stop < n_t and budget + s_len[t_src[stop]] <= chunk:
            budget += int(s_len[t_src[stop]])
            stop += 1
        sl = slice(start, stop)
        start = stop
        src, dst, w = t_src[sl], t_dst[sl], t_w[sl]
        lens = s_len[src]
        total = int(lens.sum())
        if total == 0:
            continue
        rep = np.repeat(np.arange(src.shape[0]), lens)
        k = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
        src_idx = s_off[src][rep] + k
        tgt0 = (s_lo[src] + t_shift[sl] - d_lo[dst])[rep] + k
        dlen = d_len[dst][rep]
        keep = (tgt0 < dlen) & (SF[src_idx] != 0.0)
        if not keep.any():
            continue
        rep, src_idx, tgt0, dlen = rep[keep], src_idx[keep], tgt0[keep], dlen[keep]
        dbase = d_off[dst][rep]
        wbase = w_off[w][rep]
        wlen = w_len[w][rep]
        sf = SF[src_idx]
        sm = SM[src_idx]
        for j in range(int(wlen.max())):
            tgt = tgt0 + j * stride
            m = (j < wlen) & (tgt < dlen)
            if not m.any():
                break
            rows = dbase[m] + tgt[m]
            widx = wbase[m] + j
            np.add.at(DF, rows, sf[m] * WF[widx])
            prod = (sm[m] * WM[widx]) % primes
            np.add.at(DM, rows, prod)
            DM %= primes


def accumulate(*args, kind: str | None = None) -> None:
    kind = kind or backend()
    if kind == "numba":
        _accumulate_numba(*args)
    else:
        _accumulate_numpy(*args)


def crt_nonnegative(residues: np.ndarray, primes: np.ndarray) -> list[int]:
    """Combine residue rows into Python integers in ``[0, prod(primes))``."""
    mods = [int(p) for p in primes]
    modulus = 1
    for p in mods:
        modulus *= p
    parts = []
    for p in mods:
        mp_ = modulus // p
        parts.append(mp_ * pow(mp_, -1, p))
    out = []
    for row in residues.tolist():
        acc = 0
        for r, c in zip(row, parts):
            acc += r * c
        out.append(acc % modulus)
    return out
