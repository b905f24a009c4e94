"""Time the chain-sum sweep with the numba and numpy kernels on identical workloads.

Run ``python3 benchmarks/bench_kernels.py`` (add ``--quick`` for a short pass).
Each case is computed with both backends and the resulting series must agree.
"""

from __future__ import annotations

import argparse
import time

from rrlab.hl import sums

CASES = [
    # (label, m, n, sigma, order)
    ("sum_side(2, 3, 0) to 200", 2, 3, 0, 200),
    ("sum_side(3, 4, 1) to 200", 3, 4, 1, 200),
    ("sum_side(2, 3, 0) to 400", 2, 3, 0, 400),
]
QUICK = [("sum_side(2, 3, 0) to 100", 2, 3, 0, 100), ("sum_side(3, 4, 1) to 100", 3, 4, 1, 100)]


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="small orders only")
    ap.add_argument("--repeat", type=int, default=1, help="best of this many runs")
    args = ap.parse_args()

    # compile the numba kernel outside the timed region
    sums.sum_side(1, 1, 0, 10, kind="numba")
    print(f"{'case':<28}{'numba s':>10}{'numpy s':>10}{'speedup':>10}  agree")
    for label, m, n, sigma, order in QUICK if args.quick else CASES:
        t_nb, s_nb = best_of(lambda: sums.sum_side(m, n, sigma, order, kind="numba"), args.repeat)
        t_np, s_np = best_of(lambda: sums.sum_side(m, n, sigma, order, kind="numpy"), args.repeat)
        agree = s_nb.agrees(s_np)
        print(f"{label:<28}{t_nb:>10.3f}{t_np:>10.3f}{t_np / t_nb:>10.1f}  {agree}")
        if not agree:
            raise SystemExit(f"backends disagree on {label}")


if __name__ == "__main__":
    main()
