"""Benchmark the compiled ascent kernel against the numpy fallback.

Runs the same restarts through both lanes over a grid of sizes and exponent
pairs, reports per-call time and the worst relative disagreement of the
returned quotients. Usage:

    python3 benchmarks/ascent_bench.py [--repeats 5] [--seed 53670]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pqcert import kernels
from pqcert.kernels import _fallback

CASES = [
    (16, 16, 1.0, 2.0),
    (16, 16, 4 / 3, 4.0),
    (64, 64, 4 / 3, 4.0),
    (64, 64, 2.0, 2.0),
    (256, 256, 4 / 3, 4.0),
    (256, 64, 2.0, float("inf")),
]


def _time(fn, *args, repeats: int) -> tuple[float, tuple]:
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def run(repeats: int, seed: int) -> None:
    if not kernels.using_compiled_kernel():
        print("compiled kernel unavailable (PQCERT_PURE set or build missing);")
        print("timing the fallback lane only\n")
    rng = np.random.default_rng(seed)
    header = f"{'case':>18} {'fallback':>12} {'compiled':>12} {'speedup':>8} {'rel diff':>10}"
    print(header)
    print("-" * len(header))
    for m, n, p, q in CASES:
        A = np.ascontiguousarray(rng.standard_normal((m, n)))
        X0 = np.ascontiguousarray(
            np.column_stack([np.eye(n), rng.standard_normal((n, 8))])
        )
        args = (A, X0, p, q, 1e-12, 2000)
        t_fb, out_fb = _time(_fallback.ascent_run, *args, repeats=repeats)
        label = f"{m}x{n} ({p:g},{q:g})"
        if kernels.using_compiled_kernel():
            t_c, out_c = _time(kernels._compiled.ascent_run, *args, repeats=repeats)
            ref = np.maximum(np.abs(out_fb[0]), 1e-300)
            rel = float(np.max(np.abs(out_c[0] - out_fb[0]) / ref))
            print(
                f"{label:>18} {t_fb * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
                f"{t_fb / t_c:>7.2f}x {rel:>10.2e}"
            )
        else:
            print(f"{label:>18} {t_fb * 1e3:>10.2f}ms {'-':>12} {'-':>8} {'-':>10}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0xD1A6)
    args = ap.parse_args()
    run(args.repeats, args.seed)


if __name__ == "__main__":
    main()
