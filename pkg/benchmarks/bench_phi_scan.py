"""Time the Phi scan over AGL(2, q^2) with both kernel backends.

    python benchmarks/bench_phi_scan.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from perfcode import _accel, fields, groups, kernels

CASES = [(1, "G"), (1, "N"), (2, "G"), (2, "N"), (3, "N")]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [True, False] if _accel.HAVE_NUMBA else [False]
    print(f"{'n':>2} {'scope':>5} {'elements':>12} " + " ".join(f"{'numba' if b else 'numpy':>10}" for b in backends))
    for n, scope in CASES:
        tw = fields.tower_create(n)
        G = groups.make_agl2(tw)
        H = groups.make_hq(tw, G)
        mats = G.gl2(subfield_only=scope == "N")
        hv = H.translations()
        cells, results = [], []
        for b in backends:
            kernels.phi_scan_affine(tw, mats, hv, use_numba=b)      # JIT warm-up
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = kernels.phi_scan_affine(tw, mats, hv, use_numba=b)
                best = min(best, time.perf_counter() - t0)
            results.append(res)
            cells.append(f"{best * 1e3:9.1f}ms")
        same = all(np.array_equal(r.g, results[0].g) and np.array_equal(r.h, results[0].h) for r in results)
        print(f"{n:>2} {scope:>5} {results[0].scanned:>12} " + " ".join(cells) + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
