"""Compare the numba and numpy kernels on a scan block and a basin block.

    python benchmarks/bench_kernels.py [--grid 200] [--transient 20000]
"""
import argparse
import time

import numpy as np

from rotamime import _nb, _np


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=200)
    ap.add_argument("--transient", type=int, default=20_000)
    ap.add_argument("--basin-samples", type=int, default=2000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    b, inv_n = 3 / 11, 1 / 11
    a = np.linspace(100.0, 180.0, args.grid)
    x0 = np.full_like(a, 0.03)
    scan_args = (_np.EOS, a, b, _np.MAP_F, inv_n, x0, args.transient, 100, 2000, 1e-9)

    _nb.scan_block(_np.EOS, a[:2], b, _np.MAP_F, inv_n, x0[:2], 10, 4, 4, 1e-9)  # compile
    t_nb = best_of(lambda: _nb.scan_block(*scan_args), args.repeats)
    t_np = best_of(lambda: _np.scan_block(*scan_args), args.repeats)
    print(f"scan_block  grid={args.grid} transient={args.transient}: "
          f"numba {t_nb:.3f}s  numpy {t_np:.3f}s  speedup {t_np / t_nb:.1f}x")

    orbit = np.sort(_np.trajectory(_np.EOS, 110.0, b, _np.MAP_F, inv_n, 0.03, 50_000)[-11:])
    xs = np.linspace(-5, 5, args.basin_samples)
    basin_args = (_np.EOS, 110.0, b, _np.MAP_F, inv_n, xs, orbit, 11, 100_000, 1e-9)
    _nb.basin_block(*basin_args)  # compile
    t_nb = best_of(lambda: _nb.basin_block(*basin_args), args.repeats)
    t_np = best_of(lambda: _np.basin_block(*basin_args), args.repeats)
    print(f"basin_block samples={args.basin_samples}: "
          f"numba {t_nb:.3f}s  numpy {t_np:.3f}s  speedup {t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
