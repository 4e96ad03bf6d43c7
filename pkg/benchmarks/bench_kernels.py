"""Timing comparison of the numba and numpy kernel backends.

Runs every hot kernel on identical inputs through both implementations,
checks they agree, and prints a table with the speedup.  Works whether
or not numba is installed; without it only the numpy column is timed.

Usage: python benchmarks/bench_kernels.py [--steps N] [--points N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from steinshapes import PathConfig, StarDomain, normalize, path
from steinshapes import _kernels

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--points", type=int, default=1200)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    pts = rng.standard_normal((args.points, 2))
    vals = np.sin(pts[:, 0]) + pts[:, 1] ** 2
    mats = rng.standard_normal((args.points, 4))
    circle = np.cos(np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False))

    dom = normalize(StarDomain(1.0, (0.05, 0.1), (0.0, 0.02)), "volume")
    cosc, sinc, _ = dom._packed
    base = dom.base_radius
    dt = 5e-4
    steps = rng.standard_normal((args.steps, 2)) * np.sqrt(dt)

    cases = [
        (
            "pair_seminorm",
            lambda f: f(pts, vals, 0.5),
            _kernels._pair_seminorm_loop,
            _kernels._pair_seminorm_numpy,
        ),
        (
            "matrix_pair_seminorm",
            lambda f: f(pts, mats, 0.5),
            _kernels._matrix_pair_seminorm_loop,
            _kernels._matrix_pair_seminorm_numpy,
        ),
        (
            "circle_lag_seminorm",
            lambda f: f(circle, 0.5),
            _kernels._circle_lag_seminorm_loop,
            _kernels._circle_lag_seminorm_numpy,
        ),
        (
            "reflect_path",
            lambda f: f(0.1, 0.0, steps[:, 0], steps[:, 1], base, cosc, sinc),
            _kernels._reflect_path_loop,
            _kernels._reflect_path_loop,
        ),
    ]

    print(f"numba available: {HAS_NUMBA}   live backend: {_kernels.backend()}")
    print(f"{'kernel':24s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for name, call, loop_impl, numpy_impl in cases:
        t_np, out_np = best_of(lambda: call(numpy_impl), args.repeats)
        row = f"{name:24s} {1e3 * t_np:12.2f}"
        if HAS_NUMBA:
            jitted = njit(cache=True)(loop_impl)
            call(jitted)  # compile outside the timer
            t_nb, out_nb = best_of(lambda: call(jitted), args.repeats)
            if isinstance(out_np, tuple):
                agree = all(np.array_equal(x, y) for x, y in zip(out_np, out_nb))
            else:
                agree = out_np == out_nb
            row += f" {1e3 * t_nb:12.2f} {t_np / t_nb:8.1f}x"
            if not agree:
                row += "  MISMATCH"
        print(row)

    cfg = PathConfig(dt=dt, horizon=min(50.0, args.steps * dt), burn_in=1.0, seed=3)
    t_path, _ = best_of(lambda: path(dom, cfg), args.repeats)
    print(f"\npath() end to end via live backend: {1e3 * t_path:.2f} ms "
          f"({cfg.n_steps} steps)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
