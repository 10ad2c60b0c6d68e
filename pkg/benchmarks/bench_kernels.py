"""Benchmark: compiled Khachiyan kernel vs the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from convexlab._kernels import _fallback

try:
    from convexlab._kernels import _khachiyan
except ImportError:
    _khachiyan = None

CASES = [
    (256, 3),
    (2048, 3),
    (4096, 4),
    (8192, 5),
]


def point_cloud(n_points, dim, seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n_points, dim))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    pts *= rng.uniform(0.5, 1.0, size=(n_points, 1))
    return np.hstack([pts, np.ones((n_points, 1))])


def run(kernel, Q, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel(Q.copy(), 1e-7, 200_000)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    print(f"{'case':>14} {'python':>10} {'cython':>10} {'speedup':>8}  iters  max|du|")
    for n_points, dim in CASES:
        Q = point_cloud(n_points, dim, seed=n_points + dim)
        t_py, (u_py, it_py, _) = run(_fallback.khachiyan_weights, Q)
        if _khachiyan is None:
            print(f"{n_points:>7}x{dim:<6} {t_py * 1e3:>8.1f}ms   (extension not built)")
            continue
        t_cy, (u_cy, it_cy, _) = run(_khachiyan.khachiyan_weights, Q)
        dmax = float(np.max(np.abs(u_py - u_cy)))
        print(
            f"{n_points:>7}x{dim:<6} {t_py * 1e3:>8.1f}ms {t_cy * 1e3:>8.1f}ms "
            f"{t_py / t_cy:>7.2f}x  {it_py}/{it_cy}  {dmax:.2e}"
        )


if __name__ == "__main__":
    main()
