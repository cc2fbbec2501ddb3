"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel on both backends and checks that they agree.
"""
import argparse
import time

import numpy as np

from ramcert._kernels import compiled_backend, python_backend


def _unit(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(rng):
    tri = np.array([[0.0, 0.0, 1.0], [0.9, 0.0, 0.43], [0.1, 0.8, 0.59]])
    tri /= np.linalg.norm(tri, axis=1)[:, None]
    for n in (8, 24, 60):
        pts = _unit(rng, n)
        yield f"candidate_farthest n={n}", lambda b, p=pts: b.candidate_farthest(p)[0]
    pts, dirs = _unit(rng, 20), _unit(rng, 200_000)
    yield "min_angle_field 20 x 200k", lambda b: float(b.min_angle_field(pts, dirs).max())
    yield "triangle_sample_max res=400", lambda b: b.triangle_sample_max(tri, tri[1:], 400)[0]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if compiled_backend is None:
        print("compiled kernels are not built; run: python3 setup.py build_ext --inplace")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s} {'|diff|':>9s}")
    for name, fn in cases(rng):
        tp, vp = _time(lambda: fn(python_backend), args.repeat)
        tc, vc = _time(lambda: fn(compiled_backend), args.repeat)
        print(f"{name:32s} {tp * 1e3:12.2f} {tc * 1e3:14.2f} {tp / tc:8.1f} {abs(vp - vc):9.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
