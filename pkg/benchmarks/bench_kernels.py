"""Compare the compiled and numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from spinorbasis import _kernels_py

try:
    from spinorbasis import _ckernels
except ImportError:
    _ckernels = None


CASES = [
    ("legendre", 7, 4096),
    ("legendre", 7, 262144),
    ("legendre", 16, 65536),
    ("laguerre", 6, 4096),
    ("laguerre", 6, 262144),
    ("laguerre", 20, 65536),
]


def _args(kind, order, npts):
    rng = np.random.default_rng(0)
    if kind == "legendre":
        return (order, rng.uniform(-1, 1, npts))
    return (order, 3.0, rng.uniform(0, 30, npts))


def best_time(func, args, repeat):
    return min(timeit.repeat(lambda: func(*args), number=1, repeat=repeat))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    a = p.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the numpy backend is timed")
    print(f"{'kernel':<10}{'order':>6}{'points':>9}{'numpy ms':>11}{'compiled ms':>13}{'speedup':>9}")
    for kind, order, npts in CASES:
        args = _args(kind, order, npts)
        name = f"{kind}_table"
        t_py = best_time(getattr(_kernels_py, name), args, a.repeat)
        if _ckernels is None:
            print(f"{kind:<10}{order:>6}{npts:>9}{1e3 * t_py:>11.2f}{'-':>13}{'-':>9}")
            continue
        fc = getattr(_ckernels, name)
        assert np.allclose(fc(*args), getattr(_kernels_py, name)(*args), rtol=1e-12, atol=1e-12)
        t_c = best_time(fc, args, a.repeat)
        print(f"{kind:<10}{order:>6}{npts:>9}{1e3 * t_py:>11.2f}{1e3 * t_c:>13.2f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
