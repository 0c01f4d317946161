"""Time the hot kernels on every available backend.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from linespace.kernels import available_backends


def cases(mod):
    y0 = (0.1j, 0.2 + 0j, 0.5 + 0.1j, -0.3j)
    m = np.repeat(np.arange(4, dtype=np.int64), 4)
    n = np.tile(np.arange(4, dtype=np.int64), 4)
    c = (np.arange(16) + 1j).astype(complex)
    return {
        "geodesic_accel x1000": lambda: [mod.geodesic_accel(-1, 0.3 + 0.1j, 1j, 0.5, 0.2j) for _ in range(1000)],
        "rk4_geodesic 1000 steps": lambda: mod.rk4_geodesic(-1, y0, 1e-3, 1000, 1 - 1e-9),
        "poly_taylor 16 terms x100": lambda: [mod.poly_taylor(m, n, c, 0.3 + 0.2j, 3) for _ in range(100)],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    results = {}
    for name, mod in backends.items():
        for label, fn in cases(mod).items():
            results[label, name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    labels = list(cases(backends["python"]))
    names = list(backends)
    print(f"{'kernel':28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label in labels:
        row = f"{label:28s}" + "".join(f"{results[label, n] * 1e3:10.3f}ms" for n in names)
        if "cython" in backends:
            row += f"{results[label, 'python'] / results[label, 'cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
