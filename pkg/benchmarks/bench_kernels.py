"""Compare the compiled polynomial kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5]

Runs each kernel on the same random sparse polynomials with both
implementations, checks the results agree, and prints timings.
"""

import argparse
import random
import sys
import timeit
from fractions import Fraction

from truncw import _kernels_py

try:
    from truncw import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def random_poly(rng: random.Random, nterms: int, nvars: int, degree: int) -> dict:
    out = {}
    for _ in range(nterms):
        mono = tuple(sorted(rng.randrange(nvars) for _ in range(rng.randint(0, degree))))
        out[mono] = out.get(mono, Fraction(0)) + Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return {k: v for k, v in out.items() if v}


def workload(seed: int = 0):
    rng = random.Random(seed)
    return [(random_poly(rng, 60, 24, 4), random_poly(rng, 60, 24, 4)) for _ in range(20)]


def run(impl, pairs):
    acc = {}
    for a, b in pairs:
        impl.poly_mul(a, b)
        impl.poly_mul_axpy(acc, a, b, Fraction(1, 3))
        impl.poly_axpy(acc, a, Fraction(-2))
    return acc


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    pairs = workload()
    impls = [("python", _kernels_py)]
    if _kernels_c is None:
        print("compiled extension not built; timing the fallback only")
    else:
        impls.append(("cython", _kernels_c))
        if run(_kernels_c, pairs) != run(_kernels_py, pairs):
            print("MISMATCH between implementations", file=sys.stderr)
            return 1
    times = {}
    for name, impl in impls:
        t = min(timeit.repeat(lambda: run(impl, pairs), number=1, repeat=args.repeat))
        times[name] = t
        print(f"{name:7s} {t * 1e3:9.2f} ms")
    if len(times) == 2:
        print(f"speedup {times['python'] / times['cython']:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
