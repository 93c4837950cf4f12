"""Benchmark the compiled kernels against their pure-Python twins.

Every case is first checked for exact agreement (the two backends promise
bit-identical results), then timed with timeit; the table reports the best
per-call time over --repeat rounds.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --quick
"""

import argparse
import math
import sys
import timeit

from multicurve import dtlattice, topology
from multicurve._kernels import _pykernels

try:
    from multicurve._kernels import _ckernels
except ImportError:
    _ckernels = None

SYM = (3.0, 3.0, 3.0)  # square once-punctured torus, traces of the root slopes


def ball_args(name, L):
    surface, pants = topology.builtin_surface(name)
    n = 3 * surface.genus - 3 + surface.punctures
    ws = tuple(0.9 + 0.15 * i for i in range(n))
    ls = tuple(1.1 - 0.1 * i for i in range(n))
    return ws, ls, dtlattice.parity_masks(pants), float(L)


def cases(quick):
    balls = [
        ("S11", 10000),
        ("S11", 100000),
        ("S04", 100000),
        ("S12", 100),
        ("S12", 300),
        ("S20", 30),
        ("S20", 60),
    ]
    if quick:
        balls = [(s, L) for s, L in balls if L not in (100000, 300, 60)]
    out = []
    for name, L in balls:
        out.append(("count_ball", "%s L=%g" % (name, L), ball_args(name, L), 1))
    for kernel in ("slopes_upto", "count_upto", "count_multi"):
        out.append((kernel, "torus sym L=30", SYM + (30.0,), 50))
    # stay away from Fibonacci slopes: traces overflow past depth ~25 there
    out.append(("trace_of_slope", "torus sym 1/250", SYM + (1, 250), 2000))
    return out


def per_call(fn, args, number, repeat):
    times = timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)
    return min(times) / number


def fmt(seconds):
    if seconds < 1e-4:
        return "%8.2f us" % (seconds * 1e6)
    return "%8.3f ms" % (seconds * 1e3)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timing rounds per case")
    ap.add_argument("--quick", action="store_true", help="drop the largest rungs")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled backend not built, nothing to compare against")
        return 1

    print("python %s" % sys.version.split()[0])
    print("%-15s %-22s %11s %11s %9s" % ("kernel", "case", "compiled", "pure", "speedup"))
    for kernel, label, call, number in cases(args.quick):
        cfn = getattr(_ckernels, kernel)
        pfn = getattr(_pykernels, kernel)
        got_c, got_p = cfn(*call), pfn(*call)
        if got_c != got_p:
            print("%-15s %-22s backends disagree: %r vs %r" % (kernel, label, got_c, got_p))
            return 1
        tc = per_call(cfn, call, number, args.repeat)
        tp = per_call(pfn, call, number, args.repeat)
        print("%-15s %-22s %s %s %8.1fx" % (kernel, label, fmt(tc), fmt(tp), tp / tc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
