"""Compare the compiled and pure-Python elimination kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Times the Bruhat pivot sweep on Cartan matrices of a few families under the
one-line-lex (or first) linear extension, checks that both backends return
identical pivots, and prints one line per case.
"""

import argparse
import time

from echelonmotion import kernels
from echelonmotion.echelon import cartan_matrix
from echelonmotion.extensions import LinearExtension, first_extension
from echelonmotion.families import boolean, bruhat_symmetric, tamari


def cases():
    for name, P in [("boolean(5)", boolean(5)), ("tamari(5)", tamari(5)),
                    ("bruhat(4)", bruhat_symmetric(4)), ("bruhat(5)", bruhat_symmetric(5))]:
        sigma = first_extension(P)
        yield name, cartan_matrix(P, sigma).array
    P = bruhat_symmetric(6)
    yield "bruhat(6)", cartan_matrix(P, LinearExtension(tuple(range(1, P.n + 1)))).array


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.BACKEND != "compiled":
        print("compiled extension not available; only the pure-Python kernel will run")
    print(f"{'case':<12} {'n':>5} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, W in cases():
        rows = W.tolist()
        t_py, piv_py = best_of(lambda: kernels.bruhat_pivots(rows, backend="python"), args.repeat)
        if kernels.BACKEND == "compiled":
            t_c, piv_c = best_of(lambda: kernels.bruhat_pivots(W, backend="compiled"), args.repeat)
            assert piv_c == piv_py, f"backends disagree on {name}"
            print(f"{name:<12} {len(rows):>5} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<12} {len(rows):>5} {t_py:>10.4f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
