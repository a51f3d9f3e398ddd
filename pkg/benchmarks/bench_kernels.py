"""Compare the compiled and pure-Python exact kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import time

from quatpoincare import exactla
from quatpoincare.clifford import even_module
from quatpoincare.epa import build_epa, direct_sum_pi, solve_equivariant
from quatpoincare.exactla import QMatrix


def solve_7_0():
    return solve_equivariant(even_module(7, 0, "Sigma*1"))


def matmul_64():
    rng = random.Random(0)
    a = QMatrix.from_rows([[rng.randint(-9, 9) for _ in range(64)] for _ in range(64)])
    return a @ a @ a


def jacobi_3_2():
    W = even_module(3, 2, "Sigma*1")
    return build_epa(W, direct_sum_pi(W, [-1]))


WORKLOADS = {"solve (7,0) equivariance": solve_7_0, "64x64 integer matmul": matmul_64,
             "build + Jacobi (3,2)": jacobi_3_2}


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if exactla.BACKEND == "compiled" else [])
    original = exactla.BACKEND
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends))
    try:
        for name, fn in WORKLOADS.items():
            times = []
            for b in backends:
                exactla.use_backend(b)
                times.append(best_of(fn, args.repeat))
            print(f"{name:28s}" + "".join(f"{t:11.4f}s" for t in times))
    finally:
        exactla.use_backend(original)


if __name__ == "__main__":
    main()
