"""Time the compiled kernels against the pure-Python ones on identical work.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 5 --scale 2
"""
import argparse
import random
import timeit
from math import isqrt

from dirichlet_biquad import _kernels_py
from dirichlet_biquad.kernels import available_backends


def workloads(scale: int):
    rng = random.Random(1)
    pairs = [(rng.randint(-10**9, 10**9), rng.randint(1, 10**9)) for _ in range(20000 * scale)]
    nonsquares = [n for n in range(2, 20000 * scale) if isqrt(n) ** 2 != n]
    # Redei inputs: odd prime discriminants of n = product of small primes
    primes = [p for p in range(3, 200) if all(p % d for d in range(2, isqrt(p) + 1))]
    redei = []
    for _ in range(5000 * scale):
        ps = sorted(rng.sample(primes, rng.randint(2, 6)))
        redei.append(([p if p % 4 == 1 else -p for p in ps], ps))
    neg = [-d for d in range(3, 4000 * scale) if (-d) % 4 in (0, 1)]
    pos = [d for d in range(5, 800 * scale) if d % 4 in (0, 1) and isqrt(d) ** 2 != d]

    def kronecker(k):
        f = k.kronecker
        for a, b in pairs:
            f(a, b)

    def cf(k):
        p, e = k.cf_period, k.cf_pm2_index
        for n in nonsquares:
            p(n)
            e(n)

    def redei_corank(k):
        f = k.redei_corank
        for discs, ps in redei:
            f(discs, ps)

    def definite_forms(k):
        f = k.definite_reduced_forms
        for D in neg:
            f(D)

    def indefinite_cycles(k):
        f = k.indefinite_cycles
        for D in pos:
            f(D)

    return {
        "kronecker": kronecker,
        "cf_period+pm2": cf,
        "redei_corank": redei_corank,
        "definite_forms": definite_forms,
        "indefinite_cycles": indefinite_cycles,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=int, default=1)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python kernels are available")
    work = workloads(args.scale)
    print(f"{'kernel':20s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in work.items():
        times = {}
        for bname, mod in backends.items():
            times[bname] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{name:20s}" + "".join(f"{times[b]:11.3f}s" for b in backends)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:9.1f}x"
        print(row)
    assert backends["python"] is _kernels_py


if __name__ == "__main__":
    main()
