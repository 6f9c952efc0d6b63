"""Time the compiled and pure-Python kernels on the same inputs.

    python3 bench/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from symcrit import _purecore
from symcrit.torsion_oracle import torsion_basis

try:
    from symcrit import _fastcore
except ImportError:
    _fastcore = None


def workload():
    # 7-torsion of y^2 = x^3 + x + 1 over F_{5^k}
    B = torsion_basis([0, 0, 0, 1, 1], 5, 7, max_bits=400)
    F = B.field
    C = B.curve()
    rng = random.Random(0)
    a, b = F.random(rng), F.random(rng)
    R = C.random_point(rng)
    n = rng.getrandbits(F.k * 2)
    return dict(F=F, C=C, a=a, b=b, R=R, n=n, P=B.P, Q=B.Q, p=B.p)


def cases(mod, w):
    F, C = w["F"], w["C"]
    f, ell = F.modulus, F.ell
    return {
        "fq_mul": lambda: mod.fq_mul(w["a"], w["b"], f, ell),
        "fq_inv": lambda: mod.fq_inv(w["a"], f, ell),
        "ec_mul": lambda: mod.ec_mul(w["R"], w["n"], C.ainvs, f, ell),
        "miller": lambda: mod.miller(w["P"], w["Q"], w["p"], C.ainvs, f, ell),
        "count_points": lambda: mod.count_points((0, 0, 0, 2, 3), 1009),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    w = workload()
    print(f"field F_{w['F'].ell}^{w['F'].k}, p = {w['p']}")
    backends = [("pure", _purecore)] + ([("cython", _fastcore)] if _fastcore else [])
    results = {}
    for name, mod in backends:
        for kernel, fn in cases(mod, w).items():
            number = 20 if kernel in ("ec_mul", "count_points") else 200
            t = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
            results[(kernel, name)] = t
    print(f"{'kernel':<14}{'pure (us)':>12}{'cython (us)':>14}{'speedup':>10}")
    for kernel in cases(_purecore, w):
        tp = results[(kernel, "pure")]
        tc = results.get((kernel, "cython"))
        if tc is None:
            print(f"{kernel:<14}{tp * 1e6:>12.1f}{'n/a':>14}{'':>10}")
        else:
            print(f"{kernel:<14}{tp * 1e6:>12.1f}{tc * 1e6:>14.1f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
