"""Compare the compiled and pure-Python interval kernels.

    python benchmarks/bench_kernel.py [--sizes 10 100 1000] [--repeat 5]

Part one times the kernel primitives on random canonical endpoint tuples.
Part two runs a fixed name workload (unions, intersections and validation
of scheme-built names) in a subprocess per backend, selected through
``CMSPACE_PURE``.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from gmpy2 import mpq

from cmspace.kernel import DIFF, INTER, SYMDIFF, UNION, backends

OPS = {"union": UNION, "inter": INTER, "diff": DIFF, "symdiff": SYMDIFF}

WORKLOAD = """
import time
from cmspace import LEBESGUE, get_cover, name_of_scheme, union, intersection, validate_mu_prefix
from cmspace.kernel import BACKEND
from cmspace.schemes import Periodic, HalfLine, geometric_pack
cs = get_cover(LEBESGUE)
schemes = [Periodic(LEBESGUE, p, 1, s) for p in (2, 3, 5, 7) for s in (0, 1)]
schemes += [HalfLine(LEBESGUE, 0), geometric_pack()]
t = time.perf_counter()
names = [name_of_scheme(s, cs) for s in schemes]
for a in names:
    for b in names:
        assert validate_mu_prefix(union(a, b), 10).ok
        if a.finite or b.finite:
            assert validate_mu_prefix(intersection(a, b), 10).ok
print(BACKEND, time.perf_counter() - t)
"""


def random_set(rng, k):
    pts = sorted({mpq(rng.randrange(-10**6, 10**6), rng.randrange(1, 50)) for _ in range(2 * k + 2)})
    pts = pts[: 2 * k]
    return tuple(pts)


def primitives(sizes, repeat):
    rng = random.Random(0)
    mods = backends()
    print(f"{'size':>6} {'op':>16} " + " ".join(f"{n:>10}" for n in mods) + "   speedup")
    for size in sizes:
        a, b = random_set(rng, size), random_set(rng, size)
        number = max(1, 20000 // size)
        rows = [(f"combine {k}", lambda m, c=c: m.combine(a, b, c)) for k, c in OPS.items()]
        rows += [(f"measure {k}", lambda m, c=c: m.combine_measure(a, b, c)) for k, c in OPS.items()]
        rows += [("subset", lambda m: m.subset(a, b))]
        for label, fn in rows:
            times = {}
            for name, mod in mods.items():
                best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=repeat))
                times[name] = best / number * 1e6
            cells = " ".join(f"{times[n]:>8.1f}us" for n in mods)
            speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
            print(f"{size:>6} {label:>16} {cells} {speed}")


def workload():
    for pure in ("", "1"):
        env = dict(os.environ, CMSPACE_PURE=pure)
        out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"workload {out[0]:>7}: {float(out[1]):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-workload", action="store_true")
    args = ap.parse_args()
    primitives(args.sizes, args.repeat)
    if not args.skip_workload:
        workload()


if __name__ == "__main__":
    main()
