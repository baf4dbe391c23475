#!/usr/bin/env python3
"""Compare the compiled and pure-numpy FWHT kernels.

Times the in-place transform of a complex batch for a range of dimensions,
then a single n = 20 walk on each backend. Results go to stdout as CSV.

    python3 benchmarks/bench_fwht.py --max-n 20 --repeats 5
"""

import argparse
import csv
import sys
import timeit

import numpy as np

from qwmix import z2n
from qwmix.graphs import hypercube_spec
from qwmix.walk import circulant_walk


def bench_kernel(kernel, n, rows, repeats):
    rng = np.random.default_rng(n)
    base = rng.standard_normal((rows, 1 << n)) + 1j * rng.standard_normal((rows, 1 << n))
    buf = base.copy()

    def run():
        buf[...] = base
        z2n.fwht_inplace(buf, kernel)

    return min(timeit.repeat(run, number=1, repeat=repeats))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--min-n", type=int, default=4)
    parser.add_argument("--max-n", type=int, default=20)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)

    names = sorted(z2n.KERNELS)
    if "ext" not in names:
        print("note: compiled kernel not built, timing the numpy fallback only", file=sys.stderr)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "rows"] + [f"{k}_seconds" for k in names] + ["speedup"])
    for n in range(args.min_n, args.max_n + 1, 2):
        rows = max(1, (1 << 16) >> n)  # keep roughly 2^16 elements per batch when small
        secs = [bench_kernel(z2n.KERNELS[k], n, rows, args.repeats) for k in names]
        speedup = secs[names.index("python")] / secs[0] if len(names) > 1 else 1.0
        w.writerow([n, rows] + [f"{s:.6f}" for s in secs] + [f"{speedup:.2f}"])

    # end-to-end walk at n = 20 with the active backend
    spec = hypercube_spec(20)
    t = min(timeit.repeat(lambda: circulant_walk(spec, t=0.3), number=1, repeat=3))
    print(f"walk n=20 backend={z2n.BACKEND}: {t:.3f} s", file=sys.stderr)


if __name__ == "__main__":
    main()
