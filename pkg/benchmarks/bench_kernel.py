"""Compare the compiled profile scan with its pure-Python twin.

    python benchmarks/bench_kernel.py [--d 6] [--chunks 2] [--repeat 3]

Both backends scan the same leading chunks (two-digit prefixes) of the same
plan; results must match.  --chunks 0 scans everything.
"""
import argparse
import itertools
import time

import numpy as np

from polycube import kernel
from polycube.colorings import main_coloring
from polycube.verifier import _Plan


def scan_all(scan, plan, L, chunks):
    D, E = plan.D, plan.E
    states = 0
    out = []
    prefixes = itertools.product(range(E), repeat=L)
    for prefix in itertools.islice(prefixes, chunks or None):
        p = np.array(prefix, dtype=np.int32)
        off0 = np.array(plan.offsets(list(prefix) + [0] * (D - L)), dtype=np.int32)
        checked, digits, missing = scan(p, D, E, off0, plan.reg, plan.addw, plan.T, plan.full)
        states += checked
        out.append((checked, None if digits is None else list(digits), missing))
    return states, out


def timed(scan, plan, L, chunks, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        states, out = scan_all(scan, plan, L, chunks)
        best = min(best, time.perf_counter() - t0)
    return best, states, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=6)
    ap.add_argument("--chunks", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    c = main_coloring(args.d)
    plan = _Plan(c, args.d)
    L = 2
    print(f"{c.label}: E={plan.E}, {plan.E ** plan.D} profiles, {len(plan.sels)} selections, "
          f"scanning {args.chunks or 'all'} chunks of {plan.E ** (plan.D - L)}")

    compiled = kernel.compiled_scan_chunk()
    t_py, n_py, out_py = timed(kernel.python_scan_chunk, plan, L, args.chunks, args.repeat)
    print(f"python  {t_py:9.4f}s  {n_py / t_py:12.0f} profiles/s")
    if compiled is None:
        print("cython  not built (pip install -e . --no-build-isolation)")
        return
    t_cy, n_cy, out_cy = timed(compiled, plan, L, args.chunks, args.repeat)
    print(f"cython  {t_cy:9.4f}s  {n_cy / t_cy:12.0f} profiles/s")
    assert out_cy == out_py and n_cy == n_py, "backends disagree"
    print(f"speedup {t_py / t_cy:.1f}x, identical results")


if __name__ == "__main__":
    main()
