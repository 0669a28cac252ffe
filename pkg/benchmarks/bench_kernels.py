"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each case runs the same search on both backends, checks that the
answers agree and prints the wall times and the speedup.
"""

from __future__ import annotations

import argparse
import time

from groupdist import _kernels
from groupdist.catalog import by_name
from groupdist.groups import cyclic
from groupdist.search import class_distance
from groupdist.special import cyclic_row_search

CASES = [
    ("classdist C8 D8", lambda pure: class_distance(by_name("C8"), by_name("D8"), pure=pure).distance),
    ("classdist Q8 C2^3", lambda pure: class_distance(by_name("Q8"), by_name("C2^3"), pure=pure).distance),
    ("classdist C9 C9", lambda pure: class_distance(cyclic(9), cyclic(9), pure=pure).distance),
    ("classdist D10 C10", lambda pure: class_distance(by_name("D10"), by_name("C10"), pure=pure).distance),
    ("classdist Dic3 D12", lambda pure: class_distance(by_name("Dic3"), by_name("D12"), pure=pure).distance),
    ("rowsearch C15 d=3", lambda pure: cyclic_row_search(cyclic(15), 3, pure=pure).distance),
]


def _time(fn, repeat):
    best, val = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        val = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, val


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="add C12 vs A4 (about 100s in pure Python)")
    args = ap.parse_args(argv)
    if _kernels.BACKEND != "cython":
        print("compiled extension not available; only the pure backend can run")
        return 1
    print(f"{'case':22s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    cases = list(CASES)
    if args.large:
        cases.append(("classdist C12 A4",
                      lambda pure: class_distance(by_name("C12"), by_name("A4"), pure=pure).distance))
    for name, fn in cases:
        tc, vc = _time(lambda: fn(False), args.repeat)
        tp, vp = _time(lambda: fn(True), args.repeat)
        assert vc == vp, f"{name}: backends disagree ({vc} vs {vp})"
        print(f"{name:22s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
