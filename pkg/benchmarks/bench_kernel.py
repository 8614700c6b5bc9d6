"""Compiled vs pure-Python kernel on exhaustive suite checks.

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from dialgebra_forge import kernel
from dialgebra_forge.corpus import truncation_member
from dialgebra_forge.derive import commutator_lie, tridendriform_of
from dialgebra_forge.verify import check_suite

CASES = (
    ("tcda", lambda: truncation_member(2, 3)),
    ("rb_tcda", lambda: truncation_member(2, 3)),
    ("tridendriform", lambda: tridendriform_of(truncation_member(2, 3))),
    ("lieg", lambda: commutator_lie(truncation_member(2, 3))),
)


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernel._ckernel is not None else [])
    print(f"{'suite':15s} {'tuples':>8s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for suite, build in CASES:
        A = build()
        times, lines = [], set()
        for b in backends:
            t, report = timed(lambda: check_suite(A, suite, backend=b), args.repeat)
            times.append(t)
            lines.add(report.text())
        assert len(lines) == 1, "backends disagree"
        speed = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else "       -"
        print(f"{suite:15s} {report.tuples:8d} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()
