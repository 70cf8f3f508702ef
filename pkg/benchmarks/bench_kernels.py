"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from kummerlab.dualgraph import affine, dynkin
from kummerlab.kernels import _pykernels

try:
    from kummerlab.kernels import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    ("kron_lemma_scan F_3", "kron_lemma_scan", (3,)),
    ("kron_lemma_scan F_5", "kron_lemma_scan", (5,)),
    ("quadratic_form_scan D6 [-3,3]", "quadratic_form_scan", (dynkin("D", 6).matrix(), 3)),
    ("quadratic_form_scan E8 [-2,2]", "quadratic_form_scan", (dynkin("E", 8).matrix(), 2)),
    ("quadratic_form_scan affine E6 [-3,3]", "quadratic_form_scan", (affine("E", 6).matrix(), 3)),
]


def best_of(fn, args, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python-above", type=float, default=60.0,
                    help="do not repeat the fallback when one run exceeds this many seconds")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'case':40s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s}")
    for label, name, fargs in CASES:
        tp, rp = best_of(getattr(_pykernels, name), fargs, 1)
        if tp < args.skip_python_above and args.repeat > 1:
            tp, rp = min((tp, rp), best_of(getattr(_pykernels, name), fargs, args.repeat - 1), key=lambda x: x[0])
        if _ckernels is None:
            print(f"{label:40s} {tp:11.4f} {'-':>13s} {'-':>8s}")
            continue
        tc, rc = best_of(getattr(_ckernels, name), fargs, args.repeat)
        assert rp == rc, f"{label}: backends disagree ({rp} vs {rc})"
        print(f"{label:40s} {tp:11.4f} {tc:13.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
