"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--sweep HI]
"""
import argparse
import os
import subprocess
import sys
import timeit

from class16 import _pykernels

try:
    from class16 import _ckernels
except ImportError:
    _ckernels = None

CASES = [
    ("negcf_expand sqrt(43063)", "negcf_expand", (0, 1, 43063, 10**7)),
    ("negcf_expand (7+sqrt 439)/13", "negcf_expand", (7, 13, 439, 10**7)),
    ("count_reduced_definite -43063", "count_reduced_definite", (-43063,)),
    ("count_reduced_definite -199999", "count_reduced_definite", (-199999,)),
    ("indefinite_cycles 4*43063", "indefinite_cycles", (4 * 43063,)),
    ("indefinite_cycles 4*19997", "indefinite_cycles", (4 * 19997,)),
    ("half_factorial_mod 199999", "half_factorial_mod", (199999,)),
]


def best_of(fn, args, repeat):
    number = 1
    # grow the loop count until one batch takes at least 0.05 s
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 10**5:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def sweep_seconds(hi, pure):
    env = dict(os.environ)
    env.pop("CLASS16_PURE_PYTHON", None)
    if pure:
        env["CLASS16_PURE_PYTHON"] = "1"
    cmd = [sys.executable, "-m", "class16", "sweep", "4", str(hi), "--jobs", "1", "--json"]
    start = timeit.default_timer()
    subprocess.run(cmd, env=env, check=True, stdout=subprocess.DEVNULL)
    return timeit.default_timer() - start


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sweep", type=int, default=5000, metavar="HI", help="also time `sweep 4 HI` end to end (0 to skip)")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1

    print(f"{'kernel':34s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for label, name, fargs in CASES:
        slow_fn, fast_fn = getattr(_pykernels, name), getattr(_ckernels, name)
        assert slow_fn(*fargs) == fast_fn(*fargs), label
        slow = best_of(slow_fn, fargs, args.repeat)
        fast = best_of(fast_fn, fargs, args.repeat)
        print(f"{label:34s} {slow * 1e3:10.3f}ms {fast * 1e3:10.3f}ms {slow / fast:7.1f}x")

    if args.sweep:
        slow, fast = sweep_seconds(args.sweep, True), sweep_seconds(args.sweep, False)
        print(f"{'sweep 4 ' + str(args.sweep):34s} {slow:11.2f}s {fast:11.2f}s {slow / fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
