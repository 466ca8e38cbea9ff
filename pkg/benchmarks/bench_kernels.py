"""Compare the pure-Python and compiled arithmetic kernels.

Two views: raw kernel throughput (direct calls into each twin) and the
end-to-end effect on word reduction (subprocesses, since the backend is
chosen at import time).

    python3 benchmarks/bench_kernels.py [--ops 200000] [--words 4000]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from amalgam import _kernels_py as PY

try:
    from amalgam import _kernels_cy as CY
except ImportError:
    CY = None


def bench_kernel(mod, ops, seed=1234):
    rng = random.Random(seed)
    p = 5
    pairs = [PY.norm(rng.randint(-10**6, 10**6), rng.randint(0, 6), p)
             for _ in range(512)]
    t0 = time.perf_counter()
    acc = 0
    for i in range(ops):
        an, ak = pairs[i & 511]
        bn, bk = pairs[(i * 7 + 3) & 511]
        num, k = mod.add(an, ak, bn, bk, p)
        num, k = mod.mul(num, k, bn, bk, p)
        rn, rk, bn2, bk2 = mod.coset_split(num, k, p, 2)
        acc ^= rn
    return time.perf_counter() - t0, acc


def bench_reduction(backend, words, seed=99):
    script = (
        "import random, time\n"
        "from amalgam.instances import make_instance\n"
        "from amalgam.suites import random_word\n"
        "from amalgam.normalform import reduce_word\n"
        f"sys_ = make_instance('dense', 5)\n"
        f"rng = random.Random({seed})\n"
        f"ws = [random_word(sys_, rng, 12, 5) for _ in range({words})]\n"
        "t0 = time.perf_counter()\n"
        "for w in ws:\n"
        "    reduce_word(sys_, w)\n"
        "print(time.perf_counter() - t0)\n"
    )
    env = dict(os.environ, AMALGAM_KERNEL=backend)
    proc = subprocess.run([sys.executable, "-c", script],
                          capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return float(proc.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ops", type=int, default=200_000,
                    help="kernel operations per backend")
    ap.add_argument("--words", type=int, default=4_000,
                    help="random words to reduce per backend")
    args = ap.parse_args()

    print(f"kernel micro-benchmark ({args.ops} add+mul+split rounds)")
    t_py, _ = bench_kernel(PY, args.ops)
    print(f"  py: {t_py:8.3f} s  ({args.ops / t_py:12.0f} rounds/s)")
    if CY is not None:
        t_cy, _ = bench_kernel(CY, args.ops)
        print(f"  cy: {t_cy:8.3f} s  ({args.ops / t_cy:12.0f} rounds/s)")
        print(f"  speedup: {t_py / t_cy:.2f}x")
    else:
        print("  cy: not built")

    print(f"\nend-to-end word reduction ({args.words} words, dense p=5)")
    r_py = bench_reduction("py", args.words)
    print(f"  py: {r_py:8.3f} s")
    if CY is not None:
        r_cy = bench_reduction("cy", args.words)
        print(f"  cy: {r_cy:8.3f} s")
        print(f"  speedup: {r_py / r_cy:.2f}x")
    else:
        print("  cy: not built")


if __name__ == "__main__":
    main()
