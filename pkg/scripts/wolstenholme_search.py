"""Search a prime range for C(2p, p) = 2 mod p^4 and report timings per worker count.

    python scripts/wolstenholme_search.py --p-max 20000 --threads 1 2 4
"""

import argparse
import os
import time

from padbin.arith import primes_between
from padbin.cli import wolstenholme_record
from padbin.sweep import ordered_map


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p-min", type=int, default=5)
    ap.add_argument("--p-max", type=int, default=20000)
    ap.add_argument("--threads", type=int, nargs="+", default=[1])
    args = ap.parse_args()

    primes = primes_between(args.p_min, args.p_max)
    print(f"{len(primes)} primes in [{args.p_min}, {args.p_max}], cpus={os.cpu_count()}")
    base = None
    for t in args.threads:
        start = time.perf_counter()
        recs = ordered_map(wolstenholme_record, primes, t, weight=lambda p: p.bit_length())
        elapsed = time.perf_counter() - start
        base = base or elapsed
        hits = [r.inputs["p"] for r in recs if r.passed]
        print(f"threads={t}: {elapsed:.2f}s speedup={base / elapsed:.2f}x hits={hits}")


if __name__ == "__main__":
    main()
