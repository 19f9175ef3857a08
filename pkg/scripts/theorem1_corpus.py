"""Draw random approximation instances and tabulate predicted vs observed orders.

    python scripts/theorem1_corpus.py --count 200 --seed 1 --eqr
"""

import argparse
import random
from collections import Counter

from padbin.approx import check_instance, eqr_diagnostic, sample_instances
from padbin.symfunc import InstanceTooLargeError


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--p-max", type=int, default=100)
    ap.add_argument("--eqr", action="store_true", help="also compute the sigma_n diagnostic")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    corpus = sample_instances(rng, args.count, n_max=args.n_max, p_max=args.p_max)
    slack = Counter()
    failures = 0
    for inst in corpus:
        rep = check_instance(inst)
        slack[min(rep.observed_additive, rep.k_work) - rep.predicted_r] += 1
        failures += not rep.pass_
        line = (
            f"p={inst.p:3d} e={inst.e} b={inst.b} a0={inst.a0:2d} a={list(inst.a_list)!s:16} "
            f"r={rep.predicted_r:2d} add={rep.observed_additive!s:>3} "
            f"mult={rep.observed_multiplicative!s:>3}{'*' if rep.saturated else ''}"
        )
        if args.eqr:
            try:
                line += f" eqr={eqr_diagnostic(inst)}"
            except InstanceTooLargeError:
                line += " eqr=skipped"
        print(line)
    print()
    print("observed - predicted (capped at working precision):", dict(sorted(slack.items())))
    print(f"failures: {failures} / {len(corpus)}")


if __name__ == "__main__":
    main()
