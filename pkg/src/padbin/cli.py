"""padbin command line.

Every subcommand writes one record per checked instance, in input order,
as JSON lines (default) or CSV. Exit status is 0 when every record
passes, 1 when any fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import (
    ApproxInstance,
    additive_residual_order,
    modified_binomials,
    multiplicative_residual_order,
    predicted_order,
)
from .arith import INFINITY, is_infinite, primes_between, rational_valuation, valuation
from .bernoulli import wolstenholme_residue
from .binomial import modified_binomial_exact
from .combos import (
    c_coefficients,
    combo_value,
    difference_oracle,
    normalizer_L_by_primes,
    normalizer_L_closed,
    theorem0_sum,
)
from .mobius import factor_M, factor_Mprime, divm_sum, factorize, signed_divm_sum
from .sweep import ordered_map
from .symfunc import (
    InstanceTooLargeError,
    build_unit_set,
    elementary_symmetric,
    f_eval,
    f_series,
    lemma1_check,
    newton_girard_check,
    sigma_via_eq16,
    sym_data,
)


class UsageError(Exception):
    pass


@dataclass
class CheckRecord:
    check: str
    inputs: dict
    observed_order: object
    required_order: object
    value: object = None
    quotient: object = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.observed_order >= self.required_order

    def as_dict(self) -> dict:
        d = {
            "check": self.check,
            "inputs": self.inputs,
            "observed_order": _order(self.observed_order),
            "required_order": _order(self.required_order),
            "pass": self.passed,
        }
        if self.value is not None:
            d["value"] = _num(self.value)
        if self.quotient is not None:
            d["quotient"] = _num(self.quotient)
        d.update(self.extra)
        return d


def _order(v):
    return "inf" if is_infinite(v) else v


def _num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- per-instance record builders (module level so worker processes can pickle them)


def jacobsthal_record(args) -> CheckRecord:
    a, b, p = args
    observed = rational_valuation(modified_binomial_exact(a * p, b * p, p) - 1, p)
    required = 3 + valuation(a * b * (a - b), p)
    return CheckRecord("jacobsthal", {"a": a, "b": b, "p": p}, observed, required)


def theorem0_record(args) -> CheckRecord:
    n, m, p = args
    s = theorem0_sum(n, m, p)
    rec = CheckRecord(
        "theorem0",
        {"n": n, "m": m, "p": p},
        rational_valuation(s, p),
        (2 * n + 1) * valuation(m, p),
        value=s,
    )
    if m % p == 0:
        rec.extra["difference_oracle_agrees"] = difference_oracle(n, m, p) == s
    return rec


def corollary_record(args) -> CheckRecord:
    n, p = args
    v = combo_value(n, p)
    required = 2 * n + 1
    rec = CheckRecord("corollary", {"n": n, "p": p}, valuation(v, p), required, value=v)
    if v % p**required == 0:
        rec.quotient = v // p**required
    return rec


def wolstenholme_record(p: int) -> CheckRecord:
    res = wolstenholme_residue(p)
    observed = 4 if res == 0 else valuation(res, p)
    return CheckRecord("wolstenholme", {"p": p}, observed, 4)


def mobius_record(args) -> CheckRecord:
    a, b, m, signed, refined = args
    if signed:
        s = signed_divm_sum(a, b, m)
        factor = factor_Mprime(a, b) if refined else 12
    else:
        s = divm_sum(a, b, m)
        factor = factor_M(a, b) if refined else 6
    total = factor * s
    # largest e with m^e | factor * sum
    if m == 1 or total == 0:
        observed = INFINITY
    else:
        observed = min(valuation(total, r) // e for r, e in factorize(m))
    rec = CheckRecord(
        "mobius-signed" if signed else "mobius",
        {"a": a, "b": b, "m": m, "factor": factor},
        observed,
        3,
        value=s,
    )
    if total % m**3 == 0:
        rec.quotient = total // m**3
    return rec


def _theorem1_records(inst: ApproxInstance, k_work) -> list[CheckRecord]:
    binoms = modified_binomials(inst)
    r = predicted_order(inst)
    inputs = {
        "a": inst.a0,
        "b": inst.b,
        "alist": list(inst.a_list),
        "p": inst.p,
        "q_exp": inst.e,
    }
    add = additive_residual_order(inst, binoms)
    k = r + 3 if k_work is None else k_work
    mult, saturated = multiplicative_residual_order(inst, k, binoms)
    return [
        CheckRecord("theorem1-additive", inputs, add, r),
        CheckRecord(
            "theorem1-multiplicative",
            dict(inputs, k_work=k),
            mult,
            r,
            extra={"saturated": saturated},
        ),
    ]


def _symfunc_records(b, e, p, alist) -> list[CheckRecord]:
    q = p**e
    S = build_unit_set(b, q, p)
    inputs = {"b": b, "q_exp": e, "p": p}
    vals = S.inverse_squares()
    recs = []

    def identity(name, lhs, rhs, **more):
        diff = Fraction(lhs) - Fraction(rhs)
        recs.append(
            CheckRecord(name, dict(inputs, **more), rational_valuation(diff, p), INFINITY)
        )

    for a in alist:
        ok = lemma1_check(a, b, q, p, S)
        recs.append(
            CheckRecord(
                "lemma1",
                dict(inputs, a=a),
                INFINITY if ok else 0,
                INFINITY,
            )
        )
    n = min(S.N, 6)
    sym = sym_data(vals, n)
    recs.append(
        CheckRecord(
            "newton-girard",
            dict(inputs, n=n),
            INFINITY if newton_girard_check(sym, n) else 0,
            INFINITY,
        )
    )
    for d in range(1, n + 1):
        identity("eq16", sigma_via_eq16(sym.powersums, d), sym.sigma[d], n=d)
    sigma = elementary_symmetric(vals, S.N)
    for x in (Fraction(1, 3), Fraction(b * b, 4), Fraction(7, 2)):
        identity("f-series", f_series(x, S, sigma), f_eval(x, S), x=_num(x))
    return recs


# -- output


def _write(records, fmt: str, out, fail_fast: bool) -> int:
    status = 0
    dicts = []
    for rec in records:
        dicts.append(rec.as_dict())
        if not rec.passed:
            status = 1
            if fail_fast:
                break
    if fmt == "jsonl":
        for d in dicts:
            out.write(json.dumps(d, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        keys = ["check", "inputs", "observed_order", "required_order", "pass", "value", "quotient"]
        w = csv.writer(out, lineterminator="\n")
        w.writerow(keys)
        for d in dicts:
            row = [d.get(k, "") for k in keys]
            row[1] = ";".join(f"{k}={v}" for k, v in d["inputs"].items())
            w.writerow(row)
    else:
        raise UsageError(f"format {fmt!r} is not available for this command")
    return status


def _sequence(args, out) -> int:
    primes = _prime_range(args.p_min, args.p_max, 2 * args.n + 1)
    recs = ordered_map(
        corollary_record, [(args.n, p) for p in primes], args.threads, weight=_wt
    )
    status = 0 if all(r.passed for r in recs) else 1
    if args.format == "bfile":
        for i, r in enumerate(recs, start=1):
            if r.quotient is None:
                break
            out.write(f"{i} {r.quotient}\n")
        return status
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "n", "p", "quotient"])
        for i, r in enumerate(recs, start=1):
            w.writerow([i, args.n, r.inputs["p"], "" if r.quotient is None else r.quotient])
        return status
    return _write(recs, "jsonl", out, args.fail_fast)


def _wt(item):
    # cost of a prime-indexed task grows roughly linearly in p
    p = item if isinstance(item, int) else item[-1]
    return p


def _prime_range(lo: int, hi: int, above: int) -> list[int]:
    if lo > hi:
        raise UsageError(f"empty prime range [{lo}, {hi}]")
    return primes_between(max(lo, above + 1), hi)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padbin",
        description="Check p-adic approximation and divisibility statements "
        "for binomial coefficients.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--fail-fast", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="verify congruences")
    vsub = verify.add_subparsers(dest="what", required=True)

    j = vsub.add_parser("jacobsthal", parents=[common])
    j.add_argument("--a", type=int, required=True)
    j.add_argument("--b", type=int, required=True)
    j.add_argument("--p-min", type=int, required=True)
    j.add_argument("--p-max", type=int, required=True)

    t1 = vsub.add_parser("theorem1", parents=[common])
    t1.add_argument("--a", type=int, required=True)
    t1.add_argument("--b", type=int, required=True)
    t1.add_argument("--alist", type=_int_list, required=True)
    t1.add_argument("--p", type=int, required=True)
    t1.add_argument("--q-exp", type=_positive, required=True)
    t1.add_argument("--k-work", type=_positive)

    t0 = vsub.add_parser("theorem0", parents=[common])
    t0.add_argument("--n", type=_positive, required=True)
    t0.add_argument("--m", type=_positive, required=True)
    t0.add_argument("--p", type=int, required=True)

    co = vsub.add_parser("corollary", parents=[common])
    co.add_argument("--n", type=_positive, required=True)
    co.add_argument("--p-min", type=int, required=True)
    co.add_argument("--p-max", type=int, required=True)

    c = sub.add_parser("coeffs", help="normalised combination coefficients")
    c.add_argument("--n", type=_positive, required=True)

    s = sub.add_parser("sequence", help="quotients of the combination by p^(2n+1)")
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--p-min", type=int, required=True)
    s.add_argument("--p-max", type=int, required=True)
    s.add_argument("--format", choices=["jsonl", "csv", "bfile"], default="jsonl")
    s.add_argument("--threads", type=_positive, default=1)
    s.add_argument("--fail-fast", action="store_true")

    mo = sub.add_parser("mobius", parents=[common], help="Moebius divisor-sum congruences")
    mo.add_argument("--a", type=int, required=True)
    mo.add_argument("--b", type=int, required=True)
    mo.add_argument("--m-max", type=_positive, required=True)
    mo.add_argument("--signed", action="store_true")
    mo.add_argument("--refined", action="store_true")

    w = sub.add_parser("wolstenholme", parents=[common], help="search for Wolstenholme primes")
    w.add_argument("--p-max", type=int, required=True)
    w.add_argument("--p-min", type=int, default=5)

    o = sub.add_parser("oracle", help="exact identity checks")
    osub = o.add_subparsers(dest="what", required=True)
    sf = osub.add_parser("symfunc", parents=[common])
    sf.add_argument("--b", type=_positive, required=True)
    sf.add_argument("--q-exp", type=_positive, required=True)
    sf.add_argument("--p", type=int, required=True)
    sf.add_argument("--alist", type=_int_list, default=[])
    return parser


def run(argv, out) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cmd = args.command

    if cmd == "coeffs":
        cc = c_coefficients(args.n)
        rec = {
            "check": "coeffs",
            "inputs": {"n": args.n},
            "L": str(cc.L),
            "c": [str(x) for x in cc.c],
            "t": [_num(x) for x in cc.t],
            "pass": normalizer_L_by_primes(args.n) == normalizer_L_closed(args.n)
            and math.gcd(*cc.c) == 1,
        }
        out.write(json.dumps(rec, separators=(",", ":")) + "\n")
        return 0 if rec["pass"] else 1

    if cmd == "sequence":
        return _sequence(args, out)

    if cmd == "verify" and args.what == "jacobsthal":
        if not args.a > args.b > 0:
            raise UsageError("need a > b > 0")
        items = [(args.a, args.b, p) for p in _prime_range(args.p_min, args.p_max, 3)]
        recs = ordered_map(jacobsthal_record, items, args.threads, weight=_wt)
    elif cmd == "verify" and args.what == "theorem1":
        try:
            inst = ApproxInstance(args.p, args.q_exp, args.b, args.a, tuple(args.alist))
        except ValueError as exc:
            raise UsageError(str(exc))
        recs = _theorem1_records(inst, args.k_work)
    elif cmd == "verify" and args.what == "theorem0":
        if args.p <= 2 * args.n + 1 or not primes_between(args.p, args.p):
            raise UsageError(f"need a prime p > 2n+1 = {2 * args.n + 1}")
        recs = [theorem0_record((args.n, args.m, args.p))]
    elif cmd == "verify" and args.what == "corollary":
        items = [(args.n, p) for p in _prime_range(args.p_min, args.p_max, 2 * args.n + 1)]
        recs = ordered_map(corollary_record, items, args.threads, weight=_wt)
    elif cmd == "mobius":
        if not args.a > args.b > 0:
            raise UsageError("need a > b > 0")
        items = [
            (args.a, args.b, m, args.signed, args.refined) for m in range(1, args.m_max + 1)
        ]
        recs = ordered_map(mobius_record, items, args.threads, weight=lambda it: it[2])
    elif cmd == "wolstenholme":
        primes = _prime_range(args.p_min, args.p_max, 4)
        recs = ordered_map(wolstenholme_record, primes, args.threads, weight=_wt)
        # a search: non-Wolstenholme primes are expected, so they do not fail the run
        _write(recs, args.format, out, fail_fast=False)
        return 0
    elif cmd == "oracle":
        if args.p < 3 or not primes_between(args.p, args.p):
            raise UsageError("need an odd prime p")
        try:
            recs = _symfunc_records(args.b, args.q_exp, args.p, args.alist)
        except (ValueError, InstanceTooLargeError) as exc:
            raise UsageError(str(exc))
    else:  # pragma: no cover - argparse enforces the choices
        raise UsageError(f"unknown command {cmd}")
    return _write(recs, args.format, out, args.fail_fast)


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv, sys.stdout)
    except UsageError as exc:
        build_parser().print_usage(sys.stderr)
        print(f"padbin: error: {exc}", file=sys.stderr)
        return 2


def run_to_string(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture its output; used by the tests."""
    buf = io.StringIO()
    try:
        code = run(argv, buf)
    except UsageError:
        code = 2
    except SystemExit as exc:
        code = exc.code
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
