"""The unit set S, the polynomial f and its symmetric-function data.

For b > 0 and q a power of an odd prime p, S holds the positive values
bq/2 - l (l = 0, 1, ...) below bq/2 whose double is prime to p, and

    f(x) = prod_{k in S} (1 - x q^2 / k^2) = sum_i (-x q^2)^i sigma_i

with sigma_i the elementary symmetric functions of the 1/k^2.
Everything here is exact and meant as an oracle, so keep instances small.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import valuation
from .binomial import modified_binomial_exact

MAX_BQ = int(os.environ.get("PADBIN_MAX_BQ", "20000"))


class InstanceTooLargeError(RuntimeError):
    pass


@dataclass(frozen=True)
class UnitSet:
    p: int
    q: int
    b: int
    elements: tuple[Fraction, ...]

    @property
    def N(self) -> int:
        return len(self.elements)

    def inverse_squares(self) -> list[Fraction]:
        return [1 / (k * k) for k in self.elements]


@dataclass(frozen=True)
class SymData:
    sigma: tuple[Fraction, ...]
    powersums: tuple[Fraction, ...]


def _p_power_exponent(q: int, p: int) -> int:
    e = valuation(q, p)
    if e < 1 or q != p**e:
        raise ValueError(f"{q} is not a positive power of {p}")
    return e


def build_unit_set(b: int, q: int, p: int, max_bq: int | None = None) -> UnitSet:
    if p == 2:
        raise ValueError("p = 2 is not supported")
    if b < 1:
        raise ValueError("b must be positive")
    _p_power_exponent(q, p)
    limit = MAX_BQ if max_bq is None else max_bq
    if b * q > limit:
        raise InstanceTooLargeError(f"bq = {b * q} exceeds the cap {limit}")
    bq = b * q
    # work with doubled values 2k = bq - 2l, which are integers
    elems = tuple(
        Fraction(d, 2) for d in range(bq, 0, -2) if d % p
    )
    return UnitSet(p, q, b, elems)


def elementary_symmetric(values, upto: int) -> list[Fraction]:
    if upto > len(values):
        raise ValueError(f"upto={upto} exceeds the number of values {len(values)}")
    sig = [Fraction(1)] + [Fraction(0)] * upto
    for v in values:
        for i in range(upto, 0, -1):
            sig[i] += sig[i - 1] * v
    return sig


def power_sums(values, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for v in values:
        v = Fraction(v)
        w = Fraction(1)
        for i in range(n):
            w *= v
            out[i] += w
    return out


def sym_data(values, n: int) -> SymData:
    return SymData(
        tuple(elementary_symmetric(values, min(n, len(values)))),
        tuple(power_sums(values, n)),
    )


def newton_girard_check(sym: SymData, n: int) -> bool:
    """Check d*sigma_d = sum_{i=1}^d (-1)^(i-1) sigma_{d-i} s_i for d <= n."""
    sigma = list(sym.sigma) + [Fraction(0)] * (n + 1 - len(sym.sigma))
    s = sym.powersums
    for d in range(1, n + 1):
        rhs = sum((-1) ** (i - 1) * sigma[d - i] * s[i - 1] for i in range(1, d + 1))
        if d * sigma[d] != rhs:
            return False
    return True


def compositions(n: int):
    """Ordered tuples of positive integers summing to n."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def composition_denominator(parts) -> int:
    """j1 * (j1 + j2) * ... * (j1 + ... + jk)."""
    out, acc = 1, 0
    for j in parts:
        acc += j
        out *= acc
    return out


def sigma_via_eq16(s, n: int) -> Fraction:
    """sigma_n from the power sums s_1..s_n through the nested-composition sum."""
    total = Fraction(0)
    for parts in compositions(n):
        term = Fraction((-1) ** len(parts), composition_denominator(parts))
        for j in parts:
            term *= s[j - 1]
        total += term
    return (-1) ** n * total


def f_eval(x, S: UnitSet) -> Fraction:
    x = Fraction(x)
    q2 = S.q * S.q
    out = Fraction(1)
    for k in S.elements:
        out *= 1 - x * q2 / (k * k)
    return out


def f_series(x, S: UnitSet, sigma=None) -> Fraction:
    """The same f evaluated as sum_i (-x q^2)^i sigma_i."""
    if sigma is None:
        sigma = elementary_symmetric(S.inverse_squares(), S.N)
    t = -Fraction(x) * S.q * S.q
    out, w = Fraction(0), Fraction(1)
    for sg in sigma:
        out += w * sg
        w *= t
    return out


def z_value(a: int, b: int) -> Fraction:
    return (a - Fraction(b, 2)) ** 2


def lemma1_check(a: int, b: int, q: int, p: int, S: UnitSet | None = None) -> bool:
    """C(aq, bq)_p == f((a - b/2)^2) / f(b^2/4), exactly."""
    if a < b:
        raise ValueError(f"need a >= b, got a={a}, b={b}")
    if S is None:
        S = build_unit_set(b, q, p)
    lhs = modified_binomial_exact(a * q, b * q, p)
    return lhs == f_eval(z_value(a, b), S) / f_eval(Fraction(b * b, 4), S)


def elementary_symmetric_bruteforce(values, i: int) -> Fraction:
    """Sum over all i-subsets; exponential, for tests only."""
    total = Fraction(0)
    for combo in combinations(values, i):
        prod = Fraction(1)
        for v in combo:
            prod *= v
        total += prod
    return total
