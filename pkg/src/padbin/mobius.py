"""Moebius divisor sums of C(ad, bd) and their divisibility by m^3."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import valuation


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, e in factorize(n):
        divs = [d * prime**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def divm_sum(a: int, b: int, m: int) -> int:
    """sum_{d | m} mu(m/d) C(ad, bd)."""
    return sum(mobius(m // d) * math.comb(a * d, b * d) for d in divisors(m))


def signed_divm_sum(a: int, b: int, m: int) -> int:
    """sum_{d | m} (-1)^(m+d) mu(m/d) C(ad, bd)."""
    return sum(
        (-1) ** (m + d) * mobius(m // d) * math.comb(a * d, b * d) for d in divisors(m)
    )


def _check_ab(a: int, b: int):
    if not a > b > 0:
        raise ValueError(f"need a > b > 0, got a={a}, b={b}")


def factor_M(a: int, b: int) -> int:
    _check_ab(a, b)
    return 12 // math.gcd(12, a * b * (a - b))


def delta(a: int, b: int) -> int:
    _check_ab(a, b)
    if valuation(a - b, 2) == valuation(b, 2):
        return min(1, valuation(b, 2))
    return 2


def factor_Mprime(a: int, b: int) -> int:
    _check_ab(a, b)
    return 3 // math.gcd(3, a * b * (a - b)) * 2 ** delta(a, b)


@dataclass
class DivisorSumReport:
    a: int
    b: int
    m: int
    signed: bool
    sum: int
    factor: int
    # per prime r | m: (v_r(factor * sum), 3 v_r(m))
    observed_order: dict = field(default_factory=dict)
    # largest divisor of the factor (a power of 2 times a power of 3) that
    # could be dropped with m^3 still dividing; empirical only
    spare: int = 1

    @property
    def passed(self) -> bool:
        return (self.factor * self.sum) % self.m**3 == 0


def _report(a, b, m, signed, s, factor) -> DivisorSumReport:
    orders = {
        r: (valuation(factor * s, r), 3 * e) for r, e in factorize(m)
    }
    spare = 1
    m3 = m**3
    for r in (2, 3):
        while factor % (spare * r) == 0 and (factor // (spare * r) * s) % m3 == 0:
            spare *= r
    return DivisorSumReport(a, b, m, signed, s, factor, orders, spare)


def divm_check(a: int, b: int, m: int, use_refined: bool = False) -> DivisorSumReport:
    _check_ab(a, b)
    factor = factor_M(a, b) if use_refined else 6
    return _report(a, b, m, False, divm_sum(a, b, m), factor)


def signed_divm_check(
    a: int, b: int, m: int, use_refined: bool = False
) -> DivisorSumReport:
    _check_ab(a, b)
    factor = factor_Mprime(a, b) if use_refined else 12
    return _report(a, b, m, True, signed_divm_sum(a, b, m), factor)
