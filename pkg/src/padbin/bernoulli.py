"""Bernoulli numbers and the Bernoulli-dependent correction terms."""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .arith import ResidueContext, is_prime, rational_valuation, valuation

DEFAULT_BOUND = 2000


class BernoulliBoundError(RuntimeError):
    pass


class BernoulliCache:
    """Append-only table of B_0..B_m filled by the recurrence

        sum_{j=0}^{m} C(m+1, j) B_j = 0,   B_0 = 1, B_1 = -1/2.
    """

    def __init__(self, bound: int = DEFAULT_BOUND):
        self.bound = bound
        self._values = [Fraction(1), Fraction(-1, 2)]
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._values)

    def _extend(self, m: int):
        with self._lock:
            vals = self._values
            while len(vals) <= m:
                j = len(vals)
                if j % 2:
                    vals.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for i in range(0, j, 2):
                    acc += math.comb(j + 1, i) * vals[i]
                acc += math.comb(j + 1, 1) * vals[1]
                vals.append(-acc / (j + 1))

    def __getitem__(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("negative index")
        if m > 1 and m % 2:
            return Fraction(0)
        if m > self.bound:
            raise BernoulliBoundError(f"B_{m} is beyond the cache bound {self.bound}")
        if m >= len(self._values):
            self._extend(m)
        return self._values[m]


_default_cache = BernoulliCache()


def bernoulli_exact(m: int, cache: BernoulliCache | None = None) -> Fraction:
    return (cache or _default_cache)[m]


def _check_kummer_index(m: int, p: int) -> int:
    if p < 5 or not is_prime(p):
        raise ValueError(f"need a prime p >= 5, got {p}")
    if m <= 0 or m % 2:
        raise ValueError(f"index must be positive and even, got {m}")
    m0 = m % (p - 1)
    if m0 == 0:
        raise ValueError(f"(p-1) | {m}: B_m has p in its denominator")
    return m0


def _numerator_divisible_by_p(m0: int, p: int, cache: BernoulliCache | None) -> bool:
    cache = cache or _default_cache
    if m0 <= cache.bound:
        return rational_valuation(cache[m0], p) >= 1
    # sum_{j<p} j^m0 == p B_m0 (mod p^2) for even 2 <= m0 <= p-3
    mod = p * p
    return sum(pow(j, m0, mod) for j in range(1, p)) % mod == 0


def bernoulli_val_mod_p(m: int, p: int, cache: BernoulliCache | None = None) -> int:
    """1 if p divides the numerator of B_m / m, else 0.

    Reduces m to m0 = m mod (p-1) through the Kummer congruence
    B_m/m == B_m0/m0 (mod p). When m0 exceeds the cache bound the
    test switches to the power sum over 1..p-1 modulo p^2.
    """
    m0 = _check_kummer_index(m, p)
    return int(_numerator_divisible_by_p(m0, p, cache))


def _bernoulli_indicator(i: int, b: int, q: int, p: int) -> tuple[int, int]:
    if p == 2 or not is_prime(p):
        raise ValueError(f"need an odd prime, got {p}")
    t = valuation(b * q, p)
    big_m = p ** (t - 1) * (p - 1)
    return t, bernoulli_val_mod_p(big_m - 2 * i, p)


def epsilon_term(n: int, b: int, q: int, p: int) -> int:
    """Lower bound for min{t, v_p(B_{M-2n})}, t = v_p(bq), M = p^(t-1)(p-1).

    Exact when t == 1; for t > 1 only the 0/1 information from the
    Kummer congruence is used, which still bounds the true value below.
    """
    if p <= 2 * n + 1:
        raise ValueError(f"need p > 2n+1 = {2 * n + 1}, got p={p}")
    t, ind = _bernoulli_indicator(n, b, q, p)
    return min(t, ind)


def theta_terms(n: int, b: int, q: int, p: int) -> list[int]:
    """The same lower bound for every index i = 1..n (diagnostic)."""
    if p <= 2 * n + 1:
        raise ValueError(f"need p > 2n+1 = {2 * n + 1}, got p={p}")
    out = []
    for i in range(1, n + 1):
        t, ind = _bernoulli_indicator(i, b, q, p)
        out.append(min(t, ind))
    return out


def central_modified_binomial_mod(p: int, k: int = 4) -> int:
    """C(2p, p)_p = C(2p-1, p-1) = prod_{j<p} (p+j)/j, reduced mod p^k."""
    mod = p**k
    num = den = 1
    for j in range(1, p):
        num = num * (p + j) % mod
        den = den * j % mod
    return num * pow(den, -1, mod) % mod


def is_wolstenholme_prime(p: int) -> bool:
    """True iff C(2p, p) == 2 (mod p^4)."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"need a prime p > 3, got {p}")
    return 2 * central_modified_binomial_mod(p) % p**4 == 2


def wolstenholme_residue(p: int) -> int:
    """C(2p, p) - 2 reduced mod p^4, for reporting."""
    ResidueContext(p, 4)  # validates p
    return (2 * central_modified_binomial_mod(p) - 2) % p**4
