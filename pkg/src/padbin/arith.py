"""Exact valuations, residue rings mod p^k and the p-adic binomial series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering


class NotInvertibleError(ArithmeticError):
    pass


class SeriesError(ArithmeticError):
    """Raised when (1+u)^y has no p-adic meaning for the given u, y."""


@total_ordering
class _Infinity:
    """Valuation of zero. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("padbin.inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _Infinity()


def is_infinite(v) -> bool:
    return v is INFINITY


def valuation(x: int, p: int):
    """Largest e with p**e | x; ``INFINITY`` for x == 0."""
    if x == 0:
        return INFINITY
    x = abs(x)
    e = 0
    # square the divisor to strip high powers quickly
    while x % p == 0:
        pk, step = p, 1
        while x % (pk * pk) == 0:
            pk *= pk
            step *= 2
        x //= pk
        e += step
    return e


def rational_valuation(x, p: int):
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi."""
    return [p for p in primes_upto(hi) if p >= lo]


@dataclass(frozen=True)
class ResidueContext:
    p: int
    k: int
    modulus: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"precision must be positive, got k={self.k}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "modulus", self.p**self.k)

    def __call__(self, value) -> PAdicResidue:
        """Reduce an integer or p-integral rational into this ring."""
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NotInvertibleError(f"{value} is not {self.p}-integral")
            den = pow(value.denominator, -1, self.modulus)
            return PAdicResidue(self, value.numerator * den % self.modulus)
        return PAdicResidue(self, value % self.modulus)


@dataclass(frozen=True)
class PAdicResidue:
    context: ResidueContext
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.context.modulus:
            object.__setattr__(self, "value", self.value % self.context.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PAdicResidue):
            if other.context != self.context:
                raise ValueError(
                    f"mixed contexts {self.context} and {other.context}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _wrap(self, v: int) -> PAdicResidue:
        return PAdicResidue(self.context, v % self.context.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(pow(self.value, e, self.context.modulus))

    def __eq__(self, other):
        if isinstance(other, PAdicResidue):
            return self.context == other.context and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.context.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.context, self.value))

    def inverse(self) -> PAdicResidue:
        return invert(self.value, self.context)

    def valuation(self):
        """Valuation of the representative, capped by the precision."""
        if self.value == 0:
            return INFINITY
        return valuation(self.value, self.context.p)


def invert(a: int, ctx: ResidueContext) -> PAdicResidue:
    if a % ctx.p == 0:
        raise NotInvertibleError(f"{a} is not a unit mod {ctx.p}")
    return PAdicResidue(ctx, pow(a, -1, ctx.modulus))


def padic_pow(u: PAdicResidue, y) -> PAdicResidue:
    """(1 + u)**y for rational y by the binomial series, exact mod p^k.

    ``u`` must be divisible by p and ``y`` must be p-integral. Each
    C(y, j) is then a p-adic integer, so the j-th term has valuation at
    least j * v(u) and the series is cut once that reaches k.
    """
    ctx = u.context
    p, k, mod = ctx.p, ctx.k, ctx.modulus
    y = Fraction(y)
    if y.denominator % p == 0:
        raise SeriesError(f"exponent {y} is not {p}-integral")
    if u.value % p != 0:
        raise SeriesError("base must be 1 + O(p)")
    if u.value == 0:
        return PAdicResidue(ctx, 1)
    if y.denominator == 1 and y >= 0:
        return PAdicResidue(ctx, pow(1 + u.value, y.numerator, mod))
    vu = valuation(u.value, p)
    total = 1
    coeff = Fraction(1)
    upow = 1
    j = 1
    while j * vu < k:
        coeff = coeff * (y - j + 1) / j
        upow = upow * u.value % mod
        if coeff:
            total += ctx(coeff).value * upow
        j += 1
    return PAdicResidue(ctx, total % mod)
