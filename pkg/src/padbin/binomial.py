"""Factorials and binomials, ordinary and with multiples of p removed.

``a!_p`` is the product of the k <= a with p not dividing k. The exact
routines return ints/Fractions; the ``_mod`` routines work in a
:class:`~padbin.arith.ResidueContext` and are checked against the exact
ones in the test suite.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .arith import PAdicResidue, ResidueContext, valuation


def binomial_exact(a: int, b: int) -> int:
    # math.comb already returns 0 for b > a
    return math.comb(a, b)


def modified_factorial_exact(a: int, p: int) -> int:
    """Direct product of the units in [1, a]."""
    out = 1
    for k in range(1, a + 1):
        if k % p:
            out *= k
    return out


def modified_binomial_exact(a: int, b: int, p: int) -> Fraction:
    """a!_p / (b!_p (a-b)!_p) as an exact rational.

    Uses n! = n!_p * p**(n//p) * (n//p)! so only ``math.comb`` on large
    arguments is needed. The result is p-integral but not always an
    integer, e.g. C(20, 10)_5 = 184756/6.
    """
    if b > a:
        raise ValueError(f"lower index {b} exceeds upper index {a}")
    c = a - b
    fa, fb, fc = a // p, b // p, c // p
    # fa is fb + fc or fb + fc + 1
    if fa == fb + fc:
        return Fraction(math.comb(a, b), math.comb(fa, fb))
    return Fraction(math.comb(a, b), math.comb(fa - 1, fb) * p * fa)


def _unit_block_sign(ctx: ResidueContext) -> int:
    # product of units in [1, p^k] mod p^k (Gauss's generalisation of Wilson)
    if ctx.p == 2 and ctx.k >= 3:
        return 1
    return ctx.modulus - 1


_PREFIX_LIMIT = 1 << 20
_prefix_tables: dict[ResidueContext, list[int]] = {}
_prefix_lock = threading.Lock()


def _unit_prefix(ctx: ResidueContext, upto: int) -> int:
    """Product of units in [1, upto] mod p^k, upto < p^k, from a shared table."""
    table = _prefix_tables.get(ctx)
    if table is not None and upto < len(table):
        return table[upto]
    if upto > _PREFIX_LIMIT:
        out = 1
        for k in range(1, upto + 1):
            if k % ctx.p:
                out = out * k % ctx.modulus
        return out
    with _prefix_lock:
        table = _prefix_tables.setdefault(ctx, [1])
        p, mod = ctx.p, ctx.modulus
        acc = table[-1]
        for k in range(len(table), upto + 1):
            if k % p:
                acc = acc * k % mod
            table.append(acc)
        return table[upto]


def _factorial_residue(n: int, ctx: ResidueContext) -> int:
    blocks, rest = divmod(n, ctx.modulus)
    out = _unit_prefix(ctx, rest)
    if blocks & 1 and _unit_block_sign(ctx) != 1:
        out = ctx.modulus - out
    return out % ctx.modulus


def modified_factorial_mod(n: int, ctx: ResidueContext) -> PAdicResidue:
    """n!_p mod p^k as (block sign)^(n // p^k) * (units <= n mod p^k)."""
    return PAdicResidue(ctx, _factorial_residue(n, ctx))


def modified_binomial_mod(a: int, b: int, ctx: ResidueContext) -> PAdicResidue:
    if b > a:
        raise ValueError(f"lower index {b} exceeds upper index {a}")
    mod = ctx.modulus
    den = _factorial_residue(b, ctx) * _factorial_residue(a - b, ctx)
    return PAdicResidue(ctx, _factorial_residue(a, ctx) * pow(den, -1, mod) % mod)


@dataclass(frozen=True)
class BaseDigits:
    p: int
    digits: tuple[int, ...]

    @classmethod
    def of(cls, n: int, p: int) -> BaseDigits:
        if n < 0:
            raise ValueError("negative numbers have no base-p digits here")
        ds = []
        while n:
            n, r = divmod(n, p)
            ds.append(r)
        return cls(p, tuple(ds))

    @property
    def value(self) -> int:
        out = 0
        for d in reversed(self.digits):
            out = out * self.p + d
        return out

    def digit(self, i: int) -> int:
        return self.digits[i] if i < len(self.digits) else 0


@dataclass(frozen=True)
class CarryReport:
    p: int
    a: int
    b: int
    carries: int
    positions: tuple[int, ...]


def kummer_carries(a: int, b: int, p: int) -> CarryReport:
    """Carries made when adding b and a - b in base p."""
    if b > a:
        raise ValueError(f"lower index {b} exceeds upper index {a}")
    x, y = BaseDigits.of(b, p), BaseDigits.of(a - b, p)
    width = max(len(x.digits), len(y.digits))
    carry = 0
    positions = []
    for i in range(width):
        s = x.digit(i) + y.digit(i) + carry
        carry = int(s >= p)
        if carry:
            positions.append(i)
    return CarryReport(p, a, b, len(positions), tuple(positions))


def lucas_product(a: int, b: int, p: int) -> PAdicResidue:
    ctx = ResidueContext(p, 1)
    da, db = BaseDigits.of(a, p), BaseDigits.of(b, p)
    out = 1
    for i in range(max(len(da.digits), len(db.digits))):
        out = out * math.comb(da.digit(i), db.digit(i)) % p
    return PAdicResidue(ctx, out)


def anton_product(a: int, b: int, p: int) -> PAdicResidue:
    """prod a_i! / (b_i! c_i!) mod p over the base-p digits of a, b, c = a - b.

    This is congruent to (-1)^l C(a, b) / p^l, l the number of carries.
    """
    if b > a:
        raise ValueError(f"lower index {b} exceeds upper index {a}")
    ctx = ResidueContext(p, 1)
    da, db, dc = (BaseDigits.of(v, p) for v in (a, b, a - b))
    num = den = 1
    for i in range(len(da.digits)):
        num = num * math.factorial(da.digit(i)) % p
        den = den * math.factorial(db.digit(i)) * math.factorial(dc.digit(i)) % p
    return PAdicResidue(ctx, num * pow(den, -1, p) % p)


def anton_lhs(a: int, b: int, p: int) -> PAdicResidue:
    """(-1)^l C(a, b) / p^l mod p, the quantity the Anton product matches."""
    c = binomial_exact(a, b)
    ell = valuation(c, p)
    return ResidueContext(p, 1)((-1) ** ell * (c // p**ell))
