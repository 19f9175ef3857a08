"""Divisible combinations of C(ip, p): the modified-binomial sum, its
forward-difference oracle, and the normalised integer coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_prime, primes_upto, rational_valuation, valuation
from .binomial import binomial_exact, modified_binomial_exact


class TheoremViolation(ArithmeticError):
    pass


def _check(n: int, p: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p) or p <= 2 * n + 1:
        raise ValueError(f"need a prime p > 2n+1 = {2 * n + 1}, got {p}")


def sum_coefficient(n: int, j: int) -> Fraction:
    """C(2n+1, j) (2(n-j)+1) / (2n+1); always an integer."""
    return Fraction(math.comb(2 * n + 1, j) * (2 * (n - j) + 1), 2 * n + 1)


def _comb(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def sum_coefficient_alternatives(n: int, j: int) -> tuple[int, int]:
    return (
        _comb(2 * n - 1, j) - _comb(2 * n - 1, j - 2),
        _comb(2 * n, j) - _comb(2 * n, j - 1),
    )


def theorem0_sum(n: int, m: int, p: int) -> Fraction:
    """sum_{j=0}^n (-1)^j C(2n+1, j) (2(n-j)+1)/(2n+1) C((n+1-j)m, m)_p."""
    _check(n, p)
    total = Fraction(0)
    for j in range(n + 1):
        coeff = sum_coefficient(n, j)
        if any(coeff != alt for alt in sum_coefficient_alternatives(n, j)):
            raise AssertionError(f"coefficient identity broken at n={n}, j={j}")
        total += (-1) ** j * coeff * modified_binomial_exact((n + 1 - j) * m, m, p)
    return total


def theorem0_order(n: int, m: int, p: int):
    """(observed, required) with required = (2n+1) v_p(m)."""
    observed = rational_valuation(theorem0_sum(n, m, p), p)
    required = (2 * n + 1) * valuation(m, p)
    if not observed >= required:
        raise TheoremViolation(
            f"n={n}, m={m}, p={p}: valuation {observed} < {required}"
        )
    return observed, required


class Polynomial:
    """Dense polynomial with exact coefficients, lowest degree first."""

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def monomial(cls, d: int, c=1) -> Polynomial:
        return cls([0] * d + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Polynomial(out)

    def scale(self, c) -> Polynomial:
        return Polynomial([c * x for x in self.coeffs])

    def shift(self, h=1) -> Polynomial:
        """x -> x + h, by Horner's scheme on polynomials."""
        out = Polynomial([])
        lin = Polynomial([h, 1])
        for c in reversed(self.coeffs):
            out = out * lin + Polynomial([c])
        return out

    def reflect(self) -> Polynomial:
        """x -> -x."""
        return Polynomial([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def forward_difference(self, times: int = 1) -> Polynomial:
        out = self
        for _ in range(times):
            out = out.shift(1) - out
        return out

    def __repr__(self):
        return f"Polynomial({self.coeffs!r})"


def forward_difference_at(f, order: int, x):
    """(Delta^order f)(x) = sum_i (-1)^(order-i) C(order, i) f(x+i)."""
    return sum(
        (-1) ** (order - i) * math.comb(order, i) * f(x + i) for i in range(order + 1)
    )


def modified_binomial_polynomial(m: int, p: int) -> Polynomial:
    """f with f(x) = C(xm, m)_p for positive integers x; needs p | m.

    f(x) = prod_{k <= m, p not| k} (1 - x m / k), kept as an integer
    polynomial divided by the product of the k.
    """
    if m % p:
        raise ValueError(f"polynomial form needs p | m, got m={m}, p={p}")
    num = Polynomial([1])
    den = 1
    for k in range(1, m + 1):
        if k % p:
            num = num * Polynomial([k, -m])
            den *= k
    return Polynomial([Fraction(c, den) for c in num.coeffs])


def difference_oracle(n: int, m: int, p: int) -> Fraction:
    """Delta^{2n} f evaluated at x = -n."""
    _check(n, p)
    f = modified_binomial_polynomial(m, p)
    return Fraction(forward_difference_at(f, 2 * n, -n))


def odd_part_variant(n: int, m: int, p: int) -> Fraction:
    """Delta^{2n}(f(x) - f(-x)) at x = -n; reported, not asserted."""
    _check(n, p)
    f = modified_binomial_polynomial(m, p)
    return Fraction(forward_difference_at(lambda x: f(x) - f(-x), 2 * n, -n))


@dataclass(frozen=True)
class ComboCoefficients:
    n: int
    t: tuple[Fraction, ...]
    L: int
    c: tuple[int, ...]


def t_coefficients(n: int) -> list[Fraction]:
    """t_i = C(2n+1, n+1-i) (2i-1) / ((2n+1) i), i = 1..n+1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [
        Fraction(math.comb(2 * n + 1, n + 1 - i) * (2 * i - 1), (2 * n + 1) * i)
        for i in range(1, n + 2)
    ]


def normalizer_L_closed(n: int) -> int:
    num = math.lcm(*range(1, 2 * n + 1)) * (2 * n + 1)
    den = math.comb(2 * n + 1, n)
    if num % den:
        raise AssertionError(f"closed form for L is not integral at n={n}")
    return num // den


def normalizer_L_by_primes(n: int) -> int:
    """prod over primes r <= n+1 of r^l_r, l_r = max_i -v_r(t_i)."""
    t = t_coefficients(n)
    L = 1
    for r in primes_upto(n + 1):
        ell = max(-rational_valuation(ti, r) for ti in t)
        L *= r ** max(ell, 0)
    return L


def normalizer_L(n: int) -> int:
    a, b = normalizer_L_by_primes(n), normalizer_L_closed(n)
    if a != b:
        raise AssertionError(f"L mismatch at n={n}: {a} != {b}")
    return a


def c_coefficients(n: int) -> ComboCoefficients:
    t = t_coefficients(n)
    L = normalizer_L(n)
    c = []
    for i, ti in enumerate(t, start=1):
        ci = (-1) ** (i - 1) * L * ti
        if ci.denominator != 1:
            raise AssertionError(f"c_{i} = {ci} is not an integer (n={n})")
        c.append(int(ci))
    return ComboCoefficients(n, tuple(t), L, tuple(c))


def combo_value(n: int, p: int) -> int:
    """sum_{i=1}^{n+1} c_i C(ip, p)."""
    _check(n, p)
    cc = c_coefficients(n)
    return sum(ci * binomial_exact(i * p, p) for i, ci in enumerate(cc.c, start=1))


def quotient(n: int, p: int) -> int:
    value = combo_value(n, p)
    d = p ** (2 * n + 1)
    if value % d:
        raise TheoremViolation(f"p^{2 * n + 1} does not divide the combination (n={n}, p={p})")
    return value // d
