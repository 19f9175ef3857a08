"""Approximating C(aq, bq)_p by the C(a_i q, bq)_p, additively and multiplicatively."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arith import (
    INFINITY,
    ResidueContext,
    is_infinite,
    is_prime,
    padic_pow,
    primes_between,
    rational_valuation,
    valuation,
)
from .bernoulli import epsilon_term
from .binomial import modified_binomial_exact
from .symfunc import build_unit_set, elementary_symmetric, z_value


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class ApproxInstance:
    p: int
    e: int
    b: int
    a0: int
    a_list: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a_list", tuple(self.a_list))
        self.validate()

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def n(self) -> int:
        return len(self.a_list)

    @property
    def all_a(self) -> tuple[int, ...]:
        return (self.a0,) + self.a_list

    def prime_bound(self) -> int:
        """p must exceed this; pairs include a0."""
        pair_max = max(
            (x + y - self.b for x, y in combinations(self.all_a, 2)), default=0
        )
        return max(2 * self.n + 1, pair_max)

    def validate(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1 or self.b < 1:
            raise ValueError("need e >= 1 and b >= 1")
        if self.n < 1:
            raise ValueError("need at least one a_i")
        if len(set(self.all_a)) != len(self.all_a):
            raise ValueError(f"a values must be distinct: {self.all_a}")
        if min(self.all_a) < self.b:
            raise ValueError(f"a values must be >= b={self.b}")
        if self.p <= self.prime_bound():
            raise ValueError(
                f"p={self.p} must exceed {self.prime_bound()} "
                "(2n+1 and every a_i + a_k - b)"
            )


@dataclass
class OrderReport:
    instance: ApproxInstance
    predicted_r: int
    observed_additive: object
    observed_multiplicative: object
    k_work: int
    saturated: bool
    eqr_diagnostic: object = None
    pass_: bool = field(init=False)

    def __post_init__(self):
        self.pass_ = (
            self.observed_additive >= self.predicted_r
            and self.observed_multiplicative >= self.predicted_r
        )


def coefficients_y(a0: int, a_list, b: int) -> list[Fraction]:
    """y_i = prod_{k != i} (a0 - a_k)(a0 + a_k - b) / ((a_i - a_k)(a_i + a_k - b))."""
    a_list = list(a_list)
    if len(set(a_list)) != len(a_list) or a0 in a_list:
        raise ValueError(f"degenerate instance, repeated a value in {[a0] + a_list}")
    ys = []
    for i, ai in enumerate(a_list):
        y = Fraction(1)
        for k, ak in enumerate(a_list):
            if k != i:
                y *= Fraction((a0 - ak) * (a0 + ak - b), (ai - ak) * (ai + ak - b))
        ys.append(y)
    return ys


def moment_residuals(a0: int, a_list, b: int, ys=None) -> list[Fraction]:
    """z0^d - sum y_i z_i^d for d = 0..n-1; all zero for the right y."""
    if ys is None:
        ys = coefficients_y(a0, a_list, b)
    z0 = z_value(a0, b)
    zs = [z_value(a, b) for a in a_list]
    return [
        z0**d - sum(y * z**d for y, z in zip(ys, zs)) for d in range(len(a_list))
    ]


def g0(x: int, a_list, b: int) -> int:
    out = 1
    for ak in a_list:
        out *= (x - ak) * (x + ak - b)
    return out


def predicted_order(inst: ApproxInstance) -> int:
    """(2n+1) v(q) + v(g0(a0)) + v(b) + eps, eps taken as a lower bound."""
    p = inst.p
    eps = epsilon_term(inst.n, inst.b, inst.q, p)
    return (
        (2 * inst.n + 1) * inst.e
        + valuation(g0(inst.a0, inst.a_list, inst.b), p)
        + valuation(inst.b, p)
        + eps
    )


def modified_binomials(inst: ApproxInstance) -> list[Fraction]:
    """[C(a0 q, bq)_p, C(a1 q, bq)_p, ...]."""
    q, bq = inst.q, inst.b * inst.q
    return [modified_binomial_exact(a * q, bq, inst.p) for a in inst.all_a]


def additive_residual(inst: ApproxInstance, binoms=None) -> Fraction:
    if binoms is None:
        binoms = modified_binomials(inst)
    ys = coefficients_y(inst.a0, inst.a_list, inst.b)
    return binoms[0] - sum(y * c for y, c in zip(ys, binoms[1:]))


def additive_residual_order(inst: ApproxInstance, binoms=None):
    return rational_valuation(additive_residual(inst, binoms), inst.p)


def multiplicative_residual(inst: ApproxInstance, k_work: int, binoms=None):
    """C0 * prod C_i^(-y_i) - 1 in Z/p^k_work."""
    if binoms is None:
        binoms = modified_binomials(inst)
    ctx = ResidueContext(inst.p, k_work)
    ys = coefficients_y(inst.a0, inst.a_list, inst.b)
    acc = ctx(binoms[0])
    for y, c in zip(ys, binoms[1:]):
        acc = acc * padic_pow(ctx(c) - 1, -y)
    return acc - 1


def multiplicative_residual_order(inst: ApproxInstance, k_work=None, binoms=None):
    """Returns (order, saturated). A saturated order equals k_work and means
    the residual vanished at working precision."""
    r = predicted_order(inst)
    if k_work is None:
        k_work = r + 3
    if k_work <= r:
        raise PrecisionError(
            f"working precision {k_work} must exceed the predicted order {r}"
        )
    v = multiplicative_residual(inst, k_work, binoms).valuation()
    if is_infinite(v):
        return k_work, True
    return v, False


def eqr_diagnostic(inst: ApproxInstance, max_bq: int | None = None):
    """(2n+1) v(q) + v(g(z0)) + v(sigma_n / q), sigma_n over {1/k^2 : k in S}."""
    S = build_unit_set(inst.b, inst.q, inst.p, max_bq=max_bq)
    n = inst.n
    if n > S.N:
        return INFINITY
    sigma_n = elementary_symmetric(S.inverse_squares(), n)[n]
    z0 = z_value(inst.a0, inst.b)
    g = Fraction(1)
    for a in inst.a_list:
        g *= z0 - z_value(a, inst.b)
    return (
        (2 * n + 1) * inst.e
        + rational_valuation(g, inst.p)
        + rational_valuation(sigma_n / inst.q, inst.p)
    )


def check_instance(inst: ApproxInstance, k_work=None, with_eqr=False) -> OrderReport:
    binoms = modified_binomials(inst)
    r = predicted_order(inst)
    k = r + 3 if k_work is None else k_work
    add = additive_residual_order(inst, binoms)
    mult, sat = multiplicative_residual_order(inst, k, binoms)
    eqr = eqr_diagnostic(inst) if with_eqr else None
    return OrderReport(inst, r, add, mult, k, sat, eqr)


def jacobsthal_order(a: int, b: int, p: int) -> tuple[object, int]:
    """(v_p(C(ap, bp)_p - 1), 3 + v_p(ab(a-b))) for a > b > 0, p > 3."""
    if p <= 3 or not is_prime(p):
        raise ValueError(f"need a prime p > 3, got {p}")
    if not a > b > 0:
        raise ValueError(f"need a > b > 0, got a={a}, b={b}")
    observed = rational_valuation(modified_binomial_exact(a * p, b * p, p) - 1, p)
    bound = 3 + valuation(a * b * (a - b), p)
    return observed, bound


def sample_instances(rng, count: int, n_max=4, b_max=6, a_max=12, exps=(1, 2), p_max=100):
    """Random valid instances drawn with ``rng`` (a random.Random)."""
    primes = primes_between(3, p_max)
    out = []
    while len(out) < count:
        n = rng.randint(1, n_max)
        b = rng.randint(1, b_max)
        if a_max - b + 1 < n + 1:
            continue
        a = rng.sample(range(b, a_max + 1), n + 1)
        pair_max = max(x + y - b for i, x in enumerate(a) for y in a[i + 1 :])
        ok = [p for p in primes if p > max(2 * n + 1, pair_max)]
        if not ok:
            continue
        p = rng.choice(ok)
        out.append(ApproxInstance(p, rng.choice(exps), b, a[0], tuple(a[1:])))
    return out
