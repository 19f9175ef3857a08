import random
from fractions import Fraction

import pytest

from padbin.approx import (
    ApproxInstance,
    PrecisionError,
    additive_residual,
    additive_residual_order,
    check_instance,
    coefficients_y,
    eqr_diagnostic,
    jacobsthal_order,
    moment_residuals,
    multiplicative_residual_order,
    predicted_order,
    sample_instances,
)
from padbin.arith import INFINITY, primes_between, rational_valuation
from padbin.combos import theorem0_sum
from padbin.symfunc import z_value

from conftest import frac_valuation

F = Fraction


def solve_moments(a0, a_list, b):
    """Solve the Vandermonde moment system by Gaussian elimination (oracle)."""
    n = len(a_list)
    zs = [z_value(a, b) for a in a_list]
    z0 = z_value(a0, b)
    rows = [[z**d for z in zs] + [z0**d] for d in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if rows[r][c] != 0)
        rows[c], rows[piv] = rows[piv], rows[c]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c] / rows[c][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return [rows[i][n] / rows[i][i] for i in range(n)]


def test_coefficients_examples():
    assert coefficients_y(5, [3], 3) == [1]
    assert coefficients_y(3, [1, 2], 1) == [-2, 3]
    assert F(1 * 4, (-1) * 2) == -2 and F(2 * 3, 1 * 2) == 3
    ys = coefficients_y(4, [2, 3], 2)
    assert ys == [F(-5, 3), F(8, 3)] and sum(ys) == 1
    with pytest.raises(ValueError):
        coefficients_y(3, [1, 1], 1)


def test_coefficients_match_linear_solve():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 5)
        b = rng.randint(1, 6)
        a = rng.sample(range(b, 15), n + 1)
        assert coefficients_y(a[0], a[1:], b) == solve_moments(a[0], a[1:], b)
        assert all(m == 0 for m in moment_residuals(a[0], a[1:], b))


def test_instance_validation():
    ApproxInstance(7, 1, 1, 3, (1, 2))
    with pytest.raises(ValueError):
        ApproxInstance(5, 1, 1, 3, (1, 2))  # p <= 2n+1
    with pytest.raises(ValueError):
        ApproxInstance(7, 1, 2, 1, (3,))  # a0 < b
    with pytest.raises(ValueError):
        ApproxInstance(11, 1, 1, 3, (3,))  # repeated
    # pair condition includes a0: 9 + 4 - 1 = 12 >= 11
    with pytest.raises(ValueError):
        ApproxInstance(11, 1, 1, 9, (4, 2))
    with pytest.raises(ValueError):
        ApproxInstance(2, 1, 1, 3, (1,))


def test_predicted_order_examples():
    assert predicted_order(ApproxInstance(5, 1, 1, 2, (1,))) == 3
    assert predicted_order(ApproxInstance(7, 1, 1, 3, (1, 2))) == 5
    assert predicted_order(ApproxInstance(5, 2, 1, 2, (1,))) == 6
    # Wolstenholme prime: eps = 1
    assert predicted_order(ApproxInstance(16843, 1, 1, 2, (1,))) == 4


def test_additive_examples():
    inst = ApproxInstance(5, 1, 1, 2, (1,))
    assert additive_residual(inst) == 125
    assert additive_residual_order(inst) == 3
    inst = ApproxInstance(7, 1, 1, 3, (1, 2))
    assert additive_residual(inst) == F(116280, 3) + 2 - 3 * F(3432, 2) == 33614 == 2 * 7**5
    assert additive_residual_order(inst) == 5


def test_multiplicative_examples():
    assert multiplicative_residual_order(ApproxInstance(5, 1, 1, 2, (1,)), 6) == (3, False)
    order, sat = multiplicative_residual_order(ApproxInstance(7, 1, 1, 3, (1, 2)), 8)
    assert order >= 5
    with pytest.raises(PrecisionError):
        multiplicative_residual_order(ApproxInstance(7, 1, 1, 3, (1, 2)), 5)


def test_multiplicative_integer_exponents_match_exact():
    # y = (-2, 3): product is C0 * C1^2 * C2^-3, computable exactly
    inst = ApproxInstance(11, 1, 1, 3, (1, 2))
    from padbin.approx import modified_binomials

    c0, c1, c2 = modified_binomials(inst)
    exact = frac_valuation(c0 * c1**2 / c2**3 - 1, 11)
    order, sat = multiplicative_residual_order(inst, exact + 2)
    assert order == exact and not sat


def test_wolstenholme_prime_instance_is_not_saturated():
    inst = ApproxInstance(16843, 1, 1, 2, (1,))
    assert predicted_order(inst) == 4
    assert multiplicative_residual_order(inst, 5) == (4, False)
    assert additive_residual_order(inst) == 4


def test_saturation_flag(monkeypatch):
    import padbin.approx as approx

    inst = ApproxInstance(7, 1, 1, 3, (1, 2))  # true order 5
    monkeypatch.setattr(approx, "predicted_order", lambda _inst: 2)
    assert approx.multiplicative_residual_order(inst, 4) == (4, True)
    assert approx.multiplicative_residual_order(inst, 6) == (5, False)


def test_eqr_examples():
    assert eqr_diagnostic(ApproxInstance(5, 1, 1, 2, (1,))) == 3
    assert eqr_diagnostic(ApproxInstance(7, 1, 1, 3, (1, 2))) == 5
    # sigma_1 = 4/9 + 4 = 40/9, v_5(sigma_1 / 5) = 0
    assert rational_valuation(F(40, 9) / 5, 5) == 0


def test_eqr_is_a_lower_order_estimate():
    rng = random.Random(11)
    for inst in sample_instances(rng, 40, n_max=3, b_max=3, a_max=8, exps=(1,), p_max=40):
        rep = check_instance(inst, with_eqr=True)
        assert rep.eqr_diagnostic <= rep.observed_additive
        assert rep.eqr_diagnostic >= rep.predicted_r


def test_y_are_p_integral_and_orders_hold():
    rng = random.Random(5)
    for inst in sample_instances(rng, 30, p_max=60):
        ys = coefficients_y(inst.a0, inst.a_list, inst.b)
        assert all(rational_valuation(y, inst.p) >= 0 for y in ys if y)
        rep = check_instance(inst)
        assert rep.pass_
        k = rep.k_work
        assert min(rep.observed_additive, k) == min(rep.observed_multiplicative, k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_consistency_with_theorem0(n):
    for p in primes_between(2 * n + 2, 50):
        inst = ApproxInstance(p, 1, 1, n + 1, tuple(range(1, n + 1)))
        assert additive_residual(inst) == theorem0_sum(n, p, p)


def test_jacobsthal_examples():
    assert jacobsthal_order(2, 1, 5) == (3, 3)
    obs, bound = jacobsthal_order(2, 1, 16843)
    assert bound == 3 and obs >= 4
    obs, bound = jacobsthal_order(5, 1, 5)
    assert bound == 4 and obs >= 4
    with pytest.raises(ValueError):
        jacobsthal_order(2, 1, 3)


def test_jacobsthal_is_theorem1_with_n_equal_1():
    for p in (5, 7, 11, 13):
        for a in range(2, 7):
            for b in range(1, a):
                if p <= a:
                    continue
                inst = ApproxInstance(p, 1, b, a, (b,))
                obs, _ = jacobsthal_order(a, b, p)
                assert additive_residual_order(inst) == obs
