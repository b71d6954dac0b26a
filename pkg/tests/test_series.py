"""Truncated series arithmetic: pinned examples, error contract, ring laws."""

import itertools
import random
from fractions import Fraction

import pytest

from stabctab.errors import (
    BadFactorBound,
    LaurentBoundViolated,
    NotInvertible,
    OrderMismatch,
    OutOfOrder,
)
from stabctab.series import (
    TruncatedBiSeries as T,
    ZWSeries,
    binomial_factor,
    substitute_z_t__w_q_over_t,
    truncated_product,
)


def q(order, k, c=1):
    return T(order, {(k, 0): c})


def test_add_cancellation():
    assert T(4, {(0, 0): 1, (1, 0): 1}) + T(4, {(0, 0): 1, (1, 0): -1}) == T(4, {(0, 0): 2})


def test_add_disjoint_supports():
    qt = T(6, {(1, 1): 1})
    q2t_inv = T(6, {(2, -1): 1})
    assert qt + q2t_inv == T(6, {(1, 1): 1, (2, -1): 1})


def test_add_identity():
    f = T(5, {(0, 0): 3, (2, 1): 5})
    assert f + T.zero(5) == f


def test_add_order_mismatch():
    with pytest.raises(OrderMismatch):
        T.one(3) + T.one(4)


def test_mul_difference_of_squares():
    assert (T.one(4) + q(4, 1)) * (T.one(4) - q(4, 1)) == T(4, {(0, 0): 1, (2, 0): -1})


def test_mul_laurent_cancellation():
    assert T(4, {(1, -1): 1}) * T(4, {(1, 1): 1}) == T(4, {(2, 0): 1})


def test_mul_geometric_telescope():
    order = 10
    geometric = T(order, {(k, k): 1 for k in range(order + 1)})
    one_minus_qt = T(order, {(0, 0): 1, (1, 1): -1})
    assert one_minus_qt * geometric == T.one(order)


def test_mul_keeps_low_degree_cancellation_terms():
    # (1 - q t^-1)(1 - t^2) contains +q*t from two degree-2 keys
    prod = T(2, {(0, 0): 1, (1, -1): -1}) * T(2, {(0, 0): 1, (0, 2): -1})
    assert prod.coeff(1, 1) == 1


def test_inverse_geometric():
    inv = T(6, {(0, 0): 1, (2, 0): -1}).inverse()
    assert inv == T(6, {(0, 0): 1, (2, 0): 1, (4, 0): 1, (6, 0): 1})


def test_inverse_constant():
    assert T(3, {(0, 0): 2}).inverse() == T(3, {(0, 0): Fraction(1, 2)})


def test_inverse_round_trip_qt():
    f = T(12, {(0, 0): 1, (1, 1): -1})
    assert f.inverse() * f == T.one(12)


def test_inverse_zero_constant_term():
    with pytest.raises(NotInvertible):
        T(4, {(1, 0): 1}).inverse()


def test_inverse_rejects_laurent_content():
    with pytest.raises(NotInvertible):
        T(4, {(0, 0): 1, (1, -1): 1}).inverse()


def test_mul_association_sensitivity_documented():
    """Chained products with mixed-sign t-exponents are association
    sensitive near the boundary; each single product stays the exact
    truncation of the exact product of its operands."""
    f = T(4, {(1, 0): 1})
    g = T(4, {(2, -2): 1})
    h = T(4, {(1, 2): 1})
    assert (f * g) * h != f * (g * h)
    lifted = T(8, {(1, 0): 1}) * T(8, {(2, -2): 1}) * T(8, {(1, 2): 1})
    assert lifted.coeff(4, 0) == 1


def count_partitions_even_parts(n):
    """Brute-force oracle: partitions of n into even parts."""
    parts = [p for p in range(2, n + 1, 2)]
    count = 0

    def rec(remaining, max_part):
        nonlocal count
        if remaining == 0:
            count += 1
            return
        for p in parts:
            if p <= min(remaining, max_part):
                rec(remaining - p, p)

    rec(n, n)
    return count


def even_part_factors(order):
    for m in itertools.count(1):
        if 2 * m > order:
            return
        yield binomial_factor(T, order, (2 * m, 0), -1, -1), 2 * m


def test_truncated_product_partitions():
    f = truncated_product(even_part_factors(8), 8)
    assert count_partitions_even_parts(4) == 2
    assert f.coeff(4, 0) == 2
    for n in range(0, 9, 2):
        assert f.coeff(n, 0) == count_partitions_even_parts(n)


def test_truncated_product_empty():
    assert truncated_product(iter(()), 5) == T.one(5)


def test_truncated_product_cutoff():
    def odd_factors(order):
        for m in itertools.count(1):
            if 2 * m - 1 > order:
                return
            yield binomial_factor(T, order, (2 * m - 1, 0), 1, 1), 2 * m - 1

    assert truncated_product(odd_factors(1), 1) == T(1, {(0, 0): 1, (1, 0): 1})


def test_truncated_product_bad_bound():
    bad = [(T(6, {(0, 0): 1, (1, 0): 1}), 3)]  # content in degree 1 < 3
    with pytest.raises(BadFactorBound):
        truncated_product(iter(bad), 6)


def test_truncated_product_rejects_negative_t_content():
    factor = [(T(6, {(0, 0): 1, (1, -1): 1}), 1)]
    with pytest.raises(BadFactorBound):
        truncated_product(iter(factor), 6)


def test_truncated_product_order_invariance():
    rng = random.Random(7)
    factors = []
    for m in range(1, 6):
        terms = {(0, 0): 1, (m, 0): rng.randint(1, 4), (m, 1): rng.randint(-3, 3)}
        factors.append((T(8, terms), m))
    base = truncated_product(iter(factors), 8)
    for perm in itertools.permutations(range(5)):
        assert truncated_product((factors[i] for i in perm), 8) == base


def test_coeff_examples():
    assert T(4, {(0, 0): 1, (1, 1): -1}).coeff(1, 1) == -1
    assert T(6, {(0, 0): 1, (2, 0): -1}).inverse().coeff(0, 0) == 1


def test_coeff_out_of_order():
    with pytest.raises(OutOfOrder):
        T.one(4).coeff(3, 2)


def test_laurent_bound_rejected_on_construction():
    with pytest.raises(LaurentBoundViolated):
        T(6, {(1, -2): 1})


def test_zw_series_inverse():
    f = ZWSeries(5, {(0, 0): 1, (2, 1): -1})
    assert f * f.inverse() == ZWSeries.one(5)
    assert f.inverse() == ZWSeries(5, {(2 * j, j): 1 for j in range(6)})
    with pytest.raises(NotInvertible):
        ZWSeries(5, {(1, 0): 1}).inverse()
    with pytest.raises(NotInvertible):
        ZWSeries(5, {(0, 0): 1, (1, 0): 1}).inverse()  # w-degree-0 content


def test_substitution_monomials():
    g = ZWSeries(4, {(2, 1): 1})
    assert substitute_z_t__w_q_over_t(g, 4) == T(4, {(1, 1): 1})
    g = ZWSeries(4, {(0, 1): 1})
    assert substitute_z_t__w_q_over_t(g, 4) == T(4, {(1, -1): 1})


def test_substitution_needs_enough_source_order():
    with pytest.raises(OrderMismatch):
        substitute_z_t__w_q_over_t(ZWSeries.one(3), 5)


def rand_series(rng, order, laurent=True):
    terms = {}
    for _ in range(rng.randint(0, 8)):
        a = rng.randint(0, order)
        lo = -a if laurent else 0
        b = rng.randint(lo, order - a)
        num = rng.randint(-10, 10)
        den = rng.randint(1, 10)
        terms[(a, b)] = Fraction(num, den)
    return T(order, terms)


def test_ring_laws_random():
    # the power-series regime (t-exponents >= 0), where total degree is
    # a genuine grading and truncation is a ring quotient
    rng = random.Random(2024)
    for _ in range(100):
        order = rng.randint(1, 8)
        f, g, h = (rand_series(rng, order, laurent=False) for _ in range(3))
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_inverse_round_trip_random():
    rng = random.Random(99)
    checked = 0
    while checked < 100:
        f = rand_series(rng, rng.randint(1, 8), laurent=False)
        c0 = rng.randint(1, 10) * rng.choice((1, -1))
        f = f + T(f.order, {(0, 0): Fraction(c0, rng.randint(1, 10)) - f.constant_term()})
        inv = f.inverse()
        assert f * inv == T.one(f.order)
        assert inv * f == T.one(f.order)
        checked += 1


def test_everything_is_exact_rational():
    rng = random.Random(5)
    f = rand_series(rng, 6)
    g = rand_series(rng, 6)
    inv_input = rand_series(rng, 6, laurent=False)
    inv_input = inv_input + T.one(6) - T(6, {(0, 0): inv_input.constant_term()})
    for series in (f + g, f * g, inv_input.inverse()):
        for c in series.terms.values():
            assert isinstance(c, Fraction)
