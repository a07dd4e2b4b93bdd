"""Exact series arithmetic, composition, reversion and square roots."""
from fractions import Fraction
import os
import random
import sys

import pytest

# Ensure the project root is on the import path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from series import (
    BiSeries,
    BranchError,
    IdentityViolation,
    InexactDivision,
    PowerSeries,
    QuadSurd,
    SeriesError,
    SeriesFamily,
    TruncationError,
    VariableMismatch,
    polynomial,
)
from series import power_series, rational, schemas
from series.schemas import FamilyPayload, SeriesPayload

SEED = 20240101


def coeffs(series):
    return [int(c) if c.denominator == 1 else c for c in series.coefficients]


def random_series(rng, order=12, constant=None, linear=None):
    values = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order + 1)]
    if constant is not None:
        values[0] = Fraction(constant)
    if linear is not None:
        values[1] = Fraction(linear)
    return PowerSeries("x", order, tuple(values))


def test_difference_of_squares():
    """(1 + x)(1 - x) = 1 - x^2."""
    a = polynomial("x", [1, 1], 4)
    b = polynomial("x", [1, -1], 4)
    assert coeffs(a * b) == [1, 0, -1, 0, 0]


def test_geometric_series():
    """1 / (1 - x) has all coefficients 1."""
    result = PowerSeries.one("x", 4) / polynomial("x", [1, -1], 4)
    assert coeffs(result) == [1, 1, 1, 1, 1]
    assert result.order == 4


def test_h_over_one_minus_h():
    h = polynomial("G", [0, 1, 1, 3], 3)
    assert coeffs(h / (1 - h)) == [0, 1, 2, 5]


def test_division_with_valuation_shift_loses_order():
    """Dividing by a series of valuation v drops v orders."""
    a = polynomial("x", [0, 0, 1, 1], 6)
    b = polynomial("x", [0, 1, 1], 6)
    q = a / b
    assert q.order == 5
    assert coeffs(q) == [0, 1, 0, 0, 0, 0]


def test_inexact_division_raises():
    """Division needs the divisor's valuation to divide out."""
    with pytest.raises(InexactDivision):
        polynomial("x", [1, 1], 4) / polynomial("x", [0, 0, 1], 4)


def test_variable_mismatch_raises():
    """Series in different variables do not combine."""
    with pytest.raises(VariableMismatch):
        polynomial("x", [1], 3) + polynomial("G", [1], 3)


def test_coefficient_beyond_order_is_unknown():
    """Indexing past the order is a truncation error, not zero."""
    s = polynomial("g", [1, 2], 3)
    assert s[3] == 0
    with pytest.raises(TruncationError):
        s.coefficient(4)


def test_orders_take_the_minimum():
    a = polynomial("x", [1, 1], 7)
    b = polynomial("x", [1, 2], 3)
    assert (a + b).order == 3
    assert (a * b).order == 3


def test_compose_square():
    outer = polynomial("x", [0, 0, 1], 6)
    inner = polynomial("x", [0, 1, 0, 1], 6)
    assert coeffs(outer(inner)) == [0, 0, 1, 0, 2, 0, 1]


def test_compose_geometric_with_fibonacci_result():
    outer = PowerSeries.one("x", 3) / polynomial("x", [1, -1], 3)
    inner = polynomial("x", [0, 1, 1], 3)
    assert coeffs(outer.compose(inner)) == [1, 1, 2, 3]


def test_compose_rejects_constant_inner():
    """Composition needs an inner series without constant term."""
    with pytest.raises(SeriesError):
        polynomial("x", [0, 1], 3).compose(polynomial("x", [1, 1], 3))


def test_revert_catalan():
    """Reverting x - x^2 gives the Catalan series."""
    assert coeffs(polynomial("x", [0, 1, -1], 4).revert()) == [0, 1, 1, 2, 5]


def test_revert_ternary_trees_in_another_variable():
    c = PowerSeries.identity("C", 4)
    g_of_c = c / (1 + c) ** 3
    result = g_of_c.revert("G")
    assert result.variable == "G"
    assert coeffs(result) == [0, 1, 3, 12, 55]


def test_revert_identity_and_zero_linear_term():
    """Reversion needs a nonzero linear term."""
    assert coeffs(PowerSeries.identity("x", 5).revert()) == [0, 1, 0, 0, 0, 0]
    with pytest.raises(SeriesError):
        polynomial("x", [0, 0, 1], 4).revert()


def test_sqrt_one_examples():
    """Square roots of series with constant term 1."""
    assert coeffs(polynomial("x", [1, 2, 1], 4).sqrt_one()) == [1, 1, 0, 0, 0]
    assert coeffs(polynomial("x", [1, -4], 3).sqrt_one()) == [1, -2, -2, -4]
    with pytest.raises(BranchError):
        polynomial("x", [2, 1], 3).sqrt_one()


def test_shift_and_valuation():
    s = polynomial("x", [0, 0, 3, 1], 5)
    assert coeffs(s.shift(-2)) == [3, 1, 0, 0]
    assert s.valuation() == 2


def test_assert_integral():
    polynomial("g", [1, 2, 9], 2).assert_integral()
    with pytest.raises(SeriesError):
        polynomial("g", [1, Fraction(1, 2)], 1).assert_integral()
    with pytest.raises(SeriesError):
        polynomial("g", [1, -1], 1).assert_integral()


def test_ring_axioms_on_random_series():
    """Distributivity and commutativity on seeded random series at order 12."""
    rng = random.Random(SEED)
    for _ in range(200):
        a, b, c = (random_series(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a - b) + b == a


def test_revert_is_two_sided_inverse():
    """compose(revert) is the identity on both sides."""
    rng = random.Random(SEED + 1)
    identity = PowerSeries.identity("x", 12)
    for _ in range(200):
        s = random_series(rng, constant=0, linear=1)
        f = s.revert()
        assert s.compose(f) == identity
        assert f.compose(s) == identity


def test_sqrt_squares_back():
    """sqrt_one squares back to its argument."""
    rng = random.Random(SEED + 2)
    for _ in range(200):
        s = random_series(rng, constant=1)
        r = s.sqrt_one()
        assert r * r == s
        assert r[0] == 1


def test_quad_surd_golden_ratio():
    omega = QuadSurd.golden()
    assert omega * omega == omega + 1
    assert omega.norm() == -1
    assert (omega * omega.inverse()).rational() == 1
    with pytest.raises(SeriesError):
        omega.rational()


def test_series_modules_are_documented():
    for module in (rational, power_series, schemas):
        assert module.__doc__ and module.__doc__.strip()


def test_bi_series_div_by_t():
    """Removing the t = 0 value and dividing by t is exact."""
    one = PowerSeries.one("G", 3)
    zero = PowerSeries.zero("G", 3)
    g = PowerSeries.identity("G", 3)
    s = BiSeries.outer_polynomial([zero, one, g], 2)
    q = s.div_by_t()
    assert q.outer_degree == 1
    assert q.coefficient(0) == one
    assert q.coefficient(1) == g
    with pytest.raises(IdentityViolation):
        BiSeries.from_inner(one, 2).div_by_t()


def test_bi_series_eval_t_and_division():
    g = PowerSeries.identity("G", 6)
    t = BiSeries.outer_variable_series("G", 6, 6)
    geometric = BiSeries.inverse_one_plus("G", 6, 6)
    assert (geometric * (1 + t)).truncate(5) == BiSeries.from_inner(PowerSeries.one("G", 6), 5)
    assert (1 / (1 + t)) == geometric
    # 1/(1+t) at t = G is 1 - G + G^2 - ...
    assert coeffs(geometric.eval_t(g)) == [1, -1, 1, -1, 1, -1, 1]


def test_bi_series_division_shifts_inner_valuation():
    g = PowerSeries.identity("G", 5)
    t = BiSeries.outer_variable_series("G", 5, 3)
    num = t * (g * g) + g * g * g
    den = t * (g * g) + g * g
    q = num / den
    assert q.order == 3
    assert q.coefficient(0) == PowerSeries.identity("G", 3)
    with pytest.raises(InexactDivision):
        num / (t * g + g * g)


def test_bi_series_sqrt_squares_back():
    g = PowerSeries.identity("G", 5)
    t = BiSeries.outer_variable_series("G", 5, 4)
    s = 1 + t * g * 4 - t * t + g * 2
    r = s.sqrt_one()
    assert r * r == s


def test_family_stabilization_check():
    """check_counting flags an entry that drops below its predecessor."""
    ones = PowerSeries.one("g", 2)
    zero = PowerSeries.zero("g", 2)
    family = SeriesFamily("S", (zero, ones, ones), limit=ones)
    family.check_counting()
    bad = SeriesFamily("S", (zero, ones, zero), limit=ones)
    with pytest.raises(IdentityViolation):
        bad.check_counting()


def test_series_payload_shape():
    payload = SeriesPayload.from_series(polynomial("G", [0, 1, Fraction(-1, 2)], 2))
    assert payload.model_dump() == {
        "variable": "G",
        "order": 2,
        "coefficients": ["0/1", "1/1", "-1/2"],
    }
    assert payload.to_series() == polynomial("G", [0, 1, Fraction(-1, 2)], 2)


def test_series_payload_rejects_decimals():
    """Decimal strings would hide rounding and are refused."""
    with pytest.raises(ValueError):
        SeriesPayload(variable="G", order=0, coefficients=["0.5"])
    with pytest.raises(ValueError):
        SeriesPayload(variable="q", order=0, coefficients=["1"])


def test_family_payload_roundtrip_keeps_limit():
    """A family with a limit survives JSON."""
    ones = PowerSeries.one("g", 1)
    family = SeriesFamily("R", (PowerSeries.zero("g", 1), ones), limit=ones)
    assert FamilyPayload.from_family(family).to_family() == family
