"""Tests for the reference R_k / G_k computation."""

import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from series import PowerSeries
from series.errors import SeriesError
from twopoint.baseline import (
    T_family,
    Rk_residual,
    assemble_G,
    catalan,
    check_baseline,
    compute_R1,
    pointed_rooted_count,
    rkeq_terms,
    rooted_quadrangulation_count,
    solve_R_family,
    solve_R_infinity,
    sum_rule_residual,
)


@pytest.fixture(scope="module")
def family():
    """R_0..R_32 to order 20."""
    return solve_R_family(32, 20)


def test_root_edge_map_contributes_one_everywhere():
    """[g^0] R_k = 1 for every k >= 1."""
    R = solve_R_family(4, 0)
    assert [R[k][0] for k in range(1, 5)] == [1, 1, 1, 1]
    assert R[0].is_zero()


def test_one_face_values():
    """R_1 = 1 + 2g + ..., R_k = 1 + 3g + ... for k >= 2."""
    R = solve_R_family(4, 3)
    assert R[1][1] == 2
    assert R[2][1] == 3
    assert R[3][1] == 3


def test_defining_equation_residuals_vanish(family):
    """Every R_k with k < K satisfies its equation exactly."""
    for k in (1, 5, 12, 31):
        assert Rk_residual(family, k).is_zero()


def test_three_way_split_of_the_root_face(family):
    """The three terms add up to R_k - 1."""
    lower, middle, upper = rkeq_terms(family, 5)
    assert family[5] - 1 == lower + middle + upper


def test_R_infinity_counts():
    """[g^n] R_inf = 3^n Catalan(n)."""
    r = solve_R_infinity(4)
    assert [int(c) for c in r.coefficients] == [1, 3, 18, 135, 1134]
    long = solve_R_infinity(20)
    assert all(long[n] == 3**n * catalan(n) for n in range(21))


def test_stabilization_towards_R_infinity(family):
    """[g^n] R_k = [g^n] R_inf once k > n."""
    for n in range(13):
        for k in range(n + 1, 33):
            assert family[k][n] == family.limit[n]


def test_R1_matches_family_entry(family):
    """R_1 = R_inf - g R_inf^3."""
    assert compute_R1(1) == PowerSeries.from_coefficients("g", [1, 2], 1)
    assert compute_R1(20) == family[1]


def test_check_baseline_passes():
    check_baseline(12, 12)


def test_two_point_one_face_values(family):
    """G_1 = 3g + ..., G_2 = g + ..."""
    G = assemble_G(family)
    assert G[1][1] == 3
    assert G[2][1] == 1
    assert all(G[k][1] == 0 for k in range(3, 10))
    assert all(G[k][0] == 0 for k in range(1, G.K + 1))


def test_two_point_totals_match_pointed_rooted_counts(family):
    """Summing G_k over k and adding the distance-0 maps gives (n+2) times the rooted count."""
    G = assemble_G(family)
    for n in range(1, 8):
        at_positive_distance = sum(G[k][n] for k in range(1, G.K + 1))
        assert at_positive_distance + rooted_quadrangulation_count(n) == pointed_rooted_count(n)


def test_sum_rule(family):
    """The sum of G_k telescopes to R_K + R_{K-1} - R_1 - 1."""
    G = assemble_G(family)
    assert sum_rule_residual(family, G).is_zero()


def test_T_family_starts_at_zero(family):
    T = T_family(family)
    assert T[1].is_zero()
    assert T[2] == family[2] - family[1]


def test_assemble_needs_two_entries():
    """assemble_G refuses a family with K < 2."""
    with pytest.raises(SeriesError):
        assemble_G(solve_R_family(1, 3))


def test_classical_rooted_counts():
    """2 3^n (2n)! / (n! (n+2)!) rooted quadrangulations."""
    assert [rooted_quadrangulation_count(n) for n in range(1, 7)] == [2, 9, 54, 378, 2916, 24057]
    assert pointed_rooted_count(1) == 6
