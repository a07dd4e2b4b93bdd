"""Tests for the slice recursion, the closed forms in x and the bridge to general maps."""

import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from series import PowerSeries
from series.errors import TruncationError
from twopoint.baseline import assemble_G, compute_R1, solve_R_family
from twopoint.closed_forms import (
    C_of_x,
    closed_forms_x,
    closed_r,
    closed_t,
    closed_two_point,
    compose_family,
    limit_identities,
    x_of_G,
    x_of_g,
)
from twopoint.kernel import C_binomial_series, solve_phi
from twopoint.recursion import (
    block_weights,
    bridge_to_general,
    check_t_limit,
    face_weight_G,
    iterate_t,
    recursion_step,
)

K = 8
N = 10


@pytest.fixture(scope="module")
def phi():
    return solve_phi(N, N)


@pytest.fixture(scope="module")
def t_family(phi):
    return iterate_t(K, N, phi)


@pytest.fixture(scope="module")
def params():
    return closed_forms_x(K, N)


def test_first_steps(t_family):
    """t_1 = 0, t_2 = G + 2G^2 + 6G^3 + ..."""
    assert t_family[1].is_zero()
    assert [int(c) for c in t_family[2].coefficients[:4]] == [0, 1, 2, 6]
    assert t_family[3][1] == 1


def test_recursion_step_from_zero_is_g4(phi):
    """One step from zero gives h4 / (1 - h4)."""
    h4 = phi.at_zero()
    assert recursion_step(phi, PowerSeries.zero("G", N)) == h4 / (1 - h4)


def test_t_k_tends_to_C(t_family):
    """Coefficients of t_k freeze at those of C once k > n + 1."""
    check_t_limit(t_family, C_binomial_series(N))


def test_iterate_needs_enough_t_degree():
    """Phi truncated below the series order is refused."""
    with pytest.raises(TruncationError):
        iterate_t(4, N, solve_phi(3, N))


def test_iterated_t_matches_closed_form(t_family, params):
    """Iterated t_k equal the closed forms composed with x(G)."""
    closed = compose_family(params.closed_t, x_of_G(N), "t")
    assert t_family.first_disagreement(closed) is None


def test_closed_forms_at_k_one(params):
    """Y_1 = -C^2, t_1 = 0, r_1 = 1 and W_k = x^(k+2)."""
    C = C_of_x(N)
    assert params.Y[1] == -(C * C)
    assert closed_t(1, N).is_zero()
    assert closed_r(1, N) == PowerSeries.one("x", N)
    assert all(params.W[k] == PowerSeries.monomial("x", k + 2, N) for k in range(1, K + 1))


def test_limit_identities():
    for name, residual in limit_identities(N).items():
        assert residual.is_zero(), name


def test_x_of_g_leading_terms():
    """x(g) = g + 7g^2 + ..."""
    xg = x_of_g(6)
    assert [int(c) for c in xg.coefficients[:3]] == [0, 1, 7]


def test_face_weight_G():
    """G(g) = g R_1^2 = g + 4g^2 + 22g^3 + ..."""
    Gg = face_weight_G(compute_R1(6))
    assert [int(c) for c in Gg.coefficients[:4]] == [0, 1, 4, 22]


def test_closed_R_matches_baseline(params):
    """Closed R_k in x, composed with x(g), equal the baseline."""
    closed = compose_family(params.closed_R, x_of_g(N), "R")
    assert closed.first_disagreement(solve_R_family(K, N)) is None


def test_closed_two_point_matches_baseline(params):
    """The final G_k formula equals the assembled baseline."""
    closed = closed_two_point(K, N, params)
    baseline = assemble_G(solve_R_family(K + 1, N))
    assert closed.K == baseline.K == K
    assert closed.first_disagreement(baseline) is None


def test_bridge_to_general(phi, t_family):
    """Bundles on every edge turn r_k into the general R_k."""
    bridge = bridge_to_general(6, N, t_family.truncate(K=6), phi)
    assert bridge.R.first_disagreement(solve_R_family(6, N)) is None
    assert bridge.G_of_g == face_weight_G(compute_R1(N))


def test_block_weights_on_the_first_step(phi):
    """With T_1 = 0 only the two-step frontier weight survives."""
    R1 = compute_R1(N)
    bridge = bridge_to_general(2, N, None, phi)
    weights = block_weights(bridge.Phi, R1, PowerSeries.zero("g", N))
    assert weights.W1.is_zero()
    assert weights.X == weights.W2
    assert weights.W2[0] == 0
