"""The dividing-line recursion, for simple slices and for general ones."""
from __future__ import annotations

import logging
from dataclasses import dataclass

from series import BiSeries, PowerSeries, SeriesFamily
from series.errors import IdentityViolation, TruncationError
from twopoint.baseline import T_family, compute_R1, solve_R_family
from twopoint.kernel import solve_phi

logger = logging.getLogger(__name__)


def recursion_step(phi: BiSeries, previous: PowerSeries) -> PowerSeries:
    """``t_k`` from ``t_{k-1}``: ``(t+1) Phi(t) / (1 - (t+1) Phi(t))``."""
    step = (previous + 1) * phi.eval_t(previous)
    return step / (1 - step)


def iterate_t(K: int, N: int, phi: BiSeries | None = None) -> SeriesFamily:
    """Simple-slice series ``t_1 = 0, t_2, ..., t_K`` to G-order ``N``.

    Every ``t_k`` with ``k >= 2`` starts at ``G^1``, so ``Phi`` is needed to
    t-degree ``N``.
    """
    phi = solve_phi(N, N) if phi is None else phi
    if phi.outer_degree < N:
        raise TruncationError(
            f"Phi known to t-degree {phi.outer_degree}, need {N} for order {N}"
        )
    phi = phi.truncate(order=min(phi.order, N))
    zero = PowerSeries.zero("G", phi.order)
    entries = [zero, zero]
    for k in range(2, K + 1):
        entries.append(recursion_step(phi, entries[-1]))
    logger.debug("iterated simple recursion to k=%d at order %d", K, phi.order)
    return SeriesFamily("t", tuple(entries))


def check_t_limit(family: SeriesFamily, C: PowerSeries) -> None:
    """``[G^n] t_k = [G^n] C`` once ``k > n + 1``."""
    for k in range(2, family.K + 1):
        s = family.entries[k]
        for n in range(min(k - 1, s.order + 1, C.order + 1)):
            if s.coefficients[n] != C.coefficients[n]:
                raise IdentityViolation(f"t_{k} differs from C at order {n}")


def face_weight_G(R1: PowerSeries) -> PowerSeries:
    """``G(g) = g R_1^2``: simple maps weighted by bundles on every edge."""
    return (R1 * R1).shift(1).truncate(R1.order)


def general_phi(phi: BiSeries, R1: PowerSeries) -> BiSeries:
    """``Phi(T, g) = sum h_{2i}(g) T^(i-2)`` with ``h_{2i}(g) = R_1^(-i) h~_{2i}(G(g))``."""
    Gg = face_weight_G(R1)
    inv = 1 / R1
    coeffs = []
    for j, c in enumerate(phi.coefficients):
        coeffs.append(c.compose(Gg) * inv ** (j + 2))
    return BiSeries(phi.outer_degree, tuple(coeffs))


@dataclass(frozen=True)
class BlockWeights:
    """Per-step weights of the lower-part block sequence for general slices.

    ``W1`` weighs a block ending on a single-edge frontier, ``W2`` one ending
    on a two-step frontier; ``X = W1 + W2`` and ``T_k = R_1 X / (1 - X)``.
    """

    W1: PowerSeries
    W2: PowerSeries

    @property
    def X(self) -> PowerSeries:
        return self.W1 + self.W2


def block_weights(Phi: BiSeries, R1: PowerSeries, T_prev: PowerSeries) -> BlockWeights:
    value = Phi.eval_t(T_prev)
    R1 = R1.truncate(value.order)
    T_prev = T_prev.truncate(value.order)
    return BlockWeights(W1=R1 * T_prev * value, W2=R1 * R1 * value)


def newrecur_residuals(R: SeriesFamily, Phi: BiSeries) -> list[PowerSeries]:
    """``T_k - R_1^2 (T_{k-1} + R_1) Phi(T_{k-1}) / (1 - R_1 (T_{k-1} + R_1) Phi(T_{k-1}))``."""
    T = T_family(R)
    R1 = R.entries[1]
    out = []
    for k in range(2, R.K + 1):
        X = block_weights(Phi, R1, T.entries[k - 1]).X
        predicted = R1.truncate(X.order) * X / (1 - X)
        out.append(T.entries[k].truncate(predicted.order) - predicted)
    return out


@dataclass(frozen=True)
class Bridge:
    """Simple-map results carried over to general quadrangulations."""

    G_of_g: PowerSeries
    R: SeriesFamily
    Phi: BiSeries


def bridge_to_general(K: int, N: int, t_family: SeriesFamily | None = None,
                      phi: BiSeries | None = None) -> Bridge:
    """``R_k(g) = R_1 r_k(G(g))`` with ``r_k = t_k + 1``, checked against the baseline.

    Also checks the footnote form of ``T_2`` and the general recursion as
    exact identities in ``g``.
    """
    phi = solve_phi(N, N) if phi is None else phi
    t_family = iterate_t(K, N, phi) if t_family is None else t_family
    R1 = compute_R1(N)
    Gg = face_weight_G(R1)
    entries = [PowerSeries.zero("g", N)]
    for k in range(1, K + 1):
        r_k = t_family.entries[k] + 1
        entries.append(R1 * r_k.compose(Gg))
    bridged = SeriesFamily("R", tuple(entries))
    baseline = solve_R_family(K, N)
    mismatch = bridged.first_disagreement(baseline)
    if mismatch is not None:
        k, n = mismatch
        raise IdentityViolation(f"bridged R_{k} differs from the baseline at order g^{n}")

    if K >= 2:
        # R_1^2 h_4(g) is h~_4(G(g))
        h4 = phi.at_zero().compose(Gg)
        if bridged.entries[2] - R1 != R1 * h4 / (1 - h4):
            raise IdentityViolation("T_2 differs from R_1^3 h_4 / (1 - R_1^2 h_4)")

    Phi = general_phi(phi, R1)
    for k, residual in enumerate(newrecur_residuals(baseline, Phi), start=2):
        if not residual.is_zero():
            raise IdentityViolation(f"general recursion fails at k={k}")
    logger.debug("bridged simple slices to general ones for k <= %d", K)
    return Bridge(G_of_g=Gg, R=bridged, Phi=Phi)
