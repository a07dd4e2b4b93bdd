"""Generating function of simple block maps and its kernel-method solution.

``Phi(t, G) = sum_{i>=2} h_{2i}(G) t^(i-2)`` where ``h_{2i}`` counts simple
quadrangulations with a simple boundary of length ``2i`` and no boundary
chord or common interior neighbour of two black boundary vertices. ``Phi``
is pinned down by

    Phi = G + (G/t) * ((t+1) Phi / (1 - (t+1) Phi) - h4 / (1 - h4)),  h4 = Phi(0)

and solved here two ways: order by order in ``G``, and in closed form through
the parameter ``C`` (``G = C / (1+C)^3``) and the kernel root ``Y(t)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from series import BiSeries, PowerSeries, QuadSurd
from series.errors import IdentityViolation, SeriesError
from series.schemas import KernelPayload

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelBundle:
    """Everything the kernel construction produces at one truncation."""

    C: PowerSeries
    h_table: tuple[PowerSeries, ...]
    phi: BiSeries
    Y: BiSeries
    aux_g4: PowerSeries

    def h(self, i: int) -> PowerSeries:
        """``h_{2i}``, for ``2 <= i <= D + 2``."""
        return self.h_table[i - 2]

    @classmethod
    def from_payload(cls, payload: KernelPayload) -> "KernelBundle":
        return cls(
            C=payload.C.to_series(),
            h_table=payload.h_series(),
            phi=payload.phi.to_bi_series(),
            Y=payload.Y.to_bi_series(),
            aux_g4=payload.aux_g4.to_series(),
        )


# ----------------------------------------------------------------------
# order-by-order solution
# ----------------------------------------------------------------------
def solve_phi(D: int, N: int) -> BiSeries:
    """``Phi(t, G)`` to t-degree ``D`` and G-order ``N``.

    Works on integer grids. With ``F = u / (1 - u)`` and ``u = (1+t) Phi``,
    ``[G^n] Phi = [n == 1] + ([G^(n-1)] F - [G^(n-1)] F(0)) / t``, and
    ``F = u (1 + F)`` gives ``[G^m] F`` from lower orders only. The ``t^j``
    coefficient of ``Phi`` vanishes below ``G^(j+1)``, so a grid of t-degree
    ``max(D, N) + 1`` is exact at every order up to ``N``.
    """
    if D < 0 or N < 1:
        raise SeriesError(f"solve_phi needs D >= 0 and N >= 1, got D={D}, N={N}")
    J = max(D, N) + 1
    phi = [[0] * (J + 1) for _ in range(N + 1)]
    u = [[0] * (J + 2) for _ in range(N + 1)]
    F = [[0] * (J + 2) for _ in range(N + 1)]
    for n in range(1, N + 1):
        m = n - 1
        if m >= 1:
            acc = [0] * (J + 2)
            for a in range(1, m + 1):
                ua = u[a]
                fb = F[m - a]
                for i, x in enumerate(ua):
                    if not x:
                        continue
                    if m - a == 0:
                        acc[i] += x
                    for j in range(J + 2 - i):
                        if fb[j]:
                            acc[i + j] += x * fb[j]
            F[m] = acc
        row = phi[n]
        if n == 1:
            row[0] = 1
        if m >= 1:
            for j in range(J + 1):
                row[j] += F[m][j + 1]
        u[n] = [(row[j] if j <= J else 0) + (row[j - 1] if j >= 1 else 0) for j in range(J + 2)]
    h4 = PowerSeries("G", N, tuple(phi[n][0] for n in range(N + 1)))
    g4 = h4 / (1 - h4)
    # the bracket must vanish at t = 0, i.e. F(0) = h4 / (1 - h4)
    for m in range(N):
        if F[m][0] != g4.coefficients[m]:
            raise IdentityViolation(f"bracket not divisible by t at order G^{m}")
    logger.debug("solved Phi to t-degree %d, G-order %d", D, N)
    return BiSeries(
        D,
        tuple(PowerSeries("G", N, tuple(phi[n][j] for n in range(N + 1))) for j in range(D + 1)),
    )


def h_table(phi: BiSeries) -> tuple[PowerSeries, ...]:
    """``h_4, h_6, ...`` read off ``Phi``; ``h_{2i}`` needs at least ``i - 1`` faces."""
    table = tuple(phi.coefficients)
    for j, h in enumerate(table):
        v = h.valuation()
        if v is not None and v < j + 1:
            raise IdentityViolation(f"h_{2 * (j + 2)} has valuation {v} < {j + 1}")
        h.assert_integral(f"h_{2 * (j + 2)}")
    return table


# ----------------------------------------------------------------------
# parametric solution
# ----------------------------------------------------------------------
def C_binomial_series(N: int) -> PowerSeries:
    """``C(G) = sum_{n>=1} binom(3n, n) / (2n + 1) G^n``."""
    coeffs = [Fraction(0)] + [Fraction(comb(3 * n, n), 2 * n + 1) for n in range(1, N + 1)]
    return PowerSeries("G", N, tuple(coeffs))


def parametric_h4(N: int) -> tuple[PowerSeries, PowerSeries]:
    """``(C, h4)`` with ``C`` the inverse of ``G = C/(1+C)^3`` and ``h4 = C(1-C)/(1+C-C^2)``."""
    if N < 1:
        raise SeriesError(f"parametric_h4 needs N >= 1, got {N}")
    c = PowerSeries.identity("C", N)
    C = (c / (1 + c) ** 3).revert("G")
    h4_of_c = c * (1 - c) / (1 + c - c * c)
    return C, h4_of_c.compose(C)


def lagrange_h4(p: int) -> int:
    """``[G^p] h4`` from its closed Lagrange-inversion sum, evaluated in ``Q(sqrt 5)``."""
    if p < 1:
        raise SeriesError(f"lagrange_h4 needs p >= 1, got {p}")
    omega = QuadSurd.golden()
    root5 = QuadSurd.sqrt5()
    total = QuadSurd(0, 0)
    for n in range(p):
        surd = ((-1) ** n * omega ** (n + 2) - omega ** (-n - 2)) / root5
        weight = Fraction(
            (n + 1) * factorial(3 * p),
            p * factorial(p - 1 - n) * factorial(2 * p + 1 + n),
        )
        total = total + surd * weight
    if not total.is_rational():
        raise IdentityViolation(f"surd component survives at p={p}: {total}")
    value = total.rational()
    if value.denominator != 1 or value < 0:
        raise IdentityViolation(f"[G^{p}] h4 = {value} is not a count")
    return value.numerator


# ----------------------------------------------------------------------
# kernel root
# ----------------------------------------------------------------------
def _linear_coefficient(C: PowerSeries, D: int) -> BiSeries:
    """``1 + C^2 - C (t - 1)``."""
    return BiSeries.outer_polynomial([1 + C + C * C, -C], D)


def defY_residual(Y: BiSeries, C: PowerSeries) -> BiSeries:
    """``Y^2 + (1 + C^2 - C(t-1)) Y + C^2 (1+C)(t+1)``."""
    D = Y.outer_degree
    c2 = C * C * (1 + C)
    constant = BiSeries.outer_polynomial([c2, c2], D)
    return Y * Y + _linear_coefficient(C, D) * Y + constant


def kernel_Y(D: int, N: int, C: PowerSeries | None = None) -> BiSeries:
    """The root ``Y(t)`` of the kernel quadratic with ``Y(0) = -C^2``."""
    C = C_binomial_series(N) if C is None else C.truncate(N)
    L = _linear_coefficient(C, D)
    c2 = C * C * (1 + C) * 4
    disc = L * L - BiSeries.outer_polynomial([c2, c2], D)
    Y = (disc.sqrt_one() - L) / 2
    if Y.at_zero() != -(C * C):
        raise IdentityViolation("Y(0) differs from -C^2")
    if not defY_residual(Y, C).is_zero():
        raise IdentityViolation("Y does not solve its defining quadratic")
    logger.debug("kernel root Y to t-degree %d, G-order %d", D, N)
    return Y


def second_determination(Y: BiSeries, C: PowerSeries) -> BiSeries:
    """The other root ``-(1 + C^2 - C(t-1)) - Y``; it starts at ``-1 - C``."""
    return -_linear_coefficient(C, Y.outer_degree) - Y


def involution_residual(Y: BiSeries, C: PowerSeries) -> BiSeries:
    """``Y_+ (Y_- - C(1+C)) - C(1+C)((1+C)^2 + Y_-)``, multiplied out.

    The expression is symmetric in the two roots, so this single residual
    covers both directions of the involution.
    """
    other = second_determination(Y, C)
    k = C * (1 + C)
    return Y * (other - k) - (other + (1 + C) ** 2) * k


def t_from_Y(Y: BiSeries, C: PowerSeries) -> BiSeries:
    """``(1 + C + Y)(C^2 + Y) / (C (Y - C - C^2))``; should give back ``t``.

    Both sides carry a factor ``G^2`` that the valuation-shifted division
    removes, so two orders are lost.
    """
    return ((1 + C + Y) * (C * C + Y)) / ((Y - C - C * C) * C)


def phi_from_kernel(D: int, N: int) -> BiSeries:
    """``Phi = C^2 / (Y (1 + C + Y)) + 1/(t+1)``, to t-degree ``D`` and order ``N``."""
    C = C_binomial_series(N + 2)
    Y = kernel_Y(D, N + 2, C)
    ratio = BiSeries.from_inner(C * C, D) / (Y * (1 + C + Y))
    return ratio + BiSeries.inverse_one_plus("G", N, D)


def phi_unsimplified(D: int, N: int) -> BiSeries:
    """``C(1 + C - C^2 + Y) / ((1 + C + Y)((1+C)^2 + Y))``."""
    C = C_binomial_series(N)
    Y = kernel_Y(D, N, C)
    return ((1 + C - C * C) + Y) * C / ((1 + C + Y) * ((1 + C) ** 2 + Y))


# ----------------------------------------------------------------------
# identities
# ----------------------------------------------------------------------
def quadratic_residual(phi: BiSeries, h4: PowerSeries) -> BiSeries:
    """``t(1+t) Phi^2 + (G(1+t)(1-t+g4) - t) Phi + G(t - g4)`` with ``g4 = h4/(1-h4)``."""
    D, N = phi.outer_degree, min(phi.order, h4.order)
    phi = phi.truncate(order=N)
    g4 = h4.truncate(N) / (1 - h4.truncate(N))
    G = PowerSeries.identity("G", N)
    zero = PowerSeries.zero("G", N)
    one = PowerSeries.one("G", N)
    t_times_1_plus_t = BiSeries.outer_polynomial([zero, one, one], D)
    middle = BiSeries.outer_polynomial(
        [G * (1 + g4), G * g4 - one, -G], D
    )  # G(1+t)(1-t+g4) - t expanded in t
    last = BiSeries.outer_polynomial([-(G * g4), G], D)
    return t_times_1_plus_t * phi * phi + middle * phi + last


def phiC_residual(phi: BiSeries, C: PowerSeries) -> BiSeries:
    """The same quadratic written with ``C``; zero once ``G = C/(1+C)^3``."""
    D, N = phi.outer_degree, min(phi.order, C.order)
    phi = phi.truncate(order=N)
    C = C.truncate(N)
    zero = PowerSeries.zero("G", N)
    cube = (1 + C) ** 3
    a = BiSeries.outer_polynomial([zero, cube, cube], D)
    b = BiSeries.outer_polynomial(
        [C * (1 + C - C * C), -(1 + C * 3 + C * C * 2 + C**3 * 2), -C], D
    )
    c = BiSeries.outer_polynomial([C * (C * C - C), C], D)
    return a * phi * phi + b * phi + c


def h4_from_phi(phi: BiSeries) -> BiSeries:
    """Solve the quadratic for ``h4``; the result must not depend on ``t``.

    Numerator and denominator are both divisible by ``G``, so one order is
    lost.
    """
    D, N = phi.outer_degree, phi.order
    G = PowerSeries.identity("G", N)
    zero = PowerSeries.zero("G", N)
    one = PowerSeries.one("G", N)
    t_t1 = BiSeries.outer_polynomial([zero, one, one], D)
    squares = t_t1 * phi * phi
    numerator = (
        squares
        - BiSeries.outer_polynomial([-G, one, G], D) * phi
        + BiSeries.outer_polynomial([zero, G], D)
    )
    denominator = (
        squares
        - BiSeries.outer_polynomial([zero, G + 1, G], D) * phi
        + BiSeries.outer_polynomial([G, G], D)
    )
    return numerator / denominator


def discriminant_residual(C: PowerSeries, D: int) -> BiSeries:
    """``b^2 - 4ac`` of the C-form quadratic minus ``(C-t)^2 ((1+C^2-C(t-1))^2 - 4C^2(1+C)(t+1))``."""
    N = C.order
    zero = PowerSeries.zero("G", N)
    one = PowerSeries.one("G", N)
    cube = (1 + C) ** 3
    a = BiSeries.outer_polynomial([zero, cube, cube], D)
    b = BiSeries.outer_polynomial(
        [C * (1 + C - C * C), -(1 + C * 3 + C * C * 2 + C**3 * 2), -C], D
    )
    c = BiSeries.outer_polynomial([C * (C * C - C), C], D)
    L = _linear_coefficient(C, D)
    c2 = C * C * (1 + C) * 4
    second = L * L - BiSeries.outer_polynomial([c2, c2], D)
    c_minus_t = BiSeries.outer_polynomial([C, -one], D)
    return b * b - a * c * 4 - c_minus_t * c_minus_t * second


def line_brackets(t, G, phi):
    """The two brackets whose simultaneous vanishing selects the kernel line.

    Works on any ring elements: exact rationals or series.
    """
    inner = (t + 1) * (t + 1) * phi * phi - (t + 1) * phi * 2 + 1 - G
    first = t * inner - G
    second = phi * inner - G * (1 - (t + 1) * phi) * (1 - (t + 1) * phi)
    return first, second


def h4_expression(t, G, phi):
    """``h4`` as a function of ``t``, ``G`` and ``Phi(t)``, for exact scalars."""
    numerator = t * (t + 1) * phi * phi - (G * (t + 1) * (t - 1) + t) * phi + G * t
    denominator = t * (t + 1) * phi * phi - (G * (t + 1) * t + t) * phi + G * (t + 1)
    return numerator / denominator


def kernel_line_check(C: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    """Brackets on ``t = C``, ``Phi = C/(1+C)^2``, ``G = C/(1+C)^3``; both vanish."""
    G = PowerSeries.identity("G", C.order)
    phi = C / (1 + C) ** 2
    return line_brackets(C, G, phi)


def rejected_branch(samples=(2, 3, 5)) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Points of the second line ``G = 1/(t(1+t))``, ``Phi = 1/t``.

    Returns ``(t, h4, 1 + G)`` per sample; on this line the brackets vanish
    and the ``h4`` expression collapses to ``1 + G``, which cannot count
    maps (its constant term is 1).
    """
    out = []
    for value in samples:
        t = Fraction(value)
        G = 1 / (t * (1 + t))
        phi = 1 / t
        first, second = line_brackets(t, G, phi)
        if first or second:
            raise IdentityViolation(f"brackets do not vanish on the second line at t={t}")
        out.append((t, h4_expression(t, G, phi), 1 + G))
    return out


def fixed_point_check(phi: BiSeries, C: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    """Residuals of ``Phi(C) = C/(1+C)^2`` and of the recursion fixing ``C``.

    ``C`` is the ``k -> infinity`` limit of ``t_k``, so the recursion step must
    map it to itself.
    """
    value = phi.eval_t(C)
    N = value.order
    C = C.truncate(N)
    step = (C + 1) * value
    return value - C / (1 + C) ** 2, step / (1 - step) - C


def build_kernel(D: int, N: int) -> KernelBundle:
    """Solve ``Phi`` order by order and attach the parametric objects."""
    phi = solve_phi(D, N)
    C, _ = parametric_h4(N)
    h4 = phi.at_zero()
    return KernelBundle(
        C=C,
        h_table=h_table(phi),
        phi=phi,
        Y=kernel_Y(D, N, C),
        aux_g4=h4 / (1 - h4),
    )
