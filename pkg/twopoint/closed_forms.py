"""Closed forms in the uniformizing parameter ``x``.

The kernel root along the recursion, ``Y_k = Y(t_k)``, obeys a Moebius
recursion whose fixed points ``alpha``, ``beta`` and ratio ``x`` give
``W_k = (Y_k - alpha) / (Y_k - beta) = x^(k+2)``. Everything is expanded as a
series in ``x`` first and composed with ``x(G)`` or ``x(g)`` afterwards.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from series import PowerSeries, SeriesFamily
from series.errors import IdentityViolation
from twopoint.kernel import C_binomial_series

logger = logging.getLogger(__name__)


def _x(N: int) -> PowerSeries:
    return PowerSeries.identity("x", N)


def _one_minus_x_power(k: int, N: int) -> PowerSeries:
    return 1 - PowerSeries.monomial("x", k, N)


def C_of_x(N: int) -> PowerSeries:
    """``C = x / (1 + x^2)``."""
    x = _x(N)
    return x / (1 + x * x)


def G_of_x(N: int) -> PowerSeries:
    """``G = x (1 + x^2)^2 / (1 + x + x^2)^3``."""
    x = _x(N)
    return x * (1 + x * x) ** 2 / (1 + x + x * x) ** 3


def g_of_x(N: int) -> PowerSeries:
    """``g = x (1 + x + x^2) / (1 + 4x + x^2)^2``."""
    x = _x(N)
    return x * (1 + x + x * x) / (1 + x * 4 + x * x) ** 2


def x_of_G(N: int) -> PowerSeries:
    return G_of_x(N).revert("G")


def x_of_g(N: int) -> PowerSeries:
    return g_of_x(N).revert("g")


@dataclass(frozen=True)
class XParam:
    """Fixed points, ratios and closed families, all as series in ``x``."""

    x_of_g: PowerSeries
    alpha: PowerSeries
    beta: PowerSeries
    W: SeriesFamily
    Y: SeriesFamily
    closed_t: SeriesFamily
    closed_r: SeriesFamily
    closed_R: SeriesFamily
    closed_G: SeriesFamily


def closed_t(k: int, N: int) -> PowerSeries:
    """``t_k = C (1 - x^(k-1))(1 - x^(k+4)) / ((1 - x^(k+1))(1 - x^(k+2)))``."""
    if k == 1:
        return PowerSeries.zero("x", N)
    num = _one_minus_x_power(k - 1, N) * _one_minus_x_power(k + 4, N)
    den = _one_minus_x_power(k + 1, N) * _one_minus_x_power(k + 2, N)
    return C_of_x(N) * num / den


def closed_r(k: int, N: int) -> PowerSeries:
    """``r_k = r_inf (1 - x^k)(1 - x^(k+3)) / ((1 - x^(k+1))(1 - x^(k+2)))``."""
    x = _x(N)
    r_inf = (1 + x + x * x) / (1 + x * x)
    num = _one_minus_x_power(k, N) * _one_minus_x_power(k + 3, N)
    den = _one_minus_x_power(k + 1, N) * _one_minus_x_power(k + 2, N)
    return r_inf * num / den


def R_infinity_of_x(N: int) -> PowerSeries:
    """``R_inf = (1 + 4x + x^2) / (1 + x + x^2)``."""
    x = _x(N)
    return (1 + x * 4 + x * x) / (1 + x + x * x)


def closed_R(k: int, N: int) -> PowerSeries:
    num = _one_minus_x_power(k, N) * _one_minus_x_power(k + 3, N)
    den = _one_minus_x_power(k + 1, N) * _one_minus_x_power(k + 2, N)
    return R_infinity_of_x(N) * num / den


def closed_G(k: int, N: int) -> PowerSeries:
    """The two-point function in ``x``.

    ``(1-x)^3 (1+x)^2 (1+4x+x^2) x^(k-1) (1 - x^(2k+3))`` over
    ``(1+x+x^2)(1-x^k)(1-x^(k+1))(1-x^(k+2))(1-x^(k+3))``, minus 1 at ``k = 1``.
    """
    x = _x(N)
    num = (
        (1 - x) ** 3
        * (1 + x) ** 2
        * (1 + x * 4 + x * x)
        * PowerSeries.monomial("x", k - 1, N)
        * _one_minus_x_power(2 * k + 3, N)
    )
    den = (1 + x + x * x)
    for j in range(k, k + 4):
        den = den * _one_minus_x_power(j, N)
    value = num / den
    return value - 1 if k == 1 else value


def moebius_residual(previous: PowerSeries, current: PowerSeries, C: PowerSeries) -> PowerSeries:
    """``Y_k (Y_{k-1} + (1+C)^2) - (C(1+C) Y_{k-1} - C^2 (1+C)^2)``, multiplied out."""
    sq = (1 + C) ** 2
    return current * (previous + sq) - (C * (1 + C) * previous - C * C * sq)


def tk_from_previous_Y(previous: PowerSeries, C: PowerSeries) -> PowerSeries:
    """``t_k = Y_{k-1} (C^2 - C - 1 - Y_{k-1}) / (C ((1+C)^2 + Y_{k-1}))``."""
    return previous * (C * C - C - 1 - previous) / (C * ((1 + C) ** 2 + previous))


def tk_from_Y(Y: PowerSeries, C: PowerSeries) -> PowerSeries:
    """``t_k = (1 + C + Y_k)(C^2 + Y_k) / (C (Y_k - C - C^2))``."""
    return (1 + C + Y) * (C * C + Y) / (C * (Y - C - C * C))


def kernel_residual(Y: PowerSeries, t: PowerSeries, C: PowerSeries) -> PowerSeries:
    """The kernel quadratic at ``(Y_k, t_k)``."""
    return Y * Y + (1 + C * C - C * (t - 1)) * Y + C * C * (1 + C) * (t + 1)


def closed_forms_x(K: int, N: int) -> XParam:
    """Build the ``x``-parametrized families for ``k <= K`` and check them.

    The checks: ``Y_1 = -C^2``, ``W_k`` read back from ``Y_k`` equals
    ``x^(k+2)``, the Moebius recursion, ``Y_k`` is the small root of the
    kernel at ``t_k``, both ways of computing ``t_k`` from ``Y`` agree, and
    ``r_k = t_k + 1``.
    """
    x = _x(N)
    C = C_of_x(N)
    common = (1 + x + x * x) / (1 + x * x) ** 2
    alpha = -(x * x) * common
    beta = -common
    if alpha.valuation() != 2 or beta.valuation() != 0:
        raise IdentityViolation("fixed points are not separated at x = 0")

    zero = PowerSeries.zero("x", N)
    W = [zero]
    Y = [zero]
    t = [zero]
    r = [zero]
    R = [zero]
    G = [zero]
    for k in range(1, K + 1):
        W_k = PowerSeries.monomial("x", k + 2, N)
        Y_k = (alpha - beta * W_k) / (1 - W_k)
        W.append(W_k)
        Y.append(Y_k)
        t.append(closed_t(k, N))
        r.append(closed_r(k, N))
        R.append(closed_R(k, N))
        G.append(closed_G(k, N))

    if Y[1] != -(C * C):
        raise IdentityViolation("Y_1 differs from -C^2")
    for k in range(1, K + 1):
        if (Y[k] - alpha) / (Y[k] - beta) != W[k]:
            raise IdentityViolation(f"W_{k} read back from Y_{k} is not x^{k + 2}")
        if not kernel_residual(Y[k], t[k], C).is_zero():
            raise IdentityViolation(f"Y_{k} is not a kernel root at t_{k}")
        if Y[k].valuation() is not None and Y[k].valuation() < 2:
            raise IdentityViolation(f"Y_{k} is on the wrong branch")
        if r[k] != t[k] + 1:
            raise IdentityViolation(f"r_{k} != t_{k} + 1")
    for k in range(2, K + 1):
        if not moebius_residual(Y[k - 1], Y[k], C).is_zero():
            raise IdentityViolation(f"Y_{k} does not follow the Moebius recursion")
        from_previous = tk_from_previous_Y(Y[k - 1], C)
        from_current = tk_from_Y(Y[k], C)
        if not (
            from_previous.agrees_with(t[k].truncate(from_previous.order))
            and from_current.agrees_with(t[k].truncate(from_current.order))
        ):
            raise IdentityViolation(f"t_{k} disagrees with its expressions through Y")
    logger.debug("closed forms in x built for k <= %d at order %d", K, N)
    return XParam(
        x_of_g=x_of_g(N),
        alpha=alpha,
        beta=beta,
        W=SeriesFamily("W", tuple(W)),
        Y=SeriesFamily("Y", tuple(Y)),
        closed_t=SeriesFamily("t", tuple(t)),
        closed_r=SeriesFamily("r", tuple(r)),
        closed_R=SeriesFamily("R", tuple(R)),
        closed_G=SeriesFamily("G", tuple(G)),
    )


def compose_family(family: SeriesFamily, inner: PowerSeries, name: str | None = None) -> SeriesFamily:
    """Substitute ``x -> inner`` in every entry."""
    return family.map(name or family.name, lambda s: s.compose(inner))


def closed_two_point(K: int, N: int, params: XParam | None = None) -> SeriesFamily:
    """``G_1..G_K`` as series in ``g`` from the closed formula.

    Also checks ``R_inf(x(g)) = (1 - sqrt(1 - 12g)) / (6g)`` and
    ``g R_inf^2 (1 + x + x^2) = x``.
    """
    params = closed_forms_x(K, N) if params is None else params
    xg = params.x_of_g
    R_inf = R_infinity_of_x(N).compose(xg)

    g = PowerSeries.identity("g", N + 1)
    root = (1 - g * 12).sqrt_one()
    direct = (1 - root) / (g * 6)
    if not R_inf.agrees_with(direct):
        raise IdentityViolation("R_inf(x(g)) differs from (1 - sqrt(1 - 12g)) / (6g)")

    g = g.truncate(N)
    lhs = g * R_inf * R_inf * (1 + xg + xg * xg)
    if lhs != xg:
        raise IdentityViolation("g R_inf^2 (1 + x + x^2) differs from x")

    G = compose_family(params.closed_G, xg, "G")
    for k in range(1, G.K + 1):
        G.entries[k].assert_integral(f"closed G_{k}")
    return G


def limit_identities(N: int) -> dict[str, PowerSeries]:
    """Residuals that vanish identically: ``r_inf - (1 + C)`` and ``C(x(G)) - C(G)``."""
    x = _x(N)
    r_inf = (1 + x + x * x) / (1 + x * x)
    return {
        "r_inf_minus_one_plus_C": r_inf - (1 + C_of_x(N)),
        "C_through_x_minus_C": C_of_x(N).compose(x_of_G(N)) - C_binomial_series(N),
    }
