"""Reference two-point function from the slice generating functions ``R_k``.

``R_k`` counts slices with left-boundary length at most ``k`` (weight ``g``
per face). They satisfy ``R_k = 1 + g R_k (R_{k-1} + R_k + R_{k+1})`` with
``R_0 = 0``, and the two-point function follows as
``G_k = R_{k+1} - R_{k-1} - [k == 1]``.
"""
from __future__ import annotations

import logging
from math import comb, factorial

from series import PowerSeries, SeriesFamily
from series.errors import IdentityViolation, SeriesError

logger = logging.getLogger(__name__)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def rooted_quadrangulation_count(n: int) -> int:
    """Rooted quadrangulations with ``n`` faces: ``2 * 3^n (2n)! / (n! (n+2)!)``."""
    return 2 * 3**n * factorial(2 * n) // (factorial(n) * factorial(n + 2))


def pointed_rooted_count(n: int) -> int:
    return (n + 2) * rooted_quadrangulation_count(n)


def _mul_at(a: list[int], b: list[int], n: int) -> int:
    """``[g^n]`` of ``a * b``."""
    return sum(a[i] * b[n - i] for i in range(n + 1))


def solve_R_family(K: int, N: int) -> SeriesFamily:
    """``R_0..R_K`` to order ``N``, order by order in ``g``.

    ``[g^n] R_k`` only involves orders below ``n`` of ``R_{k+1}``, so an
    internal family reaching index ``K + N`` keeps the unknown top neighbour
    from reaching any requested coefficient.
    """
    if K < 1:
        raise SeriesError(f"K must be at least 1, got {K}")
    if N < 0:
        raise SeriesError(f"N must be nonnegative, got {N}")
    top = K + N
    # rows[k][n] = [g^n] R_k; row 0 stays zero, row top + 1 mirrors row top
    rows = [[0] * (N + 1) for _ in range(top + 2)]
    for k in range(1, top + 2):
        rows[k][0] = 1
    for n in range(1, N + 1):
        for k in range(1, top + 1):
            below, here, above = rows[k - 1], rows[k], rows[k + 1]
            rows[k][n] = sum(
                here[i] * (below[n - 1 - i] + here[n - 1 - i] + above[n - 1 - i])
                for i in range(n)
            )
        rows[top + 1][n] = rows[top][n]
        logger.debug("R family: order %d done across %d indices", n, top)
    entries = tuple(PowerSeries("g", N, tuple(rows[k])) for k in range(K + 1))
    return SeriesFamily("R", entries, limit=solve_R_infinity(N))


def solve_R_infinity(N: int) -> PowerSeries:
    """The fixed point of ``R = 1 + 3 g R^2``; ``[g^n] = 3^n Catalan(n)``."""
    if N < 0:
        raise SeriesError(f"N must be nonnegative, got {N}")
    r = [0] * (N + 1)
    r[0] = 1
    for n in range(1, N + 1):
        r[n] = 3 * _mul_at(r, r, n - 1)
    return PowerSeries("g", N, tuple(r))


def compute_R1(N: int) -> PowerSeries:
    """``R_1 = R_inf - g R_inf^3``."""
    r_inf = solve_R_infinity(N)
    return r_inf - (r_inf**3).shift(1).truncate(N)


def assemble_G(family: SeriesFamily) -> SeriesFamily:
    """Two-point functions ``G_1..G_{K-1}`` from an ``R`` family; index 0 is a placeholder."""
    if family.K < 2:
        raise SeriesError(f"need K >= 2 to assemble G_k, got K={family.K}")
    R = family.entries
    entries = [PowerSeries.zero("g", family.N)]
    for k in range(1, family.K):
        g_k = R[k + 1] - R[k - 1]
        if k == 1:
            g_k = g_k - 1
        g_k.assert_integral(f"G_{k}")
        entries.append(g_k)
    return SeriesFamily("G", tuple(entries))


def T_family(family: SeriesFamily) -> SeriesFamily:
    """``T_k = R_k - R_1``, the slices with ``2 <= l <= k``; ``T_1 = 0``."""
    R1 = family.entries[1]
    entries = (PowerSeries.zero("g", family.N),) + tuple(
        R_k - R1 for R_k in family.entries[1:]
    )
    limit = family.limit - R1 if family.limit is not None else None
    return SeriesFamily("T", entries, limit)


def rkeq_terms(family: SeriesFamily, k: int) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    """The three ways the face left of the root edge can sit: ``g R_k R_{k-1}``, ``g R_k^2``, ``g R_k R_{k+1}``."""
    if not 1 <= k < family.K:
        raise SeriesError(f"index {k} needs neighbours inside 0..{family.K}")
    R = family.entries
    N = family.N

    def times_g(s: PowerSeries) -> PowerSeries:
        return s.shift(1).truncate(N)

    return (
        times_g(R[k] * R[k - 1]),
        times_g(R[k] * R[k]),
        times_g(R[k] * R[k + 1]),
    )


def Rk_residual(family: SeriesFamily, k: int) -> PowerSeries:
    """``R_k - 1 - g R_k (R_{k-1} + R_k + R_{k+1})``; zero for a solved family."""
    lower, middle, upper = rkeq_terms(family, k)
    return family.entries[k] - 1 - lower - middle - upper


def sum_rule_residual(R: SeriesFamily, G: SeriesFamily) -> PowerSeries:
    """``sum_{k<K} G_k - (R_K + R_{K-1} - R_1 - 1)``, zero by telescoping."""
    K = R.K
    total = PowerSeries.zero("g", min(R.N, G.N))
    for k in range(1, K):
        total = total + G.entries[k]
    return total - (R.entries[K] + R.entries[K - 1] - R.entries[1] - 1)


def check_baseline(K: int, N: int) -> SeriesFamily:
    """Solve the ``R`` family and run its internal consistency checks."""
    family = solve_R_family(K, N)
    family.check_counting()
    for k in range(1, K):
        if not Rk_residual(family, k).is_zero():
            raise IdentityViolation(f"R_{k} does not satisfy its equation")
    if family.entries[1] != compute_R1(N):
        raise IdentityViolation("R_1 differs from R_inf - g R_inf^3")
    for n, c in enumerate(family.limit.coefficients):
        if c != 3**n * catalan(n):
            raise IdentityViolation(f"[g^{n}] R_inf = {c} is not 3^n Catalan(n)")
    return family
