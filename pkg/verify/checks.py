"""Named acceptance checks and the orchestrator that runs a suite of them.

Every check is a function of the run parameters that returns a short detail
string on success and raises on failure. ``run_suite`` dispatches the checks
of a suite on a thread pool and assembles the report in suite order.
"""
from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from maplab.decomposition import SliceStats, decompose, decomposition_counts
from maplab.dividing_line import dividing_line
from maplab.slices import extract_slice, validate_slice
from maplab.tally import pointed_rooted_maps, slice_rows, tally_rows, tally_two_point
from series import BiSeries, PowerSeries
from series.errors import IdentityViolation
from twopoint.baseline import assemble_G, check_baseline, pointed_rooted_count
from twopoint.closed_forms import (
    closed_forms_x,
    closed_two_point,
    compose_family,
    limit_identities,
    x_of_G,
)
from twopoint.kernel import (
    C_binomial_series,
    defY_residual,
    involution_residual,
    kernel_Y,
    lagrange_h4,
    parametric_h4,
    phi_from_kernel,
    phiC_residual,
    solve_phi,
    t_from_Y,
)
from twopoint.recursion import bridge_to_general, check_t_limit, iterate_t
from verify import config
from verify.schemas import CheckResult, VerificationReport

logger = logging.getLogger(__name__)

H4_FIRST_TERMS = (1, 1, 3, 11, 46, 209)
SUITES = ("all", "series", "kernel", "maps")


@dataclass(frozen=True)
class RunParameters:
    order: int
    kmax: int
    faces: int
    seed: int


def min_order(suite: str) -> int:
    """Smallest ``--order`` every check of ``suite`` accepts."""
    return max(ORDER_FLOOR.get(name, 1) for name in SUITE_CHECKS[suite])


def validate_parameters(order: int, kmax: int, faces: int, extended: bool = False,
                        suite: str = "all") -> None:
    """Raise ``ValueError`` on out-of-range run parameters."""
    floor = min_order(suite)
    if not floor <= order <= config.MAX_ORDER:
        raise ValueError(
            f"--order must be in {floor}..{config.MAX_ORDER} for suite {suite}, got {order}"
        )
    if not 2 <= kmax <= config.MAX_KMAX:
        raise ValueError(f"--kmax must be in 2..{config.MAX_KMAX}, got {kmax}")
    cap = config.QP_MAX_FACES if extended else min(5, config.QP_MAX_FACES)
    if not 1 <= faces <= cap:
        hint = "" if extended else " (use --extended and QP_MAX_FACES for more)"
        raise ValueError(f"--faces must be in 1..{cap}, got {faces}{hint}")


# ----------------------------------------------------------------------
# checks
# ----------------------------------------------------------------------
def check_h4_triple_agreement(params: RunParameters) -> str:
    P = max(6, min(params.order, 12))
    solver = solve_phi(0, P).at_zero()
    _, parametric = parametric_h4(P)
    lagrange = [lagrange_h4(p) for p in range(1, P + 1)]
    first = tuple(int(solver[p]) for p in range(1, 7))
    if first != H4_FIRST_TERMS:
        raise IdentityViolation(f"h4 first terms {first}, expected {H4_FIRST_TERMS}")
    for p in range(1, P + 1):
        if not solver[p] == parametric[p] == lagrange[p - 1]:
            raise IdentityViolation(
                f"routes disagree at p={p}: solver {solver[p]}, "
                f"parametric {parametric[p]}, Lagrange {lagrange[p - 1]}"
            )
    return f"three routes agree for p <= {P}"


def check_baseline_consistency(params: RunParameters) -> str:
    # check_counting covers stabilization, check_baseline the equation and R_inf
    check_baseline(params.kmax, params.order)
    return f"R_1..R_{params.kmax} consistent at order {params.order}"


def check_kernel_identities(params: RunParameters) -> str:
    D = N = min(params.order, 16)
    C = C_binomial_series(N)
    Y = kernel_Y(D, N, C)
    if not defY_residual(Y, C).is_zero():
        raise IdentityViolation("Y does not solve its quadratic")
    if not involution_residual(Y, C).is_zero():
        raise IdentityViolation("involution residual is not zero")
    recovered = t_from_Y(Y, C)
    t = BiSeries.outer_variable_series("G", recovered.order, recovered.outer_degree)
    if recovered != t:
        raise IdentityViolation("t read back from Y differs from t")
    phi = solve_phi(D, N)
    if not phiC_residual(phi, C).is_zero():
        raise IdentityViolation("C-form quadratic residual is not zero")
    if phi_from_kernel(D, N) != phi:
        raise IdentityViolation("Phi from the kernel root differs from the solver")
    return f"kernel residuals vanish to t-degree {D}, order {N}"


def check_recursion_closed_form(params: RunParameters) -> str:
    K, N = min(params.kmax, 10), min(params.order, 16)
    t_family = iterate_t(K, N)
    check_t_limit(t_family, C_binomial_series(N))
    # closed_forms_x checks the Moebius recursion, W_k and the kernel roots
    closed = compose_family(closed_forms_x(K, N).closed_t, x_of_G(N), "t")
    mismatch = t_family.first_disagreement(closed)
    if mismatch is not None:
        k, n = mismatch
        raise IdentityViolation(f"iterated t_{k} differs from the closed form at order G^{n}")
    return f"t_1..t_{K} equal the closed forms at order {N}"


def check_bridge_final_formula(params: RunParameters) -> str:
    K, N = min(params.kmax, 10), min(params.order, 16)
    # G_K needs R_{K+1}
    bridge = bridge_to_general(K + 1, N)
    G = assemble_G(bridge.R)
    closed = closed_two_point(G.K, N)
    mismatch = closed.first_disagreement(G)
    if mismatch is not None:
        k, n = mismatch
        raise IdentityViolation(f"closed G_{k} differs from the baseline at order g^{n}")
    for name, residual in limit_identities(N).items():
        if not residual.is_zero():
            raise IdentityViolation(f"{name} is not zero")
    return f"bridge and closed G_k agree for k <= {G.K} at order {N}"


def check_map_tally(params: RunParameters) -> str:
    n_max = params.faces
    R = check_baseline(n_max + 2, n_max)
    G = assemble_G(R)
    for n in range(1, n_max + 1):
        tally = tally_two_point(n, workers=config.QP_WORKERS, max_faces=config.QP_MAX_FACES)
        if tally.total != pointed_rooted_count(n):
            raise IdentityViolation(f"{tally.total} maps with {n} faces")
        bad = [row for row in tally_rows(tally, G) if not row.match]
        if bad:
            row = bad[0]
            raise IdentityViolation(
                f"n={n}, k={row.k}: {row.count} maps, [g^{n}] G_{row.k} = {row.series_coefficient}"
            )
        bad = [row for row in slice_rows(tally, R) if not row.match]
        if bad:
            raise IdentityViolation(f"n={n}, k={bad[0].k}: {bad[0].count} first-category maps")
        if n == 1 and (tally.by_distance.get(1), tally.by_distance.get(2)) != (3, 1):
            raise IdentityViolation(f"one-face tally {tally.by_distance}")
    return f"tallies match G_k for n <= {n_max}"


def check_slice_decomposition(params: RunParameters) -> str:
    n_max = params.faces
    R = check_baseline(n_max + 2, n_max)
    lines = 0
    for n in range(1, n_max + 1):
        per_ell: Dict[int, int] = {}
        stats: List[SliceStats] = []
        for qmap in pointed_rooted_maps(n, config.QP_MAX_FACES, first_category=True):
            view = extract_slice(qmap)
            result = validate_slice(view)
            if not result.ok:
                raise IdentityViolation(f"extracted slice fails validation: {result.reason}")
            per_ell[view.ell] = per_ell.get(view.ell, 0) + 1
            if view.ell < 2:
                continue
            line = dividing_line(view)
            dec = decompose(view, line)
            if dec.a_sequence[0] != 2:
                raise IdentityViolation(f"decomposition starts with a_0 = {dec.a_sequence[0]}")
            stats.append(SliceStats(view.ell, len(dec.blocks), dec.kind_counts,
                                    len(dec.upper_slices), dec.situation))
            lines += 1
        for k in range(1, n + 2):
            expected = R[k][n] - R[k - 1][n]
            if per_ell.get(k, 0) != expected:
                raise IdentityViolation(
                    f"n={n}: {per_ell.get(k, 0)} slices with ell={k}, expected {expected}"
                )
        counts = decomposition_counts(n, stats=stats)
        if not counts.ok:
            row = counts.mismatches()[0]
            raise IdentityViolation(
                f"n={n}, k={row.k}, {row.statistic}={row.value}: "
                f"{row.count} slices against {row.series_coefficient}"
            )
    return f"{lines} dividing lines and decompositions clean for n <= {n_max}"


def _random_series(rng: random.Random, order: int, constant=None, linear=None,
                   integral: bool = False) -> PowerSeries:
    values = [
        Fraction(rng.randint(-5, 5), 1 if integral else rng.randint(1, 4))
        for _ in range(order + 1)
    ]
    if constant is not None:
        values[0] = Fraction(constant)
    if linear is not None:
        values[1] = Fraction(linear)
    return PowerSeries("x", order, tuple(values))


def check_series_properties(params: RunParameters, samples: int = 200, order: int = 12) -> str:
    rng = random.Random(params.seed)
    identity = PowerSeries.identity("x", order)
    for i in range(samples):
        a, b, c = (_random_series(rng, order) for _ in range(3))
        ab, bc = a * b, b * c
        if (a + b) * c != a * c + bc or ab != b * a or ab * c != a * bc:
            raise IdentityViolation(f"ring axiom fails on sample {i}")
        # unit linear term: the inverse stays integral
        s = _random_series(rng, order, constant=0, linear=rng.choice([1, -1]), integral=True)
        if s.compose(s.revert()) != identity:
            raise IdentityViolation(f"revert is not a compositional inverse on sample {i}")
        u = _random_series(rng, order, constant=1)
        r = u.sqrt_one()
        if r * r != u:
            raise IdentityViolation(f"sqrt does not square back on sample {i}")
    return f"{samples} seeded samples at order {order}, seed {params.seed}"


CHECKS: Dict[str, Callable[[RunParameters], str]] = {
    "h4_triple_agreement": check_h4_triple_agreement,
    "baseline_consistency": check_baseline_consistency,
    "kernel_identities": check_kernel_identities,
    "recursion_closed_form": check_recursion_closed_form,
    "bridge_final_formula": check_bridge_final_formula,
    "map_tally": check_map_tally,
    "slice_decomposition": check_slice_decomposition,
    "series_properties": check_series_properties,
}

SUITE_CHECKS: Dict[str, List[str]] = {
    "all": list(CHECKS),
    "series": ["series_properties", "baseline_consistency"],
    "kernel": [
        "h4_triple_agreement",
        "kernel_identities",
        "recursion_closed_form",
        "bridge_final_formula",
    ],
    "maps": ["map_tally", "slice_decomposition"],
}

# t read back from Y loses two orders, and x = 0 separates the fixed points
# of the Moebius step only from order 2 on
ORDER_FLOOR: Dict[str, int] = {
    "kernel_identities": 2,
    "recursion_closed_form": 2,
    "bridge_final_formula": 2,
}


def _run_check(name: str, params: RunParameters) -> CheckResult:
    logger.info("check %s started", name)
    start = time.perf_counter()
    try:
        detail = CHECKS[name](params)
        status = "pass"
    except Exception as e:
        detail = f"{type(e).__name__}: {e}"
        status = "fail"
        logger.warning("check %s failed: %s", name, detail)
    elapsed = (time.perf_counter() - start) * 1000
    logger.info("check %s finished: %s in %.0f ms", name, status, elapsed)
    return CheckResult(name=name, status=status, detail=detail, elapsed_ms=elapsed)


def run_suite(suite: str = "all", order: int | None = None, kmax: int | None = None,
              faces: int | None = None, seed: int | None = None, workers: int | None = None,
              extended: bool = False) -> VerificationReport:
    """Run the checks of ``suite`` and return the assembled report.

    Raises ``ValueError`` on an unknown suite or out-of-range parameters.
    """
    if suite not in SUITE_CHECKS:
        raise ValueError(f"unknown suite {suite!r}, choose from {', '.join(SUITES)}")
    params = RunParameters(
        order=config.QP_DEFAULT_ORDER if order is None else order,
        kmax=config.QP_DEFAULT_KMAX if kmax is None else kmax,
        faces=config.QP_DEFAULT_FACES if faces is None else faces,
        seed=config.QP_DEFAULT_SEED if seed is None else seed,
    )
    validate_parameters(params.order, params.kmax, params.faces, extended, suite)
    names = SUITE_CHECKS[suite]
    with ThreadPoolExecutor(max_workers=workers or config.QP_WORKERS) as executor:
        results = list(executor.map(lambda name: _run_check(name, params), names))
    report = VerificationReport(
        suite=suite,
        parameters={
            "order": params.order,
            "kmax": params.kmax,
            "faces": params.faces,
            "seed": params.seed,
        },
        checks=results,
    )
    if report.overall:
        logger.info("suite %s passed (%d checks)", suite, len(results))
    else:
        logger.warning("suite %s failed: %s", suite, ", ".join(c.name for c in report.failed()))
    return report
