## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import logging
from typing import Any

## third-party
import numpy

## local
from mbfbound import dists, wchisq
from mbfbound.errors import DegenerateSpectrum, DomainError
from mbfbound.sim import run_blocks
from mbfbound.verify._reports import CheckReport

log = logging.getLogger(__name__)

LAMBDA_POINTS = 21
CONCAVITY_SLACK = 1e-8
ORDER_MARGIN = 0.9
ANALYTIC_TOLERANCE = 1e-6
MAX_ATTEMPTS = 50

## sampling ranges for random instances
THETA_RANGE = (0.2, 5.0)
T_SCALE_RANGE = (0.25, 3.0)
LEMMA2_T_SCALE_RANGE = (1.0, 3.0)


def _seeds(
    stream: dists.RngStream,
) -> dict[str, Any]:
    return {"base_seed": stream.base_seed, "stream_path": list(stream.stream_path)}


def _sum_counts(
    outcomes: list[dict[str, Any]],
    key: str,
) -> int:
    return int(sum(outcome[key] for outcome in outcomes))


##
## === PARTIAL DERIVATIVES OF THE WEIGHTED CHI-SQUARE CDF
##


def lemma1_instance(
    p: int,
    stream: dists.RngStream,
    margin: float = ORDER_MARGIN,
) -> dict[str, Any]:
    """
    One random (theta, t): log-uniform weights and t a random multiple of E[T] = sum_i 1 / theta_i.
    """
    generator = stream.generator
    theta = numpy.exp(generator.uniform(numpy.log(THETA_RANGE[0]), numpy.log(THETA_RANGE[1]), size=p))
    t = float(generator.uniform(*T_SCALE_RANGE) * numpy.sum(1.0 / theta))
    first = wchisq.gradient(t, theta)
    second = numpy.array([wchisq.d2F_dtheta2(t, theta, index) for index in range(p)])
    order_gaps = [
        first[i] - first[j]
        for i in range(p)
        for j in range(p)
        if i != j and theta[i] <= margin * theta[j]
    ]
    outcome: dict[str, Any] = {
        "positive_violations": int(numpy.count_nonzero(first <= 0)),
        "concave_violations": int(numpy.count_nonzero(second >= 0)),
        "order_violations": int(sum(gap <= 0 for gap in order_gaps)),
        "order_pairs": len(order_gaps),
        "worst_margin": float(min([first.min(), -second.max()] + order_gaps)),
        "analytic_error": 0.0,
    }
    if p == 2:
        analytic = numpy.array([wchisq.dF_dtheta(t, theta, index, backend="analytic") for index in range(2)])
        outcome["analytic_error"] = float(numpy.max(numpy.abs(analytic - first)))
    return outcome


def check_lemma1(
    p: int,
    num_instances: int,
    stream: dists.RngStream,
    num_workers: int | None = None,
) -> CheckReport:
    """
    Over random instances counts failures of f_i > 0, g_i < 0 and (theta_i <= 0.9 theta_j => f_i > f_j). For
    p = 2 the finite-difference f_i is also compared with the analytic integral.
    """
    if p < 2: raise DomainError(f"`p` must be at least 2, but got {p}.")
    tasks = [(p, stream.spawn(index)) for index in range(num_instances)]
    outcomes = run_blocks(lemma1_instance, tasks, num_workers)
    analytic_error = max((outcome["analytic_error"] for outcome in outcomes), default=0.0)
    analytic_violations = int(analytic_error > ANALYTIC_TOLERANCE)
    details = {
        "p": p,
        "positive_violations": _sum_counts(outcomes, "positive_violations"),
        "concave_violations": _sum_counts(outcomes, "concave_violations"),
        "order_violations": _sum_counts(outcomes, "order_violations"),
        "order_pairs": _sum_counts(outcomes, "order_pairs"),
        "max_analytic_error": analytic_error,
    }
    violations = (
        details["positive_violations"]
        + details["concave_violations"]
        + details["order_violations"]
        + analytic_violations
    )
    return CheckReport(
        name="lemma1",
        instances=num_instances,
        violations=violations,
        worst_margin=min((outcome["worst_margin"] for outcome in outcomes), default=numpy.inf),
        seeds=_seeds(stream),
        details=details,
    )


##
## === CONCAVITY ALONG THE MATRIX PATH
##


def _random_spd(
    generator: numpy.random.Generator,
    p: int,
) -> numpy.ndarray:
    df = p + 3
    columns = generator.standard_normal((p, df))
    return columns @ columns.T / df


def _lambda_grid(
    lam_points: int,
) -> numpy.ndarray:
    if lam_points < 3: raise DomainError(f"`lam_points` must be at least 3, but got {lam_points}.")
    return numpy.linspace(0.0, 1.0, lam_points)


def path_spectra(
    path: wchisq.LambdaPath,
    lam_points: int = LAMBDA_POINTS,
) -> numpy.ndarray:
    """
    Descending eigenvalues of M(lambda) on an even lambda grid, shape (lam_points, p). Raises
    `DegenerateSpectrum` when M1 and M2 coincide or two eigenvalues meet anywhere on the grid.
    """
    if numpy.allclose(path.m1, path.m2, rtol=0.0, atol=1e-12 * float(numpy.abs(path.m1).max())):
        raise DegenerateSpectrum("M1 and M2 coincide, so the path is constant.")
    spectra = numpy.array([path.eigen(lam).values for lam in _lambda_grid(lam_points)])
    worst_gap = min(wchisq.min_relative_gap(values) for values in spectra)
    if worst_gap < wchisq.DEGENERACY_RTOL:
        raise DegenerateSpectrum(f"Eigenvalues meet along the path (relative gap {worst_gap:.2e}).")
    return spectra


def second_differences(
    values: numpy.ndarray,
) -> numpy.ndarray:
    return values[:-2] - 2.0 * values[1:-1] + values[2:]


def h_second_differences(
    path: wchisq.LambdaPath,
    lam_points: int = LAMBDA_POINTS,
) -> numpy.ndarray:
    spectra = path_spectra(path, lam_points)
    h_values = numpy.array([wchisq.wchisq_cdf(path.t, values) for values in spectra])
    return second_differences(h_values)


def cumsum_second_differences(
    path: wchisq.LambdaPath,
    lam_points: int = LAMBDA_POINTS,
) -> numpy.ndarray:
    """
    Second differences of c_i(lambda) = sum_{j >= i} d_j(lambda), shape (lam_points - 2, p). Column 0 is the
    trace, which is linear in lambda.
    """
    spectra = path_spectra(path, lam_points)
    cumsums = numpy.cumsum(spectra[:, ::-1], axis=1)[:, ::-1]
    return second_differences(cumsums)


def _draw_path(
    p: int,
    stream: dists.RngStream,
    lam_points: int,
) -> tuple[wchisq.LambdaPath, int]:
    """
    Random SPD pair with a non-degenerate spectrum along the path; attempt a draws from `stream.spawn(a)`.
    Returns the path (t set from E[T] at lambda = 1/2) and the number of rejected draws.
    """
    for attempt in range(MAX_ATTEMPTS):
        generator = stream.spawn(attempt).generator
        m1 = _random_spd(generator, p)
        m2 = _random_spd(generator, p)
        mid_inverse_trace = float(numpy.trace(numpy.linalg.inv(0.5 * (m1 + m2))))
        t = float(generator.uniform(*LEMMA2_T_SCALE_RANGE) * mid_inverse_trace)
        path = wchisq.LambdaPath(m1=m1, m2=m2, t=t)
        try:
            path_spectra(path, lam_points)
        except DegenerateSpectrum:
            continue
        return path, attempt
    raise DegenerateSpectrum(f"No non-degenerate pair found in {MAX_ATTEMPTS} draws.")


def lemma2_instance(
    p: int,
    stream: dists.RngStream,
    lam_points: int = LAMBDA_POINTS,
    slack: float = CONCAVITY_SLACK,
) -> dict[str, Any]:
    path, skipped = _draw_path(p, stream, lam_points)
    diffs = h_second_differences(path, lam_points)
    return {
        "violations": int(numpy.count_nonzero(diffs > slack)),
        "worst_margin": float(-diffs.max()),
        "skipped": skipped,
        "t": path.t,
        "h_second_derivative_mid": wchisq.h_second_derivative(0.5, path),
    }


def check_lemma2(
    p: int,
    num_instances: int,
    stream: dists.RngStream,
    lam_points: int = LAMBDA_POINTS,
    slack: float = CONCAVITY_SLACK,
    num_workers: int | None = None,
) -> CheckReport:
    """
    Second differences of h(lambda) = P(Z^T M(lambda)^{-1} Z <= t) over random SPD pairs must not exceed
    `slack`. t is a random multiple in [1, 3] of E[Z^T M(1/2)^{-1} Z]; below the mode of the quadratic form
    the mixed partials can make h convex once p >= 3.
    """
    tasks = [(p, stream.spawn(index), lam_points, slack) for index in range(num_instances)]
    outcomes = run_blocks(lemma2_instance, tasks, num_workers)
    return CheckReport(
        name="lemma2",
        instances=num_instances,
        violations=_sum_counts(outcomes, "violations"),
        worst_margin=min((outcome["worst_margin"] for outcome in outcomes), default=numpy.inf),
        seeds=_seeds(stream),
        skipped=_sum_counts(outcomes, "skipped"),
        details={
            "p": p,
            "lam_points": lam_points,
            "slack": slack,
            ## t is only drawn at or above the mean of the form at lambda = 1/2, not over all t > 0
            "t_scale_range": list(LEMMA2_T_SCALE_RANGE),
            "t_min": min((outcome["t"] for outcome in outcomes), default=numpy.nan),
            "t_max": max((outcome["t"] for outcome in outcomes), default=numpy.nan),
            "max_h_second_derivative_mid": max(
                (outcome["h_second_derivative_mid"] for outcome in outcomes),
                default=-numpy.inf,
            ),
        },
    )


def _eigen_second_derivative_error(
    path: wchisq.LambdaPath,
    lam: float,
    step: float = 1e-4,
) -> float:
    analytic = wchisq.eigen_derivatives(path, lam).second
    numeric = (
        path.eigen(lam + step).values - 2.0 * path.eigen(lam).values + path.eigen(lam - step).values
    ) / (step * step)
    return float(numpy.max(numpy.abs(analytic - numeric)) / max(1.0, float(numpy.max(numpy.abs(analytic)))))


def appendix_instance(
    p: int,
    stream: dists.RngStream,
    lam_points: int = LAMBDA_POINTS,
    slack: float = CONCAVITY_SLACK,
) -> dict[str, Any]:
    path, skipped = _draw_path(p, stream.spawn(0), lam_points)
    ## column 0 is the linear trace, so only the partial sums from the bottom are tested
    diffs = cumsum_second_differences(path, lam_points)[:, 1:]
    violations = int(numpy.count_nonzero(diffs > slack))
    margins = [float(-diffs.max())] if diffs.size else []
    derivs = wchisq.eigen_derivatives(path, 0.5)
    bottom_sums = numpy.cumsum(derivs.second[::-1])[::-1][1:]
    scale = max(1.0, float(numpy.max(numpy.abs(derivs.second))))
    violations += int(numpy.count_nonzero(bottom_sums > slack * scale))
    if bottom_sums.size: margins.append(float(-bottom_sums.max() / scale))
    ## closed-form gap between the two-weight derivative and its swap
    generator = stream.spawn(1).generator
    a = float(generator.uniform(0.2, 2.0))
    b = float(a * generator.uniform(1.1, 5.0))
    t = float(generator.uniform(0.5, 5.0) * (1.0 / a + 1.0 / b))
    integrals = wchisq.appendix_integrals(a, b, t)
    gap_ok = integrals.lower_bound > 0 and integrals.gap >= integrals.lower_bound * (1.0 - 1e-9)
    violations += int(not gap_ok)
    margins.append(float(integrals.gap - integrals.lower_bound))
    return {
        "violations": violations,
        "worst_margin": min(margins),
        "skipped": skipped,
        "eigen_second_derivative_error": _eigen_second_derivative_error(path, 0.5),
    }


def check_appendix_concavity(
    p: int,
    num_instances: int,
    stream: dists.RngStream,
    lam_points: int = LAMBDA_POINTS,
    slack: float = CONCAVITY_SLACK,
    num_workers: int | None = None,
) -> CheckReport:
    """
    Concavity of every partial eigenvalue sum from the bottom along random paths, by grid second differences
    and by the analytic eigenvalue second derivatives at lambda = 1/2, together with the closed lower bound
    on h(a, b) - h(b, a) for random a < b.
    """
    tasks = [(p, stream.spawn(index), lam_points, slack) for index in range(num_instances)]
    outcomes = run_blocks(appendix_instance, tasks, num_workers)
    return CheckReport(
        name="appendix",
        instances=num_instances,
        violations=_sum_counts(outcomes, "violations"),
        worst_margin=min((outcome["worst_margin"] for outcome in outcomes), default=numpy.inf),
        seeds=_seeds(stream),
        skipped=_sum_counts(outcomes, "skipped"),
        details={
            "p": p,
            "lam_points": lam_points,
            "slack": slack,
            "max_eigen_second_derivative_error": max(
                (outcome["eigen_second_derivative_error"] for outcome in outcomes),
                default=0.0,
            ),
        },
    )


## } MODULE
