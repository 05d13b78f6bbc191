## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import logging

## third-party
import numpy
from scipy import stats

## local
from mbfbound import bftest, dists, linalg
from mbfbound.errors import DfTooSmall, DomainError, NotMajorized
from mbfbound.sim import BLOCK_SIZE, run_blocks, split_into_blocks
from mbfbound.verify._majorization import MajorizationPair, is_majorized
from mbfbound.verify._reports import CheckReport, OrderCheckReport

log = logging.getLogger(__name__)

GRID_POINTS = 50
GRID_PERCENTILES = (1.0, 99.0)

##
## === EMPIRICAL CDFS
##


def ecdf_on_grid(
    samples: numpy.ndarray,
    grid: numpy.ndarray,
) -> numpy.ndarray:
    ordered = numpy.sort(samples)
    return numpy.searchsorted(ordered, grid, side="right") / ordered.shape[0]


def percentile_grid(
    *sample_sets: numpy.ndarray,
    num_points: int = GRID_POINTS,
) -> numpy.ndarray:
    """
    `num_points` evenly spaced points between the pooled 1st and 99th percentiles.
    """
    pooled = numpy.concatenate([numpy.asarray(samples).reshape(-1) for samples in sample_sets])
    low, high = numpy.percentile(pooled, GRID_PERCENTILES)
    return numpy.linspace(low, high, num_points)


def _block_streams(
    stream: dists.RngStream,
    reps: int,
    block_size: int,
) -> list[tuple[int, dists.RngStream]]:
    return [(size, stream.spawn(block_index)) for block_index, (_, size) in enumerate(split_into_blocks(reps, block_size))]


##
## === STOCHASTIC ORDER OF WEIGHTED WISHART QUADRATIC FORMS
##


def quadratic_forms_block(
    weights_a: numpy.ndarray,
    weights_b: numpy.ndarray,
    p: int,
    wishart_df: int,
    size: int,
    stream: dists.RngStream,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    """
    Draws iid W_i ~ W(I_p, wishart_df) (as Gram matrices of normal columns, so any df >= 1 works) and one
    Z ~ N(0, I_p) per replication, and returns Z^T (sum_i a_i W_i)^{-1} Z and Z^T (sum_i b_i W_i)^{-1} Z.
    """
    generator = stream.generator
    r = weights_a.shape[0]
    columns = generator.standard_normal((size, r, p, wishart_df))
    wisharts = columns @ numpy.swapaxes(columns, -1, -2)
    z = generator.standard_normal((size, p))
    forms_a = linalg.quad_form_inv_batch(z, numpy.einsum("r,srij->sij", weights_a, wisharts))
    forms_b = linalg.quad_form_inv_batch(z, numpy.einsum("r,srij->sij", weights_b, wisharts))
    return forms_a, forms_b


def _check_total_df(
    weights: numpy.ndarray,
    p: int,
    wishart_df: int,
    name: str,
) -> None:
    num_positive = int(numpy.count_nonzero(weights > 0))
    if num_positive * wishart_df < p:
        raise DfTooSmall(
            f"`{name}` has {num_positive} positive weights, so the weighted sum of W(I_{p}, {wishart_df}) "
            f"matrices is singular; need at least {-(-p // wishart_df)}.",
        )


def compare_orders(
    samples_a: numpy.ndarray,
    samples_b: numpy.ndarray,
    band: float = 3.0,
    num_points: int = GRID_POINTS,
) -> OrderCheckReport:
    """
    Tests "a is stochastically no larger than b" as ecdf_a >= ecdf_b - band * se on a percentile grid, with
    se = sqrt(F_a (1 - F_a) / n_a + F_b (1 - F_b) / n_b).
    """
    grid = percentile_grid(samples_a, samples_b, num_points=num_points)
    ecdf_a = ecdf_on_grid(samples_a, grid)
    ecdf_b = ecdf_on_grid(samples_b, grid)
    mc_se = numpy.sqrt(
        ecdf_a * (1.0 - ecdf_a) / samples_a.shape[0] + ecdf_b * (1.0 - ecdf_b) / samples_b.shape[0],
    )
    return OrderCheckReport(
        grid=grid,
        ecdf_a=ecdf_a,
        ecdf_b=ecdf_b,
        mc_se=mc_se,
        violations=int(numpy.count_nonzero(ecdf_a < ecdf_b - band * mc_se)),
        reverse_violations=int(numpy.count_nonzero(ecdf_b < ecdf_a - band * mc_se)),
        reps=int(samples_a.shape[0]),
        band=band,
    )


def check_theorem1(
    psi: numpy.ndarray,
    eta: numpy.ndarray,
    p: int,
    wishart_df: int,
    reps: int,
    stream: dists.RngStream,
    require_majorized: bool = True,
    num_workers: int | None = None,
    block_size: int = BLOCK_SIZE,
    band: float = 3.0,
) -> OrderCheckReport:
    """
    Monte Carlo check that psi majorized by eta implies Z^T (sum psi_i W_i)^{-1} Z is stochastically no
    larger than Z^T (sum eta_i W_i)^{-1} Z. Block b draws from `stream.spawn(b)`.
    """
    pair = MajorizationPair(x=psi, y=eta)
    if require_majorized and not is_majorized(pair):
        raise NotMajorized("`psi` is not majorized by `eta`; the ordering check would be vacuous.")
    if p < 1: raise DomainError(f"`p` must be at least 1, but got {p}.")
    if wishart_df < 1: raise DfTooSmall(f"`wishart_df` must be at least 1, but got {wishart_df}.")
    _check_total_df(pair.x, p, wishart_df, "psi")
    _check_total_df(pair.y, p, wishart_df, "eta")
    tasks = [
        (pair.x, pair.y, p, wishart_df, size, block_stream)
        for size, block_stream in _block_streams(stream, reps, block_size)
    ]
    blocks = run_blocks(quadratic_forms_block, tasks, num_workers)
    forms_a = numpy.concatenate([block[0] for block in blocks])
    forms_b = numpy.concatenate([block[1] for block in blocks])
    return compare_orders(forms_a, forms_b, band=band)


##
## === F BOUNDS AROUND THE NULL LAW OF T^2
##


def canonical_block(
    params: bftest.CanonicalParams,
    size: int,
    stream: dists.RngStream,
) -> numpy.ndarray:
    return bftest.sample_canonical_t2_batch(params, stream, size)


def check_theorem2(
    p: int,
    m: int,
    n: int,
    k: float,
    reps: int,
    stream: dists.RngStream,
    num_workers: int | None = None,
    block_size: int = BLOCK_SIZE,
    band: float = 3.0,
    num_points: int = GRID_POINTS,
) -> CheckReport:
    """
    The empirical CDF of canonical T^2 draws must lie within [lower, upper] of `bound_cdfs` up to `band`
    standard errors at every grid point.
    """
    params = bftest.CanonicalParams.from_k(k, p, m, n)
    tasks = [(params, size, block_stream) for size, block_stream in _block_streams(stream, reps, block_size)]
    samples = numpy.concatenate(run_blocks(canonical_block, tasks, num_workers))
    grid = percentile_grid(samples, num_points=num_points)
    ecdf = ecdf_on_grid(samples, grid)
    mc_se = numpy.sqrt(ecdf * (1.0 - ecdf) / samples.shape[0])
    bounds = bftest.bound_cdfs(grid, p, m, n)
    lower = numpy.asarray(bounds.lower)
    upper = numpy.asarray(bounds.upper)
    below = ecdf - lower + band * mc_se
    above = upper - ecdf + band * mc_se
    violations = int(numpy.count_nonzero(below < 0) + numpy.count_nonzero(above < 0))
    return CheckReport(
        name="theorem2",
        instances=1,
        violations=violations,
        worst_margin=float(min(below.min(), above.min())),
        seeds={"base_seed": stream.base_seed, "stream_path": list(stream.stream_path)},
        details={
            "p": p,
            "m": m,
            "n": n,
            "k": k,
            "reps": reps,
            "bounds_ordered": bool(numpy.all(lower <= upper)),
            "grid": grid,
            "ecdf": ecdf,
            "lower": lower,
            "upper": upper,
            "mc_se": mc_se,
        },
    )


##
## === HOTELLING REDUCTION
##


def hotelling_block(
    p: int,
    n: int,
    size: int,
    stream: dists.RngStream,
) -> numpy.ndarray:
    wisharts = dists.sample_wishart_batch(stream, numpy.eye(p), n, size)
    z = stream.generator.standard_normal((size, p))
    return n * linalg.quad_form_inv_batch(z, wisharts)


def check_hotelling_transform(
    p: int,
    n: int,
    reps: int,
    stream: dists.RngStream,
    num_workers: int | None = None,
    block_size: int = BLOCK_SIZE,
    ks_floor: float = 0.01,
) -> CheckReport:
    """
    Kolmogorov-Smirnov distance between n Z^T W^{-1} Z draws (W ~ W(I_p, n)) and the scaled F law of
    `hotelling_f_transform`; the tolerance is the larger of `ks_floor` and the 1% critical value.
    """
    transform = bftest.hotelling_f_transform(p, n)
    tasks = [(p, n, size, block_stream) for size, block_stream in _block_streams(stream, reps, block_size)]
    samples = numpy.concatenate(run_blocks(hotelling_block, tasks, num_workers))
    result = stats.kstest(samples, transform.cdf)
    threshold = max(ks_floor, 1.63 / numpy.sqrt(samples.shape[0]))
    return CheckReport(
        name="hotelling",
        instances=1,
        violations=int(result.statistic > threshold),
        worst_margin=float(threshold - result.statistic),
        seeds={"base_seed": stream.base_seed, "stream_path": list(stream.stream_path)},
        details={
            "p": p,
            "n": n,
            "reps": reps,
            "scale": transform.scale,
            "df": [transform.df1, transform.df2],
            "ks_statistic": float(result.statistic),
            "threshold": float(threshold),
        },
    )


## } MODULE
