## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import time
import traceback
from typing import NamedTuple

## third-party
import numpy

## local
from mbfbound import bftest, dists
from mbfbound.errors import RankDeficientSample

## replications per task; fixed so results never depend on the worker count
BLOCK_SIZE = 1000
MAX_RETRIES = 100

##
## === ONE BLOCK OF REPLICATIONS
##


class BlockTask(NamedTuple):
    setting_index: int
    start: int
    size: int
    p: int
    m: int
    n: int
    k: float
    alphas: tuple[float, ...]
    methods: tuple[bftest.Method, ...]
    mode: str
    base_seed: int
    sigma_factor: numpy.ndarray


class BlockOutcome(NamedTuple):
    setting_index: int
    rejections: numpy.ndarray
    resamples: int
    elapsed_ms: float
    error: str | None


def split_into_blocks(
    reps: int,
    block_size: int = BLOCK_SIZE,
) -> list[tuple[int, int]]:
    return [(start, min(block_size, reps - start)) for start in range(0, reps, block_size)]


def _draw_direct(
    stream: dists.RngStream,
    task: BlockTask,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    ## X ~ N(0, Sigma)^m and Y ~ N(0, k Sigma)^n from one block of standard normals
    z = stream.generator.standard_normal((task.m + task.n, task.p)) @ task.sigma_factor.T
    return z[: task.m], numpy.sqrt(task.k) * z[task.m :]


def direct_block(
    task: BlockTask,
) -> tuple[numpy.ndarray, int]:
    """
    Rejection counts (methods x alphas) for a block of datasets drawn from the proportional-covariance null.
    Replication r uses the stream (setting, r); a rank-deficient draw is redrawn from (setting, r, retry).
    """
    root = dists.RngStream(task.base_seed)
    x_stack = numpy.empty((task.size, task.m, task.p))
    y_stack = numpy.empty((task.size, task.n, task.p))
    for offset in range(task.size):
        rep_index = task.start + offset
        x_stack[offset], y_stack[offset] = _draw_direct(root.spawn(task.setting_index, rep_index), task)
    summary = bftest.summarize_batch(x_stack, y_stack)
    resamples = 0
    for offset in numpy.flatnonzero(~bftest.is_full_rank_batch(summary.s1, summary.s2)):
        rep_index = task.start + int(offset)
        for retry in range(1, MAX_RETRIES + 1):
            resamples += 1
            x, y = _draw_direct(root.spawn(task.setting_index, rep_index, retry), task)
            redraw = bftest.summarize_batch(x, y)
            if bool(bftest.is_full_rank_batch(redraw.s1, redraw.s2)):
                x_stack[offset], y_stack[offset] = x, y
                break
        else:
            raise RankDeficientSample(f"Replication {rep_index} stayed rank deficient after {MAX_RETRIES} redraws.")
    if resamples: summary = bftest.summarize_batch(x_stack, y_stack)
    pvalues = bftest.method_pvalues_batch(summary, task.m, task.n, task.methods)
    return _count_rejections(pvalues, task), resamples


def canonical_block(
    task: BlockTask,
) -> tuple[numpy.ndarray, int]:
    """
    Rejection counts from the canonical null law of T^2; only the F bound is defined on T^2 alone.
    """
    root = dists.RngStream(task.base_seed)
    params = bftest.CanonicalParams.from_k(task.k, task.p, task.m, task.n)
    t2 = numpy.array([
        bftest.sample_canonical_t2(params, root.spawn(task.setting_index, task.start + offset))
        for offset in range(task.size)
    ])
    pvalues = {bftest.Method.FBOUND: numpy.asarray(bftest.fbound_pvalue(t2, task.p, task.m, task.n))}
    return _count_rejections(pvalues, task), 0


def _count_rejections(
    pvalues: dict[bftest.Method, numpy.ndarray],
    task: BlockTask,
) -> numpy.ndarray:
    counts = numpy.zeros((len(task.methods), len(task.alphas)), dtype=numpy.int64)
    for method_index, method in enumerate(task.methods):
        for alpha_index, alpha in enumerate(task.alphas):
            counts[method_index, alpha_index] = int(numpy.count_nonzero(pvalues[method] <= alpha))
    return counts


def run_block(
    task: BlockTask,
) -> BlockOutcome:
    """
    Runs one block; failures are returned rather than raised so one bad setting does not sink the grid.
    """
    start_time = time.perf_counter()
    try:
        if task.mode == "canonical":
            rejections, resamples = canonical_block(task)
        else:
            rejections, resamples = direct_block(task)
        error = None
    except Exception as err:
        rejections = numpy.zeros((len(task.methods), len(task.alphas)), dtype=numpy.int64)
        resamples = 0
        error = "".join(traceback.format_exception_only(type(err), err)).strip()
    elapsed_ms = 1e3 * (time.perf_counter() - start_time)
    return BlockOutcome(task.setting_index, rejections, resamples, elapsed_ms, error)


## } MODULE
