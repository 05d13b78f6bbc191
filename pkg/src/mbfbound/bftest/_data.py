## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from dataclasses import dataclass
from typing import NamedTuple

## third-party
import numpy

## local
from mbfbound.errors import DimensionMismatch, DimensionTooLarge, DomainError, RankDeficientSample

##
## === TYPES
##


@dataclass(frozen=True, eq=False)
class TwoSampleData:
    """
    Two independent samples stored as observation-by-row matrices: `x` is m x p and `y` is n x p, with p < min(m, n).
    """
    x: numpy.ndarray
    y: numpy.ndarray

    def __post_init__(self):
        x = numpy.array(self.x, dtype=numpy.float64)
        y = numpy.array(self.y, dtype=numpy.float64)
        if x.ndim == 1: x = x[:, None]
        if y.ndim == 1: y = y[:, None]
        if x.ndim != 2 or y.ndim != 2:
            raise DimensionMismatch(f"Samples must be 2D (observations x variables), but got {x.shape} and {y.shape}.")
        if x.shape[1] != y.shape[1]:
            raise DimensionMismatch(f"Samples must share the number of variables, but got {x.shape[1]} and {y.shape[1]}.")
        if x.shape[1] < 1:
            raise DimensionMismatch("Samples must have at least one variable.")
        if not (numpy.all(numpy.isfinite(x)) and numpy.all(numpy.isfinite(y))):
            raise DomainError("Samples must contain only finite values.")
        p = x.shape[1]
        if not (p < x.shape[0] and p < y.shape[0]):
            raise DimensionTooLarge(f"Need p < min(m, n), but got p = {p}, m = {x.shape[0]}, n = {y.shape[0]}.")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def m(self) -> int:
        return int(self.x.shape[0])

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def p(self) -> int:
        return int(self.x.shape[1])

    def swapped(self) -> "TwoSampleData":
        return TwoSampleData(x=self.y, y=self.x)

    def transformed(
        self,
        matrix: numpy.ndarray,
        shift: numpy.ndarray,
    ) -> "TwoSampleData":
        """
        Applies obs -> matrix @ obs + shift to every observation of both samples.
        """
        return TwoSampleData(
            x=self.x @ numpy.asarray(matrix).T + shift,
            y=self.y @ numpy.asarray(matrix).T + shift,
        )


class SampleSummary(NamedTuple):
    mean_diff: numpy.ndarray
    s1: numpy.ndarray
    s2: numpy.ndarray


##
## === SUMMARY STATISTICS
##


def _sample_covariance_batch(
    obs: numpy.ndarray,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    mean = obs.mean(axis=-2)
    centred = obs - mean[..., None, :]
    cov = numpy.einsum("...ki,...kj->...ij", centred, centred) / (obs.shape[-2] - 1)
    return mean, 0.5 * (cov + numpy.swapaxes(cov, -1, -2))


def summarize_batch(
    x: numpy.ndarray,
    y: numpy.ndarray,
) -> SampleSummary:
    """
    Mean difference and unbiased covariance matrices for stacks of samples: `x` has shape (..., m, p) and
    `y` has shape (..., n, p). No positive-definiteness check is made here.
    """
    mean_x, s1 = _sample_covariance_batch(x)
    mean_y, s2 = _sample_covariance_batch(y)
    return SampleSummary(mean_diff=mean_x - mean_y, s1=s1, s2=s2)


def is_full_rank_batch(
    s1: numpy.ndarray,
    s2: numpy.ndarray,
) -> numpy.ndarray:
    """
    Boolean mask over a stack: True where both covariance matrices pass a Cholesky factorisation.
    """
    mask = numpy.ones(s1.shape[:-2], dtype=bool)
    for cov in (s1, s2):
        try:
            numpy.linalg.cholesky(cov)
        except numpy.linalg.LinAlgError:
            flat = cov.reshape((-1,) + cov.shape[-2:])
            flags = numpy.array([_passes_cholesky(matrix) for matrix in flat])
            mask &= flags.reshape(mask.shape)
    return mask


def _passes_cholesky(
    matrix: numpy.ndarray,
) -> bool:
    try:
        numpy.linalg.cholesky(matrix)
    except numpy.linalg.LinAlgError:
        return False
    return True


def summarize(
    data: TwoSampleData,
) -> SampleSummary:
    """
    X-bar - Y-bar together with S1 and S2 (divisors m - 1 and n - 1). Raises `RankDeficientSample` when either
    covariance matrix is not positive definite.
    """
    summary = summarize_batch(data.x, data.y)
    for name, cov in (("first", summary.s1), ("second", summary.s2)):
        if not _passes_cholesky(cov):
            raise RankDeficientSample(f"The {name} sample covariance matrix is not positive definite.")
    return summary


## } MODULE
