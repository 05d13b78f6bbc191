## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## third-party
import numpy

## local
from mbfbound import linalg
from mbfbound.dists._rng import RngStream
from mbfbound.errors import DfTooSmall, DimensionMismatch, DomainError

##
## === NORMAL VARIATES
##


def sample_std_normal(
    stream: RngStream,
) -> float:
    return float(stream.generator.standard_normal())


def sample_normal_vec(
    stream: RngStream,
    p: int,
) -> numpy.ndarray:
    if p < 1: raise DomainError(f"`p` must be at least 1, but got {p}.")
    return stream.generator.standard_normal(p)


def sample_mvn(
    stream: RngStream,
    mean: numpy.ndarray,
    sigma: numpy.ndarray,
) -> numpy.ndarray:
    """
    One draw from N(mean, sigma) as mean + L z, with L the Cholesky factor of sigma.
    """
    mean = numpy.asarray(mean, dtype=numpy.float64).reshape(-1)
    lower = linalg.cholesky(linalg.as_spd(sigma, "sigma"))
    if mean.shape[0] != lower.shape[0]:
        raise DimensionMismatch(f"`mean` has length {mean.shape[0]} but `sigma` is {lower.shape[0]}x{lower.shape[0]}.")
    return mean + lower @ sample_normal_vec(stream, lower.shape[0])


##
## === WISHART VARIATES (BARTLETT CONSTRUCTION)
##


def _bartlett_factors(
    stream: RngStream,
    p: int,
    df: int,
    size: int,
) -> numpy.ndarray:
    ## A is lower triangular: sqrt(chi2_{df-i}) on the diagonal (i = 0..p-1), standard normals below it
    generator = stream.generator
    chi2_dfs = df - numpy.arange(p)
    diag = numpy.sqrt(generator.chisquare(chi2_dfs, size=(size, p)))
    rows, cols = numpy.tril_indices(p, k=-1)
    below = generator.standard_normal((size, rows.shape[0]))
    factors = numpy.zeros((size, p, p))
    factors[:, numpy.arange(p), numpy.arange(p)] = diag
    factors[:, rows, cols] = below
    return factors


def sample_wishart_batch(
    stream: RngStream,
    sigma: numpy.ndarray,
    df: int,
    size: int,
) -> numpy.ndarray:
    """
    `size` independent draws from W(sigma, df), returned with shape (size, p, p).
    """
    sigma = linalg.as_spd(sigma, "sigma")
    p = sigma.shape[0]
    if int(df) != df: raise DfTooSmall(f"`df` must be an integer, but got {df}.")
    df = int(df)
    if df < p: raise DfTooSmall(f"Wishart degrees of freedom must be at least p = {p}, but got df = {df}.")
    if size < 1: raise DomainError(f"`size` must be at least 1, but got {size}.")
    lower = linalg.cholesky(sigma)
    factors = lower @ _bartlett_factors(stream, p, df, size)
    draws = factors @ numpy.swapaxes(factors, -1, -2)
    return 0.5 * (draws + numpy.swapaxes(draws, -1, -2))


def sample_wishart(
    stream: RngStream,
    sigma: numpy.ndarray,
    df: int,
) -> numpy.ndarray:
    return sample_wishart_batch(stream, sigma, df, size=1)[0]


## } MODULE
