## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from typing import NamedTuple

## third-party
import numpy

## local
from mbfbound import dists
from mbfbound.bftest._statistic import check_dimensions

##
## === F BOUNDS ON THE NULL DISTRIBUTION OF T^2
##


class ScaledF(NamedTuple):
    """
    The law of `scale * F_{df1, df2}`, so that its CDF at t is F_{df1, df2}(t / scale).
    """
    df1: float
    df2: float
    scale: float

    def cdf(
        self,
        t: float | numpy.ndarray,
    ) -> float | numpy.ndarray:
        return dists.f_cdf(numpy.asarray(t, dtype=numpy.float64) / self.scale, dists.FParams(self.df1, self.df2))


class BoundCdfs(NamedTuple):
    lower: float | numpy.ndarray
    upper: float | numpy.ndarray


def lower_bound_law(
    p: int,
    m: int,
    n: int,
) -> ScaledF:
    """
    Worst case (smallest CDF): F_{p, min(m,n) - p} at (min(m,n) - p) t / (p (min(m,n) - 1)).
    """
    check_dimensions(p, m, n)
    nu = min(m, n)
    return ScaledF(df1=p, df2=nu - p, scale=p * (nu - 1) / (nu - p))


def upper_bound_law(
    p: int,
    m: int,
    n: int,
) -> ScaledF:
    """
    Best case (largest CDF): F_{p, m+n-p-1} at (m + n - p - 1) t / (p (m + n - 2)).
    """
    check_dimensions(p, m, n)
    return ScaledF(df1=p, df2=m + n - p - 1, scale=p * (m + n - 2) / (m + n - p - 1))


def bound_cdfs(
    t: float | numpy.ndarray,
    p: int,
    m: int,
    n: int,
) -> BoundCdfs:
    """
    Lower and upper bounds on P(T^2 <= t) under the null with proportional covariances. The upper bound is a
    diagnostic only; test decisions use the lower bound.
    """
    return BoundCdfs(
        lower=lower_bound_law(p, m, n).cdf(t),
        upper=upper_bound_law(p, m, n).cdf(t),
    )


def fbound_pvalue(
    t2: float | numpy.ndarray,
    p: int,
    m: int,
    n: int,
) -> float | numpy.ndarray:
    """
    Conservative p-value 1 - F_{p, min(m,n) - p}((min(m,n) - p) T^2 / (p (min(m,n) - 1))).
    """
    return 1.0 - bound_cdfs(t2, p, m, n).lower


def hsu_bounds(
    t: float | numpy.ndarray,
    m: int,
    n: int,
) -> BoundCdfs:
    """
    Univariate bounds on P(|T| <= t) for the Behrens-Fisher T: between the two-sided t_{min(m,n)-1} and
    t_{m+n-2} probabilities. Equal to `bound_cdfs(t^2, 1, m, n)`.
    """
    t = numpy.asarray(t, dtype=numpy.float64)
    return bound_cdfs(t * t if t.ndim else float(t * t), 1, m, n)


## } MODULE
