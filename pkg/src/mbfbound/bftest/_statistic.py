## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from dataclasses import dataclass

## third-party
import numpy

## local
from mbfbound import dists, linalg
from mbfbound.bftest._data import SampleSummary, TwoSampleData, summarize
from mbfbound.errors import DfTooSmall, DimensionTooLarge, DomainError, NonPositiveK

##
## === THE T^2 STATISTIC
##


def pooled_covariance(
    summary: SampleSummary,
    m: int,
    n: int,
) -> numpy.ndarray:
    return summary.s1 / m + summary.s2 / n


def t2_statistic(
    data: TwoSampleData,
) -> float:
    """
    T^2 = (X-bar - Y-bar)^T (S1/m + S2/n)^{-1} (X-bar - Y-bar).
    """
    summary = summarize(data)
    return linalg.quad_form_inv(summary.mean_diff, pooled_covariance(summary, data.m, data.n))


def t2_statistic_batch(
    summary: SampleSummary,
    m: int,
    n: int,
) -> numpy.ndarray:
    return linalg.quad_form_inv_batch(summary.mean_diff, pooled_covariance(summary, m, n))


##
## === CANONICAL FORM UNDER THE NULL
##


def lambda_from_k(
    k: float,
    m: int,
    n: int,
) -> float:
    """
    lambda = m^{-1} (m^{-1} + k n^{-1})^{-1} for covariance ratio k = Sigma_2 / Sigma_1.
    """
    if not k > 0: raise NonPositiveK(f"`k` must be positive, but got k = {k}.")
    return float((1.0 / m) / (1.0 / m + k / n))


def check_dimensions(
    p: int,
    m: int,
    n: int,
) -> None:
    if p < 1: raise DimensionTooLarge(f"`p` must be at least 1, but got {p}.")
    if not p < min(m, n):
        raise DimensionTooLarge(f"Need p < min(m, n), but got p = {p}, m = {m}, n = {n}.")


@dataclass(frozen=True)
class CanonicalParams:
    """
    Parameters of the null law T^2 =d Z^T {lambda (m-1)^{-1} W1 + (1 - lambda)(n-1)^{-1} W2}^{-1} Z with
    W1 ~ W(I_p, m - 1), W2 ~ W(I_p, n - 1).
    """
    lam: float
    p: int
    m: int
    n: int

    def __post_init__(self):
        if not (0.0 <= self.lam <= 1.0):
            raise DomainError(f"`lam` must lie in [0, 1], but got {self.lam}.")
        check_dimensions(self.p, self.m, self.n)

    @classmethod
    def from_k(
        cls,
        k: float,
        p: int,
        m: int,
        n: int,
    ) -> "CanonicalParams":
        return cls(lam=lambda_from_k(k, m, n), p=p, m=m, n=n)


def sample_canonical_t2_batch(
    params: CanonicalParams,
    stream: dists.RngStream,
    size: int,
) -> numpy.ndarray:
    """
    `size` independent draws of T^2 under the null, drawn in the order W1, W2, Z from `stream`.
    """
    identity = numpy.eye(params.p)
    w1 = dists.sample_wishart_batch(stream, identity, params.m - 1, size)
    w2 = dists.sample_wishart_batch(stream, identity, params.n - 1, size)
    z = stream.generator.standard_normal((size, params.p))
    mixed = (params.lam / (params.m - 1)) * w1 + ((1.0 - params.lam) / (params.n - 1)) * w2
    return linalg.quad_form_inv_batch(z, mixed)


def sample_canonical_t2(
    params: CanonicalParams,
    stream: dists.RngStream,
) -> float:
    return float(sample_canonical_t2_batch(params, stream, size=1)[0])


##
## === HOTELLING REDUCTION
##


@dataclass(frozen=True)
class HotellingTransform:
    """
    n Z^T W^{-1} Z =d scale * F_{df1, df2} for W ~ W(I_p, n): scale = n p / (n - p + 1), (df1, df2) = (p, n - p + 1).
    """
    scale: float
    df1: int
    df2: int

    def cdf(
        self,
        x: float | numpy.ndarray,
    ) -> float | numpy.ndarray:
        return dists.f_cdf(numpy.asarray(x) / self.scale, dists.FParams(self.df1, self.df2))


def hotelling_f_transform(
    p: int,
    n: int,
) -> HotellingTransform:
    if p < 1: raise DfTooSmall(f"`p` must be at least 1, but got {p}.")
    if n < p: raise DfTooSmall(f"Need n >= p for the Hotelling reduction, but got n = {n}, p = {p}.")
    return HotellingTransform(
        scale=n * p / (n - p + 1),
        df1=p,
        df2=n - p + 1,
    )


## } MODULE
