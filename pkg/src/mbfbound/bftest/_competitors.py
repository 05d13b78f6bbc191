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
from mbfbound.bftest._data import SampleSummary, TwoSampleData, summarize
from mbfbound.errors import DegenerateStatistic

##
## === SHARED PIECES
##
## With S~_i = S_i / n_i, S~ = S~_1 + S~_2 and d = X-bar - Y-bar. Every function below takes stacks with
## leading batch axes, so one code path serves single datasets and simulation blocks.
##


class ScaledCovariances(NamedTuple):
    d: numpy.ndarray
    s1t: numpy.ndarray
    s2t: numpy.ndarray
    total: numpy.ndarray
    m: int
    n: int


def scaled_covariances(
    summary: SampleSummary,
    m: int,
    n: int,
) -> ScaledCovariances:
    s1t = summary.s1 / m
    s2t = summary.s2 / n
    return ScaledCovariances(d=summary.mean_diff, s1t=s1t, s2t=s2t, total=s1t + s2t, m=m, n=n)


def _trace(
    a: numpy.ndarray,
) -> numpy.ndarray:
    return numpy.trace(a, axis1=-2, axis2=-1)


def _trace_sq(
    a: numpy.ndarray,
) -> numpy.ndarray:
    return numpy.einsum("...ij,...ji->...", a, a)


def _ratios(
    sc: ScaledCovariances,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    ## S~^{-1} S~_i is similar to (the transpose of) S~_i S~^{-1}, so both traces below agree
    return numpy.linalg.solve(sc.total, sc.s1t), numpy.linalg.solve(sc.total, sc.s2t)


##
## === APPROXIMATE DEGREES OF FREEDOM
##


def yao_nu_batch(
    sc: ScaledCovariances,
) -> numpy.ndarray:
    """
    Yao: 1/nu = sum_i (n_i - 1)^{-1} [(d^T S~^{-1} S~_i S~^{-1} d) / (d^T S~^{-1} d)]^2. NaN where d^T S~^{-1} d = 0.
    """
    u = numpy.linalg.solve(sc.total, sc.d[..., None])[..., 0]
    denom = numpy.einsum("...i,...i->...", sc.d, u)
    share1 = numpy.einsum("...i,...ij,...j->...", u, sc.s1t, u)
    share2 = numpy.einsum("...i,...ij,...j->...", u, sc.s2t, u)
    with numpy.errstate(divide="ignore", invalid="ignore"):
        inv_nu = (share1 / denom) ** 2 / (sc.m - 1) + (share2 / denom) ** 2 / (sc.n - 1)
        nu = 1.0 / inv_nu
    return numpy.where(denom > 0, nu, numpy.nan)


class JohansenParams(NamedTuple):
    c: float | numpy.ndarray
    nu: float | numpy.ndarray


def johansen_batch(
    sc: ScaledCovariances,
) -> JohansenParams:
    """
    Johansen: A = sum_i (2(n_i - 1))^{-1} [tr{(I - S~_i S~^{-1})^2} + (tr{I - S~_i S~^{-1}})^2],
    c = p + 2A - 6A / (p(p - 1) + 2), nu = p(p + 2) / (3A).
    """
    p = sc.d.shape[-1]
    identity = numpy.eye(p)
    a_sum = numpy.zeros(sc.d.shape[:-1])
    for ratio, size in zip(_ratios(sc), (sc.m, sc.n)):
        resid = identity - ratio
        a_sum = a_sum + (_trace_sq(resid) + _trace(resid) ** 2) / (2.0 * (size - 1))
    c = p + 2.0 * a_sum - 6.0 * a_sum / (p * (p - 1) + 2.0)
    with numpy.errstate(divide="ignore"):
        nu = p * (p + 2.0) / (3.0 * a_sum)
    return JohansenParams(c=c, nu=nu)


def nvdm_nu_batch(
    sc: ScaledCovariances,
) -> numpy.ndarray:
    """
    Nel-van der Merwe: nu = [tr{S~^2} + (tr S~)^2] / sum_i (n_i - 1)^{-1} [tr{S~_i^2} + (tr S~_i)^2].
    """
    numer = _trace_sq(sc.total) + _trace(sc.total) ** 2
    denom = (
        (_trace_sq(sc.s1t) + _trace(sc.s1t) ** 2) / (sc.m - 1)
        + (_trace_sq(sc.s2t) + _trace(sc.s2t) ** 2) / (sc.n - 1)
    )
    return numer / denom


def ky_nu_batch(
    sc: ScaledCovariances,
) -> numpy.ndarray:
    """
    Krishnamoorthy-Yu: nu = (p + p^2) / sum_i (n_i - 1)^{-1} [tr{(S~_i S~^{-1})^2} + (tr{S~_i S~^{-1}})^2].
    """
    p = sc.d.shape[-1]
    ratio1, ratio2 = _ratios(sc)
    denom = (
        (_trace_sq(ratio1) + _trace(ratio1) ** 2) / (sc.m - 1)
        + (_trace_sq(ratio2) + _trace(ratio2) ** 2) / (sc.n - 1)
    )
    return (p + p * p) / denom


##
## === SINGLE-DATASET ENTRY POINTS
##


def _scaled(
    data: TwoSampleData,
) -> ScaledCovariances:
    return scaled_covariances(summarize(data), data.m, data.n)


def yao_df(
    data: TwoSampleData,
) -> float:
    nu = float(yao_nu_batch(_scaled(data)))
    if numpy.isnan(nu):
        raise DegenerateStatistic("Yao's degrees of freedom are undefined when the sample means coincide.")
    return nu


def johansen_params(
    data: TwoSampleData,
) -> JohansenParams:
    params = johansen_batch(_scaled(data))
    return JohansenParams(c=float(params.c), nu=float(params.nu))


def nvdm_df(
    data: TwoSampleData,
) -> float:
    return float(nvdm_nu_batch(_scaled(data)))


def ky_df(
    data: TwoSampleData,
) -> float:
    return float(ky_nu_batch(_scaled(data)))


## } MODULE
