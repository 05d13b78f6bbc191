## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import logging
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum

## third-party
import numpy

## local
from mbfbound import dists
from mbfbound.bftest import _bounds, _competitors
from mbfbound.bftest._data import SampleSummary, TwoSampleData, summarize
from mbfbound.bftest._statistic import check_dimensions, t2_statistic_batch
from mbfbound.errors import DomainError

log = logging.getLogger(__name__)

##
## === TYPES
##


class Method(str, Enum):
    YAO = "Yao"
    JOHANSEN = "Johansen"
    NEL_VAN_DER_MERWE = "NelVanDerMerwe"
    KRISHNAMOORTHY_YU = "KrishnamoorthyYu"
    FBOUND = "FBound"

    @classmethod
    def parse(
        cls,
        label: str,
    ) -> "Method":
        lookup = {method.value.lower(): method for method in cls}
        lookup.update({"nvdm": cls.NEL_VAN_DER_MERWE, "ky": cls.KRISHNAMOORTHY_YU})
        try:
            return lookup[label.strip().lower()]
        except KeyError:
            valid = ", ".join(method.value for method in cls)
            raise DomainError(f"Unknown method `{label}`. Valid methods: {valid}.") from None


## plotting and reporting order
ALL_METHODS: tuple[Method, ...] = tuple(Method)


def _finite_or_none(
    value: float | None,
) -> float | None:
    if value is None or not numpy.isfinite(value): return None
    return float(value)


@dataclass(frozen=True)
class DfInfo:
    """
    Reference law of a method: the p-value is P(F_{df1, df2} > T^2 / scale). `nu` is the approximate
    degrees of freedom for the competitor methods and None for the F bound. Undefined entries (Yao at
    T^2 = 0) are NaN here and None in `to_dict`.
    """
    df1: float
    df2: float
    scale: float
    nu: float | None = None

    def to_dict(self) -> dict[str, float | None]:
        return {
            "df1": _finite_or_none(self.df1),
            "df2": _finite_or_none(self.df2),
            "scale": _finite_or_none(self.scale),
            "nu": _finite_or_none(self.nu),
        }


@dataclass(frozen=True)
class TestResult:
    method: Method
    statistic: float
    df_info: DfInfo
    p_value: float

    def to_dict(self) -> dict[str, object]:
        return {
            "method": self.method.value,
            "statistic": self.statistic,
            "df_info": self.df_info.to_dict(),
            "p_value": self.p_value,
        }


##
## === REFERENCE LAWS
##


def _nu_based_df(
    p: int,
    nu: numpy.ndarray,
) -> tuple[numpy.ndarray, numpy.ndarray]:
    ## T^2 (nu - p + 1) / (nu p) ~ F_{p, nu - p + 1}
    df2 = nu - p + 1.0
    return df2, nu * p / df2


def _df_arrays(
    method: Method,
    summary: SampleSummary,
    m: int,
    n: int,
) -> tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]:
    """
    (df2, scale, nu) over the stack of summaries.
    """
    p = summary.mean_diff.shape[-1]
    if method is Method.FBOUND:
        law = _bounds.lower_bound_law(p, m, n)
        shape = summary.mean_diff.shape[:-1]
        return numpy.full(shape, law.df2), numpy.full(shape, law.scale), numpy.full(shape, numpy.nan)
    sc = _competitors.scaled_covariances(summary, m, n)
    if method is Method.JOHANSEN:
        params = _competitors.johansen_batch(sc)
        nu = numpy.asarray(params.nu, dtype=numpy.float64)
        return nu, numpy.asarray(params.c, dtype=numpy.float64), nu
    if method is Method.YAO:
        nu = _competitors.yao_nu_batch(sc)
    elif method is Method.NEL_VAN_DER_MERWE:
        nu = _competitors.nvdm_nu_batch(sc)
    else:
        nu = _competitors.ky_nu_batch(sc)
    nu = numpy.asarray(nu, dtype=numpy.float64)
    df2, scale = _nu_based_df(p, nu)
    return df2, scale, nu


def method_pvalues_batch(
    summary: SampleSummary,
    m: int,
    n: int,
    methods: Iterable[Method] = ALL_METHODS,
) -> dict[Method, numpy.ndarray]:
    """
    P-values of every requested method over a stack of sample summaries (leading batch axes). Stack entries
    with X-bar = Y-bar get p-value 1 under Yao's method.
    """
    p = summary.mean_diff.shape[-1]
    check_dimensions(p, m, n)
    t2 = t2_statistic_batch(summary, m, n)
    pvalues: dict[Method, numpy.ndarray] = {}
    for method in methods:
        if method is Method.FBOUND:
            pvalues[method] = numpy.asarray(_bounds.fbound_pvalue(t2, p, m, n), dtype=numpy.float64)
            continue
        df2, scale, _ = _df_arrays(method, summary, m, n)
        with numpy.errstate(divide="ignore", invalid="ignore"):
            ratio = t2 / scale
        pv = dists.f_sf_array(ratio, numpy.full_like(df2, p), df2)
        if method is Method.YAO:
            pv = numpy.where(t2 <= 0, 1.0, pv)
        pvalues[method] = numpy.clip(pv, 0.0, 1.0)
    return pvalues


##
## === SINGLE-DATASET TESTS
##


def run_test(
    data: TwoSampleData,
    method: Method | str = Method.FBOUND,
) -> TestResult:
    """
    Two-sided test of H0: mu1 = mu2 with the chosen method. Every method shares the same T^2.
    """
    if isinstance(method, str) and not isinstance(method, Method):
        method = Method.parse(method)
    summary = summarize(data)
    t2 = float(t2_statistic_batch(summary, data.m, data.n))
    p = data.p
    if method is Method.FBOUND:
        law = _bounds.lower_bound_law(p, data.m, data.n)
        df_info = DfInfo(df1=p, df2=law.df2, scale=law.scale)
        p_value = float(_bounds.fbound_pvalue(t2, p, data.m, data.n))
    elif method is Method.YAO and t2 <= 0:
        ## X-bar = Y-bar leaves Yao's nu undefined; the decision rule is continuous there
        df_info = DfInfo(df1=p, df2=numpy.nan, scale=numpy.nan, nu=numpy.nan)
        p_value = 1.0
    else:
        df2, scale, nu = (float(value) for value in _df_arrays(method, summary, data.m, data.n))
        df_info = DfInfo(df1=p, df2=df2, scale=scale, nu=nu)
        p_value = float(dists.f_sf(t2 / scale, dists.FParams(p, df2)))
    p_value = min(max(p_value, 0.0), 1.0)
    log.debug(f"{method.value}: T2 = {t2:.6g}, p-value = {p_value:.6g}")
    return TestResult(method=method, statistic=t2, df_info=df_info, p_value=p_value)


def run_tests(
    data: TwoSampleData,
    methods: Iterable[Method | str] = ALL_METHODS,
) -> list[TestResult]:
    return [run_test(data, method) for method in methods]


## } MODULE
