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
from scipy import optimize, special

## local
from mbfbound.errors import DomainError

##
## === TYPES
##


@dataclass(frozen=True)
class FParams:
    """
    Degrees of freedom (d1, d2) of an F distribution; real values are allowed.
    """
    d1: float
    d2: float

    def __post_init__(self):
        if not (self.d1 > 0 and self.d2 > 0):
            raise DomainError(f"F degrees of freedom must be positive, but got d1 = {self.d1}, d2 = {self.d2}.")


##
## === HELPERS
##


def _to_output(
    values: numpy.ndarray,
) -> float | numpy.ndarray:
    values = numpy.asarray(values, dtype=numpy.float64)
    return float(values) if values.ndim == 0 else values


def _check_nonnegative(
    x: numpy.ndarray,
    name: str,
) -> numpy.ndarray:
    x = numpy.asarray(x, dtype=numpy.float64)
    if numpy.any(numpy.isnan(x)) or numpy.any(x < 0):
        raise DomainError(f"`{name}` must be non-negative, but got {x}.")
    return x


##
## === NORMAL
##


def normal_cdf(
    x: float | numpy.ndarray,
) -> float | numpy.ndarray:
    return _to_output(special.ndtr(x))


def normal_pdf(
    x: float | numpy.ndarray,
) -> float | numpy.ndarray:
    x = numpy.asarray(x, dtype=numpy.float64)
    return _to_output(numpy.exp(-0.5 * x * x) / numpy.sqrt(2.0 * numpy.pi))


##
## === CHI-SQUARE
##


def chisq_cdf(
    t: float | numpy.ndarray,
    k: float,
) -> float | numpy.ndarray:
    """
    P(chi2_k <= t) as the regularised lower incomplete gamma function P(k/2, t/2).
    """
    t = _check_nonnegative(t, "t")
    if not k > 0: raise DomainError(f"Chi-square degrees of freedom must be positive, but got k = {k}.")
    return _to_output(special.gammainc(0.5 * k, 0.5 * t))


##
## === F DISTRIBUTION
##


def f_cdf(
    x: float | numpy.ndarray,
    fp: FParams,
) -> float | numpy.ndarray:
    """
    P(F_{d1,d2} <= x) through the regularised incomplete beta function I_z(d1/2, d2/2), z = d1 x / (d1 x + d2).
    """
    x = _check_nonnegative(x, "x")
    with numpy.errstate(invalid="ignore"):
        z = numpy.where(numpy.isinf(x), 1.0, fp.d1 * x / (fp.d1 * x + fp.d2))
    return _to_output(special.betainc(0.5 * fp.d1, 0.5 * fp.d2, z))


def f_sf(
    x: float | numpy.ndarray,
    fp: FParams,
) -> float | numpy.ndarray:
    """
    Upper tail P(F_{d1,d2} > x), evaluated on the complementary beta argument to keep precision for large x.
    """
    x = _check_nonnegative(x, "x")
    with numpy.errstate(divide="ignore", invalid="ignore"):
        z = numpy.where(numpy.isinf(x), 0.0, fp.d2 / (fp.d2 + fp.d1 * x))
    return _to_output(special.betainc(0.5 * fp.d2, 0.5 * fp.d1, z))


def f_sf_array(
    x: numpy.ndarray,
    d1: numpy.ndarray,
    d2: numpy.ndarray,
) -> numpy.ndarray:
    """
    Elementwise upper tail P(F_{d1,d2} > x) for arrays of real degrees of freedom; entries with a non-positive
    degree of freedom come back as NaN instead of raising.
    """
    x, d1, d2 = numpy.broadcast_arrays(
        numpy.asarray(x, dtype=numpy.float64),
        numpy.asarray(d1, dtype=numpy.float64),
        numpy.asarray(d2, dtype=numpy.float64),
    )
    valid = (d1 > 0) & (d2 > 0) & (x >= 0)
    with numpy.errstate(divide="ignore", invalid="ignore"):
        z = numpy.where(numpy.isinf(x), 0.0, d2 / (d2 + d1 * x))
        out = special.betainc(0.5 * d2, 0.5 * d1, z)
    return numpy.where(valid, out, numpy.nan)


def f_pdf(
    x: float,
    fp: FParams,
) -> float:
    if x <= 0: return 0.0
    log_pdf = (
        0.5 * fp.d1 * numpy.log(fp.d1 * x) + 0.5 * fp.d2 * numpy.log(fp.d2)
        - 0.5 * (fp.d1 + fp.d2) * numpy.log(fp.d1 * x + fp.d2)
        - numpy.log(x) - special.betaln(0.5 * fp.d1, 0.5 * fp.d2)
    )
    return float(numpy.exp(log_pdf))


def f_quantile(
    q: float,
    fp: FParams,
    max_doublings: int = 2000,
) -> float:
    """
    Inverse of `f_cdf`: bracket the root by doubling, solve with Brent's method, then take Newton steps on the
    density to polish the last few digits.
    """
    if not (0.0 < q < 1.0): raise DomainError(f"Quantile level must lie in (0, 1), but got q = {q}.")
    upper = 1.0
    for _ in range(max_doublings):
        if f_cdf(upper, fp) >= q: break
        upper *= 2.0
    else:
        raise DomainError(f"Could not bracket the {q}-quantile of F({fp.d1}, {fp.d2}).")
    lower = 0.0 if upper == 1.0 else 0.5 * upper
    root = optimize.brentq(
        lambda x: f_cdf(x, fp) - q,
        lower,
        upper,
        xtol=1e-15,
        rtol=4 * numpy.finfo(float).eps,
        maxiter=500,
    )
    for _ in range(3):
        density = f_pdf(root, fp)
        if density <= 0: break
        step = (f_cdf(root, fp) - q) / density
        candidate = root - step
        if not (lower <= candidate <= upper) or step == 0: break
        root = candidate
    return float(root)


## } MODULE
