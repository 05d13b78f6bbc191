## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
import logging
import warnings
from dataclasses import dataclass

## third-party
import numpy
from scipy import integrate

## local
from mbfbound import dists
from mbfbound.errors import DomainError, NonPositiveWeight

log = logging.getLogger(__name__)

## absolute accuracy requested from each quadrature call; derivatives are taken by differencing these values
QUAD_EPSABS = 1e-14
QUAD_EPSREL = 1e-12
## an estimate above this is reported
QUAD_WARN_ABSERR = 1e-9

##
## === TYPES
##


@dataclass(frozen=True, eq=False)
class WeightVector:
    """
    Positive weights theta = (theta_1, ..., theta_p) of T_theta = sum_i Z_i^2 / theta_i.
    """
    theta: numpy.ndarray

    def __post_init__(self):
        theta = numpy.array(self.theta, dtype=numpy.float64).reshape(-1)
        if theta.shape[0] < 1:
            raise NonPositiveWeight("`theta` must hold at least one weight.")
        if not numpy.all(numpy.isfinite(theta)) or numpy.any(theta <= 0):
            raise NonPositiveWeight(f"All weights must be positive and finite, but got theta = {theta}.")
        theta.flags.writeable = False
        object.__setattr__(self, "theta", theta)

    @property
    def p(self) -> int:
        return int(self.theta.shape[0])

    def replace(
        self,
        index: int,
        value: float,
    ) -> "WeightVector":
        theta = self.theta.copy()
        theta[index] = value
        return WeightVector(theta)

    def scaled(
        self,
        factor: float,
    ) -> "WeightVector":
        return WeightVector(factor * self.theta)


def as_weights(
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(numpy.asarray(w, dtype=numpy.float64))


def _check_threshold(
    t: float,
) -> float:
    t = float(t)
    if numpy.isnan(t) or t < 0:
        raise DomainError(f"`t` must be non-negative, but got t = {t}.")
    return t


def _quad(
    func,
    lower: float,
    upper: float,
    **kwargs,
) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=integrate.IntegrationWarning)
        value, abserr = integrate.quad(func, lower, upper, **kwargs)[:2]
    return value, abserr


##
## === GENERAL WEIGHTS: CHARACTERISTIC-FUNCTION INVERSION
##


def wchisq_cdf(
    t: float,
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
) -> float:
    """
    Distribution function F(t; theta) = P(sum_i Z_i^2 / theta_i <= t) for any number of positive weights.

    Uses Imhof's inversion formula
        F(t) = 1/2 - (1/pi) int_0^inf sin(eps(u)) / (u rho(u)) du,
        eps(u) = (1/2) sum_i arctan(lam_i u) - t u / 2,   rho(u) = prod_i (1 + lam_i^2 u^2)^(1/4),
    with lam_i = 1 / theta_i. The integral is split at a point `a`: [0, a] is integrated directly, and on
    [a, inf) the oscillating factor is peeled off so QUADPACK's Fourier-integral routine handles the tail
    without truncation.
    """
    weights = as_weights(w)
    t = _check_threshold(t)
    if t == 0.0: return 0.0
    if numpy.isinf(t): return 1.0
    lam = 1.0 / weights.theta
    freq = 0.5 * t

    def phase(u):
        return 0.5 * numpy.sum(numpy.arctan(lam * u))

    def envelope(u):
        return u * numpy.exp(0.25 * numpy.sum(numpy.log1p((lam * u) ** 2)))

    def integrand_head(u):
        return numpy.sin(phase(u) - freq * u) / envelope(u)

    def integrand_tail_cos(u):
        return numpy.sin(phase(u)) / envelope(u)

    def integrand_tail_sin(u):
        return numpy.cos(phase(u)) / envelope(u)

    split = min(2.0 * numpy.pi / freq, 50.0 / lam.min())
    head, err_head = _quad(integrand_head, 0.0, split, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=500)
    tail_cos, err_cos = _quad(integrand_tail_cos, split, numpy.inf, weight="cos", wvar=freq, epsabs=QUAD_EPSABS, limlst=200)
    tail_sin, err_sin = _quad(integrand_tail_sin, split, numpy.inf, weight="sin", wvar=freq, epsabs=QUAD_EPSABS, limlst=200)
    abserr = err_head + err_cos + err_sin
    if abserr > QUAD_WARN_ABSERR:
        log.warning(f"Imhof quadrature error estimate {abserr:.2e} exceeds {QUAD_WARN_ABSERR:.0e} (t = {t}, theta = {weights.theta}).")
    value = 0.5 - (head + tail_cos - tail_sin) / numpy.pi
    return float(min(1.0, max(0.0, value)))


##
## === TWO WEIGHTS: DIRECT INTEGRAL
##


def wchisq_cdf_p2(
    t: float,
    theta1: float,
    theta2: float,
) -> float:
    """
    F_12(t; theta1, theta2) from conditioning on the second component:
        F_12 = 4 int_0^{sqrt(theta2 t)} Phi(sqrt(theta1 (t - s^2/theta2))) phi(s) ds - 2 Phi(sqrt(theta2 t)) + 1.
    The substitution s = sqrt(theta2 t) sin(rho) removes the square-root endpoint behaviour, leaving a smooth
    integrand on [0, pi/2].
    """
    WeightVector(numpy.array([theta1, theta2]))
    t = _check_threshold(t)
    if t == 0.0: return 0.0
    if numpy.isinf(t): return 1.0
    root1 = numpy.sqrt(theta1 * t)
    root2 = numpy.sqrt(theta2 * t)

    def integrand(rho):
        cos_rho = numpy.cos(rho)
        return dists.normal_cdf(root1 * cos_rho) * dists.normal_pdf(root2 * numpy.sin(rho)) * root2 * cos_rho

    integral, _ = _quad(integrand, 0.0, 0.5 * numpy.pi, epsabs=QUAD_EPSABS, epsrel=1e-13, limit=200)
    value = 4.0 * integral - 2.0 * dists.normal_cdf(root2) + 1.0
    return float(min(1.0, max(0.0, value)))


## } MODULE
