## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from collections.abc import Callable
from dataclasses import dataclass

## third-party
import numpy
from scipy import integrate

## local
from mbfbound.errors import DomainError, StepUnderflow
from mbfbound.wchisq._cdf import WeightVector, as_weights, wchisq_cdf, wchisq_cdf_p2

## relative finite-difference steps for the first and second derivative
FIRST_STEP = 1e-4
SECOND_STEP = 1e-3

BACKENDS = ("numeric", "analytic")

##
## === TWO WEIGHTS: ANALYTIC DERIVATIVE INTEGRALS
##


def _angular_integral(
    func: Callable[[float], float],
) -> float:
    value, _ = integrate.quad(func, 0.0, 0.5 * numpy.pi, epsabs=1e-15, epsrel=1e-13, limit=200)
    return float(value)


def _check_pair(
    t: float,
    a: float,
    b: float,
) -> None:
    if not t > 0: raise DomainError(f"`t` must be positive, but got t = {t}.")
    WeightVector(numpy.array([a, b]))


def dF12_dtheta1(
    t: float,
    a: float,
    b: float,
) -> float:
    """
    dF_12/dtheta_1 at (theta_1, theta_2) = (a, b):
        (t / pi) sqrt(b / a) int_0^{pi/2} cos^2(rho) exp(-t (a cos^2 rho + b sin^2 rho) / 2) d rho.
    """
    _check_pair(t, a, b)
    integral = _angular_integral(
        lambda rho: numpy.cos(rho) ** 2 * numpy.exp(-0.5 * t * (a * numpy.cos(rho) ** 2 + b * numpy.sin(rho) ** 2)),
    )
    return float(t / numpy.pi * numpy.sqrt(b / a) * integral)


def d2F12_dtheta1(
    t: float,
    a: float,
    b: float,
) -> float:
    """
    d^2F_12/dtheta_1^2 at (theta_1, theta_2) = (a, b):
        -(sqrt(b) / (2 pi)) int_0^{pi/2} (t cos^2 rho a^{-3/2} + t^2 cos^4 rho a^{-1/2}) exp(-t (a cos^2 rho + b sin^2 rho) / 2) d rho.
    """
    _check_pair(t, a, b)

    def integrand(rho):
        cos_sq = numpy.cos(rho) ** 2
        weight = t * cos_sq * a ** -1.5 + t * t * cos_sq * cos_sq * a ** -0.5
        return weight * numpy.exp(-0.5 * t * (a * cos_sq + b * numpy.sin(rho) ** 2))

    return float(-numpy.sqrt(b) / (2.0 * numpy.pi) * _angular_integral(integrand))


@dataclass(frozen=True)
class AppendixIntegrals:
    """
    h(a, b) = dF_12/dtheta_1 at (a, b), its swap h(b, a), and the closed-form lower bound on their gap.
    """
    h_ab: float
    h_ba: float
    lower_bound: float

    @property
    def gap(self) -> float:
        return self.h_ab - self.h_ba


def appendix_integrals(
    a: float,
    b: float,
    t: float,
) -> AppendixIntegrals:
    """
    For 0 < a < b the gap h(a, b) - h(b, a) is bounded below by
        (b - a) t^2 / (8 pi) exp(-(a + b) t / 4) int_0^{pi/2} sin^2(2 rho) exp((b - a) t cos(2 rho) / 4) d rho > 0.
    """
    _check_pair(t, a, b)
    bound_integral = _angular_integral(
        lambda rho: numpy.sin(2.0 * rho) ** 2 * numpy.exp(0.25 * (b - a) * t * numpy.cos(2.0 * rho)),
    )
    lower_bound = (b - a) * t * t / (8.0 * numpy.pi) * numpy.exp(-0.25 * (a + b) * t) * bound_integral
    return AppendixIntegrals(
        h_ab=dF12_dtheta1(t, a, b),
        h_ba=dF12_dtheta1(t, b, a),
        lower_bound=float(lower_bound),
    )


##
## === FINITE DIFFERENCES
##


def _cdf_for(
    weights: WeightVector,
    t: float,
) -> Callable[[WeightVector], float]:
    if weights.p == 2:
        return lambda w: wchisq_cdf_p2(t, w.theta[0], w.theta[1])
    return lambda w: wchisq_cdf(t, w)


def _step(
    weights: WeightVector,
    index: int,
    relative_step: float,
) -> float:
    theta_i = float(weights.theta[index])
    step = relative_step * theta_i
    if not numpy.isfinite(step) or step == 0.0 or theta_i + 0.5 * step == theta_i or theta_i - step <= 0.0:
        raise StepUnderflow(f"Finite-difference step degenerates for theta[{index}] = {theta_i}.")
    return step


def _check_index(
    weights: WeightVector,
    index: int,
) -> int:
    if not (0 <= index < weights.p):
        raise IndexError(f"`i` must lie in [0, {weights.p}), but got {index}.")
    return index


def _first_difference(
    cdf: Callable[[WeightVector], float],
    weights: WeightVector,
    index: int,
    step: float,
) -> float:
    theta_i = weights.theta[index]
    upper = cdf(weights.replace(index, theta_i + step))
    lower = cdf(weights.replace(index, theta_i - step))
    return (upper - lower) / (2.0 * step)


def _second_difference(
    cdf: Callable[[WeightVector], float],
    weights: WeightVector,
    index: int,
    step: float,
    centre: float,
) -> float:
    theta_i = weights.theta[index]
    upper = cdf(weights.replace(index, theta_i + step))
    lower = cdf(weights.replace(index, theta_i - step))
    return (upper - 2.0 * centre + lower) / (step * step)


##
## === PARTIAL DERIVATIVES IN THE WEIGHTS
##


def _analytic_pair(
    weights: WeightVector,
    index: int,
) -> tuple[float, float]:
    if weights.p != 2:
        raise DomainError(f"The analytic backend only exists for two weights, but got p = {weights.p}.")
    own = float(weights.theta[index])
    other = float(weights.theta[1 - index])
    return own, other


def dF_dtheta(
    t: float,
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
    i: int,
    backend: str = "numeric",
) -> float:
    """
    f_i(t; theta) = dF(t; theta)/dtheta_i.

    backend="numeric" uses a central difference with step 1e-4 * theta_i, Richardson-extrapolated once; the
    two-weight case differences the direct integral, otherwise the Imhof inversion. backend="analytic"
    evaluates the closed derivative integral and needs p = 2. The value is returned as estimated, never clamped.
    """
    weights = as_weights(w)
    index = _check_index(weights, i)
    if not t > 0: raise DomainError(f"`t` must be positive, but got t = {t}.")
    if backend == "analytic":
        own, other = _analytic_pair(weights, index)
        return dF12_dtheta1(t, own, other)
    if backend != "numeric": raise DomainError(f"Unsupported backend: `{backend}`.")
    cdf = _cdf_for(weights, float(t))
    step = _step(weights, index, FIRST_STEP)
    coarse = _first_difference(cdf, weights, index, step)
    fine = _first_difference(cdf, weights, index, 0.5 * step)
    return float((4.0 * fine - coarse) / 3.0)


def d2F_dtheta2(
    t: float,
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
    i: int,
    backend: str = "numeric",
) -> float:
    """
    g_i(t; theta) = d^2F(t; theta)/dtheta_i^2, by a second central difference with step 1e-3 * theta_i and one
    Richardson step, or by the analytic two-weight integral.
    """
    weights = as_weights(w)
    index = _check_index(weights, i)
    if not t > 0: raise DomainError(f"`t` must be positive, but got t = {t}.")
    if backend == "analytic":
        own, other = _analytic_pair(weights, index)
        return d2F12_dtheta1(t, own, other)
    if backend != "numeric": raise DomainError(f"Unsupported backend: `{backend}`.")
    cdf = _cdf_for(weights, float(t))
    step = _step(weights, index, SECOND_STEP)
    centre = cdf(weights)
    coarse = _second_difference(cdf, weights, index, step, centre)
    fine = _second_difference(cdf, weights, index, 0.5 * step, centre)
    return float((4.0 * fine - coarse) / 3.0)


def gradient(
    t: float,
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
) -> numpy.ndarray:
    weights = as_weights(w)
    return numpy.array([dF_dtheta(t, weights, index) for index in range(weights.p)])


def directional_second_derivative(
    t: float,
    w: "WeightVector | numpy.ndarray | list[float] | tuple[float, ...]",
    direction: numpy.ndarray,
    relative_step: float = SECOND_STEP,
) -> float:
    """
    v^T H v for the Hessian H of F(t; theta) in theta, by a second difference along v (mixed partials included).
    """
    weights = as_weights(w)
    direction = numpy.asarray(direction, dtype=numpy.float64).reshape(-1)
    norm = float(numpy.max(numpy.abs(direction)))
    if norm == 0.0: return 0.0
    cdf = _cdf_for(weights, float(t))
    step = relative_step * float(weights.theta.min()) / norm

    def second(h):
        upper = cdf(WeightVector(weights.theta + h * direction))
        lower = cdf(WeightVector(weights.theta - h * direction))
        return (upper - 2.0 * centre + lower) / (h * h)

    centre = cdf(weights)
    return float((4.0 * second(0.5 * step) - second(step)) / 3.0)


## } MODULE
