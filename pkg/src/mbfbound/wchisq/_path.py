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
from mbfbound import linalg
from mbfbound.errors import DegenerateSpectrum, DimensionMismatch, DomainError
from mbfbound.wchisq._cdf import wchisq_cdf
from mbfbound.wchisq._derivs import directional_second_derivative, gradient

## eigenvalues closer than this fraction of the trace count as repeated
DEGENERACY_RTOL = 1e-6

##
## === TYPES
##


@dataclass(frozen=True, eq=False)
class LambdaPath:
    """
    The affine matrix path M(lambda) = lambda M1 + (1 - lambda) M2 together with the threshold t of
    h(lambda) = P(Z^T M(lambda)^{-1} Z <= t).
    """
    m1: numpy.ndarray
    m2: numpy.ndarray
    t: float

    def __post_init__(self):
        m1 = linalg.as_spd(self.m1, "m1")
        m2 = linalg.as_spd(self.m2, "m2")
        if m1.shape != m2.shape:
            raise DimensionMismatch(f"`m1` and `m2` must share a dimension, but got {m1.shape} and {m2.shape}.")
        if not self.t > 0:
            raise DomainError(f"`t` must be positive, but got t = {self.t}.")
        object.__setattr__(self, "m1", m1)
        object.__setattr__(self, "m2", m2)
        object.__setattr__(self, "t", float(self.t))

    @property
    def p(self) -> int:
        return int(self.m1.shape[0])

    def matrix(
        self,
        lam: float,
    ) -> numpy.ndarray:
        _check_lambda(lam)
        return linalg.mat_add_scaled(self.m1, lam, self.m2, 1.0 - lam)

    def eigen(
        self,
        lam: float,
    ) -> linalg.EigenDecomp:
        return linalg.sym_eigen(self.matrix(lam))


def _check_lambda(
    lam: float,
) -> None:
    if not (0.0 <= lam <= 1.0):
        raise DomainError(f"`lambda` must lie in [0, 1], but got {lam}.")


##
## === ALONG THE PATH
##


def h_lambda(
    lam: float,
    path: LambdaPath,
) -> float:
    """
    h(lambda) = F(t; d(lambda)) where d(lambda) are the eigenvalues of M(lambda): rotating Z by the eigenvectors
    leaves its law unchanged, so the quadratic form is a weighted chi-square sum with weights d_i.
    """
    return wchisq_cdf(path.t, path.eigen(lam).values)


def eigen_cumsum_path(
    path: LambdaPath,
    lam: float,
) -> numpy.ndarray:
    """
    Cumulative sums of eigenvalues from the bottom, c_i = sum_{j >= i} d_j(lambda); c_1 is the trace.
    """
    values = path.eigen(lam).values
    return numpy.cumsum(values[::-1])[::-1]


def min_relative_gap(
    values: numpy.ndarray,
) -> float:
    if values.shape[0] < 2: return numpy.inf
    return float(numpy.min(-numpy.diff(values)) / numpy.sum(values))


@dataclass(frozen=True)
class EigenDerivatives:
    values: numpy.ndarray
    first: numpy.ndarray
    second: numpy.ndarray


def eigen_derivatives(
    path: LambdaPath,
    lam: float,
) -> EigenDerivatives:
    """
    Derivatives of the (distinct) eigenvalues along the path. With P = Gamma^T (M1 - M2) Gamma:
        d_i' = P_ii,    d_i'' = 2 sum_{k != i} P_ik^2 / (d_i - d_k).
    """
    decomp = path.eigen(lam)
    if min_relative_gap(decomp.values) < DEGENERACY_RTOL:
        raise DegenerateSpectrum(f"Eigenvalues of M({lam}) are repeated to within {DEGENERACY_RTOL} of the trace.")
    projected = decomp.vectors.T @ (path.m1 - path.m2) @ decomp.vectors
    gaps = decomp.values[:, None] - decomp.values[None, :]
    numpy.fill_diagonal(gaps, numpy.inf)
    second = 2.0 * numpy.sum(projected**2 / gaps, axis=1)
    return EigenDerivatives(
        values=decomp.values,
        first=numpy.diag(projected).copy(),
        second=second,
    )


def h_second_derivative(
    lam: float,
    path: LambdaPath,
) -> float:
    """
    h''(lambda) by the chain rule: d'^T H d' + sum_i f_i d_i'', where H is the Hessian of F(t; theta) in theta
    (mixed partials included) and f_i its gradient, both at theta = d(lambda).
    """
    derivs = eigen_derivatives(path, lam)
    curvature = directional_second_derivative(path.t, derivs.values, derivs.first)
    return float(curvature + gradient(path.t, derivs.values) @ derivs.second)


## } MODULE
