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
from mbfbound import bftest, dists
from mbfbound.errors import DomainError, LengthMismatch

MAJORIZATION_ATOL = 1e-12

##
## === MAJORIZATION
##


@dataclass(frozen=True, eq=False)
class MajorizationPair:
    """
    Candidate relation x majorized-by y between two non-negative vectors of equal length.
    """
    x: numpy.ndarray
    y: numpy.ndarray

    def __post_init__(self):
        x = numpy.asarray(self.x, dtype=numpy.float64).reshape(-1)
        y = numpy.asarray(self.y, dtype=numpy.float64).reshape(-1)
        if x.shape != y.shape:
            raise LengthMismatch(f"`x` and `y` must have equal length, but got {x.shape[0]} and {y.shape[0]}.")
        if not (numpy.all(numpy.isfinite(x)) and numpy.all(numpy.isfinite(y))):
            raise DomainError("Majorization entries must be finite.")
        if numpy.any(x < 0) or numpy.any(y < 0):
            raise DomainError("Majorization entries must be non-negative.")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def swapped(self) -> "MajorizationPair":
        return MajorizationPair(x=self.y, y=self.x)


def is_majorized(
    pair: MajorizationPair,
    atol: float = MAJORIZATION_ATOL,
) -> bool:
    """
    x is majorized by y when both sorted descending have equal totals and every prefix sum of x is at most the
    matching prefix sum of y.
    """
    x_sorted = numpy.sort(pair.x)[::-1]
    y_sorted = numpy.sort(pair.y)[::-1]
    x_prefix = numpy.cumsum(x_sorted)
    y_prefix = numpy.cumsum(y_sorted)
    if x_prefix.shape[0] == 0: return True
    if abs(x_prefix[-1] - y_prefix[-1]) > atol: return False
    return bool(numpy.all(x_prefix <= y_prefix + atol))


def random_majorized_pair(
    stream: dists.RngStream,
    r: int,
    num_permutations: int = 4,
) -> MajorizationPair:
    """
    y is uniform on the simplex and x = D y for a random doubly stochastic D (a convex mix of permutations),
    so x is majorized by y.
    """
    generator = stream.generator
    y = generator.dirichlet(numpy.ones(r))
    mix = generator.dirichlet(numpy.ones(num_permutations))
    x = numpy.zeros(r)
    for weight in mix:
        x += weight * y[generator.permutation(r)]
    ## renormalise so both totals agree to rounding
    return MajorizationPair(x=x / x.sum(), y=y / y.sum())


##
## === WEIGHT CHAIN BEHIND THE F BOUNDS
##


class Theorem2Weights(NamedTuple):
    psi: numpy.ndarray
    eta: numpy.ndarray
    xi: numpy.ndarray


def build_theorem2_weights(
    m: int,
    n: int,
    k: float,
) -> Theorem2Weights:
    """
    Weights over the m + n - 2 rank-one Wishart terms, with nu = m - 1 and theta = n - 1:
        psi: uniform 1 / (nu + theta), the pooled (upper bound) law;
        eta: nu copies of lambda / nu then theta copies of (1 - lambda) / theta, the exact null law;
        xi:  min(nu, theta) copies of 1 / min(nu, theta) then zeros, the worst (lower bound) law.
    Each sums to 1 and psi < eta < xi in the majorization order.
    """
    if m < 2 or n < 2: raise DomainError(f"Need m, n >= 2, but got m = {m}, n = {n}.")
    lam = bftest.lambda_from_k(k, m, n)
    nu, theta = m - 1, n - 1
    total = nu + theta
    nu_min = min(nu, theta)
    psi = numpy.full(total, 1.0 / total)
    eta = numpy.concatenate([numpy.full(nu, lam / nu), numpy.full(theta, (1.0 - lam) / theta)])
    xi = numpy.concatenate([numpy.full(nu_min, 1.0 / nu_min), numpy.zeros(total - nu_min)])
    return Theorem2Weights(psi=psi, eta=eta, xi=xi)


## } MODULE
