## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## stdlib
from dataclasses import dataclass
from typing import TypeAlias

## third-party
import numpy
from scipy import linalg as scipy_linalg

## local
from mbfbound.errors import ConvergenceFailure, DimensionMismatch, NotPositiveDefinite

##
## === TYPES
##

## dense symmetric positive definite p x p array; validated by `as_spd`
SpdMatrix: TypeAlias = numpy.ndarray

SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomp:
    """
    Symmetric eigendecomposition m = vectors @ diag(values) @ vectors.T with `values` sorted in descending order.
    """
    values: numpy.ndarray
    vectors: numpy.ndarray

    def reconstruct(self) -> numpy.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


##
## === VALIDATION
##


def as_square(
    m: numpy.ndarray,
    name: str = "m",
) -> numpy.ndarray:
    m = numpy.asarray(m, dtype=numpy.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"`{name}` must be a square matrix, but got shape {m.shape}.")
    if m.shape[0] < 1:
        raise DimensionMismatch(f"`{name}` must have at least one row.")
    return m


def is_symmetric(
    m: numpy.ndarray,
    rtol: float = SYMMETRY_RTOL,
) -> bool:
    scale = max(1.0, float(numpy.max(numpy.abs(m))))
    return bool(numpy.max(numpy.abs(m - m.T)) <= rtol * scale)


def as_spd(
    m: numpy.ndarray,
    name: str = "m",
) -> SpdMatrix:
    """
    Returns `m` as a float64 array after checking it is square, symmetric and passes a Cholesky factorisation.
    """
    m = as_square(m, name)
    if not is_symmetric(m):
        raise NotPositiveDefinite(f"`{name}` is not symmetric to within a relative tolerance of {SYMMETRY_RTOL}.")
    cholesky(m)
    return m


def _check_same_shape(
    a: numpy.ndarray,
    b: numpy.ndarray,
) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Matrix dimensions differ: {a.shape} vs {b.shape}.")


##
## === FACTORISATIONS
##


def cholesky(
    m: SpdMatrix,
) -> numpy.ndarray:
    """
    Lower-triangular L with L @ L.T = m. Positive definiteness is decided by this factorisation alone: any
    non-positive pivot raises `NotPositiveDefinite`.
    """
    m = as_square(m)
    try:
        lower = numpy.linalg.cholesky(m)
    except numpy.linalg.LinAlgError as err:
        raise NotPositiveDefinite(f"Cholesky factorisation failed for a {m.shape[0]}x{m.shape[0]} matrix.") from err
    if not numpy.all(numpy.isfinite(lower)):
        raise NotPositiveDefinite("Cholesky factorisation produced non-finite entries.")
    return lower


def quad_form_inv(
    v: numpy.ndarray,
    m: SpdMatrix,
) -> float:
    """
    Computes v^T m^{-1} v through a Cholesky solve (no explicit inverse).
    """
    v = numpy.asarray(v, dtype=numpy.float64).reshape(-1)
    m = as_square(m)
    if v.shape[0] != m.shape[0]:
        raise DimensionMismatch(f"`v` has length {v.shape[0]} but `m` is {m.shape[0]}x{m.shape[0]}.")
    lower = cholesky(m)
    z = scipy_linalg.solve_triangular(lower, v, lower=True)
    return float(z @ z)


def quad_form_inv_batch(
    v: numpy.ndarray,
    m: numpy.ndarray,
) -> numpy.ndarray:
    """
    Stacked version of `quad_form_inv`: `v` has shape (..., p) and `m` has shape (..., p, p).
    """
    try:
        lower = numpy.linalg.cholesky(m)
    except numpy.linalg.LinAlgError as err:
        raise NotPositiveDefinite("Cholesky factorisation failed for at least one matrix in the stack.") from err
    z = numpy.linalg.solve(lower, v[..., None])[..., 0]
    return numpy.einsum("...i,...i->...", z, z)


def sym_eigen(
    m: numpy.ndarray,
) -> EigenDecomp:
    """
    Eigendecomposition of a symmetric matrix with eigenvalues sorted in descending order. Ties keep the order
    returned by the solver (stable sort).
    """
    m = as_square(m)
    if not is_symmetric(m):
        raise DimensionMismatch("`m` must be symmetric for a symmetric eigendecomposition.")
    try:
        values, vectors = numpy.linalg.eigh(m)
    except numpy.linalg.LinAlgError as err:
        raise ConvergenceFailure(f"Symmetric eigensolver did not converge for a {m.shape[0]}x{m.shape[0]} matrix.") from err
    order = numpy.argsort(-values, kind="stable")
    return EigenDecomp(
        values=values[order],
        vectors=vectors[:, order],
    )


##
## === LINEAR HELPERS
##


def trace(
    m: numpy.ndarray,
) -> float:
    return float(numpy.trace(as_square(m)))


def trace_product(
    a: numpy.ndarray,
    b: numpy.ndarray,
) -> float:
    """
    tr(AB) without forming the product.
    """
    a = as_square(a, "a")
    b = as_square(b, "b")
    _check_same_shape(a, b)
    return float(numpy.einsum("ij,ji->", a, b))


def mat_add_scaled(
    a: numpy.ndarray,
    alpha: float,
    b: numpy.ndarray,
    beta: float,
) -> numpy.ndarray:
    """
    Returns alpha * a + beta * b, symmetrised so rounding never breaks the symmetry check downstream.
    """
    a = as_square(a, "a")
    b = as_square(b, "b")
    _check_same_shape(a, b)
    out = alpha * a + beta * b
    return 0.5 * (out + out.T)


## } MODULE
