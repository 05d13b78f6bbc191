## { MODULE

## This file is part of the "mbfbound" project.
## Copyright (c) 2025 Neco Kriel.
## Licensed under the MIT License. See LICENSE for details.

##
## === DEPENDENCIES
##

## third-party
import numpy
import pytest

## local
from mbfbound import dists, wchisq
from mbfbound.errors import DegenerateSpectrum, DomainError, NonPositiveWeight
from conftest import random_spd

##
## === DISTRIBUTION FUNCTION
##


@pytest.mark.parametrize("theta", [0.3, 1.0, 4.0])
@pytest.mark.parametrize("t", [0.05, 1.0, 6.0])
def test_single_weight_is_scaled_chisquare(theta, t):
    assert wchisq.wchisq_cdf(t, [theta]) == pytest.approx(dists.chisq_cdf(theta * t, 1), abs=1e-9)


@pytest.mark.parametrize("p", [2, 3, 6])
@pytest.mark.parametrize("t", [0.2, 2.0, 9.0])
def test_equal_weights_reduce_to_chisquare(p, t):
    c = 1.7
    assert wchisq.wchisq_cdf(t, [c] * p) == pytest.approx(dists.chisq_cdf(c * t, p), abs=1e-9)


@pytest.mark.parametrize("theta1, theta2", [(1.0, 1.0), (0.5, 3.0), (4.0, 0.2)])
@pytest.mark.parametrize("t", [0.1, 1.5, 8.0])
def test_two_weight_integral_matches_inversion(theta1, theta2, t):
    direct = wchisq.wchisq_cdf_p2(t, theta1, theta2)
    assert direct == pytest.approx(wchisq.wchisq_cdf(t, [theta1, theta2]), abs=1e-9)
    assert direct == pytest.approx(wchisq.wchisq_cdf_p2(t, theta2, theta1), abs=1e-12)


def test_cdf_matches_monte_carlo(generator):
    theta = numpy.array([2.0, 5.0])
    t = 1.3
    num_chunks, chunk = 10, 1_000_000
    hits = sum(
        int(numpy.count_nonzero((generator.chisquare(1, size=(chunk, 2)) / theta).sum(axis=1) <= t))
        for _ in range(num_chunks)
    )
    estimate = hits / (num_chunks * chunk)
    mc_se = numpy.sqrt(estimate * (1 - estimate) / (num_chunks * chunk))
    assert abs(wchisq.wchisq_cdf(t, theta) - estimate) <= 3 * mc_se


def test_cdf_edge_values():
    assert wchisq.wchisq_cdf(0.0, [1.0, 2.0, 3.0]) == 0.0
    assert wchisq.wchisq_cdf_p2(0.0, 1.0, 2.0) == 0.0
    assert wchisq.wchisq_cdf(numpy.inf, [1.0, 2.0]) == 1.0
    assert wchisq.wchisq_cdf(500.0, [1.0, 2.0, 3.0]) == pytest.approx(1.0, abs=1e-9)


def test_cdf_is_monotone_in_t():
    values = [wchisq.wchisq_cdf(t, [0.5, 1.0, 2.5]) for t in numpy.linspace(0.1, 15.0, 25)]
    assert numpy.all(numpy.diff(values) > 0)


def test_invalid_weights_and_threshold():
    with pytest.raises(NonPositiveWeight):
        wchisq.wchisq_cdf(1.0, [1.0, 0.0])
    with pytest.raises(NonPositiveWeight):
        wchisq.WeightVector(numpy.array([1.0, numpy.nan]))
    with pytest.raises(DomainError):
        wchisq.wchisq_cdf(-1.0, [1.0])


def test_weight_vector_is_read_only():
    weights = wchisq.WeightVector(numpy.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        weights.theta[0] = 5.0
    assert weights.replace(0, 3.0).theta.tolist() == [3.0, 2.0]
    assert weights.theta.tolist() == [1.0, 2.0]


##
## === DERIVATIVES IN THE WEIGHTS
##


@pytest.mark.parametrize("a, b", [(0.5, 2.0), (1.0, 1.0), (3.0, 0.7)])
@pytest.mark.parametrize("t", [0.4, 2.0, 6.0])
def test_first_derivative_numeric_matches_analytic(a, b, t):
    numeric = wchisq.dF_dtheta(t, [a, b], 0)
    analytic = wchisq.dF_dtheta(t, [a, b], 0, backend="analytic")
    assert numeric == pytest.approx(analytic, abs=1e-6)
    assert analytic == pytest.approx(wchisq.dF12_dtheta1(t, a, b))


@pytest.mark.parametrize("a, b", [(0.5, 2.0), (2.0, 1.0)])
def test_second_derivative_numeric_matches_analytic(a, b):
    numeric = wchisq.d2F_dtheta2(1.5, [a, b], 0)
    analytic = wchisq.d2F_dtheta2(1.5, [a, b], 0, backend="analytic")
    assert numeric == pytest.approx(analytic, abs=1e-5)
    assert analytic < 0


def test_equal_weights_give_equal_gradient():
    gradient = wchisq.gradient(2.5, [1.0, 1.0, 1.0])
    assert numpy.ptp(gradient) < 1e-8
    assert numpy.all(gradient > 0)


def test_smaller_weight_has_larger_derivative():
    gradient = wchisq.gradient(3.0, [0.5, 1.0, 2.0])
    assert gradient[0] > gradient[1] > gradient[2] > 0


def test_analytic_backend_needs_two_weights():
    with pytest.raises(DomainError):
        wchisq.dF_dtheta(1.0, [1.0, 2.0, 3.0], 0, backend="analytic")
    with pytest.raises(DomainError):
        wchisq.dF_dtheta(1.0, [1.0, 2.0], 0, backend="symbolic")


def test_directional_second_derivative_along_an_axis():
    along_axis = wchisq.directional_second_derivative(1.5, [0.8, 2.0], numpy.array([1.0, 0.0]))
    assert along_axis == pytest.approx(wchisq.d2F12_dtheta1(1.5, 0.8, 2.0), abs=1e-5)
    assert wchisq.directional_second_derivative(1.5, [0.8, 2.0], numpy.zeros(2)) == 0.0


@pytest.mark.parametrize("a, b, t", [(0.5, 1.0, 1.0), (0.3, 2.5, 4.0), (1.0, 1.2, 0.5)])
def test_appendix_gap_exceeds_lower_bound(a, b, t):
    integrals = wchisq.appendix_integrals(a, b, t)
    assert integrals.lower_bound > 0
    assert integrals.gap >= integrals.lower_bound * (1 - 1e-9)
    assert integrals.h_ab == pytest.approx(wchisq.dF_dtheta(t, [a, b], 0), abs=1e-6)


##
## === MATRIX PATH
##


def test_diagonal_path_eigenvalues_are_linear():
    a = numpy.array([4.0, 2.0, 1.0])
    b = numpy.array([3.0, 1.5, 0.5])
    path = wchisq.LambdaPath(m1=numpy.diag(a), m2=numpy.diag(b), t=2.0)
    for lam in (0.0, 0.3, 1.0):
        numpy.testing.assert_allclose(path.eigen(lam).values, lam * a + (1 - lam) * b, atol=1e-14)
        assert wchisq.h_lambda(lam, path) == pytest.approx(wchisq.wchisq_cdf(2.0, lam * a + (1 - lam) * b), abs=1e-14)


def test_h_is_constant_when_both_ends_match(generator):
    matrix = random_spd(generator, 3)
    path = wchisq.LambdaPath(m1=matrix, m2=matrix.copy(), t=2.0)
    values = [wchisq.h_lambda(lam, path) for lam in numpy.linspace(0.0, 1.0, 11)]
    numpy.testing.assert_allclose(values, wchisq.wchisq_cdf(2.0, numpy.linalg.eigvalsh(matrix)), atol=1e-9)


def test_eigen_cumsum_starts_with_trace(generator):
    path = wchisq.LambdaPath(m1=random_spd(generator, 4), m2=random_spd(generator, 4), t=1.0)
    cumsum = wchisq.eigen_cumsum_path(path, 0.4)
    assert cumsum[0] == pytest.approx(numpy.trace(path.matrix(0.4)), rel=1e-12)
    assert cumsum[-1] == pytest.approx(path.eigen(0.4).values[-1], rel=1e-12)


def test_eigen_derivatives_match_finite_differences(generator):
    path = wchisq.LambdaPath(m1=random_spd(generator, 3), m2=random_spd(generator, 3), t=1.0)
    derivs = wchisq.eigen_derivatives(path, 0.5)
    step = 1e-4
    upper = path.eigen(0.5 + step).values
    lower = path.eigen(0.5 - step).values
    numpy.testing.assert_allclose(derivs.first, (upper - lower) / (2 * step), atol=1e-6)
    numpy.testing.assert_allclose(derivs.second, (upper - 2 * derivs.values + lower) / step**2, atol=1e-3)


def test_bottom_sums_of_eigen_second_derivatives_are_nonpositive(generator):
    path = wchisq.LambdaPath(m1=random_spd(generator, 4), m2=random_spd(generator, 4), t=1.0)
    second = wchisq.eigen_derivatives(path, 0.3).second
    bottom_sums = numpy.cumsum(second[::-1])[::-1]
    assert bottom_sums[0] == pytest.approx(0.0, abs=1e-10)
    assert numpy.all(bottom_sums[1:] <= 1e-12)


def test_repeated_eigenvalues_are_degenerate():
    path = wchisq.LambdaPath(m1=numpy.eye(3), m2=2 * numpy.eye(3), t=1.0)
    with pytest.raises(DegenerateSpectrum):
        wchisq.eigen_derivatives(path, 0.5)


def test_h_second_derivative_matches_second_difference():
    path = wchisq.LambdaPath(m1=numpy.diag([3.0, 1.0]), m2=numpy.array([[1.0, 0.4], [0.4, 2.0]]), t=2.5)
    step = 1e-3
    numeric = (
        wchisq.h_lambda(0.5 + step, path) - 2 * wchisq.h_lambda(0.5, path) + wchisq.h_lambda(0.5 - step, path)
    ) / step**2
    assert wchisq.h_second_derivative(0.5, path) == pytest.approx(numeric, abs=1e-4)


def test_lambda_outside_unit_interval():
    path = wchisq.LambdaPath(m1=numpy.eye(2), m2=numpy.diag([2.0, 3.0]), t=1.0)
    with pytest.raises(DomainError):
        path.matrix(1.5)


## } MODULE
