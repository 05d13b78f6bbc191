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
from scipy import stats

## local
from mbfbound import dists
from mbfbound.errors import DfTooSmall, DomainError, NotPositiveDefinite

##
## === RANDOM STREAMS
##


def test_same_address_replays_same_draws():
    first = dists.RngStream(42, (1, 2)).generator.standard_normal(5)
    second = dists.RngStream(42, (1, 2)).generator.standard_normal(5)
    assert numpy.array_equal(first, second)


def test_distinct_paths_give_distinct_draws():
    first = dists.RngStream(42, (1, 2)).generator.standard_normal(5)
    second = dists.RngStream(42, (1, 3)).generator.standard_normal(5)
    third = dists.RngStream(43, (1, 2)).generator.standard_normal(5)
    assert not numpy.array_equal(first, second)
    assert not numpy.array_equal(first, third)


def test_spawn_leaves_parent_untouched():
    parent = dists.RngStream(7)
    before = parent.generator.standard_normal(3)
    child = parent.spawn(4)
    child.generator.standard_normal(10)
    parent.reset()
    assert numpy.array_equal(parent.generator.standard_normal(3), before)
    assert child.stream_path == (4,)
    assert dists.RngStream(7, (4,)).generator.standard_normal(2).tolist() == dists.RngStream(7).spawn(4).generator.standard_normal(2).tolist()


def test_stream_rejects_negative_labels():
    with pytest.raises(DomainError):
        dists.RngStream(-1)
    with pytest.raises(DomainError):
        dists.RngStream(1, (-3,))


##
## === SPECIAL FUNCTIONS
##


@pytest.mark.parametrize("d", range(1, 101))
def test_f_cdf_median_at_one(d):
    assert dists.f_cdf(1.0, dists.FParams(d, d)) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 3.7, 12.0, 40.0])
def test_chisq_cdf_two_df_closed_form(t):
    assert dists.chisq_cdf(t, 2) == pytest.approx(1.0 - numpy.exp(-t / 2), abs=1e-12)


@pytest.mark.parametrize("d1, d2", [(1, 1), (2, 7), (5, 5), (3.5, 17.25), (10, 200)])
@pytest.mark.parametrize("x", [0.05, 0.7, 1.0, 2.5, 9.0])
def test_f_cdf_matches_scipy(d1, d2, x):
    fp = dists.FParams(d1, d2)
    assert dists.f_cdf(x, fp) == pytest.approx(stats.f.cdf(x, d1, d2), rel=1e-10, abs=1e-14)
    assert dists.f_sf(x, fp) == pytest.approx(stats.f.sf(x, d1, d2), rel=1e-10, abs=1e-14)
    assert dists.f_pdf(x, fp) == pytest.approx(stats.f.pdf(x, d1, d2), rel=1e-10)


def test_f_sf_keeps_precision_in_the_tail():
    fp = dists.FParams(5, 5)
    assert dists.f_sf(1e6, fp) == pytest.approx(stats.f.sf(1e6, 5, 5), rel=1e-8)
    assert dists.f_sf(1e6, fp) > 0


@pytest.mark.parametrize("d1, d2", [(1, 4), (5, 5), (2.5, 30.0)])
@pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 4.0, 50.0])
def test_f_quantile_inverts_f_cdf(d1, d2, x):
    fp = dists.FParams(d1, d2)
    assert dists.f_quantile(dists.f_cdf(x, fp), fp) == pytest.approx(x, rel=1e-8)


def test_f_quantile_rejects_invalid_level():
    with pytest.raises(DomainError):
        dists.f_quantile(1.0, dists.FParams(2, 3))


def test_f_sf_array_marks_invalid_df():
    out = dists.f_sf_array(numpy.array([1.0, 1.0, 1.0]), numpy.array([2.0, 2.0, 2.0]), numpy.array([5.0, 0.0, -1.0]))
    assert out[0] == pytest.approx(stats.f.sf(1.0, 2, 5), rel=1e-12)
    assert numpy.isnan(out[1]) and numpy.isnan(out[2])


def test_invalid_f_params():
    with pytest.raises(DomainError):
        dists.FParams(0, 3)


def test_chisq_cdf_at_the_normal_critical_value():
    assert dists.chisq_cdf(0.0, 3) == 0.0
    assert dists.chisq_cdf(1.959964**2, 1) == pytest.approx(0.95, abs=1e-6)


@pytest.mark.parametrize("d1", [1, 3, 7])
@pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
def test_f_cdf_approaches_scaled_chisquare_for_large_d2(d1, x):
    assert dists.f_cdf(x, dists.FParams(d1, 1e6)) == pytest.approx(dists.chisq_cdf(d1 * x, d1), abs=1e-4)


def test_normal_helpers():
    assert dists.normal_cdf(0.0) == 0.5
    assert dists.normal_cdf(1.96) == pytest.approx(stats.norm.cdf(1.96), rel=1e-14)
    assert dists.normal_pdf(0.0) == pytest.approx(1.0 / numpy.sqrt(2 * numpy.pi))


##
## === SAMPLERS
##


def test_std_normal_moments(stream):
    draws = numpy.array([dists.sample_std_normal(stream) for _ in range(100_000)])
    assert abs(draws.mean()) < 4 / numpy.sqrt(draws.size)
    assert abs(draws.var() - 1.0) < 0.02


def test_normal_vec_needs_a_dimension(stream):
    assert dists.sample_normal_vec(stream, 3).shape == (3,)
    with pytest.raises(DomainError):
        dists.sample_normal_vec(stream, 0)


def test_sample_mvn_moments(stream):
    sigma = numpy.array([[2.0, 0.6], [0.6, 1.0]])
    draws = numpy.array([dists.sample_mvn(stream.spawn(i), numpy.array([1.0, -1.0]), sigma) for i in range(4000)])
    numpy.testing.assert_allclose(draws.mean(axis=0), [1.0, -1.0], atol=0.1)
    numpy.testing.assert_allclose(numpy.cov(draws.T), sigma, atol=0.15)


def test_sample_mvn_rejects_singular_sigma(stream):
    with pytest.raises(NotPositiveDefinite):
        dists.sample_mvn(stream, numpy.array([5.0, 5.0]), numpy.array([[1.0, 1.0], [1.0, 1.0]]))


def test_wishart_batch_mean(stream):
    sigma = numpy.array([[1.0, 0.3, 0.0], [0.3, 2.0, 0.5], [0.0, 0.5, 1.5]])
    draws = dists.sample_wishart_batch(stream, sigma, df=8, size=20_000)
    assert draws.shape == (20_000, 3, 3)
    numpy.testing.assert_allclose(draws.mean(axis=0), 8 * sigma, atol=0.3)
    assert numpy.all(numpy.linalg.eigvalsh(draws) > 0)


def test_wishart_one_by_one_is_scaled_chisquare(stream):
    draws = dists.sample_wishart_batch(stream, numpy.array([[2.0]]), df=4, size=20_000)[:, 0, 0] / 2.0
    assert stats.kstest(draws, stats.chi2(4).cdf).statistic < 0.02


def test_wishart_df_checks(stream):
    with pytest.raises(DfTooSmall):
        dists.sample_wishart(stream, numpy.eye(3), 2)
    with pytest.raises(DfTooSmall):
        dists.sample_wishart(stream, numpy.eye(2), 3.5)


## } MODULE
