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
from scipy import special, stats

## local
from mbfbound import bftest, dists
from mbfbound.bftest import Method
from mbfbound.errors import (
    DegenerateStatistic,
    DfTooSmall,
    DimensionMismatch,
    DimensionTooLarge,
    DomainError,
    NonPositiveK,
    RankDeficientSample,
)

##
## === REFERENCE TRANSCRIPTIONS
##


def _naive_covariance(
    obs: numpy.ndarray,
) -> numpy.ndarray:
    mean = sum(row for row in obs) / len(obs)
    cov = numpy.zeros((obs.shape[1], obs.shape[1]))
    for row in obs:
        cov += numpy.outer(row - mean, row - mean)
    return cov / (len(obs) - 1)


def _reference_dfs(
    x: numpy.ndarray,
    y: numpy.ndarray,
) -> dict[str, float]:
    """
    Straight transcription of the four approximate-df formulas with explicit inverses.
    """
    p = x.shape[1]
    sizes = (len(x), len(y))
    d = x.mean(axis=0) - y.mean(axis=0)
    scaled = [_naive_covariance(x) / sizes[0], _naive_covariance(y) / sizes[1]]
    total = scaled[0] + scaled[1]
    inv = numpy.linalg.inv(total)
    identity = numpy.eye(p)
    yao_inv = 0.0
    johansen_a = 0.0
    nvdm_denom = 0.0
    ky_denom = 0.0
    for s_i, n_i in zip(scaled, sizes):
        yao_inv += ((d @ inv @ s_i @ inv @ d) / (d @ inv @ d)) ** 2 / (n_i - 1)
        resid = identity - s_i @ inv
        johansen_a += (numpy.trace(resid @ resid) + numpy.trace(resid) ** 2) / (2 * (n_i - 1))
        nvdm_denom += (numpy.trace(s_i @ s_i) + numpy.trace(s_i) ** 2) / (n_i - 1)
        ratio = s_i @ inv
        ky_denom += (numpy.trace(ratio @ ratio) + numpy.trace(ratio) ** 2) / (n_i - 1)
    return {
        "t2": float(d @ inv @ d),
        "yao": 1.0 / yao_inv,
        "johansen_c": p + 2 * johansen_a - 6 * johansen_a / (p * (p - 1) + 2),
        "johansen_nu": p * (p + 2) / (3 * johansen_a),
        "nvdm": (numpy.trace(total @ total) + numpy.trace(total) ** 2) / nvdm_denom,
        "ky": (p + p * p) / ky_denom,
    }


def _welch_df(
    x: numpy.ndarray,
    y: numpy.ndarray,
) -> float:
    a = numpy.var(x, ddof=1) / len(x)
    b = numpy.var(y, ddof=1) / len(y)
    return (a + b) ** 2 / (a**2 / (len(x) - 1) + b**2 / (len(y) - 1))


def _random_data(
    generator: numpy.random.Generator,
    p: int,
    m: int,
    n: int,
    k: float = 2.0,
) -> bftest.TwoSampleData:
    mix = numpy.eye(p) + 0.3 * generator.standard_normal((p, p))
    x = generator.standard_normal((m, p)) @ mix.T
    y = numpy.sqrt(k) * generator.standard_normal((n, p)) @ mix.T + 0.2
    return bftest.TwoSampleData(x=x, y=y)


##
## === DATA AND SUMMARIES
##


def test_summarize_hand_computation():
    data = bftest.TwoSampleData(x=numpy.array([0.0, 2.0]), y=numpy.array([1.0, 2.0, 4.0]))
    summary = bftest.summarize(data)
    assert summary.mean_diff[0] == pytest.approx(1.0 - 7.0 / 3.0)
    assert summary.s1[0, 0] == pytest.approx(2.0)
    assert summary.s2[0, 0] == pytest.approx(7.0 / 3.0)


def test_summarize_matches_two_pass(generator):
    data = _random_data(generator, p=4, m=15, n=9)
    summary = bftest.summarize(data)
    numpy.testing.assert_allclose(summary.s1, _naive_covariance(data.x), atol=1e-10)
    numpy.testing.assert_allclose(summary.s2, _naive_covariance(data.y), atol=1e-10)
    assert numpy.array_equal(summary.s1, summary.s1.T)


def test_constant_column_is_rank_deficient(generator):
    x = generator.standard_normal((8, 3))
    x[:, 1] = 4.0
    data = bftest.TwoSampleData(x=x, y=generator.standard_normal((8, 3)))
    with pytest.raises(RankDeficientSample):
        bftest.summarize(data)


def test_two_sample_data_validation(generator):
    with pytest.raises(DimensionTooLarge):
        bftest.TwoSampleData(x=generator.standard_normal((3, 3)), y=generator.standard_normal((10, 3)))
    with pytest.raises(DimensionMismatch):
        bftest.TwoSampleData(x=generator.standard_normal((6, 2)), y=generator.standard_normal((6, 3)))


##
## === THE T^2 STATISTIC
##


def test_t2_zero_for_identical_samples(example_data):
    same = bftest.TwoSampleData(x=example_data.x, y=example_data.x)
    assert bftest.t2_statistic(same) == 0.0


def test_t2_dimension_one_reduction(generator):
    x = generator.standard_normal(9)
    y = 2.0 * generator.standard_normal(14) + 0.5
    expected = (x.mean() - y.mean()) ** 2 / (numpy.var(x, ddof=1) / 9 + numpy.var(y, ddof=1) / 14)
    assert bftest.t2_statistic(bftest.TwoSampleData(x=x, y=y)) == pytest.approx(expected, rel=1e-12)


def test_t2_toy_dataset_explicit_inverse():
    x = numpy.array([[1.0, 2.0], [2.0, 1.0], [4.0, 5.0]])
    y = numpy.array([[0.0, 1.0], [1.0, 3.0], [3.0, 2.0], [2.0, 0.0]])
    d = x.mean(axis=0) - y.mean(axis=0)
    (a, b), (c, e) = _naive_covariance(x) / 3 + _naive_covariance(y) / 4
    inverse = numpy.array([[e, -b], [-c, a]]) / (a * e - b * c)
    expected = float(d @ inverse @ d)
    assert bftest.t2_statistic(bftest.TwoSampleData(x=x, y=y)) == pytest.approx(expected, rel=1e-12)


def test_lambda_from_k_values():
    assert bftest.lambda_from_k(1.0, 12, 12) == pytest.approx(0.5)
    assert bftest.lambda_from_k(1e-12, 10, 20) == pytest.approx(1.0, abs=1e-9)
    assert bftest.lambda_from_k(10.0, 10, 20) == pytest.approx(1.0 / 6.0)
    with pytest.raises(NonPositiveK):
        bftest.lambda_from_k(0.0, 10, 10)


##
## === F BOUNDS
##


def test_fbound_pvalue_at_zero():
    assert bftest.fbound_pvalue(0.0, 3, 10, 20) == 1.0


@pytest.mark.parametrize("m, n", [(10, 10), (6, 25), (30, 8)])
def test_fbound_dimension_one_is_two_sided_t(m, n):
    for t2 in numpy.linspace(0.1, 15.0, 20):
        expected = 2.0 * stats.t.sf(numpy.sqrt(t2), min(m, n) - 1)
        assert bftest.fbound_pvalue(t2, 1, m, n) == pytest.approx(expected, abs=1e-10)


def test_fbound_pvalue_incomplete_beta_oracle():
    ## F_{5,5}(4/9) = I_z(5/2, 5/2) with z = 5x / (5x + 5) = 4/13
    expected = 1.0 - special.betainc(2.5, 2.5, 4.0 / 13.0)
    assert bftest.fbound_pvalue(20.0, 5, 10, 20) == pytest.approx(expected, abs=1e-13)


def test_fbound_pvalue_is_one_minus_lower_bound():
    grid = numpy.linspace(0.0, 40.0, 41)
    lower = bftest.bound_cdfs(grid, 4, 9, 17).lower
    assert numpy.array_equal(bftest.fbound_pvalue(grid, 4, 9, 17), 1.0 - lower)


def test_bound_cdfs_ordering_and_edges():
    assert tuple(bftest.bound_cdfs(0.0, 3, 10, 12)) == (0.0, 0.0)
    grid = numpy.linspace(0.0, 60.0, 121)
    bounds = bftest.bound_cdfs(grid, 3, 10, 12)
    assert numpy.all(bounds.lower <= bounds.upper + 1e-15)
    assert numpy.all(numpy.diff(bounds.lower) >= 0)
    law = bftest.lower_bound_law(3, 12, 12)
    assert (law.df1, law.df2) == (3, 9)


def test_bounds_need_p_below_sample_sizes():
    with pytest.raises(DimensionTooLarge):
        bftest.bound_cdfs(1.0, 10, 10, 20)
    with pytest.raises(DimensionTooLarge):
        bftest.fbound_pvalue(1.0, 5, 5, 20)


def test_hsu_bounds_match_t_distributions():
    bounds = bftest.hsu_bounds(2.0, 8, 13)
    assert bounds.lower == pytest.approx(1 - 2 * stats.t.sf(2.0, 7), abs=1e-12)
    assert bounds.upper == pytest.approx(1 - 2 * stats.t.sf(2.0, 19), abs=1e-12)


def test_hotelling_transform_values():
    one = bftest.hotelling_f_transform(1, 7)
    assert (one.scale, one.df1, one.df2) == (1.0, 1, 7)
    five = bftest.hotelling_f_transform(5, 9)
    assert (five.scale, five.df1, five.df2) == (9.0, 5, 5)
    with pytest.raises(DfTooSmall):
        bftest.hotelling_f_transform(4, 3)


##
## === COMPETITOR DEGREES OF FREEDOM
##


def test_dimension_one_reduces_to_welch(generator):
    for _ in range(50):
        m, n = generator.integers(4, 30, size=2)
        x = generator.standard_normal(m)
        y = generator.uniform(0.3, 3.0) * generator.standard_normal(n)
        data = bftest.TwoSampleData(x=x, y=y)
        welch = _welch_df(x, y)
        assert bftest.yao_df(data) == pytest.approx(welch, rel=1e-10)
        assert bftest.nvdm_df(data) == pytest.approx(welch, rel=1e-10)
        assert bftest.ky_df(data) == pytest.approx(welch, rel=1e-10)


def test_equal_covariances_give_pooled_df(generator):
    x = generator.standard_normal((11, 3))
    data = bftest.TwoSampleData(x=x, y=x + numpy.array([0.5, -0.2, 1.0]))
    assert bftest.nvdm_df(data) == pytest.approx(20.0, rel=1e-10)
    assert bftest.ky_df(data) == pytest.approx(20.0, rel=1e-10)


def test_example_dataset_matches_reference_transcription(example_data):
    reference = _reference_dfs(example_data.x, example_data.y)
    assert bftest.t2_statistic(example_data) == pytest.approx(reference["t2"], rel=1e-10)
    assert bftest.yao_df(example_data) == pytest.approx(reference["yao"], rel=1e-10)
    johansen = bftest.johansen_params(example_data)
    assert johansen.c == pytest.approx(reference["johansen_c"], rel=1e-10)
    assert johansen.nu == pytest.approx(reference["johansen_nu"], rel=1e-10)
    assert bftest.nvdm_df(example_data) == pytest.approx(reference["nvdm"], rel=1e-10)
    assert bftest.ky_df(example_data) == pytest.approx(reference["ky"], rel=1e-10)


def test_example_dataset_pvalues(example_data):
    reference = _reference_dfs(example_data.x, example_data.y)
    t2, p = reference["t2"], 5
    expected = {
        Method.FBOUND: stats.f.sf(t2 * (10 - p) / (p * 9), p, 10 - p),
        Method.JOHANSEN: stats.f.sf(t2 / reference["johansen_c"], p, reference["johansen_nu"]),
    }
    for method, key in ((Method.YAO, "yao"), (Method.NEL_VAN_DER_MERWE, "nvdm"), (Method.KRISHNAMOORTHY_YU, "ky")):
        nu = reference[key]
        expected[method] = stats.f.sf(t2 * (nu - p + 1) / (nu * p), p, nu - p + 1)
    for result in bftest.run_tests(example_data):
        assert result.p_value == pytest.approx(expected[result.method], rel=1e-9, abs=1e-14)
    ky = bftest.ky_df(example_data)
    nvdm = bftest.nvdm_df(example_data)
    assert ky > 0 and nvdm > 0 and ky != pytest.approx(nvdm, rel=1e-6)


def test_yao_with_equal_means():
    x = numpy.array([[0.0, 1.0], [1.0, 0.0], [2.0, 2.0], [1.0, 3.0]])
    y = numpy.array([[0.0, 2.0], [2.0, 2.0], [1.0, 0.5]])
    data = bftest.TwoSampleData(x=x, y=y)
    assert bftest.t2_statistic(data) == 0.0
    with pytest.raises(DegenerateStatistic):
        bftest.yao_df(data)
    result = bftest.run_test(data, Method.YAO)
    assert result.p_value == pytest.approx(1.0)
    assert result.to_dict()["df_info"] == {"df1": 2.0, "df2": None, "scale": None, "nu": None}


##
## === FULL TESTS
##


def test_identical_samples_give_pvalue_one(example_data):
    same = bftest.TwoSampleData(x=example_data.x, y=example_data.x.copy())
    for result in bftest.run_tests(same):
        assert result.statistic == 0.0
        assert result.p_value == 1.0


def test_all_methods_share_the_statistic(example_data):
    results = bftest.run_tests(example_data)
    assert [result.method for result in results] == list(bftest.ALL_METHODS)
    assert len({result.statistic for result in results}) == 1
    assert all(0.0 <= result.p_value <= 1.0 for result in results)


def test_method_names_parse():
    assert Method.parse("fbound") is Method.FBOUND
    assert Method.parse("NVDM") is Method.NEL_VAN_DER_MERWE
    assert Method.parse(" ky ") is Method.KRISHNAMOORTHY_YU
    with pytest.raises(DomainError):
        Method.parse("welch")


def _all_pvalues(
    data: bftest.TwoSampleData,
) -> dict[Method, float]:
    return {result.method: result.p_value for result in bftest.run_tests(data)}


def test_affine_invariance(generator):
    data = _random_data(generator, p=3, m=12, n=18)
    matrix = generator.standard_normal((3, 3)) + 2.0 * numpy.eye(3)
    shift = generator.standard_normal(3)
    moved = data.transformed(matrix, shift)
    assert bftest.t2_statistic(moved) == pytest.approx(bftest.t2_statistic(data), rel=1e-8)
    before, after = _all_pvalues(data), _all_pvalues(moved)
    for method in (Method.FBOUND, Method.YAO, Method.JOHANSEN, Method.KRISHNAMOORTHY_YU):
        assert after[method] == pytest.approx(before[method], abs=1e-8)


def test_nvdm_is_orthogonally_invariant(generator):
    data = _random_data(generator, p=3, m=12, n=18)
    rotation, _ = numpy.linalg.qr(generator.standard_normal((3, 3)))
    moved = data.transformed(rotation, generator.standard_normal(3))
    assert bftest.nvdm_df(moved) == pytest.approx(bftest.nvdm_df(data), rel=1e-8)
    assert _all_pvalues(moved)[Method.NEL_VAN_DER_MERWE] == pytest.approx(_all_pvalues(data)[Method.NEL_VAN_DER_MERWE], abs=1e-8)


def test_sample_swap_symmetry(generator):
    data = _random_data(generator, p=2, m=9, n=16, k=5.0)
    assert bftest.t2_statistic(data.swapped()) == pytest.approx(bftest.t2_statistic(data), rel=1e-12)
    before, after = _all_pvalues(data), _all_pvalues(data.swapped())
    for method in bftest.ALL_METHODS:
        assert after[method] == pytest.approx(before[method], abs=1e-12)


def test_batch_pvalues_match_single_tests(generator):
    datasets = [_random_data(generator, p=3, m=10, n=14) for _ in range(4)]
    summary = bftest.summarize_batch(
        numpy.stack([data.x for data in datasets]),
        numpy.stack([data.y for data in datasets]),
    )
    batch = bftest.method_pvalues_batch(summary, 10, 14)
    for index, data in enumerate(datasets):
        for result in bftest.run_tests(data):
            assert batch[result.method][index] == pytest.approx(result.p_value, rel=1e-10, abs=1e-14)


def test_pvalues_decrease_with_the_statistic(generator):
    data = _random_data(generator, p=3, m=10, n=14)
    base = bftest.summarize(data)
    scales = numpy.linspace(0.0, 3.0, 13)
    summary = bftest.SampleSummary(
        mean_diff=scales[:, None] * base.mean_diff,
        s1=numpy.broadcast_to(base.s1, (13, 3, 3)),
        s2=numpy.broadcast_to(base.s2, (13, 3, 3)),
    )
    for method, pvalues in bftest.method_pvalues_batch(summary, 10, 14).items():
        assert pvalues[0] == pytest.approx(1.0), method
        assert numpy.all(numpy.diff(pvalues) <= 1e-15), method


##
## === CANONICAL FORM
##


def test_canonical_lambda_one_dimension_one_is_f(stream):
    params = bftest.CanonicalParams(lam=1.0, p=1, m=8, n=10)
    draws = bftest.sample_canonical_t2_batch(params, stream, size=20_000)
    assert stats.kstest(draws, stats.f(1, 7).cdf).statistic < 0.015


def test_canonical_roles_are_exchangeable(stream):
    first = bftest.sample_canonical_t2_batch(bftest.CanonicalParams(0.3, 2, 9, 15), stream.spawn(1), size=10_000)
    second = bftest.sample_canonical_t2_batch(bftest.CanonicalParams(0.7, 2, 15, 9), stream.spawn(2), size=10_000)
    assert stats.ks_2samp(first, second).statistic < 0.03


def test_canonical_matches_direct_data(stream):
    p, m, n, k = 3, 10, 20, 10.0
    canonical = bftest.sample_canonical_t2_batch(bftest.CanonicalParams.from_k(k, p, m, n), stream.spawn(1), size=6_000)
    generator = stream.spawn(2).generator
    factor = numpy.linalg.cholesky(numpy.array([[2.0, 0.5, 0.1], [0.5, 1.0, 0.3], [0.1, 0.3, 0.7]]))
    x = generator.standard_normal((6_000, m, p)) @ factor.T
    y = numpy.sqrt(k) * generator.standard_normal((6_000, n, p)) @ factor.T
    direct = bftest.t2_statistic_batch(bftest.summarize_batch(x, y), m, n)
    assert stats.ks_2samp(canonical, direct).statistic < 0.035


def test_canonical_draws_are_reproducible():
    params = bftest.CanonicalParams.from_k(2.0, 3, 10, 12)
    first = bftest.sample_canonical_t2_batch(params, dists.RngStream(5, (1,)), size=10)
    second = bftest.sample_canonical_t2_batch(params, dists.RngStream(5, (1,)), size=10)
    assert numpy.array_equal(first, second)
    assert bftest.sample_canonical_t2(params, dists.RngStream(5, (1,))) == first[0]


## } MODULE
