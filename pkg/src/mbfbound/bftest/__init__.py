from ._api import (
    ALL_METHODS,
    DfInfo,
    Method,
    TestResult,
    method_pvalues_batch,
    run_test,
    run_tests,
)
from ._bounds import (
    BoundCdfs,
    ScaledF,
    bound_cdfs,
    fbound_pvalue,
    hsu_bounds,
    lower_bound_law,
    upper_bound_law,
)
from ._competitors import (
    JohansenParams,
    ScaledCovariances,
    johansen_batch,
    johansen_params,
    ky_df,
    ky_nu_batch,
    nvdm_df,
    nvdm_nu_batch,
    scaled_covariances,
    yao_df,
    yao_nu_batch,
)
from ._data import (
    SampleSummary,
    TwoSampleData,
    is_full_rank_batch,
    summarize,
    summarize_batch,
)
from ._statistic import (
    CanonicalParams,
    HotellingTransform,
    check_dimensions,
    hotelling_f_transform,
    lambda_from_k,
    pooled_covariance,
    sample_canonical_t2,
    sample_canonical_t2_batch,
    t2_statistic,
    t2_statistic_batch,
)
