from ._api import CHECKS, DEFAULT_SEED, VerifyConfig, resolve_checks, run_majorization_check, run_theorem1_checks, run_verify
from ._lemmas import (
    ANALYTIC_TOLERANCE,
    CONCAVITY_SLACK,
    LAMBDA_POINTS,
    check_appendix_concavity,
    check_lemma1,
    check_lemma2,
    cumsum_second_differences,
    h_second_differences,
    path_spectra,
)
from ._majorization import (
    MAJORIZATION_ATOL,
    MajorizationPair,
    Theorem2Weights,
    build_theorem2_weights,
    is_majorized,
    random_majorized_pair,
)
from ._montecarlo import (
    GRID_POINTS,
    check_hotelling_transform,
    check_theorem1,
    check_theorem2,
    compare_orders,
    ecdf_on_grid,
    percentile_grid,
)
from ._reports import CheckReport, OrderCheckReport, reports_to_dict, write_reports
