from ._rng import RngStream
from ._samplers import (
    sample_mvn,
    sample_normal_vec,
    sample_std_normal,
    sample_wishart,
    sample_wishart_batch,
)
from ._special import (
    FParams,
    chisq_cdf,
    f_cdf,
    f_pdf,
    f_quantile,
    f_sf,
    f_sf_array,
    normal_cdf,
    normal_pdf,
)
