from ._cdf import WeightVector, as_weights, wchisq_cdf, wchisq_cdf_p2
from ._derivs import (
    AppendixIntegrals,
    appendix_integrals,
    d2F12_dtheta1,
    d2F_dtheta2,
    dF12_dtheta1,
    dF_dtheta,
    directional_second_derivative,
    gradient,
)
from ._path import (
    DEGENERACY_RTOL,
    EigenDerivatives,
    LambdaPath,
    eigen_cumsum_path,
    eigen_derivatives,
    h_lambda,
    h_second_derivative,
    min_relative_gap,
)
