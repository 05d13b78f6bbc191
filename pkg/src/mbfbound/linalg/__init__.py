from ._core import (
    EigenDecomp,
    SpdMatrix,
    as_spd,
    as_square,
    cholesky,
    is_symmetric,
    mat_add_scaled,
    quad_form_inv,
    quad_form_inv_batch,
    sym_eigen,
    trace,
    trace_product,
)
