"""Exact random-walk and R-matrix invariants of string links."""

from .ring import (
    LaurentPoly,
    RatFunc,
    Rational,
    laurent_divides,
    laurent_quotient,
    ratfunc_to_laurent,
    span,
)
from .linalg import (
    Matrix,
    SubsetIndex,
    det,
    exterior_power,
    inverse,
    minor,
    minor_table,
    schur_complement,
    shuffle_sign,
    subsets,
)
from .braid import BraidWord, Permutation, burau, parse_braid, permutation, writhe
from .randomwalk import (
    BurauBlocks,
    ClosurePresentation,
    RWInvariant,
    blocks,
    compose,
    eigen_check,
    equilibrium,
    is_string_link,
    ltw,
    ltw_exterior,
    string_link_permutation,
    truncated_series_gaps,
    truncated_series_oracle,
)
from .rmatrix import (
    GradedFunctorValue,
    TensorOperator,
    equivariance_check,
    e_tilde,
    f_tilde,
    functor_value,
    functor_zero_component,
    graded_ratio,
    grading_operator,
    h_op,
    partial_closure,
    psi,
    psi_hat,
    qtr,
    r_inverse,
    r_matrix,
    weight_basis,
)
from .exterior import (
    ExtOperator,
    brt,
    brt_ratio,
    contraction,
    e_breve,
    f_breve,
    lambda_star,
    partial_supertrace,
    phi,
    phi_conjugate,
    phi_conjugate_block,
    schur_supertrace,
    supertrace,
    top_form_eval,
    wedge,
)
from .verify import (
    EXAMPLE_S,
    VerificationReport,
    corollary_check,
    cross_check_paths,
    find_braid_for_example,
    random_string_link,
    run_suite,
    span_statistic,
    theorem_check,
    verify_presentation,
)

__version__ = "0.1.0"
