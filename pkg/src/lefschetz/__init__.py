"""Strong and weak Lefschetz properties of monomial complete intersections
k[x_1, ..., x_n]/(x_1^d_1, ..., x_n^d_n) in positive characteristic."""

from __future__ import annotations

from .algebra import (
    HilbertFunction,
    MonomialCI,
    basis_index,
    hilbert_function,
    is_basis_element,
    iter_basis,
    monomial_basis,
    normalize,
    socle_degree,
)
from .classify import (
    Certificate,
    Status,
    Verdict,
    classify_slp,
    classify_wlp,
    classify_wlp_uniform,
    slp_failure_certificate,
    zero_divisor_power,
)
from .errors import DimensionCap, InvalidLambda, LefschetzError
from .froberg import check_froberg_n_plus_1, froberg_series
from .jordan import jordan_type, wlp_by_jordan_type
from .linalg import SparseMatrixModP, rank_mod_p
from .numtheory import multinomial_divisible_by_p, multinomial_mod_p, split_mod_p
from .oracle import has_maximal_rank_power, multiplication_matrix, verify_slp, verify_wlp
from .survey import SurveyRow, survey

__version__ = "0.1.0"
