"""Exact q-series arithmetic, restricted multipartition enumeration and
coefficient-by-coefficient identity checks."""

from .errors import (
    BadParameters, BudgetExceeded, DivergentProduct, NotInvertible, NotStrict,
    RRVerifyError, UnknownIdentity,
)
from .identities import IdentityReport, Status, list_identities, run_all, verify
from .multisums import (
    GaussPoly, SeriesFamily, S_sum, andrews_kimyee_sum, bilateral_H, bilateral_I,
    coeff_formula, gauss_binom, multisum_gen, multisum_reversed, S1M_S2M,
    symmetry_sides, transformation_sides, triple_sum_bivariate, wellpoised_check,
)
from .partitions import (
    B_series, conjugate, count_lambda, count_table, delta_sigma, f_series,
    g_series, gf_lambda, is_e_restricted, is_restricted, iter_lambda,
    residue_profile,
)
from .qseries import (
    Monomial, QSeries, XPoly, jacobi_triple, poch_finite, poch_infinite,
    poch_multi, product_ariki_mathas, q, xq,
)

__version__ = "0.1.0"
