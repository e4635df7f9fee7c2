"""Extreme-eigenvalue distributions of correlated complex Wishart matrices.

Spectra are eigenvalues of the inverse covariance matrix.
"""

from ._core import (
    ModelCase,
    NumericalError,
    Spectrum,
    cdf,
    cdf_max_schur,
    cdf_min_schur,
    cdf_min_tricomi,
    column_case,
    doubly_case,
    empirical_cdf,
    hyp1f1_matrix_det,
    hyp1f1_multivar,
    kummer_1f1,
    pdf,
    pdf_joint_minmax,
    prob_gap,
    reg_lower_gamma,
    reg_upper_gamma,
    row_case,
    schur_poly,
)

__all__ = [
    "ModelCase",
    "NumericalError",
    "Spectrum",
    "cdf",
    "cdf_max_schur",
    "cdf_min_schur",
    "cdf_min_tricomi",
    "column_case",
    "doubly_case",
    "empirical_cdf",
    "hyp1f1_matrix_det",
    "hyp1f1_multivar",
    "kummer_1f1",
    "pdf",
    "pdf_joint_minmax",
    "prob_gap",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "row_case",
    "schur_poly",
]
