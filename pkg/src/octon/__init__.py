"""Octon algebra and the octonic formulation of classical electrodynamics."""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    XI,
    BasisUnit,
    Grade,
    GradedParts,
    MatrixPair,
    Octon,
    basis_product,
    complex_conjugate,
    gibbs_correspondence_check,
    grade_select,
    grade_split,
    multiply,
    scalar_product,
    spatial_inversion,
    to_matrix_pair,
    vector_product,
)
