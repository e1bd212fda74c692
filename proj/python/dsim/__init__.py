"""Discriminative-similarity clustering and semi-supervised learning.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._dsim import (  # noqa: F401
    NumericalError,
    accuracy,
    bandwidth_heuristic,
    cdsk,
    classifier_diagnostics,
    decompose_similarity,
    discriminative_similarity,
    eigen_symmetric,
    generate_blobs,
    generate_two_moons,
    gram,
    gram_sqrt2,
    harmonic_propagate,
    kmeans,
    lpdsk,
    nmi,
    omega,
    project_simplex,
    solve_simplex_qp,
    standardize,
)

__all__ = [
    "NumericalError",
    "accuracy",
    "bandwidth_heuristic",
    "cdsk",
    "classifier_diagnostics",
    "decompose_similarity",
    "discriminative_similarity",
    "eigen_symmetric",
    "generate_blobs",
    "generate_two_moons",
    "gram",
    "gram_sqrt2",
    "harmonic_propagate",
    "kmeans",
    "lpdsk",
    "nmi",
    "omega",
    "project_simplex",
    "solve_simplex_qp",
    "standardize",
]
