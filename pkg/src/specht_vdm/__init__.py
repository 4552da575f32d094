"""Exact determinant identities for amalgamated matrix products and Vandermonde matrices.

Submodules: ``exact_core`` (rationals, polynomials, exact determinants),
``tableaux``, ``fayers``, ``amalgam``, ``vandermonde``, ``fekete`` and the
command line in ``cli``.
"""
from .amalgam import AmalgamPair, det_via_theorem3, kappa, kron_embed, perm_sum_theorem4, star
from .exact_core import Matrix, MultiPoly, det_exact
from .fayers import fayers_matrix, hook_product, pairing, phi_matrix
from .tableaux import Tableau, enumerate_syt

__version__ = "0.1.0"

__all__ = [
    "AmalgamPair",
    "Matrix",
    "MultiPoly",
    "Tableau",
    "det_exact",
    "det_via_theorem3",
    "enumerate_syt",
    "fayers_matrix",
    "hook_product",
    "kappa",
    "kron_embed",
    "pairing",
    "perm_sum_theorem4",
    "phi_matrix",
    "star",
]
