"""Groebner bases over GF(p), Hilbert polynomials, smoothness and C3 diagonalization."""

from .c3 import C3Diagonalization, diagonalize_c3, eigen_linear_forms, monomial_count
from .groebner import (
    DEGREVLEX,
    GroebnerBasis,
    GroebnerTimeout,
    MonomialOrder,
    groebner_basis,
    is_groebner,
    spoly_certificate,
)
from .hilbert import HilbertData, hilbert_from_monomials, hilbert_polynomial
from .smooth import SmoothnessReport, maximal_minors, singular_locus_ideal, smoothness_check_mod_p
