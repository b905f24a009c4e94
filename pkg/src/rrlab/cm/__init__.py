"""Singular values of the normalized series at CM points."""

from .forms import (CMPoint, QuadForm, beta_matrix, canonical_tau, delta_matrix, parse_tau,
                    reduced_forms, tau_of_form, w_group)
from .minpoly import IntPoly, minpoly, unit_flags
from .numeric import HPComplex, eta, j_invariant, klein_t, siegel_g
from .products import (SiegelProduct, SiegelTerm, first_letter_check, fn_membership,
                       orbit_multiset, orbit_poly, phi_cm, phi_siegel_product, psi_cm,
                       psi_siegel_product, three_way)

__all__ = ["CMPoint", "HPComplex", "IntPoly", "QuadForm", "SiegelProduct", "SiegelTerm",
           "beta_matrix", "canonical_tau", "delta_matrix", "eta", "first_letter_check",
           "fn_membership", "j_invariant", "klein_t", "minpoly", "orbit_multiset", "orbit_poly",
           "parse_tau", "phi_cm", "phi_siegel_product", "psi_cm", "psi_siegel_product",
           "reduced_forms", "siegel_g", "tau_of_form", "three_way", "unit_flags", "w_group"]
