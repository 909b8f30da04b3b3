"""Exact certificates for special subgroups of Bianchi groups."""
from .certificate import Certificate
from .cocompact import build_context, certify_cocompact, mod2_closure_order, sign_character
from .embed import certify_element, certify_family, remark_counterexample, reverify_family
from .exact import Matrix
from .finite import delta_image, enumerate_psl, fig8_index, index_formula, level_image
from .quadform import build_A_m, build_F, build_P_m, build_Q_m, four_square
from .racg import RacgGraph, free_retraction_witness, retract, tits_eval
from .ring import Mat2O, QuadInt, in_delta_m, is_congruence_level, phi_m

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Matrix", "QuadInt", "Mat2O", "RacgGraph",
    "four_square", "build_Q_m", "build_F", "build_P_m", "build_A_m",
    "phi_m", "is_congruence_level", "in_delta_m",
    "enumerate_psl", "index_formula", "level_image", "delta_image", "fig8_index",
    "certify_element", "certify_family", "reverify_family", "remark_counterexample",
    "build_context", "certify_cocompact", "sign_character", "mod2_closure_order",
    "tits_eval", "retract", "free_retraction_witness",
]
