"""Exact verification of Hard Lefschetz and Hodge-Riemann for Chow rings of matroids."""

from .bergman import bergman_fan, deletion_tower, link_factorization
from .chow import ChowRing, chow_ring, is_balanced, mw_space
from .convexity import DivisorClass, classify, is_strictly_convex, submodular_class
from .errors import (AxiomViolation, ColoopInput, HodgeForgeError, InputError, InternalMismatch,
                     PreconditionFailure, VerificationFailure)
from .fan import Fan, FanMap, link, product, star, star_subdivision
from .hodge import (check_poincare_duality, deformation_scan, hl_check, hr_check, ortho_decomp_check,
                    poincare_pairing, signature, signature_lemma_check)
from .matroid import Matroid, boolean_matroid, matroid_from_flats, uniform_matroid
from .theorem import verify_main_theorem

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation", "ChowRing", "ColoopInput", "DivisorClass", "Fan", "FanMap", "HodgeForgeError",
    "InputError", "InternalMismatch", "Matroid", "PreconditionFailure", "VerificationFailure",
    "bergman_fan", "boolean_matroid", "check_poincare_duality", "chow_ring", "classify",
    "deformation_scan", "deletion_tower", "hl_check", "hr_check", "is_balanced", "is_strictly_convex",
    "link", "link_factorization", "matroid_from_flats", "mw_space", "ortho_decomp_check",
    "poincare_pairing", "product", "signature", "signature_lemma_check", "star", "star_subdivision",
    "submodular_class", "uniform_matroid", "verify_main_theorem",
]
