"""Exact generalized inverses of dual matrices and ring elements under radical perturbation."""

from .core import InverseKind, verify_inverse
from .dualmat import DualMatrix, dual_generalized_inverse, radical_split, regularity_certificate
from .finite_ring import RingSpec, campaign
from .matrices import Matrix
from .perturb import mgc_perturb, regular_perturb, theorem33

__all__ = [
    "DualMatrix",
    "InverseKind",
    "Matrix",
    "RingSpec",
    "campaign",
    "dual_generalized_inverse",
    "mgc_perturb",
    "radical_split",
    "regular_perturb",
    "regularity_certificate",
    "theorem33",
    "verify_inverse",
]
