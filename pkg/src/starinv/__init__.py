"""Group, Moore–Penrose, core and dual core inverses in rings with involution.

Two backends: exact Gaussian-rational matrices (:mod:`starinv.exact_matrix`)
and small finite *-rings searched exhaustively (:mod:`starinv.finite_rings`).
"""

from .errors import (
    CensusBoundExceeded,
    NoBCInverse,
    NotCoreInvertible,
    NotDualCoreInvertible,
    NotGroupInvertible,
    NotInvertible,
    NotInvertibleAlong,
    NotMPInvertible,
    PrerequisiteMissing,
    RingContextError,
    TheoremViolation,
)
from .exact_matrix import ExactMatrix, MatrixRing, rank, rank_factorize, rref
from .finite_rings import FiniteRingElement, MatZmodP, ZmodN, census, enumerate_inverse_set, parse_ring
from .gaussian import GaussianRational
from .inverses import (
    IdempotentTriple,
    InverseBundle,
    core_inverse,
    double_inverse_table,
    dual_core_inverse,
    group_inverse,
    idempotent_triple,
    inverse_bundle,
    mp_inverse,
    power_core,
)
from .verifier import (
    along_core_crosscheck,
    bc_inverse,
    check_equations,
    emit_certificate,
    ep_check,
    inverse_along,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "CensusBoundExceeded",
    "ExactMatrix",
    "FiniteRingElement",
    "GaussianRational",
    "IdempotentTriple",
    "InverseBundle",
    "MatZmodP",
    "MatrixRing",
    "NoBCInverse",
    "NotCoreInvertible",
    "NotDualCoreInvertible",
    "NotGroupInvertible",
    "NotInvertible",
    "NotInvertibleAlong",
    "NotMPInvertible",
    "PrerequisiteMissing",
    "RingContextError",
    "TheoremViolation",
    "ZmodN",
    "along_core_crosscheck",
    "bc_inverse",
    "census",
    "check_equations",
    "core_inverse",
    "double_inverse_table",
    "dual_core_inverse",
    "emit_certificate",
    "enumerate_inverse_set",
    "ep_check",
    "group_inverse",
    "idempotent_triple",
    "inverse_along",
    "inverse_bundle",
    "mp_inverse",
    "parse_ring",
    "power_core",
    "rank",
    "rank_factorize",
    "rref",
    "verify_certificate",
]
