"""Exception types shared across backends."""

from __future__ import annotations

from typing import Any, Optional


class RingContextError(ValueError):
    """Operands live in different rings (different dimension or modulus)."""


class CensusBoundExceeded(ValueError):
    def __init__(self, order: int, bound: int):
        super().__init__(f"ring order {order} exceeds census bound {bound}")
        self.order = order
        self.bound = bound


class ZeroMatrix(ValueError):
    """The zero matrix has no full-rank factorization."""


class SingularMatrix(ArithmeticError):
    pass


class MatrixFormatError(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """Two routes that must agree did not.  Never expected; signals a bug."""


class NotInvertible(ArithmeticError):
    """Base for nonexistence of a generalized inverse.

    ``witness`` explains why: either a rank pair from the matrix backend,
    e.g. ``{"rank": 1, "rank_square": 0}``, or ``{"search": "empty"}`` from
    an exhaustive search.
    """

    kind = "inverse"

    def __init__(self, message: str = "", witness: Optional[dict[str, Any]] = None):
        super().__init__(message or f"no {self.kind} inverse")
        self.witness = dict(witness or {})


class NotGroupInvertible(NotInvertible):
    kind = "group"


class NotMPInvertible(NotInvertible):
    kind = "mp"


class NotCoreInvertible(NotInvertible):
    kind = "core"


class NotDualCoreInvertible(NotInvertible):
    kind = "dual_core"


class NotInvertibleAlong(NotInvertible):
    kind = "along"


class NoBCInverse(NotInvertible):
    kind = "bc"


class PrerequisiteMissing(ValueError):
    """Raised when a check needs ``a`` to be both group and MP invertible.

    ``verdict`` holds whatever could still be evaluated.
    """

    def __init__(self, message: str, verdict: Any = None):
        super().__init__(message)
        self.verdict = verdict
