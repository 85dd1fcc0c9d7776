"""Group, Moore–Penrose, core and dual core inverses and the idempotents p, q, r.

Every public function accepts an element of either backend.  Exact
matrices use closed forms built from a full-rank factorization ``a = f g``::

    a^#  = f (gf)^-2 g                 q = f (gf)^-1 g
    a^†  = g*(gg*)^-1 (f*f)^-1 f*      p = f (f*f)^-1 f*
    a^⊕  = f (gf)^-1 (f*f)^-1 f*       r = g*(gg*)^-1 g
    a_⊕  = g*(gg*)^-1 (gf)^-1 g

Finite rings use exhaustive search over the defining equation sets.
:func:`via_idempotents` gives the second, representation-based route
(``q a⁽¹⁾ q`` and friends) for either backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, singledispatch
from typing import Any, Optional

from .errors import (
    NotCoreInvertible,
    NotDualCoreInvertible,
    NotGroupInvertible,
    NotInvertible,
    NotMPInvertible,
    PrerequisiteMissing,
    SingularMatrix,
    TheoremViolation,
)
from .exact_matrix import ExactMatrix, alternate_inner_inverse, inner_inverse, inverse, rank, rank_factorize
from .finite_rings import FiniteRingElement
from .ring_core import same_left_ideal, same_right_ideal

KINDS = ("group", "mp", "core", "dual_core")
MAX_POWER = 6

_ERRORS = {
    "group": NotGroupInvertible,
    "mp": NotMPInvertible,
    "core": NotCoreInvertible,
    "dual_core": NotDualCoreInvertible,
}


# matrix closed forms -------------------------------------------------------------


@dataclass(frozen=True)
class _Pieces:
    f: ExactMatrix
    g: ExactMatrix
    fh: ExactMatrix
    gh: ExactMatrix
    gf_inv: Optional[ExactMatrix]  # None when index > 1
    ftf_inv: ExactMatrix
    ggh_inv: ExactMatrix


@lru_cache(maxsize=8192)
def _pieces(a: ExactMatrix) -> Optional[_Pieces]:
    if a.is_zero():
        return None
    fac = rank_factorize(a)
    f, g = fac.f, fac.g
    fh, gh = f.H, g.H
    try:
        gf_inv = inverse(g @ f)
    except SingularMatrix:
        gf_inv = None
    return _Pieces(f, g, fh, gh, gf_inv, inverse(fh @ f), inverse(g @ gh))


def _index_witness(a: ExactMatrix) -> dict:
    return {"rank": rank(a), "rank_square": rank(a @ a)}


def _matrix_inverse(a: ExactMatrix, kind: str) -> ExactMatrix:
    if not a.is_square():
        raise ValueError("generalized inverses are taken in M_n; matrix must be square")
    pc = _pieces(a)
    if pc is None:
        return a.ring.zero()
    if kind == "mp":
        return pc.gh @ pc.ggh_inv @ pc.ftf_inv @ pc.fh
    if pc.gf_inv is None:
        raise _ERRORS[kind](f"no {kind} inverse: index of the matrix exceeds 1", _index_witness(a))
    if kind == "group":
        return pc.f @ (pc.gf_inv @ pc.gf_inv) @ pc.g
    if kind == "core":
        return pc.f @ pc.gf_inv @ pc.ftf_inv @ pc.fh
    if kind == "dual_core":
        return pc.gh @ pc.ggh_inv @ pc.gf_inv @ pc.g
    raise ValueError(f"unknown inverse kind {kind!r}")


def _matrix_triple(a: ExactMatrix) -> tuple:
    pc = _pieces(a)
    if pc is None:
        z = a.ring.zero()
        return z, z, z
    p = pc.f @ pc.ftf_inv @ pc.fh
    r = pc.gh @ pc.ggh_inv @ pc.g
    q = None if pc.gf_inv is None else pc.f @ pc.gf_inv @ pc.g
    return p, q, r


# finite-ring search ------------------------------------------------------------------


def _finite_inverse(a: FiniteRingElement, kind: str) -> FiniteRingElement:
    found = a.ring.solutions(a.index)[kind]
    if len(found) > 1:
        raise TheoremViolation(f"{kind} inverse of {a!r} is not unique: {found}")
    if not found:
        raise _ERRORS[kind](f"no {kind} inverse of {a!r}", {"search": "empty"})
    return FiniteRingElement(a.ring, found[0])


def _unique(ring, hits: list[int], what: str):
    if len(hits) > 1:
        raise TheoremViolation(f"{what} is not unique: {hits}")
    return FiniteRingElement(ring, hits[0]) if hits else None


def _finite_triple(a: FiniteRingElement) -> tuple:
    ring, i = a.ring, a.index
    right, left = ring.right_ideal_mask(i), ring.left_ideal_mask(i)
    projections = ring.projection_indices()
    p = _unique(ring, [e for e in projections if ring.right_ideal_mask(e) == right], "p")
    r = _unique(ring, [e for e in projections if ring.left_ideal_mask(e) == left], "r")
    q = _unique(
        ring,
        [e for e in ring.idempotent_indices() if ring.right_ideal_mask(e) == right and ring.left_ideal_mask(e) == left],
        "q",
    )
    return p, q, r


# public API -------------------------------------------------------------------------


@singledispatch
def _inverse(a: Any, kind: str):
    raise TypeError(f"unsupported element type {type(a).__name__}")


@_inverse.register
def _(a: ExactMatrix, kind: str):
    return _matrix_inverse(a, kind)


@_inverse.register
def _(a: FiniteRingElement, kind: str):
    return _finite_inverse(a, kind)


def group_inverse(a):
    """``a^#``; raises :class:`NotGroupInvertible` with a rank or search witness."""
    return _inverse(a, "group")


def mp_inverse(a):
    """``a^†``.  Always exists on the matrix backend."""
    return _inverse(a, "mp")


def core_inverse(a):
    """``a^⊕``: the unique solution of equation ids 1, 2, 3, 6, 7."""
    return _inverse(a, "core")


def dual_core_inverse(a):
    """``a_⊕``: the unique solution of equation ids 1, 2, 4, 8, 9."""
    return _inverse(a, "dual_core")


def generalized_inverse(a, kind: str):
    if kind not in KINDS:
        raise ValueError(f"unknown inverse kind {kind!r}; expected one of {KINDS}")
    return _inverse(a, kind)


def try_inverse(a, kind: str):
    """Like :func:`generalized_inverse` but returns ``None`` on nonexistence."""
    try:
        return generalized_inverse(a, kind)
    except NotInvertible:
        return None


@dataclass(frozen=True)
class IdempotentTriple:
    """``p`` (self-adjoint, pR = aR), ``q`` (qR = aR, Rq = Ra), ``r`` (self-adjoint, Rr = Ra)."""

    p: Any = None
    q: Any = None
    r: Any = None

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r}


def idempotent_triple(a, *, verify: bool = True) -> IdempotentTriple:
    """The idempotents attached to ``a``; absent ones are ``None``.

    Matrices use closed forms, finite rings search all idempotents directly
    against the ideal conditions.  With ``verify`` each present member is
    re-checked against those ideal conditions.
    """
    if isinstance(a, ExactMatrix):
        p, q, r = _matrix_triple(a)
    elif isinstance(a, FiniteRingElement):
        p, q, r = _finite_triple(a)
    else:
        raise TypeError(f"unsupported element type {type(a).__name__}")
    if verify:
        if p is not None and not (p * p == p and p.star() == p and same_right_ideal(p, a)):
            raise TheoremViolation("p fails pR = aR or is not a projection")
        if r is not None and not (r * r == r and r.star() == r and same_left_ideal(r, a)):
            raise TheoremViolation("r fails Rr = Ra or is not a projection")
        if q is not None and not (q * q == q and same_right_ideal(q, a) and same_left_ideal(q, a)):
            raise TheoremViolation("q fails qR = aR, Rq = Ra or is not idempotent")
    return IdempotentTriple(p, q, r)


def default_inner_inverse(a):
    """The canonical ``a⁽¹⁾``: Moore–Penrose on matrices, smallest index on finite rings."""
    if isinstance(a, ExactMatrix):
        return inner_inverse(a)
    inner = a.ring.inner_inverse_indices(a.index)
    if not inner:
        raise NotInvertible(f"{a!r} is not regular", {"search": "empty"})
    return FiniteRingElement(a.ring, inner[0])


def alternate_inner(a):
    """A second ``a⁽¹⁾`` for invariance checks (largest index on finite rings)."""
    if isinstance(a, ExactMatrix):
        return alternate_inner_inverse(a)
    inner = a.ring.inner_inverse_indices(a.index)
    if not inner:
        raise NotInvertible(f"{a!r} is not regular", {"search": "empty"})
    return FiniteRingElement(a.ring, inner[-1])


# which idempotents sandwich a⁽¹⁾ for each inverse
_SANDWICH = {"group": ("q", "q"), "mp": ("r", "p"), "core": ("q", "p"), "dual_core": ("r", "q")}


def via_idempotents(a, kind: str, inner=None, triple: Optional[IdempotentTriple] = None):
    """Representation route: ``q a⁽¹⁾ q``, ``r a⁽¹⁾ p``, ``q a⁽¹⁾ p`` or ``r a⁽¹⁾ q``.

    Returns ``None`` when a needed idempotent does not exist.
    """
    if triple is None:
        triple = idempotent_triple(a, verify=False)
    left, right = (getattr(triple, s) for s in _SANDWICH[kind])
    if left is None or right is None:
        return None
    if inner is None:
        inner = default_inner_inverse(a)
    return left * inner * right


@dataclass
class InverseBundle:
    a: Any
    group: Any = None
    mp: Any = None
    core: Any = None
    dual_core: Any = None
    triple: IdempotentTriple = field(default_factory=IdempotentTriple)
    witnesses: dict = field(default_factory=dict)

    def get(self, kind: str):
        return getattr(self, kind)

    def present(self) -> dict[str, bool]:
        return {k: getattr(self, k) is not None for k in KINDS}


def inverse_bundle(a) -> InverseBundle:
    bundle = InverseBundle(a)
    for kind in KINDS:
        try:
            setattr(bundle, kind, generalized_inverse(a, kind))
        except NotInvertible as exc:
            bundle.witnesses[kind] = exc.witness
    bundle.triple = idempotent_triple(a)
    has = bundle.present()
    if has["core"] and not has["group"] or has["dual_core"] and not has["group"]:
        raise TheoremViolation("core or dual core invertible without a group inverse")
    if (has["group"] and has["mp"]) != (has["core"] and has["dual_core"]):
        raise TheoremViolation("group∧MP invertibility disagrees with core∧dual-core invertibility")
    return bundle


def route_agreement(a, inner=None) -> dict[str, bool]:
    """Compare each existing inverse with its representation-route value."""
    triple = idempotent_triple(a, verify=False)
    out = {}
    for kind in KINDS:
        direct = try_inverse(a, kind)
        via = via_idempotents(a, kind, inner=inner, triple=triple)
        if direct is None and via is None:
            continue
        out[kind] = direct is not None and via is not None and direct == via
    return out


# double inverses and powers ---------------------------------------------------------


@dataclass(frozen=True)
class DoubleInverseTable:
    """``entries[(inner, outer)]`` is the outer-kind inverse of the inner-kind inverse of ``a``."""

    entries: dict
    closed_forms: dict

    def __len__(self):
        return len(self.entries)


def double_inverse_table(a) -> DoubleInverseTable:
    """All sixteen double inverses, by recursion and by closed form; they must agree."""
    if try_inverse(a, "group") is None or try_inverse(a, "mp") is None:
        raise PrerequisiteMissing("double inverse table needs a group- and MP-invertible element")
    firsts = {k: generalized_inverse(a, k) for k in KINDS}
    t = idempotent_triple(a, verify=False)
    p, q, r = t.p, t.q, t.r
    qs = q.star()
    closed = {
        ("group", "group"): a,
        ("group", "mp"): r * a * p,
        ("group", "core"): a * p,
        ("group", "dual_core"): r * a,
        ("mp", "group"): qs * a * qs,
        ("mp", "mp"): a,
        ("mp", "core"): qs * a,
        ("mp", "dual_core"): a * qs,
    }
    for outer in KINDS:
        closed[("core", outer)] = a * p
        closed[("dual_core", outer)] = r * a
    entries = {}
    for inner_kind in KINDS:
        x = firsts[inner_kind]
        for outer in KINDS:
            try:
                val = generalized_inverse(x, outer)
            except NotInvertible as exc:
                raise TheoremViolation(f"({inner_kind})^{outer} does not exist") from exc
            if val != closed[(inner_kind, outer)]:
                raise TheoremViolation(f"double inverse ({inner_kind})^{outer} disagrees with its closed form")
            entries[(inner_kind, outer)] = val
    return DoubleInverseTable(entries, closed)


def power_core(a, n: int, *, max_power: int = MAX_POWER):
    """``(a^n)^⊕``, checked against ``(a^⊕)^n``."""
    if not 1 <= n <= max_power:
        raise ValueError(f"power must lie in 1..{max_power}")
    x = core_inverse(a)
    an = a
    xn = x
    for _ in range(n - 1):
        an = an * a
        xn = xn * x
    value = core_inverse(an)
    if value != xn:
        raise TheoremViolation(f"(a^{n})^⊕ differs from (a^⊕)^{n}")
    return value
