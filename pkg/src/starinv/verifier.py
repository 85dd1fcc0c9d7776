"""Equation checkers, the EP battery, inverses along an element and (b, c)-inverses.

Also builds self-contained certificates: JSON documents that embed the
element and every claimed inverse, so :func:`verify_certificate` can
re-check them without recomputing anything.

Equation ids follow the master list::

    1  a x a = a        4  (x a)* = x a      7  a x x = x
    2  x a x = x        5  a x = x a         8  a a x = a
    3  (a x)* = a x     6  x a a = a         9  x x a = x
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .errors import (
    NoBCInverse,
    NotInvertible,
    NotInvertibleAlong,
    PrerequisiteMissing,
    SingularMatrix,
    TheoremViolation,
)
from .exact_matrix import ExactMatrix, column_space_contains, inverse, rank, rank_factorize, row_space_contains
from .finite_rings import DEFAULT_CENSUS_BOUND, FiniteRingElement, parse_ring
from .inverses import (
    KINDS,
    IdempotentTriple,
    InverseBundle,
    alternate_inner,
    inverse_bundle,
    route_agreement,
    try_inverse,
)
from .ring_core import commutator, h_preorder_leq, is_zero, same_left_ideal, same_right_ideal, same_ring

CERTIFICATE_SCHEMA = "starinv.certificate/1"

EQUATIONS: dict[int, Callable[[Any, Any], tuple[Any, Any]]] = {
    1: lambda a, x: (a * x * a, a),
    2: lambda a, x: (x * a * x, x),
    3: lambda a, x: ((a * x).star(), a * x),
    4: lambda a, x: ((x * a).star(), x * a),
    5: lambda a, x: (a * x, x * a),
    6: lambda a, x: (x * a * a, a),
    7: lambda a, x: (a * x * x, x),
    8: lambda a, x: (a * a * x, a),
    9: lambda a, x: (x * x * a, x),
}

DEFINING_EQUATIONS = {
    "group": (1, 2, 5),
    "mp": (1, 2, 3, 4),
    "core": (1, 2, 3, 6, 7),
    "dual_core": (1, 2, 4, 8, 9),
}


@dataclass(frozen=True)
class EquationReport:
    equation_id: int
    lhs: Any
    rhs: Any
    holds: bool


def check_equations(a, x, ids: Iterable[int]) -> list[EquationReport]:
    same_ring(a, x)
    reports = []
    for i in sorted(set(ids)):
        if i not in EQUATIONS:
            raise ValueError(f"equation id {i} outside 1..9")
        lhs, rhs = EQUATIONS[i](a, x)
        reports.append(EquationReport(i, lhs, rhs, lhs == rhs))
    return reports


def satisfies(a, x, ids: Iterable[int]) -> bool:
    return all(r.holds for r in check_equations(a, x, ids))


# EP battery ------------------------------------------------------------------------


@dataclass
class EPVerdict:
    is_ep: bool
    conditions: dict[str, bool]
    complete: bool = True  # False when the group/MP-dependent conditions were skipped

    @property
    def coherent(self) -> bool:
        return all(v == self.is_ep for v in self.conditions.values())

    def to_json(self) -> dict:
        return {"is_ep": self.is_ep, "complete": self.complete, "conditions": dict(self.conditions)}


def _eq(x, y) -> bool:
    return x is not None and y is not None and x == y


def ep_check(a, bundle: Optional[InverseBundle] = None) -> EPVerdict:
    """Evaluate every EP criterion for ``a``; all of them must agree.

    Raises :class:`PrerequisiteMissing` (carrying the partial verdict) when
    ``a`` is not both group and MP invertible, since the commutator and
    product criteria need both inverses.
    """
    b = bundle if bundle is not None else inverse_bundle(a)
    t = b.triple
    g, m, c, d = b.group, b.mp, b.core, b.dual_core
    conds = {
        "group_eq_mp": _eq(g, m),
        "p_eq_r": m is not None and _eq(t.p, t.r),
        "p_eq_q": c is not None and _eq(t.p, t.q),
        "r_eq_q": d is not None and _eq(t.r, t.q),
        "group_eq_core": _eq(g, c),
        "group_eq_dual_core": _eq(g, d),
        "mp_eq_core": g is not None and _eq(m, c),
        "mp_eq_dual_core": g is not None and _eq(m, d),
        "core_eq_dual_core": g is not None and m is not None and _eq(c, d),
    }
    is_ep = conds["group_eq_mp"]
    if g is None or m is None:
        verdict = EPVerdict(is_ep, conds, complete=False)
        if not verdict.coherent:
            raise TheoremViolation(f"EP criteria disagree: {conds}")
        raise PrerequisiteMissing("element is not both group and MP invertible", verdict)

    p, q, r = t.p, t.q, t.r
    qs = q.star()
    conds.update({
        "commutator_a_mp_zero": is_zero(commutator(a, m)),
        "commutator_a_core_zero": is_zero(commutator(a, c)),
        "commutator_a_dual_core_zero": is_zero(commutator(a, d)),
        "commutator_group_mp_zero": is_zero(commutator(g, m)),
        "commutator_group_core_zero": is_zero(commutator(g, c)),
        "commutator_group_dual_core_zero": is_zero(commutator(g, d)),
        "a_p_eq_a": a * p == a,
        "r_a_eq_a": r * a == a,
        "r_a_p_eq_a": r * a * p == a,
        "qs_a_eq_a": qs * a == a,
        "a_qs_eq_a": a * qs == a,
        "qs_a_qs_eq_a": qs * a * qs == a,
        "a_p_eq_r_a": a * p == r * a,
        "r_a_p_eq_r_a": r * a * p == r * a,
        "r_a_p_eq_a_p": r * a * p == a * p,
        "qs_a_eq_a_p": qs * a == a * p,
        "a_qs_eq_r_a": a * qs == r * a,
    })
    verdict = EPVerdict(is_ep, conds)
    if not verdict.coherent:
        bad = sorted(k for k, v in conds.items() if v != is_ep)
        raise TheoremViolation(f"EP criteria disagree with verdict {is_ep}: {bad}")
    return verdict


# inverse along d, (b, c)-inverse ---------------------------------------------------------


def _is_along(a, d, x) -> bool:
    return x * a * d == d and d * a * x == d and h_preorder_leq(x, d)


def inverse_along(a, d):
    """The unique ``x`` with ``x a d = d = d a x`` and ``x ≤_H d``.

    Matrices: with ``d = F G`` a full-rank factorization, any such ``x`` is
    ``F Y G`` and the two equations force ``Y = (G a F)^-1``.  The candidate is
    then verified exactly.  Finite rings: exhaustive search.
    """
    same_ring(a, d)
    if isinstance(a, ExactMatrix):
        if d.is_zero():
            x = d
        else:
            fac = rank_factorize(d)
            core = fac.g @ a @ fac.f
            try:
                x = fac.f @ inverse(core) @ fac.g
            except SingularMatrix:
                raise NotInvertibleAlong(
                    "G a F is singular", {"rank_d": fac.rank, "rank_gaf": rank(core)}
                ) from None
        if not _is_along(a, d, x):
            raise TheoremViolation("inverse-along candidate fails its defining conditions")
        return x
    ring = a.ring
    ai, di = a.index, d.index
    mul = ring.mul
    dR, Rd = ring.right_ideal_mask(di), ring.left_ideal_mask(di)
    ad, da = mul(ai, di), mul(di, ai)
    hits = [
        x for x in range(ring.order)
        if dR >> x & 1 and Rd >> x & 1 and mul(x, ad) == di and mul(da, x) == di
    ]
    if len(hits) > 1:
        raise TheoremViolation(f"inverse of {a!r} along {d!r} is not unique: {hits}")
    if not hits:
        raise NotInvertibleAlong(f"no inverse of {a!r} along {d!r}", {"search": "empty"})
    return FiniteRingElement(ring, hits[0])


def _finite_in_bRx(ring, b: int, x: int) -> bool:
    mul = ring.mul
    return any(mul(mul(b, w), x) == x for w in range(ring.order))


def _finite_in_xRc(ring, x: int, c: int) -> bool:
    mul = ring.mul
    return any(mul(mul(x, w), c) == x for w in range(ring.order))


def bc_inverse(a, b, c):
    """The unique ``x ∈ bRx ∩ xRc`` with ``x a b = b`` and ``c a x = c``.

    Matrices: with ``b = F1 G1`` and ``c = F2 G2``, ``x = F1 (G2 a F1)^-1 G2``
    when that block is square and invertible; membership in ``bRx`` and
    ``xRc`` is then decided by column/row-space containment.
    """
    same_ring(a, b, c)
    if isinstance(a, ExactMatrix):
        if b.is_zero() or c.is_zero():
            if not (b.is_zero() and c.is_zero()):
                raise NoBCInverse("exactly one of b, c is zero", {"rank_b": rank(b), "rank_c": rank(c)})
            return b
        fb, fc = rank_factorize(b), rank_factorize(c)
        block = fc.g @ a @ fb.f
        try:
            x = fb.f @ inverse(block) @ fc.g
        except SingularMatrix:
            raise NoBCInverse(
                "G2 a F1 is not invertible",
                {"rank_b": fb.rank, "rank_c": fc.rank, "rank_block": rank(block)},
            ) from None
        ok = (
            x * a * b == b and c * a * x == c and x * a * x == x
            and column_space_contains(b, x) and row_space_contains(c, x)
        )
        if not ok:
            raise TheoremViolation("(b, c)-inverse candidate fails its defining conditions")
        return x
    ring = a.ring
    mul = ring.mul
    ai, bi, ci = a.index, b.index, c.index
    ab, ca = mul(ai, bi), mul(ci, ai)
    hits = [
        x for x in range(ring.order)
        if mul(x, ab) == bi and mul(ca, x) == ci and _finite_in_bRx(ring, bi, x) and _finite_in_xRc(ring, x, ci)
    ]
    if len(hits) > 1:
        raise TheoremViolation(f"(b, c)-inverse is not unique: {hits}")
    if not hits:
        raise NoBCInverse("no (b, c)-inverse", {"search": "empty"})
    x = hits[0]
    if mul(mul(x, ai), x) != x:
        raise TheoremViolation("(b, c)-inverse is not an outer inverse")
    return FiniteRingElement(ring, x)


def _try(fn, *args):
    try:
        return fn(*args)
    except NotInvertible:
        return None


def _match(x, y) -> bool:
    return (x is None and y is None) or (x is not None and y is not None and x == y)


def along_core_crosscheck(a) -> bool:
    """Inverse along ``a a*`` matches the core inverse, along ``a* a`` the dual core inverse.

    Requires ``a`` to be MP invertible.
    """
    if try_inverse(a, "mp") is None:
        raise PrerequisiteMissing("the cross-check needs an MP-invertible element")
    s = a.star()
    return (
        _match(_try(inverse_along, a, a * s), try_inverse(a, "core"))
        and _match(_try(inverse_along, a, s * a), try_inverse(a, "dual_core"))
    )


def connection_checks(a, bundle: Optional[InverseBundle] = None) -> dict[str, Optional[bool]]:
    """Each inverse recovered as an inverse along an element or a (b, c)-inverse.

    Value ``None`` means the check does not apply (no MP inverse for the
    along-``aa*`` pair).
    """
    b = bundle if bundle is not None else inverse_bundle(a)
    s = a.star()
    out: dict[str, Optional[bool]] = {
        "group_is_inverse_along_a": _match(_try(inverse_along, a, a), b.group),
        "mp_is_inverse_along_a_star": _match(_try(inverse_along, a, s), b.mp),
        "group_is_bc_inverse_a_a": _match(_try(bc_inverse, a, a, a), b.group),
        "mp_is_bc_inverse_astar_astar": _match(_try(bc_inverse, a, s, s), b.mp),
        "core_is_bc_inverse_a_astar": _match(_try(bc_inverse, a, a, s), b.core),
        "dual_core_is_bc_inverse_astar_a": _match(_try(bc_inverse, a, s, a), b.dual_core),
        "core_is_inverse_along_a_astar": None,
        "dual_core_is_inverse_along_astar_a": None,
    }
    if b.mp is not None:
        out["core_is_inverse_along_a_astar"] = _match(_try(inverse_along, a, a * s), b.core)
        out["dual_core_is_inverse_along_astar_a"] = _match(_try(inverse_along, a, s * a), b.dual_core)
    return out


# serialization -----------------------------------------------------------------------


def element_to_json(x) -> Optional[dict]:
    if x is None:
        return None
    return x.to_json()


def element_from_json(obj: dict):
    if "ring" in obj:
        ring = parse_ring(obj["ring"])
        return ring.element(int(obj["index"]))
    return ExactMatrix.from_json(obj)


# certificates -----------------------------------------------------------------------


@dataclass
class Certificate:
    element: Any
    backend: dict
    bundle: InverseBundle
    equations: dict[str, list[EquationReport]]
    idempotent_checks: dict[str, bool]
    routes: dict[str, dict[str, bool]]
    ep: Optional[EPVerdict]
    ep_status: str
    connections: dict[str, Optional[bool]]
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        flags = [r.holds for reps in self.equations.values() for r in reps]
        flags += list(self.idempotent_checks.values())
        flags += [v for d in self.routes.values() for v in d.values()]
        flags += [v for v in self.connections.values() if v is not None]
        if self.ep is not None:
            flags.append(self.ep.coherent)
        return all(flags) and not self.problems

    def to_json(self) -> dict:
        inv = {}
        for kind in KINDS:
            x = self.bundle.get(kind)
            if x is None:
                inv[kind] = {"exists": False, "witness": self.bundle.witnesses.get(kind, {})}
            else:
                inv[kind] = {
                    "exists": True,
                    "value": element_to_json(x),
                    "equations": [{"id": r.equation_id, "holds": r.holds} for r in self.equations[kind]],
                }
        t = self.bundle.triple
        ep = {"status": self.ep_status}
        if self.ep is not None:
            ep.update(self.ep.to_json())
        return {
            "schema": CERTIFICATE_SCHEMA,
            "backend": self.backend,
            "element": element_to_json(self.element),
            "inverses": inv,
            "idempotents": {k: element_to_json(v) for k, v in t.as_dict().items()},
            "idempotent_checks": self.idempotent_checks,
            "routes": self.routes,
            "ep": ep,
            "connections": self.connections,
            "problems": self.problems,
            "valid": self.valid,
        }


def _triple_checks(a, t: IdempotentTriple) -> dict[str, bool]:
    out = {}
    if t.p is not None:
        out["p_projection"] = t.p * t.p == t.p and t.p.star() == t.p
        out["p_right_ideal"] = same_right_ideal(t.p, a)
    if t.r is not None:
        out["r_projection"] = t.r * t.r == t.r and t.r.star() == t.r
        out["r_left_ideal"] = same_left_ideal(t.r, a)
    if t.q is not None:
        out["q_idempotent"] = t.q * t.q == t.q
        out["q_ideals"] = same_right_ideal(t.q, a) and same_left_ideal(t.q, a)
    if t.p is not None and t.q is not None and t.r is not None:
        p, q, r = t.p, t.q, t.r
        qs = q.star()
        out["pq_q_qp_p_rq_r_qr_q"] = p * q == q and q * p == p and r * q == r and q * r == q
        out["qsp_qs_pqs_p_qsr_r_rqs_qs"] = qs * p == qs and p * qs == p and qs * r == r and r * qs == qs
    return out


def emit_certificate(a, *, bound: int = DEFAULT_CENSUS_BOUND) -> Certificate:
    if isinstance(a, FiniteRingElement):
        a.ring.check_bound(bound)
    problems: list[str] = []
    bundle = inverse_bundle(a)
    equations = {
        kind: check_equations(a, bundle.get(kind), DEFINING_EQUATIONS[kind])
        for kind in KINDS
        if bundle.get(kind) is not None
    }
    routes = {"canonical_inner": {}, "alternate_inner": {}}
    try:
        routes["canonical_inner"] = route_agreement(a)
        routes["alternate_inner"] = route_agreement(a, inner=alternate_inner(a))
    except NotInvertible:
        pass  # not regular: no inner inverse, nothing to compare
    try:
        ep, status = ep_check(a, bundle), "evaluated"
    except PrerequisiteMissing as exc:
        ep, status = exc.verdict, "prerequisites_missing"
    except TheoremViolation as exc:
        ep, status = None, "incoherent"
        problems.append(str(exc))
    try:
        connections = connection_checks(a, bundle)
    except TheoremViolation as exc:
        connections = {}
        problems.append(str(exc))
    return Certificate(
        element=a,
        backend=a.ring.descriptor(),
        bundle=bundle,
        equations=equations,
        idempotent_checks=_triple_checks(a, bundle.triple),
        routes=routes,
        ep=ep,
        ep_status=status,
        connections=connections,
        problems=problems,
    )


def _certificate_json(a) -> dict:
    return emit_certificate(a).to_json()


def emit_certificates(elements: list, *, workers: int = 1) -> list[dict]:
    """Certificates for a batch, in input order regardless of ``workers``."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(elements) < 2:
        return [_certificate_json(a) for a in elements]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_certificate_json, elements))


def verify_certificate(doc: dict) -> list[str]:
    """Independently re-check a certificate document; returns a list of problems.

    Only the embedded values are used: claimed inverses are re-substituted
    into their defining equations, nonexistence witnesses are recomputed,
    and the idempotents are checked against their ideal conditions.
    """
    problems: list[str] = []
    if doc.get("schema") != CERTIFICATE_SCHEMA:
        return [f"unknown schema {doc.get('schema')!r}"]
    a = element_from_json(doc["element"])
    claimed = {}
    for kind in KINDS:
        entry = doc["inverses"][kind]
        if entry["exists"]:
            x = element_from_json(entry["value"])
            claimed[kind] = x
            for rep in check_equations(a, x, DEFINING_EQUATIONS[kind]):
                if not rep.holds:
                    problems.append(f"{kind}: equation {rep.equation_id} fails")
        else:
            claimed[kind] = None
            w = entry.get("witness", {})
            if isinstance(a, ExactMatrix):
                if kind == "mp":
                    problems.append("mp inverse always exists for matrices")
                elif rank(a) == rank(a @ a) or w.get("rank") != rank(a) or w.get("rank_square") != rank(a @ a):
                    problems.append(f"{kind}: rank witness does not establish index > 1")
            elif try_inverse(a, kind) is not None:
                problems.append(f"{kind}: claimed nonexistent but a solution exists")
    idem = {k: (element_from_json(v) if v is not None else None) for k, v in doc["idempotents"].items()}
    for name, val in _triple_checks(a, IdempotentTriple(idem.get("p"), idem.get("q"), idem.get("r"))).items():
        if not val:
            problems.append(f"idempotent check {name} fails")
    ep = doc.get("ep", {})
    if ep.get("status") == "evaluated" or ep.get("status") == "prerequisites_missing":
        truth = claimed["group"] is not None and claimed["mp"] is not None and claimed["group"] == claimed["mp"]
        if bool(ep.get("is_ep")) != truth:
            problems.append("EP verdict inconsistent with the claimed group and MP inverses")
    elif ep.get("status") == "incoherent":
        problems.append("EP battery was incoherent")
    for name, val in doc.get("connections", {}).items():
        if val is False:
            problems.append(f"connection check {name} failed")
    for name, d in doc.get("routes", {}).items():
        if not all(d.values()):
            problems.append(f"route agreement failed for {name}")
    problems.extend(doc.get("problems", []))
    if doc.get("valid") is not True and not problems:
        problems.append("certificate marked invalid")
    return problems
