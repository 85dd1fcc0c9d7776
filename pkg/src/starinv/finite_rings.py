"""Small finite *-rings with exhaustive enumeration.

Two families are supported:

* ``Z:n``   the integers mod ``n`` with the identity involution;
* ``Mk:Zp`` ``k x k`` matrices mod ``p`` with the transpose involution.

Elements are addressed by a canonical index.  For ``Z:n`` that is the
residue.  For ``Mk:Zp`` the ``k*k`` entries, read row-major, are the base-``p``
digits of the index with the first entry most significant, so index order
is lexicographic order on entry tuples.

Ideals and annihilators are computed by exhaustive search over the ring and
stored as integer bitsets, bit ``i`` standing for element ``i``.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import CensusBoundExceeded, RingContextError
from .ring_core import RingCapability, StarRing, Tier

DEFAULT_CENSUS_BOUND = 10_000
HARD_BOUND_CAP = 1_000_000

ALL_EQUATIONS = frozenset(range(1, 10))

# equation sets characterizing each inverse
GROUP_EQS = frozenset({1, 2, 5})
MP_EQS = frozenset({1, 2, 3, 4})
CORE_EQS = frozenset({1, 2, 3, 6, 7})
DUAL_CORE_EQS = frozenset({1, 2, 4, 8, 9})
CHARACTERIZING = {
    "group": GROUP_EQS,
    "mp": MP_EQS,
    "core": CORE_EQS,
    "dual_core": DUAL_CORE_EQS,
}
# both are equivalent to GROUP_EQS
GROUP_EQS_ALT = (frozenset({1, 2, 6, 8}), frozenset({1, 2, 7, 9}))


class FiniteStarRing(StarRing):
    """Base class; subclasses supply index arithmetic."""

    order: int

    def __init__(self):
        self._right_ideal: dict[int, int] = {}
        self._left_ideal: dict[int, int] = {}
        self._right_ann: dict[int, int] = {}
        self._left_ann: dict[int, int] = {}
        self._solutions: dict[int, dict] = {}
        self._idempotents: Optional[tuple[int, ...]] = None

    # index arithmetic --------------------------------------------------------

    def add(self, i: int, j: int) -> int:
        raise NotImplementedError

    def neg(self, i: int) -> int:
        raise NotImplementedError

    def mul(self, i: int, j: int) -> int:
        raise NotImplementedError

    def star_index(self, i: int) -> int:
        raise NotImplementedError

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    one_index: int
    zero_index: int = 0

    @property
    def key(self) -> tuple:
        raise NotImplementedError

    @property
    def label(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, FiniteStarRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __reduce__(self):
        return (type(self), self.key[1:])

    def __repr__(self):
        return f"FiniteStarRing({self.label!r})"

    # StarRing contract ----------------------------------------------------------

    @property
    def capability(self) -> RingCapability:
        return RingCapability(Tier.ENUMERABLE, self.order)

    def element(self, index: int) -> "FiniteRingElement":
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for {self.label}")
        return FiniteRingElement(self, index)

    def elements(self) -> list["FiniteRingElement"]:
        return [FiniteRingElement(self, i) for i in range(self.order)]

    def one(self) -> "FiniteRingElement":
        return FiniteRingElement(self, self.one_index)

    def zero(self) -> "FiniteRingElement":
        return FiniteRingElement(self, self.zero_index)

    def right_ideal_contains(self, b, a) -> bool:
        return bool(self.right_ideal_mask(b.index) >> a.index & 1)

    def left_ideal_contains(self, b, a) -> bool:
        return bool(self.left_ideal_mask(b.index) >> a.index & 1)

    # exhaustive ideal / annihilator sets ---------------------------------------

    def right_ideal_mask(self, b: int) -> int:
        """Bitset of ``bR``."""
        m = self._right_ideal.get(b)
        if m is None:
            m = 0
            for u in range(self.order):
                m |= 1 << self.mul(b, u)
            self._right_ideal[b] = m
        return m

    def left_ideal_mask(self, b: int) -> int:
        """Bitset of ``Rb``."""
        m = self._left_ideal.get(b)
        if m is None:
            m = 0
            for u in range(self.order):
                m |= 1 << self.mul(u, b)
            self._left_ideal[b] = m
        return m

    def right_annihilator_mask(self, a: int) -> int:
        """Bitset of ``a° = {x : a x = 0}``."""
        m = self._right_ann.get(a)
        if m is None:
            z = self.zero_index
            m = 0
            for x in range(self.order):
                if self.mul(a, x) == z:
                    m |= 1 << x
            self._right_ann[a] = m
        return m

    def left_annihilator_mask(self, a: int) -> int:
        """Bitset of ``°a = {x : x a = 0}``."""
        m = self._left_ann.get(a)
        if m is None:
            z = self.zero_index
            m = 0
            for x in range(self.order):
                if self.mul(x, a) == z:
                    m |= 1 << x
            self._left_ann[a] = m
        return m

    def idempotent_indices(self) -> tuple[int, ...]:
        if self._idempotents is None:
            self._idempotents = tuple(e for e in range(self.order) if self.mul(e, e) == e)
        return self._idempotents

    def projection_indices(self) -> tuple[int, ...]:
        """Self-adjoint idempotents."""
        return tuple(e for e in self.idempotent_indices() if self.star_index(e) == e)

    def check_bound(self, bound: int = DEFAULT_CENSUS_BOUND) -> None:
        if self.order > bound:
            raise CensusBoundExceeded(self.order, bound)

    # equation solving -------------------------------------------------------------

    def equation_holds(self, a: int, x: int, eq: int) -> bool:
        """Master equation list, evaluated on indices."""
        mul, star = self.mul, self.star_index
        if eq == 1:
            return mul(mul(a, x), a) == a
        if eq == 2:
            return mul(mul(x, a), x) == x
        if eq == 3:
            ax = mul(a, x)
            return star(ax) == ax
        if eq == 4:
            xa = mul(x, a)
            return star(xa) == xa
        if eq == 5:
            return mul(a, x) == mul(x, a)
        if eq == 6:
            return mul(x, mul(a, a)) == a
        if eq == 7:
            return mul(a, mul(x, x)) == x
        if eq == 8:
            return mul(mul(a, a), x) == a
        if eq == 9:
            return mul(mul(x, x), a) == x
        raise ValueError(f"unknown equation id {eq}")

    def inner_inverse_indices(self, a: int) -> tuple[int, ...]:
        """``a{1}`` by exhaustive search."""
        return self.solutions(a)["inner"]

    def solutions(self, a: int) -> dict:
        """All solution sets needed for the four inverses, cached per element.

        Keys: ``inner`` (``a{1}``), each name in :data:`CHARACTERIZING`, and
        ``group_6_8`` / ``group_7_9`` for the alternative group equation sets.
        """
        sol = self._solutions.get(a)
        if sol is None:
            sol = _solve_all(self, a)
            self._solutions[a] = sol
        return sol

    def descriptor(self) -> dict:
        raise NotImplementedError


def _solve_all(ring: FiniteStarRing, a: int) -> dict:
    mul, star = ring.mul, ring.star_index
    aa = mul(a, a)
    inner = tuple(x for x in range(ring.order) if mul(mul(a, x), a) == a)
    out = {k: [] for k in ("group", "mp", "core", "dual_core", "group_6_8", "group_7_9")}
    for x in inner:
        ax = mul(a, x)
        xa = mul(x, a)
        if mul(xa, x) != x:
            continue
        e3 = star(ax) == ax
        e4 = star(xa) == xa
        e5 = ax == xa
        e6 = mul(x, aa) == a
        xx = mul(x, x)
        e7 = mul(a, xx) == x
        e8 = mul(aa, x) == a
        e9 = mul(xx, a) == x
        if e5:
            out["group"].append(x)
        if e3 and e4:
            out["mp"].append(x)
        if e3 and e6 and e7:
            out["core"].append(x)
        if e4 and e8 and e9:
            out["dual_core"].append(x)
        if e6 and e8:
            out["group_6_8"].append(x)
        if e7 and e9:
            out["group_7_9"].append(x)
    result = {k: tuple(v) for k, v in out.items()}
    result["inner"] = inner
    return result


class ZmodN(FiniteStarRing):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        super().__init__()
        self.n = n
        self.order = n
        self.one_index = 1 % n

    @property
    def key(self):
        return ("Z", self.n)

    @property
    def label(self):
        return f"Z:{self.n}"

    def add(self, i, j):
        return (i + j) % self.n

    def neg(self, i):
        return (-i) % self.n

    def mul(self, i, j):
        return (i * j) % self.n

    def star_index(self, i):
        return i

    def entries(self, i: int) -> int:
        return i

    def descriptor(self) -> dict:
        return {"kind": "ZmodN", "n": self.n, "involution": "identity", "label": self.label}


class MatZmodP(FiniteStarRing):
    def __init__(self, k: int, p: int):
        if k < 1 or p < 2:
            raise ValueError("need k >= 1 and p >= 2")
        super().__init__()
        self.k = k
        self.p = p
        self.order = p ** (k * k)
        self._decoded: dict[int, tuple[int, ...]] = {}
        self.one_index = self.encode([1 if i == j else 0 for i in range(k) for j in range(k)])

    @property
    def key(self):
        return ("M", self.k, self.p)

    @property
    def label(self):
        return f"M{self.k}:Z{self.p}"

    def encode(self, entries: Sequence[int]) -> int:
        idx = 0
        p = self.p
        for e in entries:
            idx = idx * p + e % p
        return idx

    def entries(self, i: int) -> tuple[int, ...]:
        t = self._decoded.get(i)
        if t is None:
            digits = []
            p = self.p
            v = i
            for _ in range(self.k * self.k):
                v, d = divmod(v, p)
                digits.append(d)
            t = tuple(reversed(digits))
            self._decoded[i] = t
        return t

    def add(self, i, j):
        p = self.p
        return self.encode([(x + y) % p for x, y in zip(self.entries(i), self.entries(j))])

    def neg(self, i):
        return self.encode([-x for x in self.entries(i)])

    def mul(self, i, j):
        A, B = self.entries(i), self.entries(j)
        k, p = self.k, self.p
        idx = 0
        for r in range(k):
            for c in range(k):
                s = 0
                for t in range(k):
                    s += A[r * k + t] * B[t * k + c]
                idx = idx * p + s % p
        return idx

    def star_index(self, i):
        A, k = self.entries(i), self.k
        return self.encode([A[c * k + r] for r in range(k) for c in range(k)])

    def descriptor(self) -> dict:
        return {
            "kind": "MatZmodP",
            "k": self.k,
            "p": self.p,
            "involution": "transpose",
            "encoding": "row-major base-p digits, first entry most significant",
            "label": self.label,
        }


_RING_RE = re.compile(r"^\s*(?:Z:(\d+)|M(\d+):Z(\d+))\s*$")


def parse_ring(descriptor: str) -> FiniteStarRing:
    """Parse ``"Z:n"`` or ``"Mk:Zp"``."""
    m = _RING_RE.match(descriptor)
    if not m:
        raise ValueError(f"bad ring descriptor {descriptor!r}; expected 'Z:n' or 'Mk:Zp'")
    if m.group(1) is not None:
        return ZmodN(int(m.group(1)))
    return MatZmodP(int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True, eq=False)
class FiniteRingElement:
    ring: FiniteStarRing
    index: int

    def _other(self, other) -> int:
        if isinstance(other, FiniteRingElement):
            if other.ring != self.ring:
                raise RingContextError(f"ring mismatch: {self.ring.label} vs {other.ring.label}")
            return other.index
        raise TypeError(f"cannot combine a ring element with {type(other).__name__}")

    def __add__(self, other):
        return FiniteRingElement(self.ring, self.ring.add(self.index, self._other(other)))

    def __sub__(self, other):
        return FiniteRingElement(self.ring, self.ring.sub(self.index, self._other(other)))

    def __mul__(self, other):
        return FiniteRingElement(self.ring, self.ring.mul(self.index, self._other(other)))

    def __neg__(self):
        return FiniteRingElement(self.ring, self.ring.neg(self.index))

    def star(self) -> "FiniteRingElement":
        return FiniteRingElement(self.ring, self.ring.star_index(self.index))

    def __eq__(self, other):
        if not isinstance(other, FiniteRingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise RingContextError(f"ring mismatch: {self.ring.label} vs {other.ring.label}")
        return self.index == other.index

    def __hash__(self):
        return hash((self.ring.key, self.index))

    def entries(self):
        return self.ring.entries(self.index)

    def to_json(self) -> dict:
        ent = self.ring.entries(self.index)
        if isinstance(ent, tuple):
            k = self.ring.k
            ent = [list(ent[i * k:(i + 1) * k]) for i in range(k)]
        return {"ring": self.ring.label, "index": self.index, "value": ent}

    def __repr__(self):
        ent = self.ring.entries(self.index)
        if isinstance(ent, tuple):
            k = self.ring.k
            rows = ",".join("[" + ",".join(map(str, ent[i * k:(i + 1) * k])) + "]" for i in range(k))
            return f"<{self.ring.label} #{self.index} [{rows}]>"
        return f"<{self.ring.label} {ent}>"


@dataclass(frozen=True)
class InverseSet:
    element: FiniteRingElement
    equation_ids: frozenset
    members: tuple

    def __len__(self):
        return len(self.members)


def enumerate_inverse_set(
    a: FiniteRingElement,
    equation_ids: Iterable[int],
    *,
    bound: int = DEFAULT_CENSUS_BOUND,
    candidates: Optional[Iterable[int]] = None,
) -> InverseSet:
    """Every ``x`` satisfying each selected equation with ``a``, in index order.

    ``candidates`` restricts the scan (e.g. to a precomputed ``a{1}``); it must
    be a superset of the true answer.
    """
    ids = frozenset(equation_ids)
    if not ids <= ALL_EQUATIONS:
        raise ValueError(f"equation ids must lie in 1..9, got {sorted(ids)}")
    ring = a.ring
    ring.check_bound(bound)
    order = sorted(ids)
    pool = range(ring.order) if candidates is None else sorted(set(candidates))
    members = tuple(
        FiniteRingElement(ring, x)
        for x in pool
        if all(ring.equation_holds(a.index, x, e) for e in order)
    )
    return InverseSet(a, ids, members)


# census ---------------------------------------------------------------------------

CLASS_NAMES = ("regular", "group", "mp", "core", "dual_core")
SEPARATIONS = (
    ("core_not_mp", "core", "mp"),
    ("dual_core_not_mp", "dual_core", "mp"),
    ("core_not_dual_core", "core", "dual_core"),
    ("dual_core_not_core", "dual_core", "core"),
    ("group_not_mp", "group", "mp"),
    ("mp_not_group", "mp", "group"),
    ("group_not_core", "group", "core"),
    ("regular_not_mp", "regular", "mp"),
    ("regular_not_group", "regular", "group"),
)


def _classify_chunk(ring: FiniteStarRing, indices: Sequence[int]) -> list[tuple[int, dict[str, int], list[str]]]:
    rows = []
    for a in indices:
        sol = ring.solutions(a)
        sizes = {name: len(sol[name]) for name in CHARACTERIZING}
        sizes["regular"] = len(sol["inner"])
        problems = []
        for name in CHARACTERIZING:
            if sizes[name] > 1:
                problems.append(f"{name} inverse of #{a} not unique ({sizes[name]} solutions)")
        if not (sol["group"] == sol["group_6_8"] == sol["group_7_9"]):
            problems.append(f"equation sets {{1,2,5}}, {{1,2,6,8}}, {{1,2,7,9}} disagree at #{a}")
        rows.append((a, sizes, problems))
    return rows


@dataclass
class CensusReport:
    ring: dict
    order: int
    classes: dict[str, list[int]]
    separating: dict[str, list[int]]
    checks: dict[str, bool]
    violations: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.classes.items()}

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "schema": "starinv.census/1",
            "ring": self.ring,
            "order": self.order,
            "counts": self.counts,
            "classes": self.classes,
            "separating_examples": self.separating,
            "checks": self.checks,
            "violations": self.violations,
        }


def census(ring: FiniteStarRing, *, bound: int = DEFAULT_CENSUS_BOUND, workers: int = 1) -> CensusReport:
    """Classify every element by which of the four inverses (and an inner inverse) it has.

    The report is identical for any ``workers`` value; chunks are merged by
    element index.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    ring.check_bound(bound)
    indices = list(range(ring.order))
    if workers == 1:
        rows = _classify_chunk(ring, indices)
    else:
        chunks = [indices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_classify_chunk, [ring] * len(chunks), chunks)
            rows = sorted((r for part in parts for r in part), key=lambda r: r[0])

    classes = {name: [] for name in CLASS_NAMES}
    violations = []
    for a, sizes, problems in rows:
        for name in CLASS_NAMES:
            if sizes[name]:
                classes[name].append(a)
        violations.extend(problems)

    sets = {k: set(v) for k, v in classes.items()}
    separating = {label: sorted(sets[x] - sets[y]) for label, x, y in SEPARATIONS}
    both_gm = sets["group"] & sets["mp"]
    both_cd = sets["core"] & sets["dual_core"]
    union_cd = sets["core"] | sets["dual_core"]
    checks = {
        "group_and_mp_equals_core_and_dual_core": both_gm == both_cd,
        "core_or_dual_core_within_group": union_cd <= sets["group"],
        "inverses_unique": not any("not unique" in v for v in violations),
        "group_equation_sets_equivalent": not any("disagree" in v for v in violations),
    }
    if both_gm != both_cd:
        violations.append(f"R^# ∩ R^† differs from R^⊕ ∩ R_⊕ at {sorted(both_gm ^ both_cd)}")
    if not union_cd <= sets["group"]:
        violations.append(f"core/dual-core invertible but not group invertible: {sorted(union_cd - sets['group'])}")
    return CensusReport(ring.descriptor(), ring.order, classes, separating, checks, violations)


# constructive prime-field route -----------------------------------------------------


def _rref_mod_p(M: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    M = [[x % p for x in row] for row in M]
    n = len(M)
    m = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def _inv_mod_p(M: list[list[int]], p: int) -> Optional[list[list[int]]]:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    red, piv = _rref_mod_p(aug, p)
    if piv[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def _mm(A, B, p):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) % p for j in range(len(B[0]))] for i in range(len(A))]


def _tr(A):
    return [list(col) for col in zip(*A)]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def prime_field_formulas(a: FiniteRingElement) -> dict[str, Optional[FiniteRingElement]]:
    """Closed-form inverses of ``a ∈ M_k(Z_p)``, ``p`` prime, from a rank factorization.

    Mirrors the matrix-backend formulas with transpose in place of conjugate
    transpose.  A value is ``None`` when a matrix that the formula inverts is
    singular mod ``p``.  Keys: ``group``, ``mp``, ``core``, ``dual_core``,
    ``p``, ``q``, ``r``.
    """
    ring = a.ring
    if not isinstance(ring, MatZmodP) or not _is_prime(ring.p):
        raise ValueError("prime-field formulas need a matrix ring over Z_p with p prime")
    k, p = ring.k, ring.p
    ent = ring.entries(a.index)
    A = [list(ent[i * k:(i + 1) * k]) for i in range(k)]

    def el(M):
        return FiniteRingElement(ring, ring.encode([x for row in M for x in row]))

    red, piv = _rref_mod_p(A, p)
    if not piv:
        z = ring.zero()
        return {name: z for name in ("group", "mp", "core", "dual_core", "p", "q", "r")}
    f = [[A[i][c] for c in piv] for i in range(k)]
    g = red[:len(piv)]
    gf_inv = _inv_mod_p(_mm(g, f, p), p)
    ftf_inv = _inv_mod_p(_mm(_tr(f), f, p), p)
    ggt_inv = _inv_mod_p(_mm(g, _tr(g), p), p)
    out: dict[str, Optional[FiniteRingElement]] = dict.fromkeys(("group", "mp", "core", "dual_core", "p", "q", "r"))
    if gf_inv is not None:
        out["group"] = el(_mm(_mm(f, _mm(gf_inv, gf_inv, p), p), g, p))
        out["q"] = el(_mm(_mm(f, gf_inv, p), g, p))
    if ftf_inv is not None:
        out["p"] = el(_mm(_mm(f, ftf_inv, p), _tr(f), p))
    if ggt_inv is not None:
        out["r"] = el(_mm(_mm(_tr(g), ggt_inv, p), g, p))
    if ftf_inv is not None and ggt_inv is not None:
        out["mp"] = el(_mm(_mm(_mm(_tr(g), ggt_inv, p), ftf_inv, p), _tr(f), p))
    if gf_inv is not None and ftf_inv is not None:
        out["core"] = el(_mm(_mm(_mm(f, gf_inv, p), ftf_inv, p), _tr(f), p))
    if gf_inv is not None and ggt_inv is not None:
        out["dual_core"] = el(_mm(_mm(_mm(_tr(g), ggt_inv, p), gf_inv, p), g, p))
    return out


def matrix_element(ring: MatZmodP, rows: Sequence[Sequence[int]]) -> FiniteRingElement:
    """Convenience constructor from a nested list of entries."""
    flat = [x for r in rows for x in r]
    if len(flat) != ring.k * ring.k:
        raise ValueError(f"expected {ring.k}x{ring.k} entries")
    return FiniteRingElement(ring, ring.encode(flat))


__all__ = [
    "ALL_EQUATIONS",
    "CHARACTERIZING",
    "CensusReport",
    "DEFAULT_CENSUS_BOUND",
    "FiniteRingElement",
    "FiniteStarRing",
    "InverseSet",
    "MatZmodP",
    "ZmodN",
    "census",
    "enumerate_inverse_set",
    "matrix_element",
    "parse_ring",
    "prime_field_formulas",
]
