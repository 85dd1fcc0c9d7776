"""Dense exact matrices over the Gaussian rationals.

Square matrices of a fixed size form the *-ring ``M_n`` with the
conjugate transpose as involution.  Rectangular matrices only appear inside
factorizations.

Row reduction pivots on the first nonzero entry in column order; all
arithmetic is exact, so results are deterministic and tolerance-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import MatrixFormatError, RingContextError, SingularMatrix, ZeroMatrix
from .gaussian import ONE, ZERO, GaussianRational, Scalar
from .ring_core import RingCapability, StarRing, Tier

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class ExactMatrix:
    """Immutable ``rows x cols`` matrix of :class:`GaussianRational` entries.

    ``*`` is the ring product when both operands are matrices and scaling
    otherwise; ``@`` is always the matrix product.
    """

    __slots__ = ("rows", "cols", "entries", "_ints", "_hash")

    def __init__(self, data: Sequence[Sequence[Scalar]]):
        rows = [list(r) for r in data]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = n
        self.cols = m
        self.entries = tuple(GaussianRational.coerce(v) for r in rows for v in r)
        self._ints = None
        self._hash = None

    @classmethod
    def _new(cls, rows: int, cols: int, entries: tuple) -> "ExactMatrix":
        obj = object.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj.entries = entries
        obj._ints = None
        obj._hash = None
        return obj

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Scalar]) -> "ExactMatrix":
        ent = tuple(GaussianRational.coerce(v) for v in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        return cls._new(rows, cols, ent)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._new(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls._new(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "ExactMatrix":
        n = len(values)
        vals = [GaussianRational.coerce(v) for v in values]
        return cls._new(n, n, tuple(vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    # access ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> GaussianRational:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    @property
    def ring(self) -> "MatrixRing":
        if not self.is_square():
            raise RingContextError(f"a {self.rows}x{self.cols} matrix is not a ring element")
        return MatrixRing(self.rows)

    # structure ---------------------------------------------------------------

    def transpose(self) -> "ExactMatrix":
        r, c, e = self.rows, self.cols, self.entries
        return ExactMatrix._new(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    def conj_transpose(self) -> "ExactMatrix":
        r, c, e = self.rows, self.cols, self.entries
        return ExactMatrix._new(c, r, tuple(e[i * c + j].conjugate() for j in range(c) for i in range(r)))

    star = conj_transpose

    @property
    def H(self) -> "ExactMatrix":
        return self.conj_transpose()

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        c, e = self.cols, self.entries
        return ExactMatrix._new(self.rows, len(idx), tuple(e[i * c + j] for i in range(self.rows) for j in idx))

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        c, e = self.cols, self.entries
        return ExactMatrix._new(len(idx), c, tuple(e[i * c + j] for i in idx for j in range(c)))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        ent = []
        for i in range(self.rows):
            ent.extend(self.row(i))
            ent.extend(other.row(i))
        return ExactMatrix._new(self.rows, self.cols + other.cols, tuple(ent))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal column counts")
        return ExactMatrix._new(self.rows + other.rows, self.cols, self.entries + other.entries)

    # arithmetic --------------------------------------------------------------

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if self.shape != other.shape:
            raise RingContextError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._new(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._new(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self):
        return ExactMatrix._new(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, s: Scalar) -> "ExactMatrix":
        s = GaussianRational.coerce(s)
        return ExactMatrix._new(self.rows, self.cols, tuple(s * x for x in self.entries))

    def _int_form(self):
        # (D, re, im): value = (re + i im) / D entrywise, integer lists
        if self._ints is None:
            D = 1
            for e in self.entries:
                D = _lcm(D, e._d)
            re = [e._a * (D // e._d) for e in self.entries]
            im = [e._b * (D // e._d) for e in self.entries]
            self._ints = (D, re, im)
        return self._ints

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise RingContextError(f"cannot multiply {self.shape} by {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        Da, ar, ai = self._int_form()
        Db, br, bi = other._int_form()
        D = Da * Db
        raw = GaussianRational._raw
        out = []
        for i in range(n):
            base = i * k
            for j in range(m):
                sr = si = 0
                for t in range(k):
                    xr = ar[base + t]
                    xi = ai[base + t]
                    yr = br[t * m + j]
                    yi = bi[t * m + j]
                    if xi or yi:
                        sr += xr * yr - xi * yi
                        si += xr * yi + xi * yr
                    else:
                        sr += xr * yr
                out.append(raw(sr, si, D))
        return ExactMatrix._new(n, m, tuple(out))

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.__matmul__(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> "ExactMatrix":
        if not self.is_square():
            raise RingContextError("only square matrices have powers")
        if n < 0:
            return inverse(self) ** (-n)
        result = ExactMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))
        return f"ExactMatrix([{body}])"

    def pretty(self) -> str:
        cells = [[str(x) for x in self.row(i)] for i in range(self.rows)]
        width = max((len(s) for r in cells for s in r), default=1)
        return "\n".join("[ " + "  ".join(s.rjust(width) for s in r) + " ]" for r in cells)

    # serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [
                [_json_int(e.re.numerator), _json_int(e.re.denominator),
                 _json_int(e.im.numerator), _json_int(e.im.denominator)]
                for e in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "ExactMatrix":
        if not isinstance(obj, dict):
            raise MatrixFormatError("matrix must be a JSON object")
        for key in ("rows", "cols", "entries"):
            if key not in obj:
                raise MatrixFormatError(f"matrix object lacks {key!r}")
        rows, cols, raw = obj["rows"], obj["cols"], obj["entries"]
        if not (isinstance(rows, int) and isinstance(cols, int)) or isinstance(rows, bool) or rows < 0 or cols < 0:
            raise MatrixFormatError("rows and cols must be non-negative integers")
        if not isinstance(raw, list) or len(raw) != rows * cols:
            raise MatrixFormatError(f"entries must be a list of {rows * cols} quadruples")
        ent = []
        for pos, q in enumerate(raw):
            if not isinstance(q, list) or len(q) != 4:
                raise MatrixFormatError(f"entry {pos} is not [re_num, re_den, im_num, im_den]")
            rn, rd, imn, imd = (_parse_int(v, pos) for v in q)
            if rd == 0 or imd == 0:
                raise MatrixFormatError(f"entry {pos} has a zero denominator")
            ent.append(GaussianRational(Fraction(rn, rd), Fraction(imn, imd)))
        return cls._new(rows, cols, tuple(ent))



def _json_int(v: int):
    return v if _INT64_MIN <= v <= _INT64_MAX else str(v)


def _parse_int(v, pos: int) -> int:
    if isinstance(v, bool):
        raise MatrixFormatError(f"entry {pos}: booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        s = v.strip()
        try:
            return int(s, 10)
        except ValueError:
            pass
    raise MatrixFormatError(f"entry {pos}: {v!r} is not an integer or decimal string")


@dataclass(frozen=True)
class MatrixRing(StarRing):
    """``M_n`` over the Gaussian rationals with conjugate transpose."""

    n: int

    @property
    def capability(self) -> RingCapability:
        return RingCapability(Tier.LINEAR_SOLVABLE)

    def one(self) -> ExactMatrix:
        return ExactMatrix.identity(self.n)

    def zero(self) -> ExactMatrix:
        return ExactMatrix.zeros(self.n)

    def right_ideal_contains(self, b: ExactMatrix, a: ExactMatrix) -> bool:
        # b regular, so a ∈ bR iff b b⁽¹⁾ a = a
        return b @ inner_inverse(b) @ a == a

    def left_ideal_contains(self, b: ExactMatrix, a: ExactMatrix) -> bool:
        return a @ inner_inverse(b) @ b == a

    def descriptor(self) -> dict:
        return {"kind": "matrix", "n": self.n, "field": "Q(i)"}


# row reduction ---------------------------------------------------------------


@dataclass(frozen=True)
class RREF:
    reduced: ExactMatrix
    pivots: tuple[int, ...]
    transform: ExactMatrix

    def __iter__(self):
        return iter((self.reduced, self.pivots, self.transform))


def rref(a: ExactMatrix) -> RREF:
    """Reduced row-echelon form with ``transform @ a == reduced``."""
    n, m = a.rows, a.cols
    M = [list(a.row(i)) for i in range(n)]
    T = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            T[r], T[piv] = T[piv], T[r]
        inv = M[r][c].inverse()
        if inv != ONE:
            M[r] = [x * inv for x in M[r]]
            T[r] = [x * inv for x in T[r]]
        for i in range(n):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return RREF(
        ExactMatrix._new(n, m, tuple(x for row in M for x in row)),
        tuple(pivots),
        ExactMatrix._new(n, n, tuple(x for row in T for x in row)),
    )


def rank(a: ExactMatrix) -> int:
    return len(rref(a).pivots)


def inverse(a: ExactMatrix) -> ExactMatrix:
    if not a.is_square():
        raise SingularMatrix("non-square matrices have no two-sided inverse")
    red = rref(a)
    if len(red.pivots) != a.rows:
        raise SingularMatrix(f"matrix of rank {len(red.pivots)} < {a.rows} is singular")
    return red.transform


@dataclass(frozen=True)
class RankFactorization:
    f: ExactMatrix  # n x rank, full column rank
    g: ExactMatrix  # rank x n, full row rank
    rank: int
    pivots: tuple[int, ...]


def rank_factorize(a: ExactMatrix) -> RankFactorization:
    """``a = f @ g`` with ``f`` the pivot columns of ``a`` and ``g`` the nonzero rows of its RREF."""
    red = rref(a)
    if not red.pivots:
        raise ZeroMatrix("the zero matrix has no full-rank factorization")
    rho = len(red.pivots)
    return RankFactorization(
        f=a.select_columns(red.pivots),
        g=red.reduced.select_rows(range(rho)),
        rank=rho,
        pivots=red.pivots,
    )


def pseudoinverse(a: ExactMatrix) -> ExactMatrix:
    """Moore–Penrose inverse ``g*(g g*)^-1 (f* f)^-1 f*`` from a rank factorization."""
    if a.is_zero():
        return ExactMatrix.zeros(a.cols, a.rows)
    fac = rank_factorize(a)
    f, g = fac.f, fac.g
    fh, gh = f.H, g.H
    return gh @ inverse(g @ gh) @ inverse(fh @ f) @ fh


def inner_inverse(a: ExactMatrix) -> ExactMatrix:
    """Canonical ``a⁽¹⁾``; the Moore–Penrose inverse."""
    return pseudoinverse(a)


def alternate_inner_inverse(a: ExactMatrix) -> ExactMatrix:
    """A non-orthogonal ``a⁽¹⁾``: a right inverse of ``g`` times a left inverse of ``f``.

    ``g`` is in RREF, so the coordinate embedding on its pivot columns is a
    right inverse.  ``f`` gets a left inverse from an invertible square block
    of its rows.  Usually differs from :func:`pseudoinverse`.
    """
    if a.is_zero():
        return ExactMatrix.zeros(a.cols, a.rows)
    fac = rank_factorize(a)
    n_rows, n_cols, rho = a.rows, a.cols, fac.rank
    row_sel = rref(fac.f.transpose()).pivots
    block_inv = inverse(fac.f.select_rows(row_sel))
    f_left = [[ZERO] * n_rows for _ in range(rho)]
    for i in range(rho):
        for jj, j in enumerate(row_sel):
            f_left[i][j] = block_inv[i, jj]
    g_right = [[ZERO] * rho for _ in range(n_cols)]
    for j, c in enumerate(fac.pivots):
        g_right[c][j] = ONE
    return ExactMatrix(g_right) @ ExactMatrix(f_left)


def index_at_most_one(a: ExactMatrix) -> bool:
    """``rank(a) == rank(a @ a)``."""
    if not a.is_square():
        raise RingContextError("index is defined for square matrices only")
    return rank(a) == rank(a @ a)


def column_space_contains(b: ExactMatrix, a: ExactMatrix) -> bool:
    """Every column of ``a`` lies in the column space of ``b`` (rank test)."""
    return rank(b.hstack(a)) == rank(b)


def row_space_contains(b: ExactMatrix, a: ExactMatrix) -> bool:
    return rank(b.vstack(a)) == rank(b)
