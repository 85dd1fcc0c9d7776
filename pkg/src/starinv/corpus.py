"""Seeded random Gaussian-rational matrices with controlled rank and index.

Used by the property and acceptance suites.  Every generator takes an explicit :class:`random.Random`.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact_matrix import ExactMatrix, inverse, rank
from .gaussian import GaussianRational

PROFILES = ("generic", "index_two", "ep")


def random_scalar(rng: random.Random, span: int = 3, rational: bool = True, real: bool = False) -> GaussianRational:
    re = Fraction(rng.randint(-span, span))
    im = Fraction(rng.randint(-span, span)) if not real and rng.random() < 0.6 else Fraction(0)
    if rational and rng.random() < 0.2:
        re /= rng.choice((2, 3))
    return GaussianRational(re, im)


def random_matrix(rng: random.Random, rows: int, cols: int, **kw) -> ExactMatrix:
    return ExactMatrix.from_entries(rows, cols, [random_scalar(rng, **kw) for _ in range(rows * cols)])


def random_invertible(rng: random.Random, n: int) -> ExactMatrix:
    while True:
        m = random_matrix(rng, n, n)
        if rank(m) == n:
            return m


def random_full_column_rank(rng: random.Random, rows: int, cols: int) -> ExactMatrix:
    while True:
        m = random_matrix(rng, rows, cols)
        if rank(m) == cols:
            return m


def random_of_rank(rng: random.Random, n: int, k: int) -> ExactMatrix:
    """``F G`` with ``F`` n×k and ``G`` k×n of full rank; rank exactly ``k``."""
    if k == 0:
        return ExactMatrix.zeros(n)
    f = random_full_column_rank(rng, n, k)
    g = random_full_column_rank(rng, n, k).H
    return f @ g


def _block_diag(blocks: list[ExactMatrix]) -> ExactMatrix:
    n = sum(b.rows for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b[i, j]
        off += b.rows
    return ExactMatrix(rows)


def random_index_two(rng: random.Random, n: int, k: int) -> ExactMatrix:
    """Rank ``k`` with a 2×2 nilpotent Jordan block, so ``rank(a²) < rank(a)``.

    Needs ``1 <= k <= n - 1``.
    """
    if not 1 <= k <= n - 1:
        raise ValueError("index-two matrices need 1 <= k <= n-1")
    blocks = []
    if k > 1:
        blocks.append(random_invertible(rng, k - 1))
    blocks.append(ExactMatrix([[0, 1], [0, 0]]))
    if n - k - 1 > 0:
        blocks.append(ExactMatrix.zeros(n - k - 1))
    s = random_invertible(rng, n)
    return s @ _block_diag(blocks) @ inverse(s)


def cayley_unitary(rng: random.Random, n: int, real: bool = False) -> ExactMatrix:
    """``(I - S)(I + S)^-1`` for a random skew-Hermitian ``S``; exactly unitary.

    With ``real`` the skew part is real skew-symmetric and the result is a
    rational orthogonal matrix.
    """
    k = random_matrix(rng, n, n, span=2, real=real)
    s = k - k.H
    eye = ExactMatrix.identity(n)
    return (eye - s) @ inverse(eye + s)


def random_ep(rng: random.Random, n: int, k: int, orthogonal: bool = False) -> ExactMatrix:
    """``Q diag(B, 0) Q*`` with ``Q`` unitary (rational orthogonal if asked) and ``B`` invertible k×k."""
    q = cayley_unitary(rng, n, real=orthogonal)
    blocks = [random_invertible(rng, k)] if k else []
    if n - k:
        blocks.append(ExactMatrix.zeros(n - k))
    return q @ _block_diag(blocks) @ q.H


def matrix_corpus(n: int, count: int, seed: int = 0) -> list[ExactMatrix]:
    """``count`` n×n matrices cycling through ranks 0..n and the profiles in :data:`PROFILES`."""
    rng = random.Random(f"starinv-corpus-{n}-{seed}")
    out = []
    i = 0
    while len(out) < count:
        k = i % (n + 1)
        profile = PROFILES[(i // (n + 1)) % len(PROFILES)]
        if profile == "index_two" and 1 <= k <= n - 1:
            out.append(random_index_two(rng, n, k))
        elif profile == "ep":
            out.append(random_ep(rng, n, k))
        else:
            out.append(random_of_rank(rng, n, k))
        i += 1
    return out
