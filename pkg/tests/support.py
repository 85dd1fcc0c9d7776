"""Shared helpers and hypothesis strategies for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from starinv.exact_matrix import ExactMatrix
from starinv.gaussian import GaussianRational
from starinv.inverses import idempotent_triple, inverse_bundle, power_core, try_inverse
from starinv.ring_core import power

A = ExactMatrix([[1, 1], [0, 0]])
NIL = ExactMatrix([[0, 1], [0, 0]])
SYM = ExactMatrix([[1, 1], [1, 1]])
I2 = ExactMatrix.identity(2)
Z2 = ExactMatrix.zeros(2)
HALF = Fraction(1, 2)


def M(rows, scale=1):
    """Matrix literal, optionally scaled by a rational."""
    m = ExactMatrix(rows)
    return m.scale(Fraction(scale)) if scale != 1 else m


small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=4)
scalars = st.builds(GaussianRational, small_fraction, small_fraction)
nonzero_scalars = scalars.filter(lambda z: not z.is_zero())


def matrices(n: int, sparse: bool = True):
    """n×n Gaussian-rational matrices; with ``sparse`` many entries are zero so low rank shows up."""
    entry = st.one_of(st.just(GaussianRational(0)), scalars) if sparse else scalars
    return st.lists(entry, min_size=n * n, max_size=n * n).map(
        lambda xs: ExactMatrix.from_entries(n, n, xs)
    )


square_matrices = st.integers(1, 3).flatmap(matrices)


# identity batteries shared by unit and acceptance tests -------------------------------



def core_identities(a, bundle=None, max_power=6):
    """Identities linking a^⊕ (and mirrored, a_⊕) to the other inverses, by name."""
    b = bundle if bundle is not None else inverse_bundle(a)
    g, m, c, d, t = b.group, b.mp, b.core, b.dual_core, b.triple
    out = {}
    if c is not None:
        out["core_is_group_times_p"] = c == g * t.p
        out["core_squared_times_a_is_group"] = c * c * a == g
        out["triple_core_is_core"] = try_inverse(try_inverse(c, "core"), "core") == c
        for n in range(1, max_power + 1):
            out[f"power_{n}_core"] = power_core(a, n, max_power=max_power) == power(c, n)
    if d is not None:
        out["dual_core_is_r_times_group"] = d == t.r * g
        out["a_times_dual_core_squared_is_group"] = a * d * d == g
        out["triple_dual_core_is_dual_core"] = try_inverse(try_inverse(d, "dual_core"), "dual_core") == d
        an = a
        for n in range(2, max_power + 1):
            an = an * a
            out[f"power_{n}_dual_core"] = try_inverse(an, "dual_core") == power(d, n)
    if c is not None and m is not None:
        out["group_is_core_a_dual_core"] = g == c * a * d
        out["mp_is_dual_core_a_core"] = m == d * a * c
        out["core_is_group_a_mp"] = c == g * a * m
        out["dual_core_is_mp_a_group"] = d == m * a * g
    return out


# block positions (left idempotent, right idempotent) in which each element sits as a corner
_CORNERS = {
    "a": (("q", "q"), ("p", "q"), ("q", "r"), ("p", "r")),
    "group": (("q", "q"), ("p", "q"), ("q", "r"), ("p", "r")),
    "mp": (("r", "p"), ("qs", "p"), ("r", "qs"), ("qs", "qs")),
    "core": (("q", "p"), ("p", "p"), ("q", "qs"), ("p", "qs")),
    "dual_core": (("r", "q"), ("qs", "q"), ("r", "r"), ("qs", "r")),
}


def block_identities(a, bundle=None):
    """For a with both group and MP inverses: the idempotent relations and block corners.

    ``x`` sits as the upper-left corner of an e×f block form exactly when
    ``x = e x f``; equivalently ``(1 - e) x = 0 = x (1 - f)``.
    """
    b = bundle if bundle is not None else inverse_bundle(a)
    t = b.triple
    p, q, r = t.p, t.q, t.r
    qs = q.star()
    one = a.ring.one()
    idem = {"p": p, "q": q, "r": r, "qs": qs}
    out = {
        "q_is_a_group": q == a * b.group == b.group * a == b.core * a == a * b.dual_core,
        "p_is_a_mp": p == a * b.mp == a * b.core,
        "r_is_mp_a": r == b.mp * a == b.dual_core * a,
        "pq_is_q": p * q == q,
        "qp_is_p": q * p == p,
        "rq_is_r": r * q == r,
        "qr_is_q": q * r == q,
        "qs_p_is_qs": qs * p == qs,
        "p_qs_is_p": p * qs == p,
        "qs_r_is_r": qs * r == r,
        "r_qs_is_qs": r * qs == qs,
        "a_is_p_a_r": a == p * a * r,
    }
    values = {"a": a, "group": b.group, "mp": b.mp, "core": b.core, "dual_core": b.dual_core}
    for name, positions in _CORNERS.items():
        x = values[name]
        for e, f in positions:
            out[f"{name}_corner_{e}x{f}"] = (
                x == idem[e] * x * idem[f]
                and (one - idem[e]) * x == a.ring.zero()
                and x * (one - idem[f]) == a.ring.zero()
            )
    corner = qs * a * q
    out["corner_inverse_of_core"] = corner * b.core == qs and b.core * corner == q
    return out


def triple_of_double_inverses(a, bundle=None):
    """Idempotents of a^#, a^†, a^⊕, a_⊕ expressed through those of a."""
    b = bundle if bundle is not None else inverse_bundle(a)
    t = b.triple
    tg, tm = idempotent_triple(b.group), idempotent_triple(b.mp)
    tc, td = idempotent_triple(b.core), idempotent_triple(b.dual_core)
    return {
        "group": (tg.p, tg.q, tg.r) == (t.p, t.q, t.r),
        "mp": (tm.p, tm.q, tm.r) == (t.r, t.q.star(), t.p),
        "core": tc.p == tc.q == tc.r == t.p,
        "dual_core": td.p == td.q == td.r == t.r,
    }


# acceptance reporting ------------------------------------------------------------------

ACCEPTANCE_LINES: list = []


def record(criterion: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok
