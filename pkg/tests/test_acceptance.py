"""Acceptance gate: one test per criterion, each emitting a single PASS/FAIL line.

Every check is exact (zero residual); the only tolerances are wall-clock
budgets.
"""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from starinv.cli import main
from starinv.corpus import matrix_corpus, random_ep, random_of_rank
from starinv.errors import NoBCInverse, NotInvertibleAlong, PrerequisiteMissing, TheoremViolation
from starinv.exact_matrix import ExactMatrix, rank
from starinv.finite_rings import MatZmodP, ZmodN, census, prime_field_formulas
from starinv.inverses import (
    KINDS,
    alternate_inner,
    default_inner_inverse,
    double_inverse_table,
    idempotent_triple,
    inverse_bundle,
    route_agreement,
)
from starinv.verifier import (
    DEFINING_EQUATIONS,
    EQUATIONS,
    along_core_crosscheck,
    bc_inverse,
    connection_checks,
    ep_check,
    inverse_along,
)
from support import (
    HALF,
    M,
    block_identities,
    core_identities,
    record,
    triple_of_double_inverses,
)

SIZES = (2, 3, 4, 5)
PER_SIZE = 500
BUDGET_EQUATIONS = 120.0
BUDGET_CENSUS = 300.0
GOLDEN = Path(__file__).parent / "golden"


def census_rings():
    return [ZmodN(n) for n in range(1, 101)] + [MatZmodP(2, 2), MatZmodP(2, 3), MatZmodP(2, 5)]


@pytest.fixture(scope="module")
def corpus():
    """n -> list of (matrix, bundle), plus the wall time spent building it."""
    start = time.perf_counter()
    data = {n: [(a, inverse_bundle(a)) for a in matrix_corpus(n, PER_SIZE)] for n in SIZES}
    return data, time.perf_counter() - start


def _all_pairs(corpus):
    data, _ = corpus
    for n in SIZES:
        yield from data[n]


def test_criterion_1_defining_equations_exact(corpus):
    data, build_time = corpus
    start = time.perf_counter()
    failures, checked = [], 0
    ranks_ok = True
    for n in SIZES:
        ranks_ok &= {rank(a) for a, _ in data[n]} == set(range(n + 1))
        for a, b in data[n]:
            for kind in KINDS:
                x = b.get(kind)
                if x is None:
                    continue
                for eq in DEFINING_EQUATIONS[kind]:
                    lhs, rhs = EQUATIONS[eq](a, x)
                    checked += 1
                    if not (lhs - rhs).is_zero():
                        failures.append((n, kind, eq))
    elapsed = build_time + time.perf_counter() - start
    ok = not failures and ranks_ok and len(data) == 4 and elapsed < BUDGET_EQUATIONS
    record(
        1, ok,
        f"{sum(len(v) for v in data.values())} matrices, {checked} equation residuals all zero={not failures}, "
        f"ranks 0..n covered={ranks_ok}, {elapsed:.1f}s (< {BUDGET_EQUATIONS:.0f}s)",
    )
    assert ok, failures[:5]


def test_criterion_2_representation_routes(corpus):
    bad, distinct_inner, compared = [], 0, 0
    for a, b in _all_pairs(corpus):
        canonical, alternate = default_inner_inverse(a), alternate_inner(a)
        distinct_inner += canonical != alternate
        for inner in (canonical, alternate):
            agree = route_agreement(a, inner)
            compared += len(agree)
            if not all(agree.values()):
                bad.append(a)
    ok = not bad and distinct_inner > 0
    record(
        2, ok,
        f"{compared} route comparisons (canonical and alternate inner inverse), "
        f"alternate differs from canonical on {distinct_inner} matrices, mismatches={len(bad)}",
    )
    assert ok


def test_criterion_3_inclusion_census():
    start = time.perf_counter()
    rings = census_rings()
    violations, separators = [], {}
    for ring in rings:
        rep = census(ring)
        s = {k: set(v) for k, v in rep.classes.items()}
        if not (s["group"] & s["mp"] == s["core"] & s["dual_core"] and s["core"] | s["dual_core"] <= s["group"]):
            violations.append(ring.label)
        if rep.violations:
            violations.append(f"{ring.label}: {rep.violations}")
        if rep.separating["core_not_mp"]:
            separators[ring.label] = len(rep.separating["core_not_mp"])
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < BUDGET_CENSUS
    found = ", ".join(f"{k}:{v}" for k, v in separators.items()) or "none"
    record(
        3, ok,
        f"{len(rings)} rings, inclusion violations={len(violations)}, "
        f"core-but-not-MP elements found in {found}, {elapsed:.1f}s (< {BUDGET_CENSUS:.0f}s)",
    )
    assert ok, violations


def test_criterion_4_prime_field_formulas_vs_search():
    both = disagree = formula_only = 0
    for ring in (MatZmodP(2, 2), MatZmodP(2, 3)):
        for a in ring.elements():
            f = prime_field_formulas(a)
            sol = ring.solutions(a.index)
            t = idempotent_triple(a)
            for kind in KINDS:
                if f[kind] is None:
                    continue
                if not sol[kind]:
                    formula_only += 1
                    continue
                both += 1
                disagree += (f[kind].index,) != tuple(sol[kind])
            for name in ("p", "q", "r"):
                if f[name] is not None and getattr(t, name) is not None:
                    both += 1
                    disagree += f[name] != getattr(t, name)
    ok = disagree == 0 and formula_only == 0 and both > 0
    record(4, ok, f"{both} comparisons on M2(Z2), M2(Z3); disagreements={disagree}, formula-without-solution={formula_only}")
    assert ok


def _theorem_battery(a, b):
    """All double-inverse and core identities for one element; returns failing names."""
    bad = [k for k, v in core_identities(a, b).items() if not v]
    if b.group is not None and b.mp is not None:
        try:
            table = double_inverse_table(a)
            if len(table) != 16:
                bad.append("table_size")
        except TheoremViolation as exc:
            bad.append(str(exc))
        bad += [k for k, v in block_identities(a, b).items() if not v]
        bad += [k for k, v in triple_of_double_inverses(a, b).items() if not v]
    return bad


def test_criterion_5_double_inverses_and_core_identities(corpus):
    failures, tables = [], 0
    for a, b in _all_pairs(corpus):
        tables += b.group is not None and b.mp is not None
        bad = _theorem_battery(a, b)
        if bad:
            failures.append((a, bad))
    finite = 0
    for ring in census_rings():
        for a in ring.elements():
            finite += 1
            bad = _theorem_battery(a, inverse_bundle(a))
            if bad:
                failures.append((a, bad))
    ok = not failures
    record(
        5, ok,
        f"{tables} corpus matrices with 16-entry tables + {finite} elements of Z1..Z100, M2(Z2), M2(Z3), M2(Z5), "
        f"power law n<=6, failures={len(failures)}",
    )
    assert ok, failures[:3]


def _verdict(a):
    try:
        return ep_check(a)
    except PrerequisiteMissing as exc:
        return exc.verdict


def test_criterion_6_ep_battery_coherence():
    rng = random.Random("ep-acceptance")
    eps, non_eps = [], []
    while len(eps) < 200:
        n = SIZES[len(eps) % 4]
        eps.append(random_ep(rng, n, rng.randint(0, n), orthogonal=True))
    while len(non_eps) < 200:
        n = SIZES[len(non_eps) % 4]
        a = random_of_rank(rng, n, rng.randint(1, n - 1))
        if rank(a.hstack(a.H)) != rank(a):
            non_eps.append(a)
    wrong, incoherent, complete = 0, 0, 0
    for label, group in ((True, eps), (False, non_eps)):
        for a in group:
            assert (rank(a.hstack(a.H)) == rank(a)) == label
            try:
                v = _verdict(a)
            except TheoremViolation:
                incoherent += 1
                continue
            complete += v.complete
            wrong += v.is_ep != label
            incoherent += not v.coherent
    ok = wrong == 0 and incoherent == 0
    record(
        6, ok,
        f"200 Cayley-orthogonal EP + 200 generic non-EP; {complete} with full battery, "
        f"wrong verdicts={wrong}, incoherent={incoherent}",
    )
    assert ok


def _count_along(ring, a, d):
    mul = ring.mul
    dR, Rd = ring.right_ideal_mask(d), ring.left_ideal_mask(d)
    ad, da = mul(a, d), mul(d, a)
    return [x for x in range(ring.order) if dR >> x & 1 and Rd >> x & 1 and mul(x, ad) == d and mul(da, x) == d]


def _count_bc(ring, a, b, c, in_bRx, in_xRc):
    mul = ring.mul
    ab, ca = mul(a, b), mul(c, a)
    return [
        x for x in range(ring.order)
        if mul(x, ab) == b and mul(ca, x) == c and in_bRx[b][x] and in_xRc[x][c]
    ]


def _finite_uniqueness(ring):
    """Independent counts of along and (b, c) solutions; each at most one and matching the library."""
    n, mul = ring.order, ring.mul
    in_bRx = [[any(mul(mul(b, w), x) == x for w in range(n)) for x in range(n)] for b in range(n)]
    in_xRc = [[any(mul(mul(x, w), c) == x for w in range(n)) for c in range(n)] for x in range(n)]
    problems = 0
    for a in range(n):
        for d in range(n):
            hits = _count_along(ring, a, d)
            try:
                got = [inverse_along(ring.element(a), ring.element(d)).index]
            except NotInvertibleAlong:
                got = []
            problems += len(hits) > 1 or hits != got or any(mul(mul(x, a), x) != x for x in hits)
        for b in range(n):
            for c in range(n):
                hits = _count_bc(ring, a, b, c, in_bRx, in_xRc)
                try:
                    got = [bc_inverse(ring.element(a), ring.element(b), ring.element(c)).index]
                except NoBCInverse:
                    got = []
                problems += len(hits) > 1 or hits != got or any(mul(mul(x, a), x) != x for x in hits)
    return problems


def test_criterion_7_along_and_bc_equivalences(corpus):
    failed = 0
    checks = 0
    for a, b in _all_pairs(corpus):
        conn = connection_checks(a, b)
        checks += sum(v is not None for v in conn.values())
        failed += not all(v for v in conn.values() if v is not None)
        failed += not along_core_crosscheck(a)
    rings = [MatZmodP(2, 2)] + [ZmodN(n) for n in range(2, 13)]
    unique_problems = sum(_finite_uniqueness(r) for r in rings)
    ok = failed == 0 and unique_problems == 0
    record(
        7, ok,
        f"{checks} along/(b,c) cross-checks on the corpus, failures={failed}; exhaustive along/(b,c) "
        f"uniqueness on M2(Z2) and Z2..Z12, problems={unique_problems}",
    )
    assert ok


def test_criterion_8_cli_golden(capsys):
    golden = (GOLDEN / "compute_11_00.json").read_text()
    outputs = []
    for _ in range(2):
        assert main(["compute", str(GOLDEN / "a_11_00.json")]) == 0
        outputs.append(capsys.readouterr().out)
    for workers in ("1", "4"):
        proc = subprocess.run(
            [sys.executable, "-m", "starinv", "compute", str(GOLDEN / "a_11_00.json"), "--workers", workers],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        outputs.append(proc.stdout)
    identical = all(o == golden for o in outputs)
    doc = json.loads(golden)
    got = {k: ExactMatrix.from_json(v["value"]) for k, v in doc["inverses"].items()}
    got.update({k: ExactMatrix.from_json(v) for k, v in doc["idempotents"].items()})
    expected = {
        "group": M([[1, 1], [0, 0]]),
        "core": M([[1, 0], [0, 0]]),
        "mp": M([[1, 0], [1, 0]], HALF),
        "dual_core": M([[1, 1], [1, 1]], HALF),
        "p": M([[1, 0], [0, 0]]),
        "q": M([[1, 1], [0, 0]]),
        "r": M([[1, 1], [1, 1]], HALF),
    }
    values_ok = got == expected
    ok = identical and values_ok
    record(8, ok, f"compute on [[1,1],[0,0]]: byte-identical over 2 runs and workers 1/4={identical}, values match={values_ok}")
    assert ok
