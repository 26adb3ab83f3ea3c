"""Acceptance gate: one test per criterion, each reporting PASS or FAIL."""

import os
import random
import time
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from fatpoints.binary_forms import poly_membership
from fatpoints.collinear import (
    GeneralizedMonomial,
    LineScheme,
    gm_member,
    verify_line_splitting,
    verify_theorem_collinear,
)
from fatpoints.fatpoint import (
    FatPointScheme,
    alpha_schedule_pairs,
    alpha_three_points,
    classify,
    cond_mismatches,
    containment_table,
    ideal_of,
    ordinary_power,
    resurgence_report,
    sdefect_zero_upto,
    symbolic_power,
    verify_small_containments,
    verify_split_gt,
    verify_split_leq,
    verify_symbolic_factorization,
    verify_symbolic_multiplicativity,
    verify_triple_power,
)
from fatpoints.cli import main
from fatpoints.monomial import alpha, member

AMBIENTS = (2, 3, 4)
RESURGENCE_TRIPLES = [(1, 1, 1), (1, 2, 2), (2, 2, 3)]


def triples(top, low=0):
    return [t for t in product(range(low, top + 1), repeat=3) if any(t)]


def ordered_triples(top):
    """``m2 >= max(m0, m1)``, the ordering the closed forms assume."""
    return [t for t in triples(top) if t[2] >= max(t[0], t[1])]


@pytest.mark.criterion("1 coordinate-point ideal equals the point condition (entries<=4, N=2..4, degree<=12)")
def test_cond_equivalence(criterion):
    t0 = time.perf_counter()
    bad = []
    for N in AMBIENTS:
        for t in triples(4):
            if cond_mismatches(FatPointScheme.of(t, N), degree_bound=12):
                bad.append((N, t))
    elapsed = time.perf_counter() - t0
    criterion.note(f"{3 * len(triples(4))} schemes, {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 60


@pytest.mark.criterion("2 zero symbolic defect for case (a) and even sums (entries<=5, m<=3, N<=4)")
def test_zero_defect(criterion):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for N in AMBIENTS:
        for t in triples(5):
            m0, m1, m2 = sorted(t)
            if not (m0 + m1 <= m2 or sum(t) % 2 == 0):
                continue
            Z = FatPointScheme.of(t, N)
            for m in (1, 2, 3):
                checked += 1
                if symbolic_power(Z, m) != ordinary_power(Z, m):
                    bad.append((N, t, m))
    elapsed = time.perf_counter() - t0
    criterion.note(f"{checked} comparisons, {elapsed:.1f}s")
    assert bad == []
    assert elapsed < 300


@pytest.mark.criterion("3 odd sums with m0+m1>m2 have a defect by m=2 with a witness (entries<=4)")
def test_defect_converse(criterion):
    missing, cases = [], 0
    for N in AMBIENTS:
        for t in triples(4):
            m0, m1, m2 = sorted(t)
            if m0 + m1 <= m2 or sum(t) % 2 == 0:
                continue
            cases += 1
            Z = FatPointScheme.of(t, N)
            res = sdefect_zero_upto(Z, 2)
            ok = (
                not res.zero
                and res.witness is not None
                and member(res.witness, symbolic_power(Z, res.failing_m))
                and not member(res.witness, ordinary_power(Z, res.failing_m))
            )
            if not ok:
                missing.append((N, t))
    res = sdefect_zero_upto(FatPointScheme.of((1, 1, 1)), 2)
    criterion.note(f"{cases} schemes")
    assert missing == []
    assert res.witness == (1, 1, 1)


@pytest.mark.criterion("4 containment above (s+1)/s on the 12x12 grid; certified value matches")
def test_resurgence_upper(criterion):
    for t in RESURGENCE_TRIPLES:
        s = sum(t)
        bound = Fraction(s + 1, s)
        table = containment_table(FatPointScheme.of(t), 12, 12)
        above = [e for e in table.entries if e.ratio > bound]
        assert above and all(e.contained for e in above), t
        assert classify(*t).certified_rho == bound
        rep = resurgence_report(FatPointScheme.of(t), 12, 12)
        assert rep.certified_value == bound and rep.counterexamples == []
    criterion.note("rho = 4/3, 6/5, 8/7")


@pytest.mark.criterion("5 noncontainments at the alpha-schedule ratios 2k/(floor(2ks/(s+1))+1)")
def test_resurgence_lower(criterion):
    notes = []
    for t in RESURGENCE_TRIPLES:
        s = sum(t)
        Z = FatPointScheme.of(t)
        table = containment_table(Z, 12, 12)
        pairs = alpha_schedule_pairs(s, 12, 12)
        assert pairs, t
        for m, r in pairs:
            k = m // 2
            assert alpha(symbolic_power(Z, m)) == k * s
            assert alpha(ordinary_power(Z, r)) == r * alpha_three_points(*t)
            entry = table.lookup(m, r)
            assert not entry.contained and entry.witness is not None
            assert not member(entry.witness, ordinary_power(Z, r))
        best = max(Fraction(m, r) for m, r in pairs)
        lower = max(e.ratio for e in table.noncontainments())
        assert lower >= best
        notes.append(f"{t}: {best}")
    assert (12, 10) in alpha_schedule_pairs(3, 12, 12)
    criterion.note(", ".join(notes))


@pytest.mark.criterion("6 fourth symbolic power of three simple points inside the cube (P2, P3, P4)")
def test_small_containment(criterion):
    t0 = time.perf_counter()
    for N in AMBIENTS:
        assert verify_small_containments(N, 4), N
    elapsed = time.perf_counter() - t0
    criterion.note(f"{elapsed:.2f}s")
    assert elapsed < 10


@pytest.mark.criterion("7 closed-form alpha equals alpha(I(Z)) for entries<=8, m2>=max")
def test_alpha_closed_form(criterion):
    grid = ordered_triples(8)
    bad = [t for t in grid if alpha_three_points(*t) != alpha(ideal_of(FatPointScheme.of(t)))]
    criterion.note(f"{len(grid)} triples")
    assert bad == []


@pytest.mark.criterion("8 splitting suites (entries<=4, k<=6, N<=4)")
def test_splitting_suites(criterion):
    t0 = time.perf_counter()
    counts = dict.fromkeys(("leq", "gt", "triple", "factor", "mult"), 0)
    failures = []
    for N in AMBIENTS:
        for t in ordered_triples(4):
            m0, m1, m2 = t
            if m0 + m1 <= m2:
                counts["leq"] += 1
                if not verify_split_leq(t, N):
                    failures.append(("leq", N, t))
                continue
            counts["gt"] += 1
            if not verify_split_gt(t, N):
                failures.append(("gt", N, t))
            if sum(t) % 2 == 0:
                continue
            for k in range(1, 7):
                counts["factor"] += 1
                if not verify_symbolic_factorization(t, k, N):
                    failures.append(("factor", N, t, k))
                for i in range(1, k):
                    if i % 2 == 1 and (k - i) % 2 == 1:
                        continue
                    counts["mult"] += 1
                    if not verify_symbolic_multiplicativity(t, k, i, N):
                        failures.append(("mult", N, t, k, i))
        for q in range(0, 5):
            for r in (0, 1):
                counts["triple"] += 1
                if not verify_triple_power(q, r, N):
                    failures.append(("triple", N, q, r))
    elapsed = time.perf_counter() - t0
    criterion.note(", ".join(f"{k}={v}" for k, v in counts.items()) + f", {elapsed:.1f}s")
    assert failures == []
    assert elapsed < 600


@pytest.mark.criterion("9 collinear splitting and symbolic = ordinary (n<=4, mults<=3, N<=4, m<=3)")
def test_collinear_suite(criterion):
    cases = 0
    failures = []
    for N in AMBIENTS:
        for n in range(1, 5):
            for mults in combinations_with_replacement(range(1, 4), n):
                Z = LineScheme.standard(mults, N)
                cases += 1
                for m in (1, 2, 3):
                    if not verify_line_splitting(Z, m):
                        failures.append((N, mults, m))
                if not verify_theorem_collinear(Z, 3):
                    failures.append((N, mults, "theorem"))
    criterion.note(f"{cases} schemes")
    assert failures == []


def _random_line_scheme(rng):
    N = rng.randint(2, 4)
    n = rng.randint(1, 4)
    forms = []
    while len(forms) < n:
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        d = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if (c, d) != (0, 0) and all(c * f[1] != f[0] * d for f in forms):
            forms.append((c, d))
    mults = tuple(rng.randint(1, 3) for _ in range(n))
    return LineScheme(N, tuple(forms), mults)


def _random_gm(rng, Z, max_degree=8):
    total = rng.randint(0, max_degree)
    v = [0] * Z.width
    for _ in range(total):
        v[rng.randrange(Z.width)] += 1
    return GeneralizedMonomial.from_vector(v, Z.npoints)


@pytest.mark.criterion("10 generalized-monomial membership agrees with the binary-form criterion (200 draws)")
def test_cross_module(criterion):
    rng = random.Random(int(os.environ.get("FATPOINT_SEED", "0")))
    disagreements = []
    members = 0
    for _ in range(200):
        Z = _random_line_scheme(rng)
        g = _random_gm(rng, Z)
        m = rng.randint(1, 2)
        F = g.expand(Z)
        by_forms = all(poly_membership(F, f, m * k) for f, k in zip(Z.forms, Z.mults))
        expected = gm_member(g, Z, m)
        members += expected
        if by_forms != expected:
            disagreements.append((Z, g, m))
    criterion.note(f"{members} members, {200 - members} non-members")
    assert disagreements == []


SWEEPS = [
    ["resurgence", "--mults", "1-2,1-2,2-3", "--m-max", "6", "--r-max", "6", "--no-figures"],
    ["verify-splittings", "--mults", "1-3,1-3,3", "--n-ambient", "2-3", "--m-max", "4"],
    ["verify-collinear", "--mults", "1-2,1-3", "--n-ambient", "2-3", "--m-max", "2"],
    ["sdefect", "--mults", "1-2,1-2,1-3", "--m-max", "3"],
]


@pytest.mark.criterion("11 reports are byte-identical across --jobs 1 and --jobs 8")
def test_determinism(criterion, tmp_path):
    for idx, argv in enumerate(SWEEPS):
        blobs = []
        for run, jobs in enumerate(("1", "8", "1", "8")):
            out = tmp_path / f"s{idx}_{run}.json"
            code = main(argv + ["--jobs", jobs, "--out", str(out)])
            assert code == 0, argv
            blobs.append(out.read_bytes())
        assert all(b == blobs[0] for b in blobs), argv[0]
    criterion.note(f"{len(SWEEPS)} sweeps x 4 runs")
