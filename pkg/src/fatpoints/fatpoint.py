"""Fat point schemes supported at coordinate points of P^N.

The point ``P_i`` is the i-th coordinate vertex, so ``I(P_i)`` is generated by
every variable except ``x_i`` and all ideals here are monomial.  Besides the
basic constructions (ideal of a scheme, symbolic powers, containment tables)
this module carries executable checks of the splitting identities and
containment schedules known for schemes supported at three noncollinear
points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .monomial import (
    ExponentVector,
    MonomialIdeal,
    alpha,
    containment_witness,
    intersect_prime_power,
    members_mask,
    monomials_up_to,
    power,
    product,
    unit_ideal,
)


class PreconditionError(ValueError):
    """Arguments fall outside the hypotheses of the requested check."""


class InvalidOrdering(PreconditionError):
    """The three multiplicities are not ordered with the largest last."""


class CounterexampleError(RuntimeError):
    """An identity expected to hold failed on concrete data."""


@dataclass(frozen=True)
class FatPointScheme:
    """``sum m_i P_i`` over coordinate points of P^N.

    ``mults`` holds ``(point_index, multiplicity)`` pairs sorted by index with
    zero multiplicities dropped.
    """

    ambient_dim: int
    mults: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 2:
            raise ValueError("ambient dimension must be at least 2")
        seen = set()
        for i, m in self.mults:
            if not 0 <= i <= self.ambient_dim:
                raise ValueError(f"point index {i} outside 0..{self.ambient_dim}")
            if m < 0:
                raise ValueError("multiplicities must be nonnegative")
            if i in seen:
                raise ValueError(f"point index {i} repeated")
            seen.add(i)
        canon = tuple(sorted((i, m) for i, m in self.mults if m > 0))
        object.__setattr__(self, "mults", canon)

    @classmethod
    def of(cls, mults: Sequence[int], ambient_dim: int = 2) -> "FatPointScheme":
        """Scheme with multiplicity ``mults[i]`` at ``P_i``."""
        return cls(ambient_dim, tuple(enumerate(int(m) for m in mults)))

    @property
    def nvars(self) -> int:
        return self.ambient_dim + 1

    def multiplicity(self, i: int) -> int:
        return dict(self.mults).get(i, 0)

    def mult_vector(self, length: Optional[int] = None) -> Tuple[int, ...]:
        n = self.nvars if length is None else length
        return tuple(self.multiplicity(i) for i in range(n))

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.mults)

    def scale(self, k: int) -> "FatPointScheme":
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        return FatPointScheme(self.ambient_dim, tuple((i, k * m) for i, m in self.mults))

    def __add__(self, other: "FatPointScheme") -> "FatPointScheme":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("schemes live in different ambient spaces")
        total: Dict[int, int] = dict(self.mults)
        for i, m in other.mults:
            total[i] = total.get(i, 0) + m
        return FatPointScheme(self.ambient_dim, tuple(total.items()))

    def in_ambient(self, ambient_dim: int) -> "FatPointScheme":
        return FatPointScheme(ambient_dim, self.mults)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "mults": [list(p) for p in self.mults]}


def cond_satisfied(e: Sequence[int], Z: FatPointScheme) -> bool:
    """Inequality test for membership of ``x^e`` in ``I(Z)``.

    For every point ``P_i`` of multiplicity ``m_i`` the exponents off
    coordinate ``i`` must sum to at least ``m_i``.
    """
    if len(e) != Z.nvars:
        raise ValueError(f"expected {Z.nvars} exponents, got {len(e)}")
    total = sum(e)
    return all(total - e[i] >= m for i, m in Z.mults)


def cond_mask(rows: np.ndarray, Z: FatPointScheme) -> np.ndarray:
    """:func:`cond_satisfied` evaluated on every row of an exponent array."""
    total = rows.sum(axis=1)
    ok = np.ones(rows.shape[0], dtype=bool)
    for i, m in Z.mults:
        ok &= total - rows[:, i] >= m
    return ok


def cond_mismatches(Z: FatPointScheme, degree_bound: int = 12) -> List[ExponentVector]:
    """Monomials of degree <= ``degree_bound`` where membership in ``ideal_of(Z)``
    and the inequality system disagree (empty when they agree)."""
    rows = monomials_up_to(Z.nvars, degree_bound)
    bad = members_mask(rows, ideal_of(Z)) != cond_mask(rows, Z)
    return [tuple(int(x) for x in row) for row in rows[bad]]


@lru_cache(maxsize=512)
def ideal_of(Z: FatPointScheme) -> MonomialIdeal:
    """Minimal generators of ``∩ I(P_i)^{m_i}``."""
    ideal = unit_ideal(Z.nvars)
    # largest multiplicity first keeps the running intersection small
    for i, m in sorted(Z.mults, key=lambda p: (-p[1], p[0])):
        others = [j for j in range(Z.nvars) if j != i]
        ideal = intersect_prime_power(ideal, others, m)
    return ideal


def symbolic_power(Z: FatPointScheme, m: int) -> MonomialIdeal:
    if m < 0:
        raise ValueError("symbolic exponent must be nonnegative")
    return ideal_of(Z.scale(m))


@lru_cache(maxsize=512)
def ordinary_power(Z: FatPointScheme, r: int) -> MonomialIdeal:
    """``I(Z)^r``, built from the cached ``r-1`` power."""
    if r <= 0:
        return unit_ideal(Z.nvars)
    if r == 1:
        return ideal_of(Z)
    return product(ordinary_power(Z, r - 1), ideal_of(Z))


def _check_ordered(m0: int, m1: int, m2: int) -> None:
    if min(m0, m1, m2) < 0:
        raise InvalidOrdering("multiplicities must be nonnegative")
    if m2 < max(m0, m1):
        raise InvalidOrdering(f"need m2 >= max(m0, m1), got ({m0}, {m1}, {m2})")


def alpha_three_points(m0: int, m1: int, m2: int) -> int:
    """Least degree of a form in ``I(m0 P0 + m1 P1 + m2 P2)`` in the plane."""
    _check_ordered(m0, m1, m2)
    s = m0 + m1 + m2
    if m2 >= m0 + m1:
        return m2
    return (s + (s % 2)) // 2


def waldschmidt_three_points(m0: int, m1: int, m2: int) -> Fraction:
    _check_ordered(m0, m1, m2)
    return max(Fraction(m2), Fraction(m0 + m1 + m2, 2))


def waldschmidt_empirical(Z: FatPointScheme, m_max: int) -> List[Tuple[int, Fraction]]:
    """The exact sequence ``alpha(I^(m)) / m`` for ``m = 1..m_max``."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    return [(m, Fraction(alpha(symbolic_power(Z, m)), m)) for m in range(1, m_max + 1)]


@dataclass(frozen=True)
class TableEntry:
    m: int
    r: int
    contained: bool
    witness: Optional[ExponentVector] = None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.m, self.r)


@dataclass
class ContainmentTable:
    scheme: FatPointScheme
    m_max: int
    r_max: int
    entries: List[TableEntry] = field(default_factory=list)

    def lookup(self, m: int, r: int) -> TableEntry:
        return self.entries[(m - 1) * self.r_max + (r - 1)]

    def noncontainments(self) -> List[TableEntry]:
        return [e for e in self.entries if not e.contained]

    def monotonicity_violations(self) -> List[Tuple[int, int, int, int]]:
        """Pairs where ``contained(m, r)`` holds but ``contained(m', r')`` fails
        for some ``m' >= m``, ``r' <= r``.  Checked on grid neighbours, which
        suffices by transitivity."""
        bad = []
        for e in self.entries:
            if not e.contained:
                continue
            if e.m < self.m_max and not self.lookup(e.m + 1, e.r).contained:
                bad.append((e.m, e.r, e.m + 1, e.r))
            if e.r > 1 and not self.lookup(e.m, e.r - 1).contained:
                bad.append((e.m, e.r, e.m, e.r - 1))
        return bad

    def rows(self) -> List[list]:
        return [
            [e.m, e.r, e.contained, list(e.witness) if e.witness is not None else None]
            for e in self.entries
        ]


def containment_table(Z: FatPointScheme, m_max: int, r_max: int) -> ContainmentTable:
    """Decide ``I^(m) ⊆ I^r`` on the grid ``1..m_max × 1..r_max``."""
    if m_max < 0 or r_max < 0:
        raise ValueError("grid bounds must be nonnegative")
    table = ContainmentTable(Z, m_max, r_max)
    for m in range(1, m_max + 1):
        sym = symbolic_power(Z, m)
        for r in range(1, r_max + 1):
            w = containment_witness(ordinary_power(Z, r), sym)
            table.entries.append(TableEntry(m, r, w is None, w))
    return table


class Classification(str, enum.Enum):
    COLLINEAR = "collinear"
    CASE_A = "case_a"
    EVEN_SUM = "even_sum"
    ODD_SUM = "odd_sum"


@dataclass(frozen=True)
class ClassifyResult:
    classification: Classification
    certified_rho: Fraction
    sorted_mults: Tuple[int, ...]
    permutation: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "classification": self.classification.value,
            "certified_rho": fraction_text(self.certified_rho),
            "sorted_mults": list(self.sorted_mults),
            "permutation": list(self.permutation),
        }


def fraction_text(q: Optional[Fraction]) -> Optional[str]:
    if q is None:
        return None
    return f"{q.numerator}/{q.denominator}"


def sort_three(mults: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Ascending multiplicities and the original positions in that order."""
    perm = tuple(sorted(range(len(mults)), key=lambda i: (mults[i], i)))
    return tuple(mults[i] for i in perm), perm


def classify(m0: int, m1: int, m2: int, collinear: bool = False) -> ClassifyResult:
    """Resurgence class of ``m0 P0 + m1 P1 + m2 P2``.

    Multiplicities are sorted first; fewer than three positive
    multiplicities means the support is collinear.
    """
    mults = (m0, m1, m2)
    if min(mults) < 0:
        raise ValueError("multiplicities must be nonnegative")
    (a, b, c), perm = sort_three(mults)
    if collinear or a == 0:
        return ClassifyResult(Classification.COLLINEAR, Fraction(1), (a, b, c), perm)
    s = a + b + c
    if a + b <= c:
        return ClassifyResult(Classification.CASE_A, Fraction(1), (a, b, c), perm)
    if s % 2 == 0:
        return ClassifyResult(Classification.EVEN_SUM, Fraction(1), (a, b, c), perm)
    return ClassifyResult(Classification.ODD_SUM, Fraction(s + 1, s), (a, b, c), perm)


@dataclass(frozen=True)
class SdefectResult:
    zero: bool
    failing_m: Optional[int] = None
    witness: Optional[ExponentVector] = None


def sdefect_zero_upto(Z: FatPointScheme, m_max: int) -> SdefectResult:
    """Check ``I^(m) == I^m`` (as generator sets) for ``m = 1..m_max``."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    for m in range(1, m_max + 1):
        sym, ordp = symbolic_power(Z, m), ordinary_power(Z, m)
        if sym != ordp:
            w = containment_witness(ordp, sym) or containment_witness(sym, ordp)
            return SdefectResult(False, m, w)
    return SdefectResult(True)


def _three(N: int, m0: int, m1: int, m2: int) -> FatPointScheme:
    return FatPointScheme.of((m0, m1, m2), N)


def _triangle(N: int, k: int = 1) -> FatPointScheme:
    return _three(N, k, k, k)


def _product_of(*schemes: FatPointScheme) -> MonomialIdeal:
    ideal = unit_ideal(schemes[0].nvars)
    for Z in schemes:
        ideal = product(ideal, ideal_of(Z))
    return ideal


def verify_split_leq(mults: Sequence[int], N: int = 2) -> bool:
    """``I(Z) = I(m0(P0+P2)) · I(m1(P1+P2)) · I((m2-m0-m1)P2)`` when ``m0+m1 <= m2``."""
    m0, m1, m2 = mults
    _check_ordered(m0, m1, m2)
    if m0 + m1 > m2:
        raise PreconditionError("needs m0 + m1 <= m2")
    rhs = _product_of(_three(N, m0, 0, m0), _three(N, 0, m1, m1), _three(N, 0, 0, m2 - m0 - m1))
    return ideal_of(_three(N, m0, m1, m2)) == rhs


def verify_split_gt(mults: Sequence[int], N: int = 2) -> bool:
    """``I(Z) = I(Z1) · I(Z2) · I(Z3)`` when ``m0+m1 > m2``, with
    ``Z1 = (m0+m1-m2)(P0+P1+P2)``, ``Z2 = (m2-m1)(P0+P2)``, ``Z3 = (m2-m0)(P1+P2)``."""
    m0, m1, m2 = mults
    _check_ordered(m0, m1, m2)
    if m0 + m1 <= m2:
        raise PreconditionError("needs m0 + m1 > m2")
    rhs = _product_of(
        _triangle(N, m0 + m1 - m2),
        _three(N, m2 - m1, 0, m2 - m1),
        _three(N, 0, m2 - m0, m2 - m0),
    )
    return ideal_of(_three(N, m0, m1, m2)) == rhs


def verify_triple_power(q: int, r: int, N: int = 2) -> bool:
    """``I((2q+r)T) = I(2T)^q · I(T)^r`` for the triangle ``T = P0+P1+P2``."""
    if q < 0:
        raise PreconditionError("q must be nonnegative")
    if r not in (0, 1):
        raise PreconditionError("r must be 0 or 1")
    rhs = product(power(ideal_of(_triangle(N, 2)), q), power(ideal_of(_triangle(N)), r))
    return ideal_of(_triangle(N, 2 * q + r)) == rhs


def _check_odd_case(m0: int, m1: int, m2: int) -> None:
    _check_ordered(m0, m1, m2)
    if m0 + m1 <= m2:
        raise PreconditionError("needs m0 + m1 > m2")
    if (m0 + m1 + m2) % 2 == 0:
        raise PreconditionError("needs an odd multiplicity sum")


def verify_symbolic_factorization(mults: Sequence[int], k: int, N: int = 2) -> bool:
    """``I(Z)^(k) = I(T)^(k) · I(Z - T)^k`` in the odd-sum case."""
    m0, m1, m2 = mults
    _check_odd_case(m0, m1, m2)
    if k < 1:
        raise PreconditionError("k must be positive")
    Z = _three(N, m0, m1, m2)
    rest = _three(N, m0 - 1, m1 - 1, m2 - 1)
    rhs = product(symbolic_power(_triangle(N), k), ordinary_power(rest, k))
    return symbolic_power(Z, k) == rhs


def verify_symbolic_multiplicativity(mults: Sequence[int], k: int, i: int, N: int = 2) -> bool:
    """``I(Z)^(k) = I(Z)^(i) · I(Z)^(k-i)`` when i and k-i are not both odd."""
    m0, m1, m2 = mults
    _check_odd_case(m0, m1, m2)
    if not 1 <= i < k:
        raise PreconditionError("needs 1 <= i < k")
    if i % 2 == 1 and (k - i) % 2 == 1:
        raise PreconditionError("i and k - i are both odd")
    Z = _three(N, m0, m1, m2)
    return symbolic_power(Z, k) == product(symbolic_power(Z, i), symbolic_power(Z, k - i))


def verify_small_containments(N: int, r: int) -> bool:
    """``I(T)^(r) ⊆ I(T)^(r-1)`` for ``1 <= r <= 4``; larger r is not claimed."""
    if not 1 <= r <= 4:
        raise PreconditionError("only 1 <= r <= 4 is covered")
    T = _triangle(N)
    return containment_witness(ordinary_power(T, r - 1), symbolic_power(T, r)) is None


def verify_schedule(mults: Sequence[int], q: int, r: int, N: int = 2) -> bool:
    """Containments driving the odd-sum upper bound, with ``s = m0+m1+m2``.

    ``r == 0``:  ``I^(q(1+s)) ⊆ I^(qs)``;
    ``0 < r < 1+s``:  ``I^(q(1+s)+r) ⊆ I^(qs+r-1)``.
    """
    m0, m1, m2 = mults
    _check_odd_case(m0, m1, m2)
    s = m0 + m1 + m2
    if q < 0:
        raise PreconditionError("q must be nonnegative")
    if r < 0 or r >= 1 + s:
        raise PreconditionError(f"r must lie in 0..{s}")
    Z = _three(N, m0, m1, m2)
    if r == 0:
        m, n = q * (1 + s), q * s
    else:
        m, n = q * (1 + s) + r, q * s + r - 1
    return containment_witness(ordinary_power(Z, n), symbolic_power(Z, m)) is None


def w_scheme(n0: int, n1: int, n2: int, N: int = 2) -> FatPointScheme:
    s = n0 + n1 + n2
    return _three(N, n0 + s, n1 + s, n2 + s)


def v_scheme(n0: int, n1: int, n2: int, r: int, N: int = 2) -> FatPointScheme:
    return _three(N, r + n0 - 1, r + n1 - 1, r + n2 - 1)


def verify_WV_claims(n0: int, n1: int, n2: int, r: Optional[int] = None, N: int = 2) -> bool:
    """``I(W) ⊆ I(T)^(n0+n1+n2)`` and, when ``r`` is given, ``I(V) ⊆ I(T)^(r-1)``."""
    if min(n0, n1, n2) < 1:
        raise PreconditionError("all n_i must be at least 1")
    s = n0 + n1 + n2
    T = _triangle(N)
    ok = containment_witness(ordinary_power(T, s), ideal_of(w_scheme(n0, n1, n2, N))) is None
    if r is not None:
        if not 1 < r < 1 + s:
            raise PreconditionError(f"r must satisfy 1 < r < {1 + s}")
        ok = ok and containment_witness(
            ordinary_power(T, r - 1), ideal_of(v_scheme(n0, n1, n2, r, N))
        ) is None
    return ok


def compare_ambient(Z: FatPointScheme, m: int, r: int) -> Tuple[bool, bool]:
    """Containment ``I^(m) ⊆ I^r`` in P^N and after restricting to the plane."""
    if any(i > 2 for i in Z.support()):
        raise PreconditionError("scheme must be supported at P0, P1, P2")
    plane = Z.in_ambient(2)

    def decide(S: FatPointScheme) -> bool:
        return containment_witness(ordinary_power(S, r), symbolic_power(S, m)) is None

    in_pn, in_p2 = decide(Z), decide(plane)
    if in_pn and not in_p2:
        raise CounterexampleError(f"containment holds in P^{Z.ambient_dim} but not in P^2")
    return in_pn, in_p2


def alpha_schedule_pairs(s: int, m_max: int, r_max: int) -> List[Tuple[int, int]]:
    """Grid pairs ``(2k, r)`` forced to be noncontainments by degree.

    ``alpha(I^(2k)) = ks`` while ``alpha(I^r) = r(s+1)/2``, so ``r =
    floor(2ks/(s+1)) + 1`` already exceeds the available degree.
    """
    out = []
    for k in range(1, m_max // 2 + 1):
        r = (2 * k * s) // (s + 1) + 1
        if r <= r_max:
            out.append((2 * k, r))
    return out


@dataclass
class ResurgenceReport:
    scheme: FatPointScheme
    empirical_lower: Optional[Fraction]
    certified_value: Optional[Fraction]
    classification: Optional[Classification]
    witnesses: List[Tuple[int, int, ExponentVector]]
    table: ContainmentTable
    permutation: Tuple[int, ...] = ()
    counterexamples: List[Tuple[int, int]] = field(default_factory=list)
    alpha_bound: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme.to_json(),
            "classification": self.classification.value if self.classification else None,
            "certified_rho": fraction_text(self.certified_value),
            "empirical_lower": fraction_text(self.empirical_lower),
            "alpha_ratio_bound": fraction_text(self.alpha_bound),
            "permutation": list(self.permutation),
            "counterexamples": [list(c) for c in self.counterexamples],
            "table": self.table.rows(),
        }


def resurgence_report(Z: FatPointScheme, m_max: int = 12, r_max: int = 12) -> ResurgenceReport:
    """Grid search for noncontainments alongside the closed-form resurgence.

    The reported interval is ``[empirical_lower, certified_value]``; the grid
    never certifies the supremum on its own.  Schemes with more than three
    support points get no certified value.
    """
    if m_max < 1 or r_max < 1:
        raise ValueError("grid bounds must be at least 1")
    table = containment_table(Z, m_max, r_max)
    bad = table.noncontainments()
    lower = max((e.ratio for e in bad), default=None)
    witnesses = [(e.m, e.r, e.witness) for e in bad]

    certified = cls = None
    perm: Tuple[int, ...] = ()
    alpha_bound = None
    support = Z.support()
    if len(support) <= 3:
        mults = [m for _, m in Z.mults] + [0] * (3 - len(support))
        res = classify(*mults)
        certified, cls = res.certified_rho, res.classification
        perm = tuple(support[i] if i < len(support) else -1 for i in res.permutation)
        a, b, c = res.sorted_mults
        if a > 0:
            alpha_bound = Fraction(alpha_three_points(a, b, c)) / waldschmidt_three_points(a, b, c)
    counter = []
    if certified is not None:
        counter = [(e.m, e.r) for e in bad if e.ratio > certified]
    return ResurgenceReport(
        Z, lower, certified, cls, witnesses, table, perm, counter, alpha_bound
    )
