"""Monomial ideals stored as minimal generating sets of exponent vectors.

An exponent vector is a plain tuple of nonnegative ints, one entry per
variable of a fixed ordered alphabet.  A :class:`MonomialIdeal` holds the
divisibility antichain of its minimal generators in lexicographic order, so
two ideals are equal exactly when their generator tuples are equal.

Bulk divisibility tests are vectorised with numpy; every public function
accepts and returns Python ints only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

ExponentVector = Tuple[int, ...]

# Upper bound on the size of temporary boolean blocks (|rows| * |gens| * n).
_BLOCK = 1 << 22


class AlphabetMismatch(ValueError):
    """Raised when exponent vectors or ideals live over different alphabets."""


def _check_len(a: Sequence[int], n: int) -> None:
    if len(a) != n:
        raise AlphabetMismatch(f"expected {n} exponents, got {len(a)}")


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the monomial with exponents ``a`` divides the one with ``b``."""
    _check_len(b, len(a))
    return all(x <= y for x, y in zip(a, b))


def degree(a: Sequence[int]) -> int:
    return sum(a)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in ``nvars`` variables given by its minimal generators.

    Build instances with :func:`minimalize` (or the helpers below); the
    constructor trusts that ``gens`` is already a sorted antichain.
    """

    nvars: int
    gens: Tuple[ExponentVector, ...] = ()
    _array: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("alphabet size must be positive")

    @cached_property
    def array(self) -> np.ndarray:
        if self._array is not None:
            return self._array
        if not self.gens:
            return np.zeros((0, self.nvars), dtype=np.int64)
        return np.array(self.gens, dtype=np.int64)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m: Sequence[int]) -> bool:
        return member(m, self)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return product(self, other)

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return intersect(self, other)

    def __pow__(self, r: int) -> "MonomialIdeal":
        return power(self, r)

    def to_json(self) -> list:
        return [list(g) for g in self.gens]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Iterable[int]]) -> "MonomialIdeal":
        return minimalize([tuple(int(x) for x in g) for g in data], nvars)


def zero_ideal(nvars: int) -> MonomialIdeal:
    return MonomialIdeal(nvars, ())


def unit_ideal(nvars: int) -> MonomialIdeal:
    return MonomialIdeal(nvars, ((0,) * nvars,))


def _from_array(arr: np.ndarray, nvars: int) -> MonomialIdeal:
    """Wrap an array of minimal generators; rows are sorted lexicographically."""
    if arr.shape[0] == 0:
        return zero_ideal(nvars)
    order = np.lexsort(arr.T[::-1])
    arr = np.ascontiguousarray(arr[order])
    gens = tuple(tuple(int(x) for x in row) for row in arr)
    return MonomialIdeal(nvars, gens, arr)


def _divisible_mask(rows: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """mask[i] is True iff some row of ``gens`` divides ``rows[i]``."""
    out = np.zeros(rows.shape[0], dtype=bool)
    if rows.shape[0] == 0 or gens.shape[0] == 0:
        return out
    n = rows.shape[1]
    step = max(1, _BLOCK // max(1, gens.shape[0] * n))
    for start in range(0, rows.shape[0], step):
        block = rows[start:start + step]
        out[start:start + step] = (block[:, None, :] >= gens[None, :, :]).all(-1).any(-1)
    return out


def _minimal_rows(arr: np.ndarray) -> np.ndarray:
    """Minimal elements (under componentwise order) of a set of distinct rows."""
    if arr.shape[0] <= 1:
        return arr
    degs = arr.sum(axis=1)
    order = np.argsort(degs, kind="stable")
    arr, degs = arr[order], degs[order]
    bounds = np.flatnonzero(np.diff(degs)) + 1
    kept: list = []
    kept_arr = arr[:0]
    for group in np.split(arr, bounds):
        # distinct rows of equal degree never divide each other
        if kept_arr.shape[0]:
            group = group[~_divisible_mask(group, kept_arr)]
        if group.shape[0]:
            kept.append(group)
            kept_arr = np.concatenate(kept) if len(kept) > 1 else group
    return kept_arr


def minimalize(vectors: Iterable[Sequence[int]] | np.ndarray, nvars: Optional[int] = None) -> MonomialIdeal:
    """Ideal generated by ``vectors``, reduced to its minimal generating set."""
    if isinstance(vectors, np.ndarray):
        arr = vectors.astype(np.int64, copy=False)
        if nvars is None:
            nvars = arr.shape[1]
    else:
        vecs = [tuple(v) for v in vectors]
        if nvars is None:
            if not vecs:
                raise ValueError("alphabet size needed for an empty generating set")
            nvars = len(vecs[0])
        for v in vecs:
            _check_len(v, nvars)
        arr = np.array(vecs, dtype=np.int64).reshape(len(vecs), nvars)
    if arr.ndim != 2 or arr.shape[1] != nvars:
        raise AlphabetMismatch(f"expected rows of length {nvars}")
    if arr.shape[0] == 0:
        return zero_ideal(nvars)
    if (arr < 0).any():
        raise ValueError("exponents must be nonnegative")
    arr = np.unique(arr, axis=0)
    return _from_array(_minimal_rows(arr), nvars)


def _same_alphabet(I: MonomialIdeal, J: MonomialIdeal) -> None:
    if I.nvars != J.nvars:
        raise AlphabetMismatch(f"ideals over {I.nvars} and {J.nvars} variables")


def member(m: Sequence[int], I: MonomialIdeal) -> bool:
    """True iff the monomial ``m`` lies in ``I``."""
    _check_len(m, I.nvars)
    if I.is_zero:
        return False
    return bool((np.asarray(m, dtype=np.int64) >= I.array).all(axis=1).any())


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same_alphabet(I, J)
    if I.is_zero or J.is_zero:
        return zero_ideal(I.nvars)
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    sums = (I.array[:, None, :] + J.array[None, :, :]).reshape(-1, I.nvars)
    return _from_array(_minimal_rows(np.unique(sums, axis=0)), I.nvars)


def power(I: MonomialIdeal, r: int) -> MonomialIdeal:
    if r < 0:
        raise ValueError("exponent must be nonnegative")
    result = unit_ideal(I.nvars)
    base = I
    # square-and-multiply keeps intermediate generator sets small
    while r:
        if r & 1:
            result = product(result, base)
        r >>= 1
        if r:
            base = product(base, base)
    return result


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Intersection via pairwise lcms of generators."""
    _same_alphabet(I, J)
    if I.is_zero or J.is_zero:
        return zero_ideal(I.nvars)
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    lcms = np.maximum(I.array[:, None, :], J.array[None, :, :]).reshape(-1, I.nvars)
    return _from_array(_minimal_rows(np.unique(lcms, axis=0)), I.nvars)


def monomials_of_degree(nvars: int, d: int) -> list:
    """All exponent vectors of total degree ``d`` in ``nvars`` variables, lex-descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        v = [0] * nvars
        for i in combo:
            v[i] += 1
        out.append(tuple(v))
    return out


@lru_cache(maxsize=16)
def monomials_up_to(nvars: int, d: int) -> np.ndarray:
    """Every exponent vector of total degree at most ``d``, as a read-only array."""
    rows = [v for k in range(d + 1) for v in monomials_of_degree(nvars, k)]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), nvars)
    arr.setflags(write=False)
    return arr


def members_mask(rows: np.ndarray, I: MonomialIdeal) -> np.ndarray:
    """Vectorised :func:`member` over the rows of ``rows``."""
    if rows.shape[1] != I.nvars:
        raise AlphabetMismatch(f"expected rows of length {I.nvars}")
    return _divisible_mask(rows, I.array)


def variable_power_ideal(nvars: int, variables: Sequence[int], k: int) -> MonomialIdeal:
    """The ideal ``(x_j : j in variables)^k``."""
    if k <= 0:
        return unit_ideal(nvars)
    if not variables:
        return zero_ideal(nvars)
    gens = []
    for sub in monomials_of_degree(len(variables), k):
        v = [0] * nvars
        for j, e in zip(variables, sub):
            v[j] = e
        gens.append(v)
    return minimalize(gens, nvars)


def intersect_prime_power(I: MonomialIdeal, variables: Sequence[int], k: int) -> MonomialIdeal:
    """``I ∩ (x_j : j in variables)^k`` without forming the full lcm table.

    For a monomial g, ``(g) ∩ P^k`` is generated by g times the monomials in
    the variables of P of degree ``max(0, k - deg_P(g))``.
    """
    if k <= 0 or I.is_zero:
        return I
    variables = sorted(set(variables))
    if not variables:
        return zero_ideal(I.nvars)
    idx = np.array(variables)
    deficits = np.maximum(0, k - I.array[:, idx].sum(axis=1))
    cache: dict = {}
    blocks = []
    for g, need in zip(I.array, deficits):
        need = int(need)
        if need == 0:
            blocks.append(g[None, :])
            continue
        if need not in cache:
            subs = monomials_of_degree(len(variables), need)
            ups = np.zeros((len(subs), I.nvars), dtype=np.int64)
            ups[:, idx] = np.array(subs, dtype=np.int64)
            cache[need] = ups
        blocks.append(cache[need] + g[None, :])
    arr = np.unique(np.concatenate(blocks), axis=0)
    return _from_array(_minimal_rows(arr), I.nvars)


def non_members(I: MonomialIdeal, J: MonomialIdeal) -> list:
    """Generators of ``J`` (in canonical order) that are not in ``I``."""
    _same_alphabet(I, J)
    if J.is_zero:
        return []
    if I.is_zero:
        return list(J.gens)
    mask = _divisible_mask(J.array, I.array)
    return [J.gens[i] for i in np.flatnonzero(~mask)]


def containment_witness(I: MonomialIdeal, J: MonomialIdeal) -> Optional[ExponentVector]:
    """First generator of ``J`` outside ``I``, or None when ``J ⊆ I``."""
    bad = non_members(I, J)
    return bad[0] if bad else None


def contains(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """True iff ``J ⊆ I``."""
    return containment_witness(I, J) is None


def alpha(I: MonomialIdeal) -> float | int:
    """Least total degree of a nonzero element; ``math.inf`` for the zero ideal."""
    if I.is_zero:
        return math.inf
    return int(I.array.sum(axis=1).min())
