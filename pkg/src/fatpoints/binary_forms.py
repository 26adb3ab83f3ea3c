"""Exact rational forms and fat-point membership for points on a line.

A form ``F`` in ``x0..xN`` is written as ``sum g_i * x2^i2 ... xN^iN`` with
binary forms ``g_i`` in ``x0, x1``.  For a point on the line
``x2 = ... = xN = 0`` cut out by ``G = c*x0 + d*x1``, ``F`` vanishes to order
``m`` there exactly when ``G^(m - |i|)`` divides ``g_i`` for every key with
``|i| < m``.  That test reduces to repeated exact division by a linear form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

ExponentVector = Tuple[int, ...]


class NonHomogeneousError(ValueError):
    pass


class FormParseError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryForm:
    """``sum coeffs[k] * x0^(degree-k) * x1^k``; the zero form has ``coeffs == ()``."""

    degree: int
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(Fraction(c) for c in self.coeffs)
        if cs and len(cs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients")
        if all(c == 0 for c in cs):
            cs = ()
        object.__setattr__(self, "coeffs", cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def linear(cls, c, d) -> "BinaryForm":
        return cls(1, (Fraction(c), Fraction(d)))

    def divide_linear(self, G: "BinaryForm") -> Optional["BinaryForm"]:
        """Exact quotient ``self / G`` for a linear ``G``, or None if ``G`` does not divide."""
        c, d = _linear_coeffs(G)
        if self.is_zero:
            return BinaryForm(max(self.degree - 1, 0))
        if self.degree == 0:
            return None
        a = self.coeffs
        D = self.degree
        q = [Fraction(0)] * D
        # a_0 = c q_0,  a_k = c q_k + d q_(k-1),  a_D = d q_(D-1)
        if c != 0:
            prev = Fraction(0)
            for k in range(D):
                q[k] = (a[k] - d * prev) / c
                prev = q[k]
            if a[D] != d * q[D - 1]:
                return None
        else:
            if a[0] != 0:
                return None
            for k in range(1, D + 1):
                q[k - 1] = a[k] / d
        return BinaryForm(D - 1, tuple(q))

    def to_poly(self, nvars: int, tail: Sequence[int] = ()) -> "SparsePoly":
        terms = {}
        for k, c in enumerate(self.coeffs):
            e = (self.degree - k, k) + tuple(tail)
            e = e + (0,) * (nvars - len(e))
            terms[e] = c
        return SparsePoly(nvars, terms)


def _linear_coeffs(G: BinaryForm) -> Tuple[Fraction, Fraction]:
    if G.is_zero or G.degree != 1:
        raise ValueError("divisor must be a nonzero linear form")
    return G.coeffs[0], G.coeffs[1]


def binary_divides(G: BinaryForm, k: int, g: BinaryForm) -> bool:
    """True iff ``G^k`` divides ``g`` over the rationals."""
    _linear_coeffs(G)
    if k < 0:
        raise ValueError("k must be nonnegative")
    cur = g
    for _ in range(k):
        if cur.is_zero:
            return True
        nxt = cur.divide_linear(G)
        if nxt is None:
            return False
        cur = nxt
    return True


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial in ``nvars`` variables as ``{exponent vector: nonzero Fraction}``."""

    nvars: int
    terms: Mapping[ExponentVector, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[ExponentVector, Fraction] = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for {self.nvars} variables")
            c = Fraction(c)
            if c != 0:
                clean[e] = clean.get(e, Fraction(0)) + c
                if clean[e] == 0:
                    del clean[e]
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.terms.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=0)

    @classmethod
    def monomial(cls, e: Sequence[int], coeff=1) -> "SparsePoly":
        return cls(len(e), {tuple(e): Fraction(coeff)})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "SparsePoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): Fraction(c) for i, c in enumerate(coeffs)})

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        _same_nvars(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return SparsePoly(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            c = Fraction(other)
            return SparsePoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        _same_nvars(self, other)
        terms: Dict[ExponentVector, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, images: Sequence["SparsePoly"]) -> "SparsePoly":
        """Ring map sending ``x_i`` to ``images[i]``."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        out = SparsePoly(nv, {})
        cache: Dict[Tuple[int, int], SparsePoly] = {}
        for e, c in self.terms.items():
            t = SparsePoly.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def __str__(self) -> str:
        return format_poly(self)


def _same_nvars(a: SparsePoly, b: SparsePoly) -> None:
    if a.nvars != b.nvars:
        raise ValueError(f"polynomials in {a.nvars} and {b.nvars} variables")


def decompose(F: SparsePoly) -> Dict[Tuple[int, ...], BinaryForm]:
    """Group the terms of a form by their ``(x2..xN)`` exponents.

    Keys are exponent tuples of ``x2..xN``; values are the binary form
    coefficients in ``x0, x1``.  Keys with zero coefficient are omitted.
    """
    if not F.is_homogeneous:
        raise NonHomogeneousError("decomposition needs a homogeneous form")
    if F.nvars < 2:
        raise ValueError("need at least the variables x0, x1")
    d = F.degree
    groups: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for e, c in F.terms.items():
        groups.setdefault(e[2:], {})[e[1]] = c
    out = {}
    for key in sorted(groups):
        deg = d - sum(key)
        coeffs = [groups[key].get(k, Fraction(0)) for k in range(deg + 1)]
        out[key] = BinaryForm(deg, tuple(coeffs))
    return out


def recompose(parts: Mapping[Tuple[int, ...], BinaryForm], nvars: int) -> SparsePoly:
    out = SparsePoly(nvars, {})
    for key, g in parts.items():
        out = out + g.to_poly(nvars, key)
    return out


def poly_membership(F: SparsePoly, form: Tuple, m: int) -> bool:
    """Is ``F`` in ``I(P)^m`` where ``I(P) = (c*x0 + d*x1, x2, ..., xN)``?

    ``form`` is the pair ``(c, d)``; the point itself is ``[-d : c : 0 : ... : 0]``.
    The zero form is a member of everything.
    """
    if m < 0:
        raise ValueError("multiplicity must be nonnegative")
    G = BinaryForm.linear(*form)
    for key, g in decompose(F).items():
        s = sum(key)
        if s < m and not binary_divides(G, m - s, g):
            return False
    return True


def multi_point_membership(F: SparsePoly, forms: Sequence[Tuple], mults: Sequence[int], m: int = 1) -> bool:
    """Membership in ``I(sum m * mults[i] * P_i)`` for points on the line."""
    if len(forms) != len(mults):
        raise ValueError("one multiplicity per point")
    return all(poly_membership(F, f, m * k) for f, k in zip(forms, mults))


def point_of_form(form: Tuple, nvars: int) -> Tuple[Fraction, ...]:
    c, d = (Fraction(x) for x in form)
    return (-d, c) + (Fraction(0),) * (nvars - 2)


def vanishing_order(F: SparsePoly, point: Sequence) -> int:
    """Order of vanishing of ``F`` at ``point`` by Taylor expansion.

    Expands ``F(point + y)`` and returns the least total degree in ``y`` of a
    surviving term; an independent check on :func:`poly_membership`.
    Returns a large sentinel for the zero polynomial.
    """
    p = [Fraction(x) for x in point]
    shifted: Dict[ExponentVector, Fraction] = {}
    for e, c in F.terms.items():
        # product over i of (p_i + y_i)^e_i
        partial: Dict[ExponentVector, Fraction] = {(): c}
        for i, k in enumerate(e):
            nxt: Dict[ExponentVector, Fraction] = {}
            for pre, v in partial.items():
                for j in range(k + 1):
                    w = comb(k, j) * p[i] ** (k - j)
                    if w:
                        nxt[pre + (j,)] = nxt.get(pre + (j,), Fraction(0)) + v * w
            partial = nxt
        for ey, v in partial.items():
            shifted[ey] = shifted.get(ey, Fraction(0)) + v
    orders = [sum(ey) for ey, v in shifted.items() if v != 0]
    return min(orders) if orders else 1 << 30


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, nvars: Optional[int] = None) -> SparsePoly:
    """Parse ``3/2*x0^2*x2 - x1^2``-style input.

    Factors within a term are separated by ``*`` or whitespace.  Without
    ``nvars`` the alphabet is ``x0..xK`` for the largest index seen (at least 2).
    """
    src = text.strip()
    if not src:
        raise FormParseError("empty input")
    raw = []
    pos = 0
    while pos < len(src):
        mt = _TERM.match(src, pos)
        if not mt or mt.end() == pos:
            raise FormParseError(f"cannot parse near {src[pos:]!r}")
        sign, body = mt.group(1), mt.group(2).strip()
        if not body:
            raise FormParseError("dangling sign")
        coeff = Fraction(-1 if sign == "-" else 1)
        exps: Dict[int, int] = {}
        for tok in [t for t in re.split(r"[*\s]+", body) if t]:
            fm = _FACTOR.match(tok)
            if fm:
                i = int(fm.group(1))
                exps[i] = exps.get(i, 0) + int(fm.group(2) or 1)
                continue
            try:
                coeff *= Fraction(tok)
            except (ValueError, ZeroDivisionError) as exc:
                raise FormParseError(f"bad factor {tok!r}") from exc
        raw.append((coeff, exps))
        pos = mt.end()
    top = max((max(ex, default=0) for _, ex in raw), default=0)
    n = nvars if nvars is not None else max(top + 1, 3)
    if top >= n:
        raise FormParseError(f"variable x{top} outside x0..x{n - 1}")
    out = SparsePoly(n, {})
    for coeff, ex in raw:
        e = tuple(ex.get(i, 0) for i in range(n))
        out = out + SparsePoly(n, {e: coeff})
    return out


def format_poly(F: SparsePoly) -> str:
    """Inverse of :func:`parse_poly` (exact round trip)."""
    if F.is_zero:
        return "0"
    parts = []
    for e, c in F.terms.items():
        factors = [f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(e) if k]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def decomposition_json(parts: Mapping[Tuple[int, ...], BinaryForm]) -> list:
    return [
        {"key": list(key), "degree": g.degree, "coeffs": [f"{c.numerator}/{c.denominator}" for c in g.coeffs]}
        for key, g in parts.items()
    ]


def expand_product(factors: Iterable[SparsePoly], nvars: int) -> SparsePoly:
    out = SparsePoly.constant(nvars)
    for f in factors:
        out = out * f
    return out
