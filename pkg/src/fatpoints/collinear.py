"""Fat points on the line ``x2 = ... = xN = 0``.

Ideals of such schemes are generated by products of the linear forms
``G_j = c_j x0 + d_j x1`` (one per point) and the variables ``x2..xN``.  These
"generalized monomials" are products of pairwise non-associate primes, so
divisibility between them is exponentwise.  Equality of ideals is *not*
reduced to equality of generator sets here; the splitting and the
symbolic-equals-ordinary statements are checked with explicit factorization
certificates in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import List, Optional, Sequence, Tuple

from . import monomial
from .binary_forms import SparsePoly, expand_product, multi_point_membership


class NotAMember(ValueError):
    pass


@dataclass(frozen=True)
class LineScheme:
    """``sum m_i P_i`` for distinct points ``P_i`` on the line.

    ``forms[i] = (c_i, d_i)`` defines ``G_i = c_i x0 + d_i x1``.  Points are
    stored sorted by multiplicity (nondecreasing), as the telescoping
    splitting needs.
    """

    ambient_dim: int
    forms: Tuple[Tuple[Fraction, Fraction], ...]
    mults: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.ambient_dim < 2:
            raise ValueError("ambient dimension must be at least 2")
        if len(self.forms) != len(self.mults):
            raise ValueError("one multiplicity per point")
        if any(m < 0 for m in self.mults):
            raise ValueError("multiplicities must be nonnegative")
        forms = tuple((Fraction(c), Fraction(d)) for c, d in self.forms)
        for c, d in forms:
            if c == 0 and d == 0:
                raise ValueError("linear form (0, 0) does not define a point")
        for i in range(len(forms)):
            for j in range(i):
                (ci, di), (cj, dj) = forms[i], forms[j]
                if ci * dj == cj * di:
                    raise ValueError(f"points {j} and {i} coincide")
        order = sorted(range(len(forms)), key=lambda i: (self.mults[i], i))
        object.__setattr__(self, "forms", tuple(forms[i] for i in order))
        object.__setattr__(self, "mults", tuple(int(self.mults[i]) for i in order))

    @classmethod
    def standard(cls, mults: Sequence[int], ambient_dim: int = 2) -> "LineScheme":
        """Points with forms ``x0, x1, x0+x1, x0+2x1, ...``."""
        forms = []
        for i in range(len(mults)):
            forms.append((1, 0) if i == 0 else (0, 1) if i == 1 else (1, i - 1))
        return cls(ambient_dim, tuple(forms), tuple(mults))

    @property
    def npoints(self) -> int:
        return len(self.mults)

    @property
    def nx(self) -> int:
        return self.ambient_dim - 1

    @property
    def width(self) -> int:
        return self.npoints + self.nx

    def with_mults(self, mults: Sequence[int]) -> "LineScheme":
        return LineScheme(self.ambient_dim, self.forms, tuple(mults))

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "forms": [[str(c), str(d)] for c, d in self.forms],
            "mults": list(self.mults),
        }


@dataclass(frozen=True, order=True)
class GeneralizedMonomial:
    """``G_1^a_1 ... G_n^a_n * x2^b_2 ... xN^b_N``."""

    g_exps: Tuple[int, ...]
    x_exps: Tuple[int, ...]

    @classmethod
    def from_vector(cls, v: Sequence[int], npoints: int) -> "GeneralizedMonomial":
        return cls(tuple(v[:npoints]), tuple(v[npoints:]))

    @property
    def vector(self) -> Tuple[int, ...]:
        return self.g_exps + self.x_exps

    @property
    def x_degree(self) -> int:
        return sum(self.x_exps)

    @property
    def degree(self) -> int:
        return sum(self.g_exps) + self.x_degree

    def __mul__(self, other: "GeneralizedMonomial") -> "GeneralizedMonomial":
        return GeneralizedMonomial(
            tuple(a + b for a, b in zip(self.g_exps, other.g_exps)),
            tuple(a + b for a, b in zip(self.x_exps, other.x_exps)),
        )

    def divides(self, other: "GeneralizedMonomial") -> bool:
        return monomial.divides(self.vector, other.vector)

    def expand(self, Z: LineScheme) -> SparsePoly:
        """The actual polynomial in ``x0..xN``."""
        nv = Z.ambient_dim + 1
        factors = []
        for (c, d), a in zip(Z.forms, self.g_exps):
            factors.extend([SparsePoly.linear([c, d] + [0] * (nv - 2))] * a)
        x = [0] * nv
        for j, b in enumerate(self.x_exps):
            x[j + 2] = b
        factors.append(SparsePoly.monomial(x))
        return expand_product(factors, nv)

    def to_json(self) -> dict:
        return {"g": list(self.g_exps), "x": list(self.x_exps)}


def _unit(Z: LineScheme) -> GeneralizedMonomial:
    return GeneralizedMonomial((0,) * Z.npoints, (0,) * Z.nx)


def _check_alphabet(g: GeneralizedMonomial, Z: LineScheme) -> None:
    if len(g.g_exps) != Z.npoints or len(g.x_exps) != Z.nx:
        raise monomial.AlphabetMismatch("generalized monomial does not match the scheme")


def gm_member(g: GeneralizedMonomial, Z: LineScheme, m: int = 1) -> bool:
    """Is ``g`` in ``I(m Z)``?  Needs ``a_i >= m m_i - |b|`` at every point."""
    _check_alphabet(g, Z)
    b = g.x_degree
    return all(a >= m * mi - b for a, mi in zip(g.g_exps, Z.mults))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def canonical_generators(Z: LineScheme, m: int = 1) -> Tuple[GeneralizedMonomial, ...]:
    """Minimal generalized-monomial generators of ``I(m Z)``.

    For each x-part with ``|b| <= max m m_i`` the G-exponents are
    ``a_j = max(0, m m_j - |b|)``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    top = max((m * k for k in Z.mults), default=0)
    vecs = []
    for total in range(top + 1):
        a = tuple(max(0, m * k - total) for k in Z.mults)
        for b in _compositions(total, Z.nx):
            vecs.append(a + b)
    ideal = monomial.minimalize(vecs, Z.width)
    return tuple(GeneralizedMonomial.from_vector(v, Z.npoints) for v in ideal.gens)


def _as_ideal(gens: Sequence[GeneralizedMonomial], width: int) -> monomial.MonomialIdeal:
    return monomial.minimalize([g.vector for g in gens], width)


def factor_scheme(Z: LineScheme, i: int) -> LineScheme:
    """``Z_i = P_i + ... + P_n`` (0-based ``i``) with the same points."""
    return Z.with_mults(tuple(int(j >= i) for j in range(Z.npoints)))


@dataclass(frozen=True)
class SplitCertificate:
    target: GeneralizedMonomial
    factors: Tuple[GeneralizedMonomial, ...]
    residual: GeneralizedMonomial
    factor_scheme_refs: Tuple[dict, ...]

    def recombined(self) -> GeneralizedMonomial:
        out = self.residual
        for f in self.factors:
            out = out * f
        return out

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "factors": [f.to_json() for f in self.factors],
            "residual": self.residual.to_json(),
            "factor_scheme_refs": list(self.factor_scheme_refs),
        }


def _x_blocks(g: GeneralizedMonomial, sizes: Sequence[int]) -> List[Tuple[int, ...]]:
    """Cut the x-part of ``g`` into consecutive blocks, in variable order."""
    stream = [j for j, b in enumerate(g.x_exps) for _ in range(b)]
    blocks, pos = [], 0
    for size in sizes:
        chunk = stream[pos:pos + size]
        pos += len(chunk)
        v = [0] * len(g.x_exps)
        for j in chunk:
            v[j] += 1
        blocks.append(tuple(v))
    return blocks


def split_factorize(g: GeneralizedMonomial, Z: LineScheme, m: int = 1) -> SplitCertificate:
    """Factor ``g ∈ I(mZ)`` across ``prod_i I((m m_i - m m_(i-1)) Z_i)``.

    The x-part is cut into blocks ``H_i`` of sizes ``m m_1, m m_2 - m m_1,
    ...``; factor ``i`` is ``(G_i ... G_n)^(a_i - a_(i-1)) * H_i`` where
    ``a_i = max(0, m m_i - |b|)``.  Whatever is left over is the residual.
    Every factor is checked against its own ideal before returning.
    """
    _check_alphabet(g, Z)
    if not gm_member(g, Z, m):
        raise NotAMember(f"{g} is not in I({m}Z)")
    n = Z.npoints
    scaled = [0] + [m * k for k in Z.mults]
    sizes = [scaled[i + 1] - scaled[i] for i in range(n)]
    blocks = _x_blocks(g, sizes)
    b = g.x_degree
    need = [0] + [max(0, s - b) for s in scaled[1:]]
    factors, refs = [], []
    for i in range(n):
        e = need[i + 1] - need[i]
        f = GeneralizedMonomial(tuple(e if j >= i else 0 for j in range(n)), blocks[i])
        if sizes[i] and not gm_member(f, factor_scheme(Z, i), sizes[i]):
            raise AssertionError(f"factor {i} of {g} misses its ideal")
        factors.append(f)
        refs.append({"first_point": i, "scale": sizes[i]})
    used = _unit(Z)
    for f in factors:
        used = used * f
    residual = GeneralizedMonomial(
        tuple(x - y for x, y in zip(g.g_exps, used.g_exps)),
        tuple(x - y for x, y in zip(g.x_exps, used.x_exps)),
    )
    if min(residual.vector, default=0) < 0:
        raise AssertionError(f"split of {g} overdraws the target")
    return SplitCertificate(g, tuple(factors), residual, tuple(refs))


def power_certificate(g: GeneralizedMonomial, Z: LineScheme, m: int) -> SplitCertificate:
    """Factor ``g ∈ I(mZ)`` into ``m`` members of ``I(Z)`` times a residual.

    Each split factor ``(G_i...G_n)^e H_i`` is broken into single atoms
    (one x-variable or one copy of ``G_i...G_n``) in ``I(Z_i)``; the m output
    factors each take ``m_i - m_(i-1)`` atoms from every block.
    """
    cert = split_factorize(g, Z, m)
    n = Z.npoints
    base = [0] + list(Z.mults)
    leftover = cert.residual
    pools = []
    for i, f in enumerate(cert.factors):
        atoms = []
        for j, b in enumerate(f.x_exps):
            x = [0] * Z.nx
            x[j] = 1
            atoms.extend([GeneralizedMonomial((0,) * n, tuple(x))] * b)
        tail = GeneralizedMonomial(tuple(int(j >= i) for j in range(n)), (0,) * Z.nx)
        atoms.extend([tail] * (f.g_exps[i] if n else 0))
        want = m * (base[i + 1] - base[i])
        for extra in atoms[want:]:
            leftover = leftover * extra
        pools.append(atoms[:want])
    out = []
    for t in range(m):
        piece = _unit(Z)
        for i in range(n):
            step = base[i + 1] - base[i]
            for atom in pools[i][t * step:(t + 1) * step]:
                piece = piece * atom
        if not gm_member(piece, Z, 1):
            raise AssertionError(f"power factor {t} of {g} is not in I(Z)")
        out.append(piece)
    refs = tuple({"power_factor": t} for t in range(m))
    return SplitCertificate(g, tuple(out), leftover, refs)


def certificate_valid(cert: SplitCertificate, Z: LineScheme, m: int) -> bool:
    """Independent audit of a :func:`split_factorize` certificate."""
    if cert.recombined() != cert.target or min(cert.residual.vector, default=0) < 0:
        return False
    scaled = [0] + [m * k for k in Z.mults]
    for i, f in enumerate(cert.factors):
        k = scaled[i + 1] - scaled[i]
        if k and not gm_member(f, factor_scheme(Z, i), k):
            return False
    return True


def verify_line_splitting(Z: LineScheme, m: int = 1) -> bool:
    """Both inclusions of ``I(mZ) = prod_i I((m m_i - m m_(i-1)) Z_i)``."""
    if m < 1:
        raise ValueError("m must be positive")
    scaled = [0] + [m * k for k in Z.mults]
    # ⊇: every product of factor generators lies in I(mZ)
    factor_gens = []
    for i in range(Z.npoints):
        k = scaled[i + 1] - scaled[i]
        factor_gens.append(canonical_generators(factor_scheme(Z, i), k) if k else (_unit(Z),))
    for combo in cartesian(*factor_gens):
        g = _unit(Z)
        for f in combo:
            g = g * f
        if not gm_member(g, Z, m):
            return False
    # ⊆: every generator of I(mZ) factors through the product
    for g in canonical_generators(Z, m):
        if not certificate_valid(split_factorize(g, Z, m), Z, m):
            return False
    return True


def two_sided_power_check(Z: LineScheme, m: int) -> bool:
    """``I(Z)^m = I(mZ)`` through certificates rather than generator sets."""
    width = Z.width
    prod = monomial.power(_as_ideal(canonical_generators(Z, 1), width), m)
    for v in prod.gens:
        if not gm_member(GeneralizedMonomial.from_vector(v, Z.npoints), Z, m):
            return False
    for g in canonical_generators(Z, m):
        cert = power_certificate(g, Z, m)
        if cert.recombined() != g or len(cert.factors) != m:
            return False
        if not all(gm_member(f, Z, 1) for f in cert.factors):
            return False
    return True


def verify_theorem_collinear(Z: LineScheme, m_max: int) -> bool:
    """``I(Z)^(m) = I(Z)^m`` for ``m = 1..m_max``, by two-sided certificates.

    Generator vectors of the two sides are never compared directly: the
    ``G_i`` share the variables ``x0, x1``, so vector divisibility does not
    capture ideal membership in both directions.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    return all(two_sided_power_check(Z, m) for m in range(1, m_max + 1))


def gm_member_via_forms(g: GeneralizedMonomial, Z: LineScheme, m: int = 1) -> Optional[bool]:
    """Membership of the expanded polynomial by the binary-form criterion.

    Returns None when the expansion is the zero polynomial (never happens for
    a product of nonzero forms, but sweeps flag it rather than count it).
    """
    F = g.expand(Z)
    if F.is_zero:
        return None
    return multi_point_membership(F, Z.forms, Z.mults, m)
