from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints.collinear import (
    GeneralizedMonomial,
    LineScheme,
    NotAMember,
    canonical_generators,
    certificate_valid,
    factor_scheme,
    gm_member,
    gm_member_via_forms,
    power_certificate,
    split_factorize,
    two_sided_power_check,
    verify_line_splitting,
    verify_theorem_collinear,
)
from fatpoints.monomial import AlphabetMismatch

import oracles


def gm(g, x):
    return GeneralizedMonomial(tuple(g), tuple(x))


def oracle_generators(Z, m):
    """Minimal vectors satisfying the point conditions, by enumeration."""
    top = m * sum(Z.mults)
    n = Z.npoints

    def ok(v):
        b = sum(v[n:])
        return all(v[i] + b >= m * k for i, k in enumerate(Z.mults))

    return oracles.minimal_of_upset(ok, Z.width, top)


def test_line_scheme_sorts_and_validates():
    Z = LineScheme(2, ((1, 0), (0, 1)), (2, 1))
    assert Z.mults == (1, 2) and Z.forms[0] == (Fraction(0), Fraction(1))
    with pytest.raises(ValueError):
        LineScheme(2, ((1, 1), (2, 2)), (1, 1))
    with pytest.raises(ValueError):
        LineScheme(2, ((0, 0),), (1,))


def test_canonical_generators_examples():
    assert set(canonical_generators(LineScheme.standard((1, 1)))) == {gm((1, 1), (0,)), gm((0, 0), (1,))}
    assert set(canonical_generators(LineScheme.standard((1, 2)))) == {
        gm((1, 2), (0,)),
        gm((0, 1), (1,)),
        gm((0, 0), (2,)),
    }


@pytest.mark.parametrize("N", [2, 3, 4])
def test_single_point_generators(N):
    gens = canonical_generators(LineScheme.standard((3,), N))
    assert all(g.degree == 3 for g in gens)
    assert len(gens) == len([v for v in oracles.monomials(N, 3) if sum(v) == 3])


@pytest.mark.parametrize("mults", [(1, 2), (1, 1, 3), (2, 2, 3), (1, 2, 2, 3)])
@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("m", [1, 2])
def test_canonical_generators_match_enumeration(mults, N, m):
    Z = LineScheme.standard(mults, N)
    assert {g.vector for g in canonical_generators(Z, m)} == oracle_generators(Z, m)


def test_gm_member_examples():
    Z = LineScheme.standard((1, 1))
    assert gm_member(gm((1, 1), (0,)), Z)
    assert gm_member(gm((0, 0), (1,)), Z)
    assert not gm_member(gm((1, 0), (0,)), Z)
    with pytest.raises(AlphabetMismatch):
        gm_member(gm((1, 1, 1), (0,)), Z)


def test_split_factorize_examples():
    Z = LineScheme.standard((1, 2))
    cert = split_factorize(gm((1, 2), (0,)), Z)
    assert cert.factors == (gm((1, 1), (0,)), gm((0, 1), (0,)))
    cert = split_factorize(gm((0, 0), (2,)), Z)
    assert cert.factors == (gm((0, 0), (1,)), gm((0, 0), (1,)))
    assert certificate_valid(cert, Z, 1)
    one = LineScheme.standard((3,), 3)
    g = gm((1,), (1, 1))
    assert split_factorize(g, one).factors == (g,)
    with pytest.raises(NotAMember):
        split_factorize(gm((1, 0), (0,)), Z)


def test_power_certificate_factors_lie_in_base_ideal():
    Z = LineScheme.standard((1, 2, 2))
    for g in canonical_generators(Z, 3):
        cert = power_certificate(g, Z, 3)
        assert cert.recombined() == g and len(cert.factors) == 3
        assert all(gm_member(f, Z, 1) for f in cert.factors)


def test_factor_scheme():
    Z = LineScheme.standard((1, 2, 3))
    assert factor_scheme(Z, 1).mults == (0, 1, 1)


def test_splitting_examples():
    assert verify_line_splitting(LineScheme.standard((1, 2)))
    assert verify_line_splitting(LineScheme.standard((1, 1, 1)), 2)
    assert verify_line_splitting(LineScheme.standard((4,), 3), 2)


def test_theorem_examples():
    assert verify_theorem_collinear(LineScheme.standard((1, 1)), 3)
    assert verify_theorem_collinear(LineScheme.standard((1, 2, 2)), 3)
    assert verify_theorem_collinear(LineScheme.standard((2,), 4), 3)
    assert two_sided_power_check(LineScheme.standard((1, 3), 3), 2)


def test_certificate_json():
    Z = LineScheme.standard((1, 2))
    data = split_factorize(gm((0, 1), (1,)), Z).to_json()
    assert data["target"] == {"g": [0, 1], "x": [1]}
    assert len(data["factors"]) == 2


small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(small, small), min_size=1, max_size=3),
    st.lists(st.integers(1, 3), min_size=3, max_size=3),
    st.integers(1, 2),
)
def test_generators_agree_with_form_criterion(raw, mults, m):
    forms = []
    for c, d in raw:
        if (c, d) != (0, 0) and all(c * d2 != c2 * d for c2, d2 in forms):
            forms.append((c, d))
    if not forms:
        forms = [(Fraction(1), Fraction(0))]
    Z = LineScheme(2, tuple(forms), tuple(mults[: len(forms)]))
    for g in canonical_generators(Z, m):
        if g.degree <= 8:
            assert gm_member_via_forms(g, Z, m) is True
            if any(g.g_exps):
                i = next(j for j, a in enumerate(g.g_exps) if a)
                smaller = gm(tuple(a - (j == i) for j, a in enumerate(g.g_exps)), g.x_exps)
                assert gm_member_via_forms(smaller, Z, m) == gm_member(smaller, Z, m)
