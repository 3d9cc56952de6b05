from fractions import Fraction

import pytest

import oracle
from svlie.cohomology import LinearFunctional, check_cohomologous, named_cocycle
from svlie.core import CLN_SYM, Element, Kind, L, M, N, Sym, Y
from svlie.errors import WindowTooSmall
from svlie.extension import (
    NORMALIZATION_FUNCTIONAL, ExtElement, WedgeElement, canonical_pairs, central_classes,
    central_element, check_ext_jacobi, check_normalization_isomorphism, ext_bracket,
    from_primed, j_generator, j_span_basis, jspan, primed_phi2, span_equal, to_primed,
    verify_lemma56, verify_primed_table, wedge_normal_form, wedge_of_elements,
)

W = WedgeElement.of
S = Sym


def test_wedge_is_antisymmetric():
    assert W(S.L(1), S.M(0)) == -W(S.M(0), S.L(1))
    assert not W(S.L(1), S.L(1))


def test_j_generator_examples():
    assert not j_generator(S.M(0), S.M(1), S.M(2))
    g = j_generator(S.L(0), S.L(1), S.L(-1))
    assert g == W(S.L(0), S.L(0)) * -2 + W(S.L(1), S.L(-1)) * -1 + W(S.L(-1), S.L(1)) * -1


def test_j_rank_matches_oracle():
    assert len(j_span_basis(4)) == oracle.j_rank(4) == 499


def test_canonical_pairs_are_independent_mod_j():
    js = jspan(6)
    for p in canonical_pairs(4):
        assert not js.contains(W(*p)), p


def test_wedge_normal_forms():
    assert wedge_normal_form(S.L(3), S.L(-1), 8) == W(S.L(0), S.L(2)) * -2
    assert wedge_normal_form(S.M(2), S.M(-1), 8) == WedgeElement()
    assert wedge_normal_form(S.L(1), S.L(-1), 8) == W(S.L(1), S.L(-1))
    lm3 = wedge_normal_form(S.L(3), S.L(-3), 8)
    assert lm3 == W(S.L(2), S.L(-2)) * 4 + W(S.L(1), S.L(-1)) * -5


def test_wedge_of_elements_is_bilinear():
    x, y = L(2) + M(0) * 3, N(-2) - L(-1)
    lhs = wedge_of_elements(x, y, 6)
    rhs = WedgeElement()
    for s, a in x.terms.items():
        for t, b in y.terms.items():
            rhs = rhs + wedge_normal_form(s, t, 6) * (a * b)
    assert lhs == rhs


def test_reduce_outside_window():
    with pytest.raises(WindowTooSmall):
        wedge_normal_form(S.L(9), S.L(-9), 6)


def test_ext_bracket():
    E = ExtElement.make
    assert not ext_bracket(E(M(0)), E(M(3)), 6)
    r = ext_bracket(E(L(1)), E(L(-1)), 6)
    assert r.g == L(0) * -2
    assert r.v == W(S.L(1), S.L(-1))


def test_ext_jacobi():
    assert check_ext_jacobi(6).ok


def test_corrected_variant_holds():
    assert verify_lemma56(8, "corrected").ok
    assert verify_primed_table(6, "corrected").ok


def test_printed_variant_defects_are_confined():
    rep = verify_lemma56(8, "original")
    bad = {k for k, v in rep.info["relations"].items() if v["failed"]}
    assert bad == {"LL0"}
    tab = verify_primed_table(6, "original")
    assert {tuple(v.items) for v in tab.violations} == {
        (S.L(-4), S.L(4)), (S.L(-3), S.L(3)), (S.L(-1), S.L(1)),
    }


def test_central_classes_match_corrected_centrals():
    cent = [central_element(k) for k in (Kind.CL, Kind.CLN, Kind.CN)]
    assert span_equal(central_classes(8), cent)
    assert not span_equal(central_classes(8), [central_element(Kind.CL, "original")] + cent[1:])


def test_normalization_isomorphism():
    assert check_normalization_isomorphism(5).ok
    x = N(0) * 3 + L(1)
    assert from_primed(to_primed(x)) == x
    assert to_primed(N(0)) == N(0) - Element.of(CLN_SYM, 2)


def test_normalizations_are_cohomologous():
    f = LinearFunctional(NORMALIZATION_FUNCTIONAL)
    assert check_cohomologous("svt", primed_phi2(), named_cocycle(2), f, 6).ok


def test_oracle_confirms_l1_l_minus1_is_not_in_j():
    from sympy import Rational as R

    Lo = lambda n: ("L", R(n))
    assert not oracle.j_contains(8, {(Lo(1), Lo(-1)): 1})
    assert not oracle.j_contains(8, {(Lo(3), Lo(-3)): 1, (Lo(2), Lo(-2)): -4})
    assert oracle.j_contains(8, {(Lo(3), Lo(-3)): 1, (Lo(2), Lo(-2)): -4, (Lo(1), Lo(-1)): 5})
