from fractions import Fraction

import pytest
from sympy import Rational

import oracle
from svlie.algebra import (
    AlgebraId, bracket, center, check_grading, check_ideal, check_jacobi, check_perfect,
    generated_subspace, table,
)
from svlie.core import CL, CLN, CN, Element, Kind, L, M, N, Sym, Y
from svlie.errors import SymbolNotInAlgebra


def test_bracket_examples():
    assert bracket("svt", L(1), L(-1)) == L(0) * -2
    assert bracket("svt", Y(1), Y(0)) == M(2)
    assert bracket("svhat", N(1), N(-1)) == CN * -1
    assert bracket("svhat", L(2), L(-2)) == L(0) * -4 + CL * Fraction(1, 2)
    assert bracket("svhat", L(2), N(-2)) == N(0) * -2 + CLN * 2
    assert bracket("svt", L(0), Y(0)) == Y(0) * Fraction(1, 2)
    assert bracket("svt", N(2), M(-1)) == M(1) * 2
    assert bracket("svt", M(3), M(-2)).is_zero()


def _to_oracle(s):
    if s.kind == Kind.Y:
        return ("Y", Rational(s.idx2, 2))
    return (s.kind.name, Rational(s.n))


def test_bracket_agrees_with_oracle():
    tab = table("svt")
    B = tab.basis(3)
    for s in B:
        for t in B:
            got = {_to_oracle(r): Rational(c.numerator, c.denominator) for r, c in tab.bracket_sym(s, t)}
            assert got == oracle.bracket(_to_oracle(s), _to_oracle(t)), (s, t)


@pytest.mark.parametrize("alg", ["svt", "svhat", "sv", "witt", "vir", "hvir", "heis", "s", "hs"])
def test_jacobi_and_grading(alg):
    assert check_jacobi(alg, 5).ok
    assert check_grading(alg, 5).ok


def test_mutated_table_is_caught():
    svt = table("svt")
    bad = svt.with_rule((Kind.L, Kind.M), lambda m, n: [(Sym.M(m + n), n + 1)])
    assert len(check_jacobi(bad, 4).violations) >= 1


def test_subalgebra_brackets_match_svhat():
    big = table("svhat")
    for name in ("vir", "hvir", "heis", "s", "hs"):
        sub = table(name)
        B = sub.basis(3)
        for s in B:
            for t in B:
                assert sub.bracket_sym(s, t) == big.bracket_sym(s, t)


def test_symbol_outside_algebra():
    with pytest.raises(SymbolNotInAlgebra):
        bracket("witt", L(1), M(0))


def test_center_values_and_oracle():
    assert center("svt", 6, 3) == []
    assert center("sv", 6, 3) == [M(0)]
    assert len(center("svt", 6, 3)) == oracle.center_dim(6, 3)
    assert len(center("sv", 6, 3)) == oracle.center_dim(6, 3, "LMY")


def test_ideals():
    for sub in ("i1", "i2", "i3", "i4"):
        assert check_ideal("svt", sub, 5).ok, sub
    rep = check_ideal("svt", "witt", 6)
    assert not rep.ok
    assert any(set(v.items) == {Sym.L(0), Sym.Y(0)} for v in rep.violations)


def test_generated_subspace():
    assert generated_subspace("svt", [M(0)], 5) == [M(0)]
    span = generated_subspace("svt", [L(1), L(-1)], 4)
    assert sorted(s for x in span for s in x.terms) == [Sym.L(-1), Sym.L(0), Sym.L(1)]


@pytest.mark.parametrize("alg", ["svt", "sv", "svhat"])
def test_perfect(alg):
    assert check_perfect(alg, 6).ok


def test_algebra_ids_resolve():
    for a in AlgebraId:
        assert table(a.value).name == a.value
