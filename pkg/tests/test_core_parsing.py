from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from svlie.core import CL, Element, Kind, L, M, N, Sym, Y, half_index
from svlie.errors import IndexParityError, ParseError
from svlie.parsing import format_element, format_rational, parse_element, parse_symbol

idx = st.integers(-6, 6)
sym = st.one_of(
    st.builds(Sym.L, idx), st.builds(Sym.M, idx), st.builds(Sym.N, idx), st.builds(Sym.Y, idx),
    st.sampled_from([Sym(Kind.CL), Sym(Kind.CLN), Sym(Kind.CN)]),
)
rat = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
nonzero = rat.filter(bool)
elements = st.dictionaries(sym, rat, max_size=6).map(Element)
nonzero_elements = st.dictionaries(sym, nonzero, min_size=1, max_size=6).map(Element)


def test_y_helper_is_shifted_by_half():
    assert Sym.Y(0).idx2 == 1
    assert half_index(Sym.Y(-1)) == Fraction(-1, 2)
    assert half_index(Sym.L(3)) == 3


def test_zero_coefficients_are_dropped():
    assert Element({Sym.L(1): 0}).is_zero()
    assert L(1) - L(1) == Element()


@given(elements, elements, elements)
def test_addition_is_a_commutative_group(x, y, z):
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x - x == Element()
    assert -(-x) == x


@given(elements, elements, rat, rat)
def test_scaling_distributes(x, y, a, b):
    assert (x + y) * a == x * a + y * a
    assert x * (a + b) == x * a + x * b
    assert (x * a) * b == x * (a * b)


def test_parse_examples():
    assert parse_element("L(1) + 2*M(0)") == Element({Sym.L(1): 1, Sym.M(0): 2})
    assert parse_element("1/2*Y(3/2) - Y(3/2)") == Element({Sym.Y(1): Fraction(-1, 2)})
    assert parse_element(" -  CL + 3/4 * N ( -2 )") == CL * -1 + N(-2) * Fraction(3, 4)
    assert parse_element("0") == Element()
    assert parse_symbol("Y(-1/2)") == Sym.Y(-1)


def test_parity_error():
    with pytest.raises(IndexParityError):
        parse_element("Y(2/2)")


@pytest.mark.parametrize("text", ["", "L(1", "L(1)+", "2**L(0)", "Y(3/4)", "Q(1)", "L(1/2)", "1/0*L(1)", "L(1) M(0)"])
def test_malformed_input_raises(text):
    with pytest.raises(ParseError):
        parse_element(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_element("L(1) + $")
    assert exc.value.pos == 7


def test_printer_format():
    assert format_element(L(0) * -2) == "-2*L(0)"
    assert format_element(L(1) - M(0) * Fraction(1, 2) + Y(0)) == "L(1) - 1/2*M(0) + Y(1/2)"
    assert format_element(Element()) == "0"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@settings(max_examples=1000, deadline=None)
@given(elements)
def test_printer_parser_round_trip(x):
    text = format_element(x)
    assert parse_element(text) == x
    assert format_element(parse_element(text)) == text


def _mutations(text):
    """Edits that each break the grammar."""
    first_gen = next(i for i, ch in enumerate(text) if ch in "LMNYC")
    yield text[:first_gen] + "*" + text[first_gen:]
    yield text + " +"
    if "(" in text:
        yield text.replace("(", "[", 1)
    yield "L" + text
    if ")" in text:
        k = text.rindex(")")
        yield text[:k] + text[k + 1:]
    if "/2)" in text:
        yield text.replace("/2)", "/4)", 1)


@settings(max_examples=300, deadline=None)
@given(nonzero_elements)
def test_parser_rejects_mutations(x):
    for bad in _mutations(format_element(x)):
        with pytest.raises(ParseError):
            parse_element(bad)
