"""Surface syntax for elements.

Grammar (whitespace is insignificant)::

    expr     := ['-'] term (('+' | '-') term)*  |  '0'
    term     := [rational '*'] gen
    gen      := ('L' | 'M' | 'N') '(' int ')' | 'Y' '(' int '/2' ')' | 'CL' | 'CLN' | 'CN'
    rational := int ['/' posint]

``Y(k/2)`` needs ``k`` odd.  The printer emits terms in basis order with
coefficient 1 omitted, so ``parse_element(format_element(x)) == x``.
"""

import re
from fractions import Fraction

from .core import Element, Kind, Sym
from .errors import IndexParityError, ParseError

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>CLN|CL|CN|[LMNY])|(?P<op>[-+*/()]))")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.toks[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def signed_int(self):
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        return sign * int(self.take("int")[1])

    def gen(self):
        name, pos = self.take("name")[1:]
        if name in ("CL", "CLN", "CN"):
            return Sym(Kind[name])
        self.take("op", "(")
        ipos = self.peek()[2]
        k = self.signed_int()
        if name == "Y":
            self.take("op", "/")
            two = self.take("int")
            if two[1] != "2":
                raise ParseError("Y index must be written k/2", two[2])
            self.take("op", ")")
            if k % 2 == 0:
                raise IndexParityError(f"Y index {k}/2 is not a half-odd integer", ipos)
            return Sym(Kind.Y, k)
        self.take("op", ")")
        return Sym(Kind[name], 2 * k)

    def term(self, sign):
        coeff = Fraction(sign)
        if self.at("int"):
            num = int(self.take()[1])
            den = 1
            if self.at("op", "/"):
                self.take()
                dtok = self.take("int")
                den = int(dtok[1])
                if den == 0:
                    raise ParseError("zero denominator", dtok[2])
            self.take("op", "*")
            coeff *= Fraction(num, den)
        return self.gen(), coeff

    def expr(self):
        if self.at("int", "0") and self.toks[self.i + 1][0] == "end":
            self.take()
            return Element()
        sign = 1
        if self.at("op", "-"):
            self.take()
            sign = -1
        terms = [self.term(sign)]
        while self.at("op", "+") or self.at("op", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        end = self.peek()
        if end[0] != "end":
            raise ParseError(f"unexpected {end[1]!r}", end[2])
        return Element(terms)


def parse_element(text):
    return _Parser(text).expr()


def parse_symbol(text):
    x = parse_element(text)
    if len(x) != 1 or next(iter(x.terms.values())) != 1:
        raise ParseError("expected a single basis symbol", 0)
    return next(iter(x.terms))


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_terms(pairs, show):
    parts = []
    for key, c in pairs:
        body = show(key)
        if c == 1:
            t = body
        elif c == -1:
            t = "-" + body
        else:
            t = f"{format_rational(c)}*{body}"
        if parts:
            parts.append(f" - {t[1:]}" if t.startswith("-") else f" + {t}")
        else:
            parts.append(t)
    return "".join(parts) or "0"


def format_element(x):
    return _format_terms(x.items(), repr)


def format_pairs(pairs):
    """Printer for wedge/cochain maps keyed by symbol pairs: ``c*L(2)^L(-2)``."""
    return _format_terms(sorted(pairs.items()), lambda p: f"{p[0]!r}^{p[1]!r}")
