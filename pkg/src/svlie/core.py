"""Exact scalars, basis symbols and sparse linear combinations.

Scalars are :class:`fractions.Fraction`.  Half-integer indices are stored
doubled, so ``Y_{n+1/2}`` carries ``idx2 = 2n + 1`` and ``L_n`` carries
``idx2 = 2n``.
"""

from collections import namedtuple
from enum import IntEnum
from fractions import Fraction
from types import MappingProxyType

Rational = Fraction


class Kind(IntEnum):
    L = 0
    M = 1
    N = 2
    Y = 3
    CL = 4
    CLN = 5
    CN = 6


CENTRAL_KINDS = frozenset({Kind.CL, Kind.CLN, Kind.CN})


class Sym(namedtuple("Sym", "kind idx2")):
    """A basis symbol.  Ordering is ``(kind, idx2)`` lexicographic."""

    __slots__ = ()

    def __new__(cls, kind, idx2=0):
        kind = Kind(kind)
        idx2 = int(idx2)
        if kind in CENTRAL_KINDS:
            if idx2 != 0:
                raise ValueError(f"central symbol {kind.name} takes no index")
        elif kind == Kind.Y:
            if idx2 % 2 != 1:
                raise ValueError("Y symbols need an odd doubled index")
        elif idx2 % 2:
            raise ValueError(f"{kind.name} symbols need an even doubled index")
        return super().__new__(cls, kind, idx2)

    @classmethod
    def L(cls, n):
        return cls(Kind.L, 2 * n)

    @classmethod
    def M(cls, n):
        return cls(Kind.M, 2 * n)

    @classmethod
    def N(cls, n):
        return cls(Kind.N, 2 * n)

    @classmethod
    def Y(cls, n):
        """``Y_{n+1/2}`` for integer ``n``."""
        return cls(Kind.Y, 2 * n + 1)

    @property
    def central(self):
        return self.kind in CENTRAL_KINDS

    @property
    def n(self):
        """Integer label: ``m`` for ``L_m, M_m, N_m`` and ``n`` for ``Y_{n+1/2}``."""
        return self.idx2 // 2

    def __repr__(self):
        if self.central:
            return self.kind.name
        if self.kind == Kind.Y:
            return f"Y({self.idx2}/2)"
        return f"{self.kind.name}({self.idx2 // 2})"

    __str__ = __repr__


CL_SYM = Sym(Kind.CL)
CLN_SYM = Sym(Kind.CLN)
CN_SYM = Sym(Kind.CN)


def half_index(s):
    """Degree of a basis symbol; central symbols have degree 0."""
    return Fraction(s.idx2, 2)


class Element:
    """Finitely supported linear combination of basis symbols.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for s, c in items:
                if not isinstance(s, Sym):
                    raise TypeError(f"not a basis symbol: {s!r}")
                c = clean.get(s, 0) + Fraction(c)
                if c:
                    clean[s] = c
                else:
                    clean.pop(s, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # terms already normalised: Fraction values, no zeros
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    @classmethod
    def of(cls, s, c=1):
        c = Fraction(c)
        return cls._raw({s: c} if c else {})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self):
        return sorted(self._terms)

    def coeff(self, s):
        return self._terms.get(s, Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self._terms)
        for s, c in other._terms.items():
            v = out.get(s, 0) + c
            if v:
                out[s] = v
            else:
                del out[s]
        return Element._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        c = Fraction(c)
        if not c:
            return Element._raw({})
        return Element._raw({s: v * c for s, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __repr__(self):
        from .parsing import format_element

        return f"Element({format_element(self)!r})"


ZERO = Element()


def elem_add(x, y):
    return x + y


def elem_scale(c, x):
    return x * c


def L(n):
    return Element.of(Sym.L(n))


def M(n):
    return Element.of(Sym.M(n))


def N(n):
    return Element.of(Sym.N(n))


def Y(n):
    """``Y_{n+1/2}`` as an element."""
    return Element.of(Sym.Y(n))


CL = Element.of(CL_SYM)
CLN = Element.of(CLN_SYM)
CN = Element.of(CN_SYM)
