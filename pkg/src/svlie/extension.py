"""The universal central extension built from the wedge quotient.

``V = Λ²g / J`` with ``J`` spanned by ``x∧[y,z] + y∧[z,x] + z∧[x,y]``.
On a window of size ``K`` the generators come from window-closed
triples.  Reduction is exact: each degree block of ``Λ²`` is row reduced
against ``J`` with the canonical generators placed in the last columns,
so remainders come out in canonical generators.  A remainder that still
needs a non-canonical pair means the window is too small for the query.

Queries are meant for the window ``K - 2``: Jacobi generators reach
beyond the pair being reduced.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    SVHAT_RULES,
    AlgebraTable,
    as_window,
    by_degree,
    closed_pairs,
    full_rules,
    table,
    triples_with_total,
    window_closed,
)
from .core import CENTRAL_KINDS, CLN_SYM, CL_SYM, CN_SYM, Element, Kind, Sym
from .errors import WindowTooSmall
from .linalg import Echelon, Indexer
from .parsing import format_element, format_pairs
from .report import Report

_L, _M, _N, _Y = Kind.L, Kind.M, Kind.N, Kind.Y
SVT = table("svt")


class WedgeElement:
    """Finite combination of ``s ∧ t`` stored on ``s < t``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for (s, t), c in items:
            c = Fraction(c)
            if s == t or not c:
                continue
            if t < s:
                s, t, c = t, s, -c
            v = clean.get((s, t), 0) + c
            if v:
                clean[(s, t)] = v
            else:
                clean.pop((s, t), None)
        self.terms = clean

    @classmethod
    def of(cls, s, t, c=1):
        return cls({(s, t): c})

    def items(self):
        return sorted(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, WedgeElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WedgeElement(out)

    def __neg__(self):
        return WedgeElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return WedgeElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return f"WedgeElement({format_pairs(self.terms)!r})"


@dataclass(frozen=True)
class ExtElement:
    """Element ``x + u`` of ``g ⊕ V``."""

    g: Element
    v: WedgeElement

    @classmethod
    def make(cls, g=None, v=None):
        return cls(g if g is not None else Element(), v if v is not None else WedgeElement())

    def __add__(self, other):
        return ExtElement(self.g + other.g, self.v + other.v)

    def __neg__(self):
        return ExtElement(-self.g, -self.v)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ExtElement(self.g * c, self.v * c)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.g) or bool(self.v)

    def __repr__(self):
        return f"ExtElement({format_ext(self)!r})"


def format_ext(x):
    g = format_element(x.g) if x.g else ""
    v = format_pairs(x.v.terms) if x.v else ""
    if g and v:
        return g + (f" - {v[1:]}" if v.startswith("-") else f" + {v}")
    return g or v or "0"


def _pair(s, t):
    return (s, t) if s < t else (t, s)


def canonical_pairs(w):
    """Pairs allowed in reduced forms: a basis of ``V`` in every degree."""
    w = as_window(w)
    K = w.K
    L0, N0 = Sym.L(0), Sym.N(0)
    out = set()
    for k in range(-K, K + 1):
        if k:
            out.add(_pair(L0, Sym.L(k)))
            out.add(_pair(L0, Sym.N(k)))
        out.add(_pair(N0, Sym.M(k)))
    for k in range(-K, K):
        out.add(_pair(N0, Sym.Y(k)))
    if K >= 2:
        out.add(_pair(Sym.L(2), Sym.L(-2)))
    if K >= 1:
        out.add(_pair(Sym.L(1), Sym.L(-1)))
        out.add(_pair(Sym.L(1), Sym.N(-1)))
        out.add(_pair(Sym.L(-1), Sym.N(1)))
        out.add(_pair(Sym.N(1), Sym.N(-1)))
    return frozenset(out)


class JSpan:
    """Window span of the Jacobi wedge relations, block by degree."""

    def __init__(self, w):
        self.w = as_window(w)
        self.basis_syms = SVT.basis(self.w)
        self.buckets = by_degree(self.basis_syms)
        self.canonical = canonical_pairs(self.w)
        self._blocks = {}

    def block(self, d):
        hit = self._blocks.get(d)
        if hit is not None:
            return hit
        B = self.basis_syms
        pairs = [
            (s, t) for i, s in enumerate(B) for t in B[i + 1:] if s.idx2 + t.idx2 == d
        ]
        ordinary = sorted(p for p in pairs if p not in self.canonical)
        canon = sorted(p for p in pairs if p in self.canonical)
        index = Indexer(ordinary + canon)
        col = index.index
        ech = Echelon()
        w = self.w
        for x, y, z in triples_with_total(self.buckets, d):
            yz, zx, xy = SVT.bracket_sym(y, z), SVT.bracket_sym(z, x), SVT.bracket_sym(x, y)
            if not window_closed(w, yz, zx, xy):
                continue
            row = {}
            for a, terms in ((x, yz), (y, zx), (z, xy)):
                for r, c in terms:
                    if r == a:
                        continue
                    j = col[(a, r)] if a < r else col[(r, a)]
                    v = row.get(j, 0) + (c if a < r else -c)
                    if v:
                        row[j] = v
                    else:
                        del row[j]
            if row:
                ech.add(row)
        self._blocks[d] = (index, ech)
        return index, ech

    def degrees(self):
        B = self.basis_syms
        return sorted({s.idx2 + t.idx2 for i, s in enumerate(B) for t in B[i + 1:]})

    def _row(self, wedge):
        blocks = {}
        for (s, t), c in wedge.terms.items():
            if not (self.w.contains(s) and self.w.contains(t)):
                raise WindowTooSmall(f"{s!r}^{t!r} lies outside the window K={self.w.K}")
            blocks.setdefault(s.idx2 + t.idx2, {})[(s, t)] = c
        return blocks

    def contains(self, wedge):
        for d, part in self._row(wedge).items():
            index, ech = self.block(d)
            if not ech.contains(index.row(part)):
                return False
        return True

    def reduce(self, wedge):
        """Representative of ``wedge`` modulo ``J`` in canonical generators."""
        out = {}
        for d, part in self._row(wedge).items():
            index, ech = self.block(d)
            rem = index.unrow(ech.reduce(index.row(part)))
            bad = [p for p in rem if p not in self.canonical]
            if bad:
                raise WindowTooSmall(
                    f"{format_pairs(part)} does not reduce to canonical generators at K={self.w.K}"
                )
            out.update(rem)
        return WedgeElement(out)

    def basis(self):
        out = []
        for d in self.degrees():
            index, ech = self.block(d)
            out.extend(WedgeElement(index.unrow(r)) for r in ech.basis())
        return out


_JSPANS = {}


def jspan(w):
    w = as_window(w)
    hit = _JSPANS.get(w.K)
    if hit is None:
        hit = _JSPANS[w.K] = JSpan(w)
    return hit


def j_span_basis(w):
    return jspan(w).basis()


def j_generator(x, y, z):
    """``x∧[y,z] + y∧[z,x] + z∧[x,y]`` for basis symbols."""
    out = {}
    for a, (p, q) in ((x, (y, z)), (y, (z, x)), (z, (x, y))):
        for r, c in SVT.bracket_sym(p, q):
            out[(a, r)] = out.get((a, r), 0) + c
    return WedgeElement(out)


def wedge_normal_form(x, y, w):
    """Reduced form of ``x ∨ y`` for basis symbols."""
    if x.central or y.central:
        raise ValueError("wedge pairs live on the non-central basis")
    return jspan(w).reduce(WedgeElement.of(x, y))


def wedge_of_elements(x, y, w):
    """Bilinear extension of ``wedge_normal_form`` to elements."""
    raw = {}
    for s, a in x.terms.items():
        for t, b in y.terms.items():
            if s != t:
                raw[(s, t)] = raw.get((s, t), 0) + a * b
    return jspan(w).reduce(WedgeElement(raw))


def ext_bracket(p, q, w):
    """``[x + u, y + v] = [x, y] + x ∨ y``."""
    return ExtElement(SVT.bracket(p.g, q.g), wedge_of_elements(p.g, q.g, w))


# --- primed basis ----------------------------------------------------------

def _ln_primed(m, n):
    out = [(Sym.N(m + n), n)]
    if m + n == 0:
        out.append((CLN_SYM, n * n - n))
    return out


PRIMED_TABLE = AlgebraTable(
    "primed",
    frozenset({_L, _M, _N, _Y} | CENTRAL_KINDS),
    full_rules({**SVHAT_RULES, (_L, _N): _ln_primed}),
)

VARIANTS = ("original", "corrected")


def _w(*terms):
    return WedgeElement({(s, t): c for s, t, c in terms})


def central_element(kind, variant="corrected"):
    L, N = Sym.L, Sym.N
    if kind == Kind.CL:
        if variant == "original":
            return _w((L(2), L(-2), 2))
        return _w((L(2), L(-2), 2), (L(1), L(-1), -4))
    if kind == Kind.CLN:
        return _w((L(1), N(-1), Fraction(1, 2)), (L(-1), N(1), Fraction(1, 2)))
    if kind == Kind.CN:
        return _w((N(-1), N(1), 1))
    raise ValueError(f"{kind!r} is not central")


def primed_basis(s, w=None, variant="corrected"):
    """The element of ``g ⊕ V`` standing for the primed symbol ``s``.

    ``variant="original"`` uses ``L'_0 = L_0`` and ``C_L = 2 L_2∨L_-2``;
    ``variant="corrected"`` uses ``L'_0 = L_0 - 1/2 L_1∨L_-1`` and
    ``C_L = 2 L_2∨L_-2 - 4 L_1∨L_-1``, which make the bracket table hold.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if s.central:
        return ExtElement(Element(), central_element(s.kind, variant))
    g = Element.of(s)
    m = s.n
    L0, N0 = Sym.L(0), Sym.N(0)
    if s.kind == _L:
        if m:
            v = _w((L0, s, Fraction(1, m)))
        elif variant == "corrected":
            v = _w((Sym.L(1), Sym.L(-1), Fraction(-1, 2)))
        else:
            v = WedgeElement()
    elif s.kind == _N:
        v = _w((L0, s, Fraction(1, m))) if m else _w((Sym.L(-1), Sym.N(1), 1))
    elif s.kind == _M:
        v = _w((N0, s, Fraction(1, 2)))
    else:
        v = _w((N0, s, 1))
    return ExtElement(g, v)


def primed_element(x, variant="corrected"):
    """Linear extension of :func:`primed_basis` to an element of the primed table."""
    out = ExtElement.make()
    for s, c in x.terms.items():
        out = out + primed_basis(s, variant=variant) * c
    return out


def verify_primed_table(w, variant="original"):
    """Compare ``[P(s), P(t)]`` in ``g ⊕ V`` with the primed table on the query window."""
    w = as_window(w)
    if w.K < 3:
        raise WindowTooSmall("need K >= 3")
    q = as_window(w.K - 2)
    rep = Report("primed-table", info={"K": w.K, "query": q.K, "variant": variant})
    for s, t in closed_pairs(PRIMED_TABLE, q):
        if s >= t:
            continue
        rep.checked += 1
        lhs = ext_bracket(primed_basis(s, variant=variant), primed_basis(t, variant=variant), w)
        rhs = primed_element(PRIMED_TABLE.bracket(Element.of(s), Element.of(t)), variant)
        if lhs != rhs:
            rep.add((s, t), lhs - rhs)
    return rep


# --- relations in V ---------------------------------------------------------

def lemma56_relations(q, variant="original"):
    """Yield ``(name, lhs pair, rhs WedgeElement)`` for all window-valid indices."""
    q = as_window(q)
    K = q.K
    L, M, N, Y = Sym.L, Sym.M, Sym.N, Sym.Y
    L0, N0 = L(0), N(0)
    rng = range(-K, K + 1)
    yr = range(-K, K)
    ok = q.contains
    F = Fraction
    for m in rng:
        for n in rng:
            if m + n and ok(L(m + n)):
                yield "LL", (L(m), L(n)), _w((L0, L(m + n), F(n - m, m + n)))
                yield "LN", (L(m), N(n)), _w((L0, N(m + n), F(n, m + n)))
            if ok(M(m + n)):
                yield "LM", (L(m), M(n)), _w((N0, M(m + n), F(n, 2)))
                yield "NM", (N(m), M(n)), _w((N0, M(m + n), 1))
            yield "NN", (N(m), N(n)), _w((N(1), N(-1), m if m + n == 0 else 0))
            yield "MM", (M(m), M(n)), WedgeElement()
        if K >= 2:
            rhs = _w((L(2), L(-2), F(m**3 - m, 6)))
            if variant == "corrected":
                rhs = rhs + _w((L(1), L(-1), F(-(m**3 - 4 * m), 3)))
            yield "LL0", (L(m), L(-m)), rhs
        if K >= 1:
            yield "LN0", (L(m), N(-m)), _w(
                (L(1), N(-1), F(m * m + m, 2)), (L(-1), N(1), F(m * m + m, 2) - m)
            )
        for n in yr:
            if -K <= m + n < K:
                yield "LY", (L(m), Y(n)), _w((N0, Y(m + n), n + F(1 - m, 2)))
                yield "NY", (N(m), Y(n)), _w((N0, Y(m + n), 1))
            yield "MY", (M(m), Y(n)), WedgeElement()
    for m in yr:
        for n in yr:
            if ok(M(m + n + 1)):
                yield "YY", (Y(m), Y(n)), _w((N0, M(m + n + 1), F(m - n, 2)))


def verify_lemma56(w, variant="original"):
    """Each relation ``lhs - rhs`` must lie in the window span of ``J``."""
    w = as_window(w)
    js = jspan(w)
    q = as_window(max(w.K - 2, 0))
    rep = Report("wedge-relations", info={"K": w.K, "query": q.K, "variant": variant})
    per = {}
    for name, (s, t), rhs in lemma56_relations(q, variant):
        diff = WedgeElement.of(s, t) - rhs
        rep.checked += 1
        per.setdefault(name, [0, 0])[0] += 1
        if not js.contains(diff):
            per[name][1] += 1
            rep.add((s, t), js.reduce(diff), name)
    rep.info["relations"] = {k: {"checked": a, "failed": b} for k, (a, b) in sorted(per.items())}
    return rep


def check_ext_jacobi(w):
    """Antisymmetry and Jacobi for ``ext_bracket`` on query-window closed triples."""
    w = as_window(w)
    q = as_window(w.K - 2)
    rep = Report("ext-jacobi", info={"K": w.K, "query": q.K})
    B = SVT.basis(q)
    E = {s: ExtElement.make(Element.of(s)) for s in B}
    for i, s in enumerate(B):
        for t in B[i + 1:]:
            if not window_closed(q, SVT.bracket_sym(s, t)):
                continue
            rep.checked += 1
            d = ext_bracket(E[s], E[t], w) + ext_bracket(E[t], E[s], w)
            if d:
                rep.add((s, t), d, "antisymmetry")
    buckets = by_degree(B)
    # nested wedge targets have the triple's total degree
    for d in range(-2 * q.K, 2 * q.K + 1):
        for x, y, z in triples_with_total(buckets, d):
            xy, yz, zx = SVT.bracket_sym(x, y), SVT.bracket_sym(y, z), SVT.bracket_sym(z, x)
            if not window_closed(q, xy, yz, zx):
                continue
            rep.checked += 1
            tot = (
                ext_bracket(ext_bracket(E[x], E[y], w), E[z], w)
                + ext_bracket(ext_bracket(E[y], E[z], w), E[x], w)
                + ext_bracket(ext_bracket(E[z], E[x], w), E[y], w)
            )
            if tot:
                rep.add((x, y, z), tot, "jacobi")
    return rep


def central_classes(w):
    """Pure-wedge part of the span of all ``[x, y] + x ∨ y`` over the query window.

    Returns a basis of that kernel of the projection to ``g``.
    """
    w = as_window(w)
    q = as_window(w.K - 2)
    B = SVT.basis(q)
    blocks = {}
    for i, s in enumerate(B):
        for t in B[i + 1:]:
            g = SVT.bracket(Element.of(s), Element.of(t))
            if not q.contains_element(g):
                continue
            blocks.setdefault(s.idx2 + t.idx2, []).append((g, wedge_normal_form(s, t, w)))
    out = []
    for d in sorted(blocks):
        items = blocks[d]
        gsyms = sorted({r for g, _ in items for r in g.terms})
        wpairs = sorted({p for _, v in items for p in v.terms})
        index = Indexer([("g", r) for r in gsyms] + [("v", p) for p in wpairs])
        ech = Echelon()
        for g, v in items:
            row = {index.index[("g", r)]: c for r, c in g.terms.items()}
            row.update({index.index[("v", p)]: c for p, c in v.terms.items()})
            ech.add(row)
        for piv, row in sorted(ech.rref().items()):
            if piv >= len(gsyms):
                out.append(WedgeElement({index.keys[j][1]: c for j, c in row.items()}))
    return out


def span_equal(a, b):
    """Two lists of wedge elements span the same subspace."""
    keys = sorted({p for x in list(a) + list(b) for p in x.terms})
    ix = Indexer(keys)
    ea, eab = Echelon(), Echelon()
    for x in a:
        ea.add(ix.row(x.terms))
        eab.add(ix.row(x.terms))
    eb = Echelon()
    for x in b:
        eb.add(ix.row(x.terms))
        eab.add(ix.row(x.terms))
    return ea.rank == eb.rank == eab.rank


# --- the two normalisations of the [L, N] central term -----------------------

#: ``f(N_0) = -2``: its coboundary is the difference of the two normalisations
NORMALIZATION_FUNCTIONAL = {Sym.N(0): Fraction(-2)}


def to_primed(x):
    """Isomorphism from the centrally extended table to the primed table: ``N_0 -> N_0 - 2 C_LN``."""
    c = x.coeff(Sym.N(0))
    return x + Element.of(CLN_SYM, -2 * c) if c else x


def from_primed(x):
    c = x.coeff(Sym.N(0))
    return x + Element.of(CLN_SYM, 2 * c) if c else x


def check_normalization_isomorphism(w):
    """``Φ([x, y]) = [Φx, Φy]`` for Φ = :func:`to_primed`, on all window pairs."""
    w = as_window(w)
    src = table("svhat")
    rep = Report("normalization-isomorphism", info={"K": w.K})
    B = src.basis(w)
    for s in B:
        for t in B:
            rep.checked += 1
            x, y = Element.of(s), Element.of(t)
            lhs = to_primed(src.bracket(x, y))
            rhs = PRIMED_TABLE.bracket(to_primed(x), to_primed(y))
            if lhs != rhs:
                rep.add((s, t), lhs - rhs)
    return rep


def primed_phi2():
    """The ``[L, N]`` cocycle in the primed normalisation: ``(n^2 - n)`` at ``m + n = 0``."""
    from .cohomology import Cochain2

    def rule(s, t):
        if s.idx2 + t.idx2:
            return 0
        if (s.kind, t.kind) == (_L, _N):
            return t.n * t.n - t.n
        if (s.kind, t.kind) == (_N, _L):
            return -(s.n * s.n - s.n)
        return 0

    return Cochain2(func=rule, name="phi2'")

