"""Derivations: Leibniz-rule checks, graded H^1 solvers and the inner matcher.

Convention: ``ad X`` is left bracketing, ``y -> [X, y]``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import as_window, closed_pairs, table
from .core import Element, Kind, Sym
from .errors import RejectedInput
from .linalg import Echelon, Indexer, nullspace, solve
from .report import Report

SV0 = (Sym.L(0), Sym.M(0), Sym.N(0))


class LinearMapTable:
    """A linear map given by its images on a finite list of basis symbols."""

    def __init__(self, images):
        self.images = {s: (v if isinstance(v, Element) else Element(v)) for s, v in images.items()}

    @classmethod
    def from_function(cls, f, domain):
        return cls({s: f(s) for s in domain})

    @property
    def domain(self):
        return sorted(self.images)

    def image(self, s):
        try:
            return self.images[s]
        except KeyError:
            raise KeyError(f"map is not defined on {s!r}") from None

    def __call__(self, x):
        out = Element()
        for s, c in x.terms.items():
            out = out + self.image(s) * c
        return out

    def is_zero(self):
        return not any(self.images.values())

    def __eq__(self, other):
        if not isinstance(other, LinearMapTable):
            return NotImplemented
        keys = set(self.images) | set(other.images)
        return all(self.images.get(k, Element()) == other.images.get(k, Element()) for k in keys)

    def __repr__(self):
        shown = ", ".join(f"{s!r}: {v}" for s, v in sorted(self.images.items()) if v)
        return f"LinearMapTable({{{shown}}})"


@dataclass(frozen=True)
class DerivationParams:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)


class _NoMatch:
    def __repr__(self):
        return "NoMatch"

    def __bool__(self):
        return False


NoMatch = _NoMatch()


def inner_derivation(alg, X, domain):
    tab = table(alg)
    return LinearMapTable({s: tab.bracket(X, Element.of(s)) for s in domain})


def check_derivation(alg, D, w):
    """``D([x, y]) = [D x, y] + [x, D y]`` on every window-closed pair."""
    tab = table(alg)
    w = as_window(w)
    rep = Report("derivation", info={"algebra": tab.name, "K": w.K})
    for s, t in closed_pairs(tab, w):
        if s >= t:
            continue
        rep.checked += 1
        x, y = Element.of(s), Element.of(t)
        lhs = D(tab.bracket(x, y))
        rhs = tab.bracket(D(x), y) + tab.bracket(x, D(y))
        if lhs != rhs:
            rep.add((s, t), lhs - rhs)
    return rep


def component(m):
    """Basis of the degree ``m/2`` component of the extended algebra."""
    if m % 2:
        return [Sym(Kind.Y, m)]
    k = m // 2
    return [Sym.L(k), Sym.M(k), Sym.N(k)]


@dataclass
class HomResult:
    dimension: int
    basis: list


def _maps_from_vectors(ix, vecs, domain=()):
    out = []
    for v in vecs:
        images = {s: {} for s in domain}
        for (s, t), c in ix.unrow(v).items():
            images.setdefault(s, {})[t] = c
        out.append(LinearMapTable(images))
    return out


def _image_rows(ix, src_elem, tgt):
    """Row-valued image ``f(x)`` for x in span(src): target symbol -> row."""
    out = {}
    for s, c in src_elem.terms.items():
        for t in tgt:
            out.setdefault(t, {})
            j = ix.index[(s, t)]
            out[t][j] = out[t].get(j, 0) + c
    return out


def _bracket_rows(tab, e, rows):
    """``[e, f(x)]`` where ``f(x)`` is given as target symbol -> row."""
    out = {}
    for t, row in rows.items():
        for r, c in tab.bracket(e, Element.of(t)).terms.items():
            acc = out.setdefault(r, {})
            for j, v in row.items():
                acc[j] = acc.get(j, 0) + c * v
    return out


def _sub_rows(a, b):
    out = {}
    for k in set(a) | set(b):
        row = dict(a.get(k, {}))
        for j, v in b.get(k, {}).items():
            row[j] = row.get(j, 0) - v
        out[k] = {j: v for j, v in row.items() if v}
    return out


def solve_hom_sv0(m, n):
    """Module maps ``f`` from degree ``m/2`` to degree ``n/2`` commuting with ad of degree 0."""
    tab = table("svt")
    src, tgt = component(m), component(n)
    ix = Indexer(sorted((s, t) for s in src for t in tgt))
    eqs = []
    for e0 in SV0:
        E0 = Element.of(e0)
        for s in src:
            lhs = _image_rows(ix, tab.bracket(E0, Element.of(s)), tgt)
            rhs = _bracket_rows(tab, E0, _image_rows(ix, Element.of(s), tgt))
            eqs.extend(r for r in _sub_rows(lhs, rhs).values() if r)
    vecs = nullspace(eqs, len(ix))
    return HomResult(len(vecs), _maps_from_vectors(ix, vecs, src))


@dataclass
class DerResult:
    der: int
    inn: int
    h1: int
    basis: list


def solve_der_sv0(n):
    """Derivations from the degree-0 subalgebra into the degree ``n/2`` component."""
    if n == 0:
        raise RejectedInput("degree 0 is handled by the degree-zero derivation family")
    tab = table("svt")
    tgt = component(n)
    ix = Indexer(sorted((s, t) for s in SV0 for t in tgt))
    eqs = []
    for i, x in enumerate(SV0):
        for y in SV0[i + 1:]:
            X, Y = Element.of(x), Element.of(y)
            # phi([x,y]) = [x, phi(y)] - [y, phi(x)]
            lhs = _image_rows(ix, tab.bracket(X, Y), tgt)
            rhs = _sub_rows(
                _bracket_rows(tab, X, _image_rows(ix, Y, tgt)),
                _bracket_rows(tab, Y, _image_rows(ix, X, tgt)),
            )
            eqs.extend(r for r in _sub_rows(lhs, rhs).values() if r)
    vecs = nullspace(eqs, len(ix))
    inner = Echelon()
    for t in tgt:
        phi = inner_derivation(tab, Element.of(t), SV0)
        inner.add({ix.index[(s, r)]: c for s in SV0 for r, c in phi.image(s).terms.items()})
    der = len(vecs)
    return DerResult(der, inner.rank, der - inner.rank, _maps_from_vectors(ix, vecs, SV0))


def degree_zero_derivation(p, w):
    """The three-parameter family of degree-0 derivations on a window."""
    a, b, c = Fraction(p.a), Fraction(p.b), Fraction(p.c)
    dom = table("svt").basis(w)

    def image(s):
        m = s.n
        if s.kind == Kind.L:
            return Element.of(s, m * a)
        if s.kind == Kind.M:
            return Element.of(s, 2 * b - a + m * a)
        if s.kind == Kind.N:
            return Element.of(Sym.M(m), c) + Element.of(s, m * a)
        return Element.of(s, b + m * a)

    return LinearMapTable.from_function(image, dom)


def inner_generator(p):
    """The element ``X`` with ``ad X`` equal to the degree-0 derivation ``p``."""
    a, b, c = Fraction(p.a), Fraction(p.b), Fraction(p.c)
    return Element([(Sym.L(0), a), (Sym.M(0), -c / 2), (Sym.N(0), b - a / 2)])


def match_inner(alg, D, w, interior):
    """Find ``X`` on the interior with ``D(b) = [X, b]`` for all interior ``b``."""
    tab = table(alg)
    interior = as_window(interior)
    unknowns = tab.basis(interior)
    ix = Indexer(unknowns)
    eqs, rhs = {}, {}
    for b in unknowns:
        B = Element.of(b)
        for j, s in enumerate(unknowns):
            for r, c in tab.bracket_sym(s, b):
                eqs.setdefault((b, r), {})[j] = c
        for r, c in D(B).terms.items():
            rhs[(b, r)] = c
            eqs.setdefault((b, r), {})
    keys = sorted(eqs)
    x = solve([eqs[k] for k in keys], [rhs.get(k, 0) for k in keys], len(ix))
    if x is None:
        return NoMatch
    return Element(ix.unrow(x))


def _restriction_rank(vecs, keep):
    ech = Echelon()
    for v in vecs:
        ech.add({j: c for j, c in v.items() if j in keep})
    return ech


def solve_degree_zero_window(alg, w, interior):
    """All grading-preserving derivations on a window, restricted to the interior.

    Unknowns are the coefficients of ``D(s)`` on the symbols of the same
    degree; constraints come from every window-closed pair.  Returns the
    list of restricted solutions as :class:`LinearMapTable` on the interior.
    """
    tab = table(alg)
    w, interior = as_window(w), as_window(interior)
    B = tab.basis(w)
    by_deg = {}
    for s in B:
        by_deg.setdefault(s.idx2, []).append(s)
    ix = Indexer(sorted((s, t) for s in B for t in by_deg[s.idx2]))

    def image_rows(x):
        out = {}
        for s, c in x.terms.items():
            for t in by_deg[s.idx2]:
                row = out.setdefault(t, {})
                j = ix.index[(s, t)]
                row[j] = row.get(j, 0) + c
        return out

    eqs = []
    for s, t in closed_pairs(tab, w):
        if s >= t:
            continue
        x, y = Element.of(s), Element.of(t)
        lhs = image_rows(tab.bracket(x, y))
        r1 = {}
        for u, row in image_rows(x).items():
            for r, c in tab.bracket_sym(u, t):
                acc = r1.setdefault(r, {})
                for j, v in row.items():
                    acc[j] = acc.get(j, 0) + c * v
        for u, row in image_rows(y).items():
            for r, c in tab.bracket_sym(s, u):
                acc = r1.setdefault(r, {})
                for j, v in row.items():
                    acc[j] = acc.get(j, 0) + c * v
        eqs.extend(r for r in _sub_rows(lhs, r1).values() if r)
    vecs = nullspace(eqs, len(ix))
    keep = {j for j, (s, _) in enumerate(ix.keys) if interior.contains(s)}
    ech = _restriction_rank(vecs, keep)
    return _maps_from_vectors(ix, ech.basis(), tab.basis(interior))


def params_of(D):
    """Read ``(a, b, c)`` off a degree-0 derivation: ``D(L_1)``, ``D(Y_{1/2})``, ``D(N_0)``."""
    return DerivationParams(
        D.image(Sym.L(1)).coeff(Sym.L(1)),
        D.image(Sym.Y(0)).coeff(Sym.Y(0)),
        D.image(Sym.N(0)).coeff(Sym.M(0)),
    )
