"""Structure-constant tables and window-based structural checks.

Every algebra is an :class:`AlgebraTable`: a set of basis kinds, an
optional membership filter, and one bracket rule per ordered pair of
kinds.  Rules receive the integer labels of the two symbols (``m`` for
``L_m, M_m, N_m``; ``n`` for ``Y_{n+1/2}``) and return a list of
``(symbol, coefficient)`` pairs.

A window of size ``K`` keeps the symbols with ``|idx2| <= 2K``; central
symbols are always inside.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .core import CENTRAL_KINDS, CL_SYM, CLN_SYM, CN_SYM, Element, Kind, Sym
from .errors import SymbolNotInAlgebra
from .linalg import Echelon, Indexer, nullspace
from .report import Report

L_, M_, N_, Y_ = Kind.L, Kind.M, Kind.N, Kind.Y


@dataclass(frozen=True)
class Window:
    K: int

    def __post_init__(self):
        if self.K < 0:
            raise ValueError("window size must be non-negative")

    def contains(self, s):
        return s.kind in CENTRAL_KINDS or abs(s.idx2) <= 2 * self.K

    def contains_element(self, x):
        return all(self.contains(s) for s in x.terms)


def as_window(w):
    return w if isinstance(w, Window) else Window(int(w))


# --- bracket rules ---------------------------------------------------------

def _ll(m, n):
    return [(Sym.L(m + n), n - m)]


def _lm(m, n):
    return [(Sym.M(m + n), n)]


def _ln(m, n):
    return [(Sym.N(m + n), n)]


def _ly(m, n):
    return [(Sym.Y(m + n), Fraction(2 * n + 1 - m, 2))]


def _yy(m, n):
    return [(Sym.M(m + n + 1), m - n)]


def _nm(m, n):
    return [(Sym.M(m + n), 2)]


def _ny(m, n):
    return [(Sym.Y(m + n), 1)]


def _ll_hat(m, n):
    out = _ll(m, n)
    if m + n == 0:
        out.append((CL_SYM, Fraction(m**3 - m, 12)))
    return out


def _nn_hat(m, n):
    return [(CN_SYM, n)] if m + n == 0 else []


def _ln_hat(m, n):
    out = _ln(m, n)
    if m + n == 0:
        out.append((CLN_SYM, m * m - m))
    return out


def _flip(rule):
    def flipped(m, n):
        return [(s, -c) for s, c in rule(n, m)]

    flipped.__name__ = f"flip{rule.__name__}"
    return flipped


def full_rules(half):
    """Complete ordered-pair rule map from rules given on one order per pair.

    Missing pairs among ``kinds`` are zero; reversed pairs are negated.
    """
    rules = {}
    for (a, b), rule in half.items():
        rules[(a, b)] = rule
        if a != b and (b, a) not in half:
            rules[(b, a)] = _flip(rule)
    return rules


SVT_RULES = {
    (L_, L_): _ll, (L_, M_): _lm, (L_, N_): _ln, (L_, Y_): _ly,
    (Y_, Y_): _yy, (N_, M_): _nm, (N_, Y_): _ny,
}
SVHAT_RULES = {**SVT_RULES, (L_, L_): _ll_hat, (L_, N_): _ln_hat, (N_, N_): _nn_hat}


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    name: str
    kinds: frozenset
    rules: dict
    member: object = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def contains(self, s):
        if s.kind not in self.kinds:
            return False
        return self.member is None or self.member(s)

    def basis(self, w, central=True):
        """Sorted window basis."""
        w = as_window(w)
        K = w.K
        out = []
        for k in sorted(self.kinds):
            if k in CENTRAL_KINDS:
                cand = [Sym(k)] if central else []
            elif k == Y_:
                cand = [Sym(k, i) for i in range(-2 * K + 1, 2 * K, 2)]
            else:
                cand = [Sym(k, 2 * i) for i in range(-K, K + 1)]
            out.extend(s for s in cand if self.contains(s))
        return out

    def bracket_sym(self, s, t):
        """``[s, t]`` as a tuple of ``(symbol, coefficient)`` pairs."""
        key = (s, t)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        for x in (s, t):
            if not self.contains(x):
                raise SymbolNotInAlgebra(f"{x!r} is not a basis symbol of {self.name}")
        rule = self.rules.get((s.kind, t.kind))
        if rule is None:
            val = ()
        else:
            acc = {}
            for r, c in rule(s.idx2 // 2, t.idx2 // 2):
                c = Fraction(c)
                if c:
                    acc[r] = acc.get(r, 0) + c
            val = tuple((r, c) for r, c in sorted(acc.items()) if c)
        self._cache[key] = val
        return val

    def bracket(self, x, y):
        out = {}
        for s, a in x.terms.items():
            for t, b in y.terms.items():
                for r, c in self.bracket_sym(s, t):
                    v = out.get(r, 0) + a * b * c
                    if v:
                        out[r] = v
                    else:
                        del out[r]
        return Element._raw(out)

    def with_rule(self, pair, rule, name=None):
        """Copy with one ordered-pair rule replaced (used for mutation tests)."""
        rules = dict(self.rules)
        rules[tuple(pair)] = rule
        return AlgebraTable(name or f"{self.name}*", self.kinds, rules, self.member)

    def restrict(self, name, kinds, member=None):
        kinds = frozenset(kinds)
        rules = {p: r for p, r in self.rules.items() if p[0] in kinds and p[1] in kinds}
        return AlgebraTable(name, kinds, rules, member)


class AlgebraId(Enum):
    WITT = "witt"
    SV = "sv"
    SVT = "svt"
    SVHAT = "svhat"
    HEIS = "heis"
    VIR = "vir"
    HVIR = "hvir"
    S = "s"
    HS = "hs"
    I1 = "i1"
    I2 = "i2"
    I3 = "i3"
    I4 = "i4"


_SVT = AlgebraTable("svt", frozenset({L_, M_, N_, Y_}), full_rules(SVT_RULES))
_SVHAT = AlgebraTable(
    "svhat", frozenset({L_, M_, N_, Y_} | CENTRAL_KINDS), full_rules(SVHAT_RULES)
)
CK = (Kind.CL, Kind.CLN, Kind.CN)

TABLES = {
    AlgebraId.SVT: _SVT,
    AlgebraId.SVHAT: _SVHAT,
    AlgebraId.WITT: _SVT.restrict("witt", {L_}),
    AlgebraId.SV: _SVT.restrict("sv", {L_, M_, Y_}),
    AlgebraId.HEIS: _SVHAT.restrict("heis", {N_, Kind.CN}),
    AlgebraId.VIR: _SVHAT.restrict("vir", {L_, Kind.CL}),
    AlgebraId.HVIR: _SVHAT.restrict("hvir", {L_, N_} | set(CK)),
    AlgebraId.S: _SVHAT.restrict("s", {M_, Y_}),
    AlgebraId.HS: _SVHAT.restrict("hs", {N_, M_, Y_, Kind.CN}),
    AlgebraId.I1: _SVT.restrict("i1", {M_}),
    AlgebraId.I2: _SVT.restrict("i2", {M_, Y_}),
    AlgebraId.I3: _SVT.restrict("i3", {M_, N_, Y_}, member=lambda s: s.kind != N_ or s.idx2 == 0),
    AlgebraId.I4: _SVT.restrict("i4", {M_, N_, Y_}),
}


def table(alg):
    """Resolve an :class:`AlgebraId`, its string value, or a table."""
    if isinstance(alg, AlgebraTable):
        return alg
    if isinstance(alg, str):
        alg = AlgebraId(alg.lower())
    return TABLES[alg]


def bracket(alg, x, y):
    return table(alg).bracket(x, y)


# --- window checks ---------------------------------------------------------

def _noncentral_in(w, terms):
    K2 = 2 * w.K
    return all(s.kind in CENTRAL_KINDS or abs(s.idx2) <= K2 for s, _ in terms)


def by_degree(symbols):
    """Bucket symbols by doubled degree, each bucket sorted."""
    out = {}
    for s in sorted(symbols):
        out.setdefault(s.idx2, []).append(s)
    return out


def triples_with_total(buckets, total):
    """Sorted triples ``x < y < z`` of bucketed symbols with idx2 sum ``total``."""
    flat = sorted(s for b in buckets.values() for s in b)
    for i, x in enumerate(flat):
        for y in flat[i + 1:]:
            for z in buckets.get(total - x.idx2 - y.idx2, ()):
                if z > y:
                    yield x, y, z


def ordered_triples_with_total(buckets, total):
    """All ordered triples (repeats allowed) with idx2 sum ``total``."""
    flat = sorted(s for b in buckets.values() for s in b)
    for x in flat:
        for y in flat:
            for z in buckets.get(total - x.idx2 - y.idx2, ()):
                yield x, y, z


def window_closed(w, *terms):
    """True if every bracket result in ``terms`` stays inside the window."""
    return all(_noncentral_in(w, t) for t in terms)


def closed_pairs(tab, w):
    """Ordered pairs of window symbols whose bracket stays in the window."""
    w = as_window(w)
    B = tab.basis(w)
    for s in B:
        for t in B:
            if _noncentral_in(w, tab.bracket_sym(s, t)):
                yield s, t


def check_jacobi(alg, w):
    """Antisymmetry on all window pairs and Jacobi on window-closed triples."""
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    rep = Report("jacobi", info={"algebra": tab.name, "K": w.K})
    for i, s in enumerate(B):
        for t in B[i:]:
            rep.checked += 1
            st = Element(tab.bracket_sym(s, t))
            ts = Element(tab.bracket_sym(t, s))
            if st + ts:
                rep.add((s, t), st + ts, "antisymmetry")
    K2 = 2 * w.K
    for x, y, z in combinations(B, 3):
        if abs(x.idx2 + y.idx2 + z.idx2) > K2:
            continue
        xy = tab.bracket_sym(x, y)
        yz = tab.bracket_sym(y, z)
        zx = tab.bracket_sym(z, x)
        if not (_noncentral_in(w, xy) and _noncentral_in(w, yz) and _noncentral_in(w, zx)):
            continue
        acc = {}
        for outer, inner in ((x, yz), (y, zx), (z, xy)):
            for r, c in inner:
                for q, d in tab.bracket_sym(outer, r):
                    v = acc.get(q, 0) + c * d
                    if v:
                        acc[q] = v
                    else:
                        del acc[q]
        rep.checked += 1
        if acc:
            rep.add((x, y, z), Element(acc), "jacobi")
    return rep


def check_grading(alg, w):
    """Every term of ``[x, y]`` has degree ``deg x + deg y`` (central: degree 0)."""
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    rep = Report("grading", info={"algebra": tab.name, "K": w.K})
    for s in B:
        for t in B:
            rep.checked += 1
            want = s.idx2 + t.idx2
            bad = [(r, c) for r, c in tab.bracket_sym(s, t) if r.idx2 != want]
            if bad:
                rep.add((s, t), Element(bad))
    return rep


def _rows_from_elements(ix, elements):
    return [ix.row(e.terms) for e in elements]


def center(alg, w, interior):
    """Basis of ``{x supported on interior : [x, b] = 0 for all window b}``."""
    tab = table(alg)
    w, interior = as_window(w), as_window(interior)
    if interior.K > w.K:
        raise ValueError("interior window larger than window")
    unknowns = tab.basis(interior)
    ix = Indexer(unknowns)
    eqs = {}
    for b in tab.basis(w):
        for j, s in enumerate(unknowns):
            for r, c in tab.bracket_sym(s, b):
                eqs.setdefault((b, r), {})[j] = c
    vecs = nullspace(list(eqs.values()), len(ix))
    return [Element(ix.unrow(v)) for v in vecs]


def check_ideal(alg, sub, w):
    """``[alg, sub]`` lands in span(sub) for all window pairs."""
    tab, stab = table(alg), table(sub)
    w = as_window(w)
    rep = Report("ideal", info={"algebra": tab.name, "sub": stab.name, "K": w.K})
    A = tab.basis(w)
    S = [s for s in stab.basis(w) if tab.contains(s)]
    if len(S) != len(stab.basis(w)):
        raise SymbolNotInAlgebra(f"{stab.name} is not a subspace of {tab.name}")
    for x in A:
        for s in S:
            rep.checked += 1
            out = [(r, c) for r, c in tab.bracket_sym(x, s) if not stab.contains(r)]
            if out:
                rep.add((x, s), Element(out))
    return rep


def generated_subspace(alg, gens, w):
    """Span of iterated brackets of ``gens`` that never leave the window.

    A product with any term outside the window is discarded whole.
    Returns the reduced row-echelon basis of the span.
    """
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    ix = Indexer(B)
    ech = Echelon()
    found = []
    queue = []
    for g in gens:
        if not w.contains_element(g):
            raise ValueError(f"generator {g!r} outside the window")
        if ech.add(ix.row(g.terms)):
            found.append(g)
            queue.append(g)
    while queue:
        x = queue.pop(0)
        for y in list(found):
            z = tab.bracket(x, y)
            if not z or not w.contains_element(z):
                continue
            if ech.add(ix.row(z.terms)):
                found.append(z)
                queue.append(z)
    return [Element(ix.unrow(r)) for r in ech.basis()]


def check_perfect(alg, w):
    """Every symbol of the window ``K - 2`` is a combination of window brackets."""
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    ix = Indexer(B)
    ech = Echelon()
    for s, t in closed_pairs(tab, w):
        if s < t:
            ech.add(ix.row(dict(tab.bracket_sym(s, t))))
    inner = as_window(max(w.K - 2, 0))
    rep = Report("perfect", info={"algebra": tab.name, "K": w.K})
    for b in tab.basis(inner):
        rep.checked += 1
        if not ech.contains(ix.row({b: 1})):
            rep.add((b,), Element.of(b))
    return rep
