"""Scalar 2-cochains, cocycle conditions and window cohomology solvers.

All window solvers split their linear systems by the total degree of a
pair, which the cocycle, Leibniz and invariance conditions all preserve.
Classes are counted after restriction to the interior half-window: with
``P`` the restriction, ``Z`` the window cocycles and ``B`` the window
coboundaries, the reported dimension is ``rank P(Z) - rank P(B)``.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .algebra import (
    as_window,
    by_degree,
    ordered_triples_with_total,
    table,
    triples_with_total,
    window_closed,
)
from .core import Element, Sym
from .errors import WindowTooSmall
from .linalg import Echelon, Indexer, nullspace
from .report import Report


class Mode(Enum):
    ANTISYMMETRIC = "antisymmetric"
    GENERAL = "general"


class Cochain2:
    """Scalar bilinear map on pairs of basis symbols.

    Either a finite table of entries or a rule ``func(s, t)``.  In
    antisymmetric mode entries are stored on ``s < t`` only.  Pairs that
    involve a central symbol evaluate to 0.
    """

    def __init__(self, entries=None, mode=Mode.ANTISYMMETRIC, func=None, name=None):
        self.mode = Mode(mode)
        self.func = func
        self.name = name
        clean = {}
        for (s, t), c in (entries or {}).items():
            c = Fraction(c)
            if self.mode is Mode.ANTISYMMETRIC:
                if s == t:
                    if c:
                        raise ValueError("antisymmetric cochain with a diagonal entry")
                    continue
                if t < s:
                    s, t, c = t, s, -c
            c = clean.get((s, t), 0) + c
            if c:
                clean[(s, t)] = c
            else:
                clean.pop((s, t), None)
        self.entries = clean

    def value(self, s, t):
        if s.central or t.central:
            return Fraction(0)
        if self.func is not None:
            return Fraction(self.func(s, t))
        if self.mode is Mode.ANTISYMMETRIC:
            if s == t:
                return Fraction(0)
            if t < s:
                return -self.entries.get((t, s), Fraction(0))
        return self.entries.get((s, t), Fraction(0))

    def __call__(self, x, y):
        if isinstance(x, Sym):
            x = Element.of(x)
        if isinstance(y, Sym):
            y = Element.of(y)
        total = Fraction(0)
        for s, a in x.terms.items():
            for t, b in y.terms.items():
                total += a * b * self.value(s, t)
        return total

    def __sub__(self, other):
        return Cochain2(mode=self.mode, func=lambda s, t: self.value(s, t) - other.value(s, t))

    def __neg__(self):
        return Cochain2(mode=self.mode, func=lambda s, t: -self.value(s, t))

    def __repr__(self):
        if self.name:
            return f"Cochain2({self.name})"
        return f"Cochain2({len(self.entries)} entries, {self.mode.value})"


class LinearFunctional:
    """Finitely supported linear form on basis symbols."""

    def __init__(self, values=None):
        self.values = {s: Fraction(c) for s, c in (values or {}).items() if c}

    def __call__(self, x):
        if isinstance(x, Sym):
            return self.values.get(x, Fraction(0))
        return sum((c * self.values.get(s, 0) for s, c in x.terms.items()), Fraction(0))

    def __repr__(self):
        return f"LinearFunctional({self.values!r})"


def cocycle_defect(alg, psi, x, y, z):
    """``psi([x,y],z) + psi([y,z],x) + psi([z,x],y)``."""
    tab = table(alg)
    if psi.mode is not Mode.ANTISYMMETRIC:
        raise ValueError("cocycle_defect needs an antisymmetric cochain")
    return (
        psi(tab.bracket(x, y), z) + psi(tab.bracket(y, z), x) + psi(tab.bracket(z, x), y)
    )


def leibniz_defect(alg, psi, x, y, z):
    """``psi(x,[y,z]) - psi([x,y],z) + psi([x,z],y)``."""
    tab = table(alg)
    return psi(x, tab.bracket(y, z)) - psi(tab.bracket(x, y), z) + psi(tab.bracket(x, z), y)


def coboundary(alg, f, mode=Mode.ANTISYMMETRIC):
    """``psi_f(x, y) = f([x, y])``."""
    tab = table(alg)

    def rule(s, t):
        return sum((c * f(r) for r, c in tab.bracket_sym(s, t)), Fraction(0))

    return Cochain2(mode=mode, func=rule, name=f"d{f!r}")


def _delta_rule(kx, ky, coeff):
    def rule(s, t):
        if s.idx2 + t.idx2 != 0:
            return 0
        if (s.kind, t.kind) == (kx, ky):
            return coeff(s.n, t.n)
        if (t.kind, s.kind) == (kx, ky):
            return -coeff(t.n, s.n)
        return 0

    return rule


_L, _N = Sym.L(0).kind, Sym.N(0).kind

NAMED = {
    1: ("phi1", _delta_rule(_L, _L, lambda m, n: Fraction(m**3 - m, 12))),
    2: ("phi2", _delta_rule(_L, _N, lambda m, n: m * m - m)),
    3: ("phi3", _delta_rule(_N, _N, lambda m, n: n)),
}

ALTERNATIVE = {
    1: ("c1", _delta_rule(_L, _L, lambda m, n: Fraction(m**3 - m, 12))),
    2: ("c2", _delta_rule(_L, _N, lambda m, n: m * m)),
    3: ("c3", _delta_rule(_N, _N, lambda m, n: m)),
}


def named_cocycle(i):
    name, rule = NAMED[int(i)]
    return Cochain2(func=rule, name=name)


def alternative_cocycle(i):
    """The alternative normalisations ``c_1, c_2, c_3`` of the three classes."""
    name, rule = ALTERNATIVE[int(i)]
    return Cochain2(func=rule, name=name)


#: functionals ``f`` with ``c_i - sign * phi_i = psi_f``
ALTERNATIVE_WITNESS = {
    1: (1, {}),
    2: (1, {Sym.N(0): -1}),
    3: (-1, {}),
}


def check_cohomologous(alg, psi1, psi2, f, w):
    """Confirm ``psi1 - psi2 = psi_f`` on every window pair."""
    tab = table(alg)
    w = as_window(w)
    dpsi = coboundary(tab, f)
    rep = Report("cohomologous", info={"algebra": tab.name, "K": w.K})
    B = [s for s in tab.basis(w) if not s.central]
    for i, s in enumerate(B):
        for t in B[i + 1:]:
            rep.checked += 1
            d = psi1.value(s, t) - psi2.value(s, t) - dpsi.value(s, t)
            if d:
                rep.add((s, t), d)
    return rep


def check_cocycle(alg, psi, w):
    """Zero cocycle defect on every window-closed triple of distinct symbols."""
    tab = table(alg)
    w = as_window(w)
    B = [s for s in tab.basis(w) if not s.central]
    buckets = by_degree(B)
    rep = Report("cocycle", info={"algebra": tab.name, "K": w.K})
    totals = {x.idx2 + y.idx2 for x in B for y in B}
    for d in sorted(totals):
        for x, y, z in triples_with_total(buckets, d):
            if not window_closed(w, tab.bracket_sym(x, y), tab.bracket_sym(y, z), tab.bracket_sym(z, x)):
                continue
            rep.checked += 1
            v = cocycle_defect(tab, psi, Element.of(x), Element.of(y), Element.of(z))
            if v:
                rep.add((x, y, z), v)
    return rep


# --- window solvers --------------------------------------------------------

@dataclass
class _Block:
    degree: int
    index: Indexer
    interior_cols: frozenset
    cocycles: list
    boundaries: list

    def restrict(self, v):
        return {j: c for j, c in v.items() if j in self.interior_cols}


@dataclass
class H2Result:
    """Outcome of a window cohomology computation."""

    dimension: int
    representatives: list
    per_degree: dict
    K: int
    interior: int
    mode: Mode
    blocks: dict = field(default_factory=dict, repr=False)
    antisymmetric_representable: bool = None

    def cocycle_space(self):
        """Basis of all window cocycles, as finite cochains over window pairs."""
        out = []
        for blk in self.blocks.values():
            for v in blk.cocycles:
                out.append(Cochain2(blk.index.unrow(v), mode=self.mode))
        return out

    def class_rank(self, cochains):
        """Rank of the given cochains modulo restricted window coboundaries."""
        total = 0
        for blk in self.blocks.values():
            base = Echelon()
            for v in blk.boundaries:
                base.add(blk.restrict(v))
            r0 = base.rank
            for psi in cochains:
                base.add(_as_row(blk, psi))
            total += base.rank - r0
        return total

    def spans_classes(self, cochains):
        """True if the cochains are independent classes spanning the result."""
        if self.class_rank(cochains) != self.dimension or len(cochains) != self.dimension:
            return False
        return self.class_rank(list(cochains) + self.representatives) == self.dimension


def _as_row(blk, psi):
    row = {}
    for j in blk.interior_cols:
        s, t = blk.index.keys[j]
        v = psi.value(s, t)
        if v:
            row[j] = v
    return row


def _pairs(B, ordered):
    if ordered:
        return [(s, t) for s in B for t in B]
    return [(s, t) for i, s in enumerate(B) for t in B[i + 1:]]


def _setup(alg, K, ordered):
    tab = table(alg)
    if K < 3:
        raise WindowTooSmall(f"window K={K} is too small; need K >= 3")
    w = as_window(K)
    inner = as_window(K // 2)
    B = [s for s in tab.basis(w) if not s.central]
    pairs = {}
    for p in _pairs(B, ordered):
        pairs.setdefault(p[0].idx2 + p[1].idx2, []).append(p)
    bound = 4 * inner.K
    degrees = sorted(d for d in pairs if abs(d) <= bound)
    return tab, w, inner, B, pairs, degrees


def _add(row, col, c):
    v = row.get(col, 0) + c
    if v:
        row[col] = v
    else:
        row.pop(col, None)


def _boundary_rows(tab, B, index, d):
    """Rows ``psi_f`` for ``f`` the dual of each non-central window symbol of degree ``d``."""
    rows = {}
    for j, (s, t) in enumerate(index.keys):
        for r, c in tab.bracket_sym(s, t):
            if not r.central and r.idx2 == d:
                rows.setdefault(r, {})[j] = c
    return [rows[u] for u in B if u in rows]


def _finish(blocks, K, inner, mode):
    dim = 0
    reps = []
    per_degree = {}
    for d, blk in blocks.items():
        base = Echelon()
        for v in blk.boundaries:
            base.add(blk.restrict(v))
        r0 = base.rank
        for v in blk.cocycles:
            rv = blk.restrict(v)
            if base.add(rv):
                reps.append(Cochain2(blk.index.unrow(rv), mode=mode))
        if base.rank > r0:
            per_degree[d] = base.rank - r0
            dim += base.rank - r0
    return H2Result(dim, reps, per_degree, K, inner.K, mode, blocks)


def _interior_cols(index, inner):
    return frozenset(
        j for j, (s, t) in enumerate(index.keys) if inner.contains(s) and inner.contains(t)
    )


def solve_h2_window(alg, K):
    """Second cohomology with trivial coefficients on the window of size ``K``."""
    tab, w, inner, B, pairs, degrees = _setup(alg, K, ordered=False)
    buckets = by_degree(B)
    blocks = {}
    closed_any = False
    for d in degrees:
        index = Indexer(pairs[d])
        col = index.index
        eqs = []
        for x, y, z in triples_with_total(buckets, d):
            xy, yz, zx = tab.bracket_sym(x, y), tab.bracket_sym(y, z), tab.bracket_sym(z, x)
            if not window_closed(w, xy, yz, zx):
                continue
            closed_any = True
            row = {}
            for terms, other in ((xy, z), (yz, x), (zx, y)):
                for r, c in terms:
                    if r.central or r == other:
                        continue
                    if r < other:
                        _add(row, col[(r, other)], c)
                    else:
                        _add(row, col[(other, r)], -c)
            if row:
                eqs.append(row)
        Z = nullspace(eqs, len(index))
        blocks[d] = _Block(d, index, _interior_cols(index, inner), Z, _boundary_rows(tab, B, index, d))
    if not closed_any:
        raise WindowTooSmall(f"no window-closed triple at K={K}")
    return _finish(blocks, K, inner, Mode.ANTISYMMETRIC)


def solve_leibniz_h2_window(alg, K):
    """Leibniz second cohomology on ordered pairs, with antisymmetric-representative flag."""
    tab, w, inner, B, pairs, degrees = _setup(alg, K, ordered=True)
    buckets = by_degree(B)
    blocks = {}
    anti_ok = True
    closed_any = False
    for d in degrees:
        index = Indexer(pairs[d])
        col = index.index
        eqs = []
        for x, y, z in ordered_triples_with_total(buckets, d):
            yz, xy, xz = tab.bracket_sym(y, z), tab.bracket_sym(x, y), tab.bracket_sym(x, z)
            if not window_closed(w, yz, xy, xz):
                continue
            closed_any = True
            row = {}
            for r, c in yz:
                if not r.central:
                    _add(row, col[(x, r)], c)
            for r, c in xy:
                if not r.central:
                    _add(row, col[(r, z)], -c)
            for r, c in xz:
                if not r.central:
                    _add(row, col[(r, y)], c)
            if row:
                eqs.append(row)
        Z = nullspace(eqs, len(index))
        blk = _Block(d, index, _interior_cols(index, inner), Z, _boundary_rows(tab, B, index, d))
        blocks[d] = blk
        # classes with an antisymmetric representative
        anti = list(eqs)
        for (s, t), j in col.items():
            if s <= t:
                anti.append({j: 1, col[(t, s)]: 1} if s != t else {j: 1})
        ZA = nullspace(anti, len(index))
        full = Echelon()
        part = Echelon()
        for v in blk.boundaries:
            full.add(blk.restrict(v))
            part.add(blk.restrict(v))
        for v in Z:
            full.add(blk.restrict(v))
        for v in ZA:
            part.add(blk.restrict(v))
        if part.rank != full.rank:
            anti_ok = False
    if not closed_any:
        raise WindowTooSmall(f"no window-closed triple at K={K}")
    res = _finish(blocks, K, inner, Mode.GENERAL)
    res.antisymmetric_representable = anti_ok
    return res


@dataclass
class FormResult:
    dimension: int
    basis: list
    K: int
    interior: int


def solve_invariant_forms(alg, K):
    """Bilinear forms with ``f([x,y],z) = f(x,[y,z])`` on window-closed triples."""
    tab = table(alg)
    if K < 2:
        raise WindowTooSmall(f"window K={K} is too small; need K >= 2")
    w = as_window(K)
    inner = as_window(K // 2)
    B = [s for s in tab.basis(w) if not s.central]
    buckets = by_degree(B)
    pairs = {}
    for p in _pairs(B, ordered=True):
        pairs.setdefault(p[0].idx2 + p[1].idx2, []).append(p)
    dim = 0
    basis = []
    for d in sorted(d for d in pairs if abs(d) <= 4 * inner.K):
        index = Indexer(pairs[d])
        col = index.index
        eqs = []
        for x, y, z in ordered_triples_with_total(buckets, d):
            xy, yz = tab.bracket_sym(x, y), tab.bracket_sym(y, z)
            if not window_closed(w, xy, yz):
                continue
            row = {}
            for r, c in xy:
                if not r.central:
                    _add(row, col[(r, z)], c)
            for r, c in yz:
                if not r.central:
                    _add(row, col[(x, r)], -c)
            if row:
                eqs.append(row)
        keep = _interior_cols(index, inner)
        ech = Echelon()
        for v in nullspace(eqs, len(index)):
            ech.add({j: c for j, c in v.items() if j in keep})
        dim += ech.rank
        basis.extend(Cochain2(index.unrow(v), mode=Mode.GENERAL) for v in ech.basis())
    return FormResult(dim, basis, K, inner.K)


def check_lm_relation(alg, result):
    """``(m+n) psi(L_m, M_n) = n psi(L_0, M_{m+n})`` for every window cocycle."""
    tab = table(alg)
    w = as_window(result.K)
    rep = Report("lm-relation", info={"algebra": tab.name, "K": w.K})
    L0 = Sym.L(0)
    space = result.cocycle_space()
    for m in range(-w.K, w.K + 1):
        if m == 0:
            continue
        Lm = Sym.L(m)
        for n in range(-w.K, w.K + 1):
            if abs(m + n) > w.K or abs(m + n) > result.interior:
                continue
            Mn, Mmn = Sym.M(n), Sym.M(m + n)
            for psi in space:
                rep.checked += 1
                v = (m + n) * psi.value(Lm, Mn) - n * psi.value(L0, Mmn)
                if v:
                    rep.add((Lm, Mn), v)
    return rep
