"""Sparse exact linear algebra over the rationals.

Rows are dicts ``column -> coefficient`` with integer columns; the
pivot of a row is its smallest column, so the caller controls pivot
priority through the column numbering.  Elimination is fraction-free:
rows are scaled to primitive integer vectors and combined by integer
cross-multiplication.  Fractions only appear when a reduced row-echelon
form or an exact remainder is requested.
"""

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd, lcm


def _primitive(row):
    """Scale a rational row to a primitive integer row with positive pivot."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    return _content_normalise(out)


def _content_normalise(row):
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incremental row-echelon basis of a span of sparse rows."""

    def __init__(self):
        self.pivots = {}
        self._rref = None

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def _eliminate(self, row):
        pivots = self.pivots
        heap = [c for c in row if c in pivots]
        heapify(heap)
        while heap:
            c = heappop(heap)
            a = row.get(c)
            if not a:
                continue
            e = pivots[c]
            p = e[c]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            if mp != 1:
                row = {k: v * mp for k, v in row.items()}
            for k, v in e.items():
                nv = row.get(k, 0) - ma * v
                if nv:
                    if k not in row and k in pivots:
                        heappush(heap, k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            row = _content_normalise(row)
        return row

    def add(self, row):
        """Insert a row; return True if it enlarged the span."""
        row = _primitive(row)
        if not row:
            return False
        row = self._eliminate(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        self._rref = None
        return True

    def contains(self, row):
        row = _primitive(row)
        return not row or not self._eliminate(row)

    def rref(self):
        """Reduced rows: pivot -> {col: Fraction}, pivot entry 1, no other pivots."""
        if self._rref is not None:
            return self._rref
        out = {}
        for c in sorted(self.pivots, reverse=True):
            e = self.pivots[c]
            p = e[c]
            row = {k: Fraction(v, p) for k, v in e.items()}
            for k in sorted(k for k in e if k != c and k in out):
                f = row.get(k)
                if not f:
                    continue
                for kk, vv in out[k].items():
                    nv = row.get(kk, 0) - f * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            out[c] = row
        self._rref = out
        return out

    def reduce(self, row):
        """Exact remainder of ``row`` modulo the span, in non-pivot columns."""
        rref = self.rref()
        row = {k: Fraction(v) for k, v in row.items() if v}
        for c in sorted(c for c in row if c in rref):
            f = row.get(c)
            if not f:
                continue
            for k, v in rref[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def basis(self):
        rref = self.rref()
        return [dict(rref[c]) for c in sorted(rref)]


def rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols):
    """Basis of ``{x : r.x = 0 for r in rows}`` over columns ``0..ncols-1``.

    One vector per free column ``f`` (ascending), with ``x_f = 1`` and the
    pivot coordinates read off the reduced row-echelon form.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    rref = ech.rref()
    out = []
    for f in range(ncols):
        if f in rref:
            continue
        vec = {f: Fraction(1)}
        for p, row in rref.items():
            v = row.get(f)
            if v:
                vec[p] = -v
        out.append(vec)
    return out


def solve(rows, rhs, ncols):
    """One solution of ``A x = b`` (free variables 0), or None if inconsistent."""
    aug = ncols
    ech = Echelon()
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[aug] = -Fraction(b)
        ech.add(row)
    rref = ech.rref()
    if aug in rref:
        return None
    x = {}
    for p, row in rref.items():
        v = row.get(aug)
        if v:
            x[p] = -v
    return x


class Indexer:
    """Bijection between hashable keys and column numbers, in list order."""

    def __init__(self, keys):
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        if len(self.index) != len(self.keys):
            raise ValueError("duplicate keys")

    def __len__(self):
        return len(self.keys)

    def __contains__(self, k):
        return k in self.index

    def row(self, mapping):
        ix = self.index
        return {ix[k]: v for k, v in mapping.items() if v}

    def unrow(self, row):
        ks = self.keys
        return {ks[i]: v for i, v in row.items()}
