"""Independent reference computations with sympy.

Symbols here are plain tuples ``(kind, index)`` with ``index`` a sympy
Rational; ``Y`` carries its true half-integer index.  Nothing from the
package's linear algebra is used.
"""

from itertools import combinations

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix

HALF = Rational(1, 2)


def bracket(a, b):
    """Structure constants of the extended algebra, as ``{symbol: coeff}``."""
    (ka, m), (kb, n) = a, b
    out = {}

    def put(k, i, c):
        if c:
            out[(k, i)] = out.get((k, i), 0) + c

    rules = {
        ("L", "L"): lambda: put("L", m + n, n - m),
        ("L", "M"): lambda: put("M", m + n, n),
        ("L", "N"): lambda: put("N", m + n, n),
        ("L", "Y"): lambda: put("Y", m + n, n - m / 2),
        ("Y", "Y"): lambda: put("M", m + n, m - n),
        ("N", "M"): lambda: put("M", m + n, 2),
        ("N", "Y"): lambda: put("Y", m + n, 1),
    }
    if (ka, kb) in rules:
        rules[(ka, kb)]()
    elif (kb, ka) in rules:
        flipped = bracket(b, a)
        return {s: -c for s, c in flipped.items()}
    return out


def basis(K, kinds="LMNY"):
    out = []
    for k in "LMN":
        if k in kinds:
            out.extend((k, Rational(i)) for i in range(-K, K + 1))
    if "Y" in kinds:
        out.extend(("Y", Rational(2 * i + 1, 2)) for i in range(-K, K))
    return out


def in_window(s, K):
    return abs(s[1]) <= K


def rank(rows, ncols):
    if not rows:
        return 0
    dense = [[QQ.from_sympy(Rational(r.get(j, 0))) for j in range(ncols)] for r in rows]
    return DomainMatrix(dense, (len(rows), ncols), QQ).rank()


def nullity(rows, ncols):
    return ncols - rank(rows, ncols)


def center_dim(K, interior, kinds="LMNY"):
    unknowns = basis(interior, kinds)
    col = {s: j for j, s in enumerate(unknowns)}
    eqs = {}
    for b in basis(K, kinds):
        for s in unknowns:
            for r, c in bracket(s, b).items():
                if r[0] in kinds:
                    eqs.setdefault((b, r), {})[col[s]] = c
    return nullity(list(eqs.values()), len(unknowns))


def component(m):
    """Degree ``m/2`` component."""
    if m % 2:
        return [("Y", Rational(m, 2))]
    return [(k, Rational(m // 2)) for k in "LMN"]


SV0 = [("L", Rational(0)), ("M", Rational(0)), ("N", Rational(0))]


def _unknowns(src, tgt):
    return {(s, t): j for j, (s, t) in enumerate((s, t) for s in src for t in tgt)}


def _apply(col, x, tgt):
    """Image of the element ``x`` under the unknown map, as ``{target: row}``."""
    out = {}
    for s, c in x.items():
        for t in tgt:
            row = out.setdefault(t, {})
            j = col[(s, t)]
            row[j] = row.get(j, 0) + c
    return out


def _ad(e, rows):
    out = {}
    for t, row in rows.items():
        for r, c in bracket(e, t).items():
            acc = out.setdefault(r, {})
            for j, v in row.items():
                acc[j] = acc.get(j, 0) + c * v
    return out


def _minus(a, b):
    out = []
    for k in set(a) | set(b):
        row = dict(a.get(k, {}))
        for j, v in b.get(k, {}).items():
            row[j] = row.get(j, 0) - v
        out.append(row)
    return out


def hom_dim(m, n):
    src, tgt = component(m), component(n)
    col = _unknowns(src, tgt)
    eqs = []
    for e in SV0:
        for s in src:
            eqs += _minus(_apply(col, bracket(e, s), tgt), _ad(e, _apply(col, {s: 1}, tgt)))
    return nullity(eqs, len(col))


def der_dims(n):
    """``(dim Der, dim Inn)`` for maps from degree-0 into the degree ``n/2`` component."""
    tgt = component(n)
    col = _unknowns(SV0, tgt)
    eqs = []
    for x, y in combinations(SV0, 2):
        rhs = _ad(x, _apply(col, {y: 1}, tgt))
        for k, row in _ad(y, _apply(col, {x: 1}, tgt)).items():
            acc = rhs.setdefault(k, {})
            for j, v in row.items():
                acc[j] = acc.get(j, 0) - v
        eqs += _minus(_apply(col, bracket(x, y), tgt), rhs)
    der = nullity(eqs, len(col))
    inner = []
    for t in tgt:
        inner.append({col[(s, r)]: c for s in SV0 for r, c in bracket(t, s).items()})
    return der, rank(inner, len(col))


def j_rank(K):
    """Rank of the Jacobi wedge relations among window-closed triples."""
    B = basis(K)
    key = lambda s: ("LMNY".index(s[0]), s[1])
    B.sort(key=key)
    total = 0
    by_sum = {}
    for x, y, z in combinations(B, 3):
        by_sum.setdefault(x[1] + y[1] + z[1], []).append((x, y, z))
    for _, triples in sorted(by_sum.items()):
        col = {}
        rows = []
        for x, y, z in triples:
            terms = ((x, bracket(y, z)), (y, bracket(z, x)), (z, bracket(x, y)))
            if not all(in_window(r, K) for _, br in terms for r in br):
                continue
            row = {}
            for a, br in terms:
                for r, c in br.items():
                    if r == a:
                        continue
                    p, sign = ((a, r), 1) if key(a) < key(r) else ((r, a), -1)
                    j = col.setdefault(p, len(col))
                    row[j] = row.get(j, 0) + sign * c
            rows.append(row)
        total += rank(rows, len(col))
    return total


def j_contains(K, wedge):
    """Whether ``wedge`` (``{(a, b): c}`` of same total degree) lies in the window J span."""
    B = basis(K)
    key = lambda s: ("LMNY".index(s[0]), s[1])
    d = {a[1] + b[1] for a, b in wedge}
    assert len(d) == 1
    (d,) = d
    col, rows = {}, []

    def put(row, a, b, c):
        if a == b:
            return
        p, sign = ((a, b), 1) if key(a) < key(b) else ((b, a), -1)
        j = col.setdefault(p, len(col))
        row[j] = row.get(j, 0) + sign * c

    for x, y, z in combinations(sorted(B, key=key), 3):
        if x[1] + y[1] + z[1] != d:
            continue
        terms = ((x, bracket(y, z)), (y, bracket(z, x)), (z, bracket(x, y)))
        if not all(in_window(r, K) for _, br in terms for r in br):
            continue
        row = {}
        for a, br in terms:
            for r, c in br.items():
                put(row, a, r, c)
        rows.append(row)
    target = {}
    for (a, b), c in wedge.items():
        put(target, a, b, c)
    n = len(col)
    return rank(rows + [target], n) == rank(rows, n)
