"""Parametric automorphisms, inner automorphisms and their lifts.

A parametric automorphism ``σ(ε, λ, a, d)`` acts by

    L_n  -> a^n ε L_{εn} + a^n λ N_{εn}
    N_n  -> a^n N_{εn}
    M_n  -> ε d^2 a^(n-1) M_{ε(n-2λ)}
    Y_{n+1/2} -> d a^n Y_{ε(n+1/2-λ)}

Products are function composition: ``compose(p, q)`` is ``σ_p ∘ σ_q``.
Inner words are lists ``[(c, g), ...]`` denoting the product of
``exp(c ad g)`` with the rightmost factor applied first.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import as_window, closed_pairs, generated_subspace, table
from .core import CL_SYM, CLN_SYM, CN_SYM, Element, Kind, Sym
from .errors import ParseError, RejectedInput, SymbolNotInAlgebra
from .extension import PRIMED_TABLE, from_primed, to_primed
from .linalg import Echelon
from .parsing import format_rational
from .report import Report

_L, _M, _N, _Y = Kind.L, Kind.M, Kind.N, Kind.Y


@dataclass(frozen=True)
class AutParams:
    eps: int
    lam: int
    a: Fraction
    d: Fraction

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if int(self.lam) != self.lam:
            raise ValueError("lambda must be an integer")
        a, d = Fraction(self.a), Fraction(self.d)
        if not a or not d:
            raise ValueError("a and d must be nonzero")
        object.__setattr__(self, "lam", int(self.lam))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)

    @classmethod
    def parse(cls, text):
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ParseError("expected eps,lambda,a,d", 0)
        try:
            eps, lam = int(parts[0]), int(parts[1])
            a, d = Fraction(parts[2]), Fraction(parts[3])
            return cls(eps, lam, a, d)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad automorphism parameters: {exc}", 0) from None

    def __str__(self):
        return f"{self.eps},{self.lam},{format_rational(self.a)},{format_rational(self.d)}"


IDENTITY = AutParams(1, 0, 1, 1)


def pi(eps):
    return AutParams(eps, 0, 1, 1)


def shift(lam):
    return AutParams(1, lam, 1, 1)


def scaling(a, d):
    return AutParams(1, 0, a, d)


def aut_symbol(p, s):
    """Image of one basis symbol."""
    e, lam, a, d = p.eps, p.lam, p.a, p.d
    n = s.n
    if s.kind == _L:
        return Element([(Sym.L(e * n), a**n * e), (Sym.N(e * n), a**n * lam)])
    if s.kind == _N:
        return Element.of(Sym.N(e * n), a**n)
    if s.kind == _M:
        return Element.of(Sym.M(e * (n - 2 * lam)), e * d * d * a ** (n - 1))
    if s.kind == _Y:
        return Element.of(Sym(_Y, e * (s.idx2 - 2 * lam)), d * a**n)
    raise SymbolNotInAlgebra(f"{s!r} is not in the extended algebra")


def _linear(f, x):
    out = {}
    for s, c in x.terms.items():
        for r, v in f(s).terms.items():
            out[r] = out.get(r, 0) + c * v
    return Element(out)


def apply_aut(p, x):
    return _linear(lambda s: aut_symbol(p, s), x)


def compose(p1, p2):
    e1, l1, a1, d1 = p1.eps, p1.lam, p1.a, p1.d
    e2, l2, a2, d2 = p2.eps, p2.lam, p2.a, p2.d
    return AutParams(
        e1 * e2,
        e2 * l1 + l2,
        a1**e2 * a2,
        d1 * d2 * a1 ** ((e2 - 1) // 2 - e2 * l2),
    )


def inverse(p):
    e, lam, a, d = p.eps, p.lam, p.a, p.d
    return AutParams(e, -e * lam, a ** (-e), a ** ((1 - e) // 2 - lam) / d)


def check_homomorphism(alg, F, w):
    """``F([x, y]) = [F x, F y]`` on every window-closed pair."""
    tab = table(alg)
    w = as_window(w)
    rep = Report("homomorphism", info={"algebra": tab.name, "K": w.K})
    for s, t in closed_pairs(tab, w):
        if s >= t:
            continue
        rep.checked += 1
        x, y = Element.of(s), Element.of(t)
        d = F(tab.bracket(x, y)) - tab.bracket(F(x), F(y))
        if d:
            rep.add((s, t), d)
    return rep


def same_map(F, G, basis):
    """Symbols on which two maps differ."""
    return [s for s in basis if F(Element.of(s)) != G(Element.of(s))]


# --- inner automorphisms ---------------------------------------------------

ORDER = {_M: 1, _Y: 2}


def _word(word):
    out = []
    for c, g in word:
        if g.kind not in ORDER:
            raise RejectedInput(f"inner generators are M or Y symbols, got {g!r}")
        out.append((Fraction(c), g))
    return tuple(out)


def exp_ad(c, g, x, alg="svt", order=None):
    """``exp(c ad g)(x)`` as a truncated series; ``g`` is a symbol or element."""
    tab = table(alg)
    G = Element.of(g) if isinstance(g, Sym) else g
    if order is None:
        order = max(ORDER[s.kind] for s in G.terms) if G else 0
    out = x
    term = x
    for k in range(1, order + 1):
        term = tab.bracket(G, term) * (Fraction(c) / k)
        out = out + term
    return out


def apply_inner(word, x, alg="svt"):
    for c, g in reversed(_word(word)):
        x = exp_ad(c, g, x, alg)
    return x


def inner_coset_normal_form(word):
    """Split a product of ``Y`` exponentials as ``exp(Σ b ad Y) exp(Σ κ ad M)``.

    Returns ``(sum_exponent, correction)``, each a list of
    ``(coefficient, symbol)``.
    """
    word = _word(word)
    for _, g in word:
        if g.kind == _M:
            raise RejectedInput("M exponentials are already central in the inner group")
    total = {}
    corr = {}
    for i, (bi, gi) in enumerate(word):
        total[gi] = total.get(gi, 0) + bi
        for bj, gj in word[i + 1:]:
            mi, mj = gi.n, gj.n
            k = Fraction(mi - mj, 2) * bi * bj
            if k:
                s = Sym.M(mi + mj + 1)
                corr[s] = corr.get(s, 0) + k
    return (
        [(c, s) for s, c in sorted(total.items()) if c],
        [(c, s) for s, c in sorted(corr.items()) if c],
    )


def apply_normal_form(sum_exponent, correction, x, alg="svt"):
    """``exp(ad Σ b Y)(exp(ad Σ κ M)(x))``."""
    Ysum = Element([(s, c) for c, s in sum_exponent])
    Msum = Element([(s, c) for c, s in correction])
    return exp_ad(1, Ysum, exp_ad(1, Msum, x, alg, order=1), alg, order=2)


def verify_coset_normal_form(word, w, alg="svt"):
    tab = table(alg)
    w = as_window(w)
    total, corr = inner_coset_normal_form(word)
    rep = Report("coset-normal-form", info={"K": w.K})
    for s in tab.basis(w):
        rep.checked += 1
        x = Element.of(s)
        d = apply_inner(word, x, alg) - apply_normal_form(total, corr, x, alg)
        if d:
            rep.add((s,), d)
    return rep


def check_nilpotency(w, alg="svt"):
    """``(ad M)^2 = (ad Y)^3 = ad M ad Y = ad Y ad M = 0`` on the window basis."""
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    Ms = [s for s in B if s.kind == _M]
    Ys = [s for s in B if s.kind == _Y]
    rep = Report("nilpotency", info={"K": w.K})

    def ad(g, x):
        return tab.bracket(Element.of(g), x)

    for b in B:
        x = Element.of(b)
        for m in Ms:
            rep.checked += 1
            if ad(m, ad(m, x)):
                rep.add((m, m, b), ad(m, ad(m, x)), "adM^2")
        for y in Ys:
            rep.checked += 1
            v = ad(y, ad(y, ad(y, x)))
            if v:
                rep.add((y, y, y, b), v, "adY^3")
            for m in Ms:
                rep.checked += 2
                if ad(m, ad(y, x)):
                    rep.add((m, y, b), ad(m, ad(y, x)), "adM adY")
                if ad(y, ad(m, x)):
                    rep.add((y, m, b), ad(y, ad(m, x)), "adY adM")
    return rep


def conjugate_factor(p, factor):
    """``σ exp(c ad g) σ^-1 = exp(c ad σ(g))``, written on a basis symbol."""
    c, g = factor
    img = aut_symbol(p, g)
    ((s, k),) = img.terms.items()
    return (c * k, s)


@dataclass(frozen=True)
class Automorphism:
    """``I_word ∘ σ_params``."""

    word: tuple
    params: AutParams

    def __call__(self, x):
        return apply_inner(self.word, apply_aut(self.params, x))

    def __mul__(self, other):
        conj = tuple(conjugate_factor(self.params, f) for f in other.word)
        return Automorphism(tuple(self.word) + conj, compose(self.params, other.params))


# --- group relations -------------------------------------------------------

def _relations(p, q):
    e, lam, a, d = p.eps, p.lam, p.a, p.d
    half = (e - 1) // 2
    return [
        ("factorization", [pi(e), shift(lam), scaling(a, d)], p),
        ("inverse", [p, inverse(p)], IDENTITY),
        ("inverse-left", [inverse(p), p], IDENTITY),
        ("pi-product", [pi(e), pi(q.eps)], pi(e * q.eps)),
        ("shift-product", [shift(lam), shift(q.lam)], shift(lam + q.lam)),
        ("scaling-product", [scaling(a, d), scaling(q.a, q.d)], scaling(a * q.a, d * q.d)),
        ("pi-shift", [inverse(pi(e)), shift(q.lam), pi(e)], shift(e * q.lam)),
        ("pi-scaling", [inverse(pi(e)), scaling(q.a, q.d), pi(e)],
         scaling(q.a**e, q.d * q.a**half)),
        ("shift-scaling", [inverse(shift(lam)), scaling(q.a, q.d), shift(lam)],
         scaling(q.a, q.d * q.a ** (-lam))),
    ]


def verify_group_relations(samples, w):
    """Parameter-level and functional checks of the product relations."""
    w = as_window(w)
    basis = table("svt").basis(w)
    rep = Report("group-relations", info={"K": w.K, "samples": len(samples)})
    for p, q in samples:
        for name, word, expect in _relations(p, q):
            got = word[0]
            for r in word[1:]:
                got = compose(got, r)
            rep.checked += 1
            if got != expect:
                rep.add((str(p), str(q)), f"{got} != {expect}", f"{name}: parameters")

            def F(x, word=word):
                for r in reversed(word):
                    x = apply_aut(r, x)
                return x

            rep.checked += 1
            bad = same_map(F, lambda x: apply_aut(expect, x), basis)
            if bad:
                rep.add((str(p), str(q)), bad, f"{name}: functional")
    return rep


def random_params(rng, lam_range=3):
    """Rational sample with small numerators and denominators."""

    def nz():
        while True:
            v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            if v:
                return v

    return AutParams(rng.choice((1, -1)), rng.randint(-lam_range, lam_range), nz(), nz())


def sample_pairs(n, seed=0):
    rng = random.Random(seed)
    return [(random_params(rng), random_params(rng)) for _ in range(n)]


# --- lifts to the universal central extension --------------------------------

def lift_symbol(p, s):
    """Image of a primed basis symbol under the lift of ``σ(p)``."""
    e, lam, a, d = p.eps, p.lam, p.a, p.d
    n = s.n
    if s.central:
        return Element.of(s, e)
    if s.kind == _L:
        out = [(Sym.L(e * n), a**n * e), (Sym.N(e * n), a**n * lam)]
        if n == 0:
            out += [(CLN_SYM, -lam), (CN_SYM, Fraction(e, 2) * lam * lam)]
        return Element(out)
    if s.kind == _N:
        out = [(Sym.N(e * n), a**n)]
        if n == 0:
            out += [(CLN_SYM, e - 1), (CN_SYM, e * lam)]
        return Element(out)
    return aut_symbol(p, s)


def lift_aut(p, x):
    """Lift acting on the primed basis of the universal central extension."""
    return _linear(lambda s: lift_symbol(p, s), x)


def lift_aut_svhat(p, x):
    """The lift transported to the centrally extended table through ``N_0 -> N_0 - 2 C_LN``."""
    return from_primed(lift_aut(p, to_primed(x)))


def project(x):
    """Drop central terms."""
    return Element([(s, c) for s, c in x.terms.items() if not s.central])


def check_lift_projection(p, w):
    w = as_window(w)
    rep = Report("lift-projection", info={"K": w.K, "params": str(p)})
    for s in table("svt").basis(w):
        rep.checked += 1
        x = Element.of(s)
        d = project(lift_aut(p, x)) - apply_aut(p, x)
        if d:
            rep.add((s,), d)
    return rep


def check_lift_product(p, q, w):
    """``lift(p q) = lift(p) ∘ lift(q)`` on the window basis."""
    w = as_window(w)
    rep = Report("lift-product", info={"K": w.K})
    pq = compose(p, q)
    for s in PRIMED_TABLE.basis(w):
        rep.checked += 1
        x = Element.of(s)
        d = lift_aut(pq, x) - lift_aut(p, lift_aut(q, x))
        if d:
            rep.add((s,), d)
    return rep


LIFT_GENERATORS = (Sym.L(-2), Sym.L(-1), Sym.L(1), Sym.L(2), Sym.N(1), Sym.Y(0))


def extend_from_generators(alg, seeds, w):
    """Extend generator images to a bracket-preserving map on the window.

    ``seeds`` maps generator symbols to images.  Products whose source
    leaves the window are dropped.  Returns ``(images, report)``: images
    of every window symbol reached, and a report listing any product whose
    image contradicts an earlier one (the extension is then impossible).
    """
    tab = table(alg)
    w = as_window(w)
    B = tab.basis(w)
    src_col = {s: i for i, s in enumerate(B)}
    img_col = {}

    def col(r):
        if r not in img_col:
            img_col[r] = len(B) + len(img_col)
        return img_col[r]

    def row(x, fx):
        out = {src_col[s]: c for s, c in x.terms.items()}
        for r, c in fx.terms.items():
            out[col(r)] = out.get(col(r), 0) + c
        return out

    rep = Report("extension", info={"algebra": tab.name, "K": w.K})
    ech = Echelon()
    found = []
    for s, fx in seeds.items():
        x = Element.of(s)
        ech.add(row(x, fx))
        found.append((x, fx))
    queue = list(found)
    while queue:
        x, fx = queue.pop(0)
        for y, fy in list(found):
            z = tab.bracket(x, y)
            if not z or not w.contains_element(z):
                continue
            fz = tab.bracket(fx, fy)
            rep.checked += 1
            if ech.add(row(z, fz)):
                found.append((z, fz))
                queue.append((z, fz))
        # an augmented pivot past the source columns means F(0) != 0
        bad = [c for c in ech.pivots if c >= len(B)]
        if bad:
            inv = {v: k for k, v in img_col.items()}
            rep.add((x,), Element({inv[c]: 1 for c in bad}), "inconsistent images")
            return {}, rep
    images = {}
    inv = {v: k for k, v in img_col.items()}
    for s in B:
        rem = ech.reduce({src_col[s]: 1})
        if any(c < len(B) for c in rem):
            continue
        images[s] = -Element({inv[c]: v for c, v in rem.items()})
    return images, rep


def check_lift_uniqueness(p, w):
    """The lift is determined by its generator images.

    Extends the generator images and compares with the lift on every
    reached symbol; also confirms that shifting one generator image by a
    central element admits no extension.
    """
    w = as_window(w)
    rep = Report("lift-uniqueness", info={"K": w.K, "params": str(p)})
    seeds = {g: lift_aut(p, Element.of(g)) for g in LIFT_GENERATORS}
    images, ext = extend_from_generators(PRIMED_TABLE, seeds, w)
    rep.merge(ext)
    rep.info["reached"] = len(images)
    for s, v in images.items():
        rep.checked += 1
        if v != lift_aut(p, Element.of(s)):
            rep.add((s,), v - lift_aut(p, Element.of(s)), "differs from lift")
    bent = dict(seeds)
    bent[Sym.L(1)] = bent[Sym.L(1)] + Element.of(CL_SYM)
    _, ext2 = extend_from_generators(PRIMED_TABLE, bent, w)
    rep.checked += 1
    if ext2.ok:
        rep.add((Sym.L(1),), Element.of(CL_SYM), "perturbed lift extended")
    return rep


def generator_coverage(w):
    """Window symbols of the extended algebra reached from the standard generators."""
    gens = [Element.of(s) for s in LIFT_GENERATORS]
    return generated_subspace("svt", gens, w)
