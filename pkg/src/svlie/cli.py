"""Command-line front end.

Every subcommand prints one JSON report to standard output::

    {"command", "algebra", "window", "status", "result", "engine_version"}

Exit status is 0 when ``status`` is ``"ok"``, 1 for ``"violations"`` and
2 for usage or parse errors.  Rationals are written ``"p/q"``.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebra import AlgebraId, center, check_grading, check_ideal, check_jacobi
from .algebra import bracket as alg_bracket
from .core import Element, Sym
from .errors import ParseError, SvlieError
from .parsing import format_element, format_pairs, format_rational, parse_element, parse_symbol
from .report import Report

DEFAULT_MAX_K = 12


class UsageError(Exception):
    pass


def max_k():
    raw = os.environ.get("SVLIE_MAX_K", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_K
    except ValueError:
        raise UsageError(f"SVLIE_MAX_K must be an integer, got {raw!r}") from None


def _window(K):
    cap = max_k()
    if K < 0:
        raise UsageError("K must be non-negative")
    if K > cap:
        raise UsageError(f"K={K} exceeds SVLIE_MAX_K={cap}")
    return K


# --- serialisation ---------------------------------------------------------

def render(v):
    """JSON-ready form: rationals as strings, symbols and elements in surface syntax."""
    from .extension import ExtElement, WedgeElement, format_ext

    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, Sym):
        return repr(v)
    if isinstance(v, Element):
        return format_element(v)
    if isinstance(v, WedgeElement):
        return format_pairs(v.terms)
    if isinstance(v, ExtElement):
        return format_ext(v)
    if isinstance(v, dict):
        return {str(render(k)): render(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [render(x) for x in v]
    return str(v)


MAX_LISTED = 100


def report_result(rep):
    out = {
        "check": rep.check,
        "checked": rep.checked,
        "violation_count": len(rep.violations),
        "violations": [
            dict({"triple": render(list(v.items)), "defect": render(v.defect)},
                 **({"note": v.note} if v.note else {}))
            for v in rep.violations[:MAX_LISTED]
        ],
    }
    info = {k: v for k, v in rep.info.items() if k not in ("algebra", "K")}
    if info:
        out["info"] = render(info)
    return out


def cochain_text(psi):
    return format_pairs(psi.entries)


def envelope(command, algebra, window, status, result):
    return {
        "command": command,
        "algebra": algebra,
        "window": window,
        "status": status,
        "result": render(result),
        "engine_version": __version__,
    }


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- commands --------------------------------------------------------------

def _ok(rep):
    return "ok" if rep.ok else "violations"


def cmd_bracket(a):
    x, y = parse_element(a.x), parse_element(a.y)
    return a.algebra, 0, "ok", format_element(alg_bracket(a.algebra, x, y))


def cmd_verify_jacobi(a):
    rep = check_jacobi(a.algebra, _window(a.K))
    return a.algebra, a.K, _ok(rep), report_result(rep)


def cmd_verify_grading(a):
    rep = check_grading(a.algebra, _window(a.K))
    return a.algebra, a.K, _ok(rep), report_result(rep)


def cmd_verify_ideal(a):
    rep = check_ideal(a.algebra, a.sub, _window(a.K))
    return a.algebra, a.K, _ok(rep), report_result(rep)


def cmd_center(a):
    K = _window(a.K)
    interior = a.interior if a.interior is not None else K // 2
    basis = center(a.algebra, K, interior)
    return a.algebra, K, "ok", {"dimension": len(basis), "interior": interior, "basis": basis}


def _h2_result(res):
    return {
        "dimension": res.dimension,
        "interior": res.interior,
        "per_degree": {str(d): v for d, v in sorted(res.per_degree.items())},
        "representatives": [cochain_text(r) for r in res.representatives],
    }


def cmd_solve_h2(a):
    from .cohomology import solve_h2_window

    res = solve_h2_window(a.algebra, _window(a.K))
    return a.algebra, a.K, "ok", _h2_result(res)


def cmd_solve_leibniz_h2(a):
    from .cohomology import solve_leibniz_h2_window

    res = solve_leibniz_h2_window(a.algebra, _window(a.K))
    out = _h2_result(res)
    out["antisymmetric_representable"] = res.antisymmetric_representable
    return a.algebra, a.K, "ok", out


def cmd_solve_invariant_form(a):
    from .cohomology import solve_invariant_forms

    res = solve_invariant_forms(a.algebra, _window(a.K))
    out = {
        "dimension": res.dimension,
        "interior": res.interior,
        "basis": [cochain_text(f) for f in res.basis],
    }
    return a.algebra, a.K, "ok", out


def cmd_solve_derivations(a):
    from .derivations import match_inner, params_of, solve_degree_zero_window, solve_der_sv0

    if a.n is not None:
        r = solve_der_sv0(a.n)
        return "svt", 0, "ok", {"n": a.n, "der": r.der, "inn": r.inn, "h1": r.h1}
    K = _window(a.K)
    interior = a.interior if a.interior is not None else K // 2
    sols = solve_degree_zero_window(a.algebra, K, interior)
    rows = []
    unmatched = 0
    for D in sols:
        X = match_inner(a.algebra, D, K, interior)
        p = params_of(D)
        if not X:
            unmatched += 1
        rows.append({"a": p.a, "b": p.b, "c": p.c, "inner": X if X else None})
    status = "ok" if not unmatched else "violations"
    return a.algebra, K, status, {"dimension": len(sols), "interior": interior, "solutions": rows}


def cmd_hom_dim(a):
    from .derivations import solve_hom_sv0

    r = solve_hom_sv0(a.m, a.n)
    return "svt", 0, "ok", {"m": a.m, "n": a.n, "dimension": r.dimension}


def cmd_wedge_reduce(a):
    from .extension import wedge_of_elements

    K = _window(a.K)
    x, y = parse_element(a.x), parse_element(a.y)
    return "svt", K, "ok", wedge_of_elements(x, y, K)


def cmd_verify_lemma56(a):
    from .extension import verify_lemma56

    rep = verify_lemma56(_window(a.K), a.variant)
    return "svt", a.K, _ok(rep), report_result(rep)


def cmd_verify_primed_table(a):
    from .extension import verify_primed_table

    rep = verify_primed_table(_window(a.K), a.variant)
    return "primed", a.K, _ok(rep), report_result(rep)


def _params(text):
    from .automorphisms import AutParams

    return AutParams.parse(text)


def cmd_aut_apply(a):
    from .automorphisms import apply_aut

    return "svt", 0, "ok", apply_aut(_params(a.p), parse_element(a.x))


def cmd_aut_compose(a):
    from .automorphisms import compose

    return "svt", 0, "ok", str(compose(_params(a.p1), _params(a.p2)))


def cmd_aut_inverse(a):
    from .automorphisms import inverse

    return "svt", 0, "ok", str(inverse(_params(a.p)))


def cmd_aut_verify(a):
    from .automorphisms import apply_aut, check_homomorphism, sample_pairs, verify_group_relations

    K = _window(a.K)
    if a.p:
        p = _params(a.p)
        rep = check_homomorphism("svt", lambda x: apply_aut(p, x), K)
        return "svt", K, _ok(rep), report_result(rep)
    pairs = sample_pairs(a.samples, a.seed)
    rep = verify_group_relations(pairs, K)
    for p, _ in pairs:
        rep.merge(check_homomorphism("svt", lambda x, p=p: apply_aut(p, x), K))
    return "svt", K, _ok(rep), report_result(rep)


def parse_word(text):
    """Inner word ``"c*G, c*G, ..."`` in product order (rightmost applied first)."""
    out = []
    if not text.strip():
        return out
    for part in text.split(","):
        x = parse_element(part)
        if len(x) != 1:
            raise ParseError(f"word factor {part.strip()!r} must be a single term", 0)
        ((s, c),) = x.items()
        out.append((c, s))
    return out


def cmd_inner_apply(a):
    from .automorphisms import apply_inner

    return "svt", 0, "ok", apply_inner(parse_word(a.word), parse_element(a.x))


def cmd_inner_normal_form(a):
    from .automorphisms import inner_coset_normal_form, verify_coset_normal_form

    word = parse_word(a.word)
    total, corr = inner_coset_normal_form(word)
    K = _window(a.K)
    rep = verify_coset_normal_form(word, K)
    res = {
        "sum_exponent": Element([(s, c) for c, s in total]),
        "correction": Element([(s, c) for c, s in corr]),
        "check": report_result(rep),
    }
    return "svt", K, _ok(rep), res


def cmd_lift_apply(a):
    from .automorphisms import lift_aut, lift_aut_svhat

    p, x = _params(a.p), parse_element(a.x)
    if a.table == "svhat":
        return "svhat", 0, "ok", lift_aut_svhat(p, x)
    return "primed", 0, "ok", lift_aut(p, x)


SWEEPABLE = ("solve-h2", "solve-leibniz-h2", "solve-invariant-form", "center",
             "verify-jacobi", "verify-grading")


def _measure(command, algebra, K):
    from .cohomology import solve_h2_window, solve_invariant_forms, solve_leibniz_h2_window

    if command == "solve-h2":
        return solve_h2_window(algebra, K).dimension
    if command == "solve-leibniz-h2":
        return solve_leibniz_h2_window(algebra, K).dimension
    if command == "solve-invariant-form":
        return solve_invariant_forms(algebra, K).dimension
    if command == "center":
        return len(center(algebra, K, K // 2))
    if command == "verify-jacobi":
        return len(check_jacobi(algebra, K).violations)
    return len(check_grading(algebra, K).violations)


def parse_range(text):
    try:
        lo, hi = (int(v) for v in text.split(".."))
    except ValueError:
        raise UsageError(f"K range must look like 4..8, got {text!r}") from None
    if lo > hi:
        raise UsageError("empty K range")
    return lo, hi


def cmd_sweep(a):
    lo, hi = parse_range(a.range)
    _window(hi)
    ks = list(range(lo, hi + 1))
    values = [_measure(a.sweep_command, a.algebra, K) for K in ks]
    last = values[-1]
    start = hi
    for K, v in zip(reversed(ks), reversed(values)):
        if v != last:
            break
        start = K
    res = {
        "command": a.sweep_command,
        "K": ks,
        "values": values,
        "stabilized": len(values) > 1 and values[-2] == last,
        "stable_from": start,
        "stable_value": last,
    }
    return a.algebra, hi, "ok", res


# --- parser ----------------------------------------------------------------

ALGEBRAS = [a.value for a in AlgebraId]


def build_parser():
    p = argparse.ArgumentParser(prog="svlie", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, algebra=None, K=None):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        if algebra is not None:
            sp.add_argument("--algebra", choices=ALGEBRAS, default=algebra)
        if K is not None:
            sp.add_argument("--K", type=int, default=K)
        return sp

    sp = add("bracket", cmd_bracket, "bracket of two elements", "svt")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    add("verify-jacobi", cmd_verify_jacobi, "antisymmetry and Jacobi on a window", "svt", 6)
    add("verify-grading", cmd_verify_grading, "grading additivity on a window", "svt", 6)
    sp = add("verify-ideal", cmd_verify_ideal, "ideal check", "svt", 6)
    sp.add_argument("--sub", choices=ALGEBRAS, required=True)
    sp = add("center", cmd_center, "center on an interior window", "svt", 6)
    sp.add_argument("--interior", type=int)
    add("solve-h2", cmd_solve_h2, "window second cohomology", "svt", 6)
    add("solve-leibniz-h2", cmd_solve_leibniz_h2, "window Leibniz second cohomology", "svt", 6)
    add("solve-invariant-form", cmd_solve_invariant_form, "invariant bilinear forms", "svt", 6)
    sp = add("solve-derivations", cmd_solve_derivations, "derivation solvers", "svt", 6)
    sp.add_argument("--n", type=int, help="degree n/2 target of the degree-0 H^1 solver")
    sp.add_argument("--interior", type=int)
    sp = add("hom-dim", cmd_hom_dim, "module maps between graded components")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("wedge-reduce", cmd_wedge_reduce, "reduce x∨y modulo J", K=8)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    for name, func, default in (
        ("verify-lemma56", cmd_verify_lemma56, 8),
        ("verify-primed-table", cmd_verify_primed_table, 6),
    ):
        sp = add(name, func, "wedge-quotient checks", K=default)
        sp.add_argument("--variant", choices=("original", "corrected"), default="original")
    sp = add("aut-apply", cmd_aut_apply, "apply σ(eps,lambda,a,d)")
    sp.add_argument("--p", required=True)
    sp.add_argument("--x", required=True)
    sp = add("aut-compose", cmd_aut_compose, "compose parameter tuples")
    sp.add_argument("--p1", required=True)
    sp.add_argument("--p2", required=True)
    sp = add("aut-inverse", cmd_aut_inverse, "inverse parameter tuple")
    sp.add_argument("--p", required=True)
    sp = add("aut-verify", cmd_aut_verify, "homomorphism and group-relation checks", K=5)
    sp.add_argument("--p")
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("inner-apply", cmd_inner_apply, "apply a word of exponentials")
    sp.add_argument("--word", required=True)
    sp.add_argument("--x", required=True)
    sp = add("inner-normal-form", cmd_inner_normal_form, "coset normal form of a Y word", K=5)
    sp.add_argument("--word", required=True)
    sp = add("lift-apply", cmd_lift_apply, "apply the lifted automorphism")
    sp.add_argument("--p", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--table", choices=("primed", "svhat"), default="primed")
    sp = add("sweep", cmd_sweep, "run a command over a K range", "svt")
    sp.add_argument("sweep_command", choices=SWEEPABLE)
    sp.add_argument("--range", required=True)
    return p


VALUE_FLAGS = ("--x", "--y", "--p", "--p1", "--p2", "--word")


def _join_values(argv):
    """Glue ``--p -1,0,1,1`` into ``--p=-1,0,1,1`` so leading minus signs survive argparse."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def dispatch(argv):
    """Run one command; return ``(report dict, exit code)``."""
    args = build_parser().parse_args(_join_values(list(argv)))
    algebra, window, status, result = args.func(args)
    doc = envelope(args.command, algebra, window, status, result)
    return doc, 0 if status == "ok" else 1


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        doc, code = dispatch(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (UsageError, SvlieError, ValueError) as exc:
        print(f"svlie: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
