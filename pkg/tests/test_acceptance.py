"""Acceptance criteria 1-8.  All comparisons are exact (tolerance zero)."""

import random
import time
from fractions import Fraction
from pathlib import Path

from cli_cases import CASES
from conftest import ACCEPTANCE
from svlie.algebra import center, check_grading, check_jacobi
from svlie.automorphisms import (
    IDENTITY, AutParams, apply_aut, apply_inner, check_homomorphism, check_lift_projection,
    check_lift_uniqueness, check_nilpotency, compose, inverse, lift_aut, lift_aut_svhat,
    random_params, same_map, sample_pairs, verify_coset_normal_form, verify_group_relations,
)
from svlie.cli import dispatch, dumps
from svlie.cohomology import (
    ALTERNATIVE_WITNESS, LinearFunctional, alternative_cocycle, check_cohomologous,
    named_cocycle, solve_h2_window, solve_invariant_forms, solve_leibniz_h2_window,
)
from svlie.algebra import table
from svlie.core import Element, Sym
from svlie.derivations import (
    degree_zero_derivation, inner_generator, match_inner, params_of, solve_degree_zero_window,
    solve_der_sv0, solve_hom_sv0,
)
from svlie.extension import (
    NORMALIZATION_FUNCTIONAL, PRIMED_TABLE, primed_phi2, verify_lemma56, verify_primed_table,
)
from svlie.parsing import format_element, parse_element

GOLDEN = Path(__file__).parent / "golden"


def record(n, checks):
    """``checks`` is a list of ``(label, ok)``; prints and stores one line."""
    failed = [label for label, ok in checks if not ok]
    text = "all checks hold" if not failed else "failed: " + "; ".join(failed)
    ACCEPTANCE[n] = (not failed, text)
    print(f"{'PASS' if not failed else 'FAIL'} criterion {n}: {text}")
    assert not failed, text


def test_criterion_1_lie_soundness():
    checks = []
    start = time.perf_counter()
    for alg in ("svt", "svhat"):
        checks.append((f"jacobi {alg} K=8", check_jacobi(alg, 8).ok))
        checks.append((f"grading {alg} K=8", check_grading(alg, 8).ok))
    elapsed = time.perf_counter() - start
    checks.append((f"runtime {elapsed:.2f}s < 10s", elapsed < 10))
    record(1, checks)


def test_criterion_2_center():
    record(2, [
        ("center(svt, 6, 3) = 0", center("svt", 6, 3) == []),
        ("center(sv, 6, 3) = span M(0)", center("sv", 6, 3) == [Element.of(Sym.M(0))]),
    ])


def test_criterion_3_derivations():
    checks = []
    for n in range(-6, 7):
        if n:
            checks.append((f"H1 degree {n}/2 = 0", solve_der_sv0(n).h1 == 0))
    for m in range(-4, 5):
        for n in range(-4, 5):
            if m != n:
                checks.append((f"Hom({m},{n}) = 0", solve_hom_sv0(m, n).dimension == 0))
    sols = solve_degree_zero_window("svt", 8, 4)
    checks.append(("degree-0 window space has dimension 3", len(sols) == 3))
    for i, D in enumerate(sols):
        X = match_inner("svt", D, 8, 4)
        checks.append((f"solution {i} is ad X with X = aL0 - c/2 M0 + (b-a/2) N0",
                       bool(X) and X == inner_generator(params_of(D))))
        fam = degree_zero_derivation(params_of(D), 4)
        checks.append((f"solution {i} lies in the family",
                       all(D.image(s) == fam.image(s) for s in D.domain)))
    record(3, checks)


def test_criterion_4_cohomology():
    checks = []
    phis = [named_cocycle(i) for i in (1, 2, 3)]
    for K in (6, 7, 8):
        res = solve_h2_window("svt", K)
        checks.append((f"dim H2(svt, K={K}) = 3", res.dimension == 3))
        checks.append((f"phi1, phi2, phi3 span the classes at K={K}", res.spans_classes(phis)))
    checks.append(("dim H2(witt, 6) = 1", solve_h2_window("witt", 6).dimension == 1))
    for i in (2, 3):
        sign, f = ALTERNATIVE_WITNESS[i]
        target = phis[i - 1] if sign == 1 else -phis[i - 1]
        rep = check_cohomologous("svt", alternative_cocycle(i), target, LinearFunctional(f), 8)
        checks.append((f"c{i} cohomologous to {'' if sign == 1 else '-'}phi{i}", rep.ok))
    record(4, checks)


def test_criterion_5_leibniz_and_forms():
    checks = [("invariant forms svt K=6 = 0", solve_invariant_forms("svt", 6).dimension == 0)]
    for K in (6, 8):
        res = solve_leibniz_h2_window("svt", K)
        checks.append((f"HL2(svt, K={K}) = 3", res.dimension == 3))
        checks.append((f"antisymmetric representatives at K={K}", res.antisymmetric_representable))
    record(5, checks)


def test_criterion_6_extension():
    rel = verify_lemma56(8)
    failed = {k: v for k, v in rel.info["relations"].items() if v["failed"]}
    table_rep = verify_primed_table(6)
    f = LinearFunctional(NORMALIZATION_FUNCTIONAL)
    coh = check_cohomologous("svt", primed_phi2(), named_cocycle(2), f, 8)
    record(6, [
        (f"wedge relations at K=8 ({len(rel.violations)} of {rel.checked} outside J: "
         + ", ".join(f"{k} {v['failed']}/{v['checked']}" for k, v in failed.items()) + ")",
         rel.ok),
        (f"primed table at K=6 ({len(table_rep.violations)} mismatches)", table_rep.ok),
        ("central-term normalisations cohomologous via f(N0) = -2", coh.ok),
    ])


def test_criterion_7_automorphisms():
    checks = []
    rng = random.Random(2024)
    tuples = [random_params(rng) for _ in range(50)]
    hom_bad = [str(p) for p in tuples if not check_homomorphism("svt", lambda x, p=p: apply_aut(p, x), 5).ok]
    checks.append(("apply_aut homomorphism on 50 tuples at K=5", not hom_bad))
    basis = table("svt").basis(5)
    pairs = sample_pairs(100, seed=11)
    comp_bad = [
        (str(p), str(q)) for p, q in pairs
        if same_map(lambda x: apply_aut(compose(p, q), x), lambda x: apply_aut(p, apply_aut(q, x)), basis)
    ]
    checks.append(("compose = functional composition on 100 pairs", not comp_bad))
    p1, p2 = AutParams.parse("-1,1,2,1"), AutParams.parse("1,2,3,1")
    checks.append(("compose example", str(compose(p1, p2)) == "-1,3,6,1/4"))
    checks.append(("inverse composes to identity",
                   all(compose(p, inverse(p)) == IDENTITY == compose(inverse(p), p) for p, _ in pairs)))
    checks.append(("conjugation relations and factorization", verify_group_relations(pairs[:30], 5).ok))
    checks.append(("nilpotency identities", check_nilpotency(5).ok))
    word = [(Fraction(1, 2), Sym.Y(1)), (-2, Sym.Y(-1)), (3, Sym.Y(0)), (1, Sym.Y(2))]
    checks.append(("coset normal form operator-exact", verify_coset_normal_form(word, 5).ok))
    mixed = [(1, Sym.Y(0)), (Fraction(2, 3), Sym.M(-2)), (-1, Sym.Y(-2))]
    checks.append(("inner word homomorphism",
                   check_homomorphism("svt", lambda x: apply_inner(mixed, x), 5).ok))
    lift_bad = []
    for p in tuples[:10]:
        if not check_homomorphism(PRIMED_TABLE, lambda x, p=p: lift_aut(p, x), 5).ok:
            lift_bad.append(f"primed {p}")
        if not check_homomorphism("svhat", lambda x, p=p: lift_aut_svhat(p, x), 5).ok:
            lift_bad.append(f"svhat {p}")
        if not check_lift_projection(p, 5).ok:
            lift_bad.append(f"projection {p}")
    checks.append(("lift homomorphism and projection on 10 tuples", not lift_bad))
    checks.append(("lift fixed by generator images", check_lift_uniqueness(tuples[0], 5).ok))
    record(7, checks)


def _random_expression(rng):
    terms = []
    for _ in range(rng.randint(1, 5)):
        kind = rng.choice("LMNYC")
        if kind == "Y":
            gen = f"Y({2 * rng.randint(-6, 5) + 1}/2)"
        elif kind == "C":
            gen = rng.choice(["CL", "CLN", "CN"])
        else:
            gen = f"{kind}({rng.randint(-6, 6)})"
        coeff = rng.choice(["", f"{rng.randint(1, 9)}*", f"{rng.randint(1, 9)}/{rng.randint(1, 9)}*"])
        terms.append(coeff + gen)
    out = ("-" if rng.random() < 0.3 else "") + terms[0]
    for t in terms[1:]:
        out += rng.choice([" + ", " - ", "+", "-"]) + t
    return out


def test_criterion_8_cli():
    checks = []
    unstable = []
    for name, argv in sorted(CASES.items()):
        first = dumps(dispatch(argv)[0])
        second = dumps(dispatch(argv)[0])
        if not (first == second == (GOLDEN / f"{name}.json").read_text()):
            unstable.append(name)
    checks.append((f"{len(CASES)} golden reports byte-stable", not unstable))
    rng = random.Random(8)
    bad = []
    for _ in range(1000):
        text = _random_expression(rng)
        x = parse_element(text)
        printed = format_element(x)
        if parse_element(printed) != x or format_element(parse_element(printed)) != printed:
            bad.append(text)
    checks.append(("parser round trip on 1000 expressions", not bad))
    record(8, checks)
