"""Acceptance criteria 1-9, one test each.

Every test records a one-line PASS/FAIL verdict, printed in the terminal
summary, and then asserts it.
"""
import time

from conftest import ACCEPTANCE, SMALL, group
from singular_bruhat import (
    SinglestepExpr,
    coset_of,
    enumerate_cosets,
    enumerate_paths,
    forward_path,
    identity_coset,
    run_suite,
    term_set,
)
from singular_bruhat.paths import concat_paths

RANK2 = [n for n in SMALL if group(n).rank == 2]


def cap_for(name):
    return 6 if group(name).rank <= 2 else 5


def suite(names, checks, cap=cap_for):
    """Run ``checks`` on each group; returns (failing descriptions, tuples checked, seconds)."""
    start = time.perf_counter()
    bad, tuples = [], 0
    for name in names:
        for r in run_suite(group(name), cap(name), checks):
            tuples += r.universe
            if not r.passed:
                bad.append(f"{r.name}@{name}: {r.failure_count} failures, first: {r.failures[0]}")
    return bad, tuples, time.perf_counter() - start


def record(k, title, ok, detail):
    ACCEPTANCE[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    print(ACCEPTANCE[k])
    return ok


def test_criterion_1_bruhat_equivalences():
    bad, n, secs = suite(SMALL, ["bruhat-min-max", "bruhat-reduced-term", "bruhat-any-expression"])
    ok = not bad and secs < 60
    assert record(1, "Bruhat equivalences (1)-(4), all I,J, all coset pairs", ok,
                  f"{n} tuples, {secs:.1f}s, budget 60s"), bad


def test_criterion_2_term_is_downset():
    bad, n, secs = suite(SMALL, ["term-downset"])
    assert record(2, "Term(I.) = {<= p} for every capped expression", not bad, f"{n} expressions, {secs:.1f}s"), bad


def test_criterion_3_concatenation():
    bad, n, secs = suite(["A2", "B2", "A3"], ["concat-monotone", "concat-strict"])
    ok = not bad and secs < 300
    assert record(3, "concatenation compatibility (<= and strict <)", ok,
                  f"{n} tuples, {secs:.1f}s, budget 300s"), bad


def test_criterion_4_lifting():
    bad, n, secs = suite(["A2", "B2", "A3"], ["lifting-product", "lifting-factor"])
    assert record(4, "lifting witnesses exist, both chiralities", not bad, f"{n} tuples, {secs:.1f}s"), bad


def test_criterion_5_projection():
    bad, n, secs = suite(["A3", "B3"], ["projection-monotone", "projection-downsets"])
    assert record(5, "quotient maps are monotone and preserve down-sets", not bad, f"{n} tuples, {secs:.1f}s"), bad


def test_criterion_6_length_and_forward_path():
    checks = ["length-monotone", "unique-forward-path"]
    bad, n, secs = suite(SMALL, checks)
    start = time.perf_counter()
    bad_h3, n_h3, _ = suite(["H3"], checks)
    h3_secs = time.perf_counter() - start
    ok = not bad and not bad_h3 and h3_secs < 600
    assert record(6, "coset length strictly monotone; unique forward path; listed groups and H3", ok,
                  f"{n + n_h3} tuples, {secs:.1f}s + H3 {h3_secs:.1f}s, H3 budget 600s"), bad + bad_h3


def test_criterion_7_oracles():
    bad, n, secs = suite(SMALL + ["H3"], ["bruhat-subword", "demazure-assoc"])
    assert record(7, "Bruhat recursion vs subword oracle; Demazure associativity", not bad,
                  f"{n} tuples, {secs:.1f}s"), bad


def regressions():
    """The worked examples, each returning True when reproduced exactly."""
    A2 = group("A2")
    s, t = 0, 1
    E, I, Is = frozenset(), frozenset({s}), frozenset({s, t})
    out = {}

    one, s_, sts = A2.index_of((s, s)), A2.index_of((s,)), A2.index_of((s, t, s))
    out["1 = ss < sts"] = one == A2.identity and A2.bruhat_leq(one, sts) and one != sts
    out["s < sts"] = A2.bruhat_leq(s_, sts) and s_ != sts

    whole = term_set(A2, SinglestepExpr([I, Is, I]))
    halves = {p * q for p in term_set(A2, SinglestepExpr([I, Is])) for q in term_set(A2, SinglestepExpr([Is, I]))}
    out["Term([I,Is,I]) vs halves"] = (whole == set(enumerate_cosets(A2, I, I))
                                       and halves == {coset_of(A2, A2.longest_element(Is), I, I)}
                                       and halves < whole)

    paths = enumerate_paths(A2, SinglestepExpr([E, I, E]))
    up = enumerate_paths(A2, SinglestepExpr([E, I]))
    down = enumerate_paths(A2, SinglestepExpr([I, E]))
    joined = {concat_paths(x, y) for x in up for y in down}
    out["two paths for [0,s,0]"] = (len(up) == len(down) == 1 and len(paths) == 2
                                    and [p for p in paths if p in joined] == [forward_path(A2, SinglestepExpr([E, I, E]))])

    # r the unique (I,S)-coset: p*q'*r = p*q*r although q' < q
    r = coset_of(A2, 0, I, Is)
    p = identity_coset(A2, I)
    lo, hi = enumerate_cosets(A2, I, I)
    out["p*q'*r = p*q*r"] = lo < hi and (p * lo) * r == (p * hi) * r
    return out


def test_criterion_8_worked_examples():
    results = regressions()
    bad, n, secs = suite(["A2", "B2", "A3"], ["concat-absorbing"])
    ok = all(results.values()) and not bad
    failed = [k for k, v in results.items() if not v] + bad
    assert record(8, "worked-example regressions", ok,
                  f"{len(results)} examples + {n} absorbing tuples"), failed


def test_criterion_9_structure():
    checks = ["coset-structure", "rex-search", "expr-length-agreement", "reduced-iff-length"]
    bad, n, secs = suite(SMALL, checks)
    assert record(9, "coset length, extremes, size; expression length; reducedness", not bad,
                  f"{n} tuples, {secs:.1f}s"), bad
