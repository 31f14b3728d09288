import itertools

import pytest

from forge.catalog import DL01, HA, IA, algebra, algebras_of, right_adjoint
from forge.finalg import (
    Homomorphism, compose, enumerate_homs, find_isomorphism, identity_hom, product,
)
from forge.matpow import MatrixLanguage, MatrixOp, matrix_power, pointwise_language
from forge.terms import App, Var, parse_term
from forge.thetasub import (
    ThetaSpec, compatibility_failure, is_compatible, solutions, theta_sub, theta_sub_hom,
)

import oracles


def kleene_spec():
    return right_adjoint("kleene").theta


def unary_lang(base, ops, name=None):
    return MatrixLanguage(base, 1, tuple(MatrixOp(n, a, 1, (parse_term(t, base),)) for n, a, t in ops),
                          name=name)


def regular_spec():
    L = unary_lang(HA, [("meet", 2, "meet(x0, x1)"), ("join", 2, "neg(neg(join(x0, x1)))"),
                        ("imp", 2, "imp(x0, x1)"), ("neg", 1, "neg(x0)"),
                        ("bot", 0, "bot"), ("top", 0, "top")], "BA")
    return ThetaSpec((((Var(0),), (parse_term("neg(neg(x0))", HA),)),), L)


def opens_spec():
    L = unary_lang(IA, [("meet", 2, "meet(x0, x1)"), ("join", 2, "join(x0, x1)"),
                        ("imp", 2, "box(imp(x0, x1))"), ("neg", 1, "box(neg(x0))"),
                        ("bot", 0, "bot"), ("top", 0, "top")], "HA")
    return ThetaSpec((((Var(0),), (parse_term("box(x0)", IA),)),), L)


def test_spec_validation():
    L = pointwise_language(DL01, 2)
    with pytest.raises(ValueError):
        ThetaSpec((((Var(0),), (Var(0),)),), L)
    with pytest.raises(ValueError, match="one variable"):
        ThetaSpec((((Var(0), Var(2)), (Var(0), Var(1))),), L)
    s = ThetaSpec((((Var(0), Var(1)), (Var(1), Var(0))),) * 2, L)
    assert len(s.theta) == 1 and s.exponent == 2
    assert s.describe() == ["<x0, x1> = <x1, x0>"]


def test_kleene_spec_is_compatible():
    spec = kleene_spec()
    assert is_compatible([A for _, A in algebras_of("DL01")], spec)


def test_empty_theta_is_compatible():
    L = pointwise_language(DL01, 2)
    spec = ThetaSpec((), L)
    A = algebra("DL01:chain3")
    assert is_compatible(A, spec)
    S, inc = theta_sub(A, spec)
    assert S.size == 9 and inc == tuple(range(9))


def test_incompatibility_reports_constant():
    L = unary_lang(DL01, [("top", 0, "top")])
    spec = ThetaSpec((((Var(0),), (App("bot"),)),), L)
    bad = compatibility_failure([algebra("DL01:chain2")], spec)
    assert bad is not None and bad.op == "top" and bad.assignment == ()
    assert not is_compatible(algebra("DL01:chain2"), spec)
    with pytest.raises(ValueError, match="top"):
        theta_sub(algebra("DL01:chain2"), spec)


def test_kleene_on_two_chain():
    S, inc = theta_sub(algebra("DL01:chain2"), kleene_spec())
    assert inc == (0, 1, 2)             # (0,0), (1,0), (0,1)
    assert find_isomorphism(S, algebra("KA:chain3").with_labels(None)) is not None


def test_theta_sub_accepts_the_power():
    spec = kleene_spec()
    P = matrix_power(algebra("DL01:chain3"), spec.lang)
    assert theta_sub(P, spec)[1] == theta_sub(algebra("DL01:chain3"), spec)[1]
    assert solutions(P, spec) == list(theta_sub(P, spec)[1])


def test_regular_elements_of_three_chain():
    S, inc = theta_sub(algebra("HA:chain3"), regular_spec())
    assert inc == (0, 2)
    assert find_isomorphism(S, algebra("BA:bool2")) is not None


def test_opens_of_interior_algebra():
    S, inc = theta_sub(algebra("IA:op4"), opens_spec())
    assert S.size == 3
    assert find_isomorphism(S, algebra("HA:chain3")) is not None


def test_empty_solution_set_without_constants():
    L = unary_lang(DL01, [("meet", 2, "meet(x0, x1)")])
    spec = ThetaSpec((((Var(0),), (parse_term("join(x0, top)", DL01),)),
                      ((Var(0),), (parse_term("meet(x0, bot)", DL01),))), L)
    S, inc = theta_sub(algebra("DL01:chain2"), spec)
    assert S.size == 0 and inc == ()


def test_restricted_hom_examples():
    spec = kleene_spec()
    A = algebra("DL01:chain3")
    assert theta_sub_hom(identity_hom(A), spec) == identity_hom(theta_sub(A, spec)[0])
    f = Homomorphism(A, algebra("DL01:chain2"), (0, 1, 1))
    g = theta_sub_hom(f, spec)
    assert (g.source.size, g.target.size) == (5, 3)


def test_functoriality():
    spec = kleene_spec()
    algs = [A for _, A in algebras_of("DL01") if A.size <= 6]
    for A, B, C in itertools.product(algs, repeat=3):
        for f in enumerate_homs(A, B)[:3]:
            for g in enumerate_homs(B, C)[:3]:
                assert theta_sub_hom(compose(g, f), spec) == compose(
                    theta_sub_hom(g, spec), theta_sub_hom(f, spec))


@pytest.mark.parametrize("which", ["kleene", "regular", "opens"])
def test_products_preserved(which):
    spec = {"kleene": kleene_spec, "regular": regular_spec, "opens": opens_spec}[which]()
    sig = spec.lang.base.name
    algs = [A for _, A in algebras_of(sig) if A.size <= 4]
    for A, B in itertools.product(algs, repeat=2):
        AB, _ = product([A, B])
        left, _ = theta_sub(AB, spec)
        right, _ = product([theta_sub(A, spec)[0], theta_sub(B, spec)[0]])
        assert find_isomorphism(left, right) is not None


def test_solutions_monotone():
    L = pointwise_language(DL01, 2)
    eqs = [((parse_term("meet(x0, x1)", DL01),) * 2, (App("bot"),) * 2),
           ((Var(0), Var(1)), (Var(1), Var(0))),
           ((parse_term("join(x0, x1)", DL01),) * 2, (App("top"),) * 2)]
    A = algebra("DL01:chain2x3")
    for r in range(len(eqs) + 1):
        for sub in itertools.combinations(eqs, r):
            for extra in eqs:
                small = set(solutions(A, ThetaSpec(sub, L)))
                big = set(solutions(A, ThetaSpec(sub + (extra,), L)))
                assert big <= small


@pytest.mark.parametrize("name", ["DL01:chain2", "DL01:chain3", "DL01:square", "DL01:chain4",
                                  "DL01:chain2x3", "DL01:cube"])
def test_kleene_solution_count_matches_brute_force(name):
    A = algebra(name)
    elems, _ = oracles.kleene_pairs(A)
    assert len(solutions(A, kleene_spec())) == len(elems)
