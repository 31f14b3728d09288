import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from forge.catalog import DL01, algebra, algebras, chain, kleene_chain3
from forge.finalg import (
    Congruence, FiniteAlgebra, Homomorphism, compose, enumerate_homs, evaluate, find_isomorphism,
    identity_hom, kernel, naive_homs, product, quotient, satisfies_quasi_equation,
    subalgebra_generated, trivial_algebra,
)
from forge.terms import Equation, QuasiEquation, Signature, parse_equation, parse_term

import oracles

MONO = Signature("M", (("f", 1), ("g", 2), ("c", 0)))


@st.composite
def small_algebras(draw, sig=MONO, max_size=3):
    n = draw(st.integers(1, max_size))
    tables = {}
    for sym, ar in sig.ops:
        flat = draw(st.lists(st.integers(0, n - 1), min_size=n ** ar, max_size=n ** ar))
        tables[sym] = np.asarray(flat, dtype=np.int64).reshape((n,) * ar)
    return FiniteAlgebra(sig, n, tables)


def test_evaluate_examples():
    two = algebra("DL01:chain2")
    assert evaluate(two, parse_term("meet(x0, x1)", DL01), {0: 1, 1: 0}) == 0
    assert evaluate(two, parse_term("x0"), {0: 1}) == 1
    k3 = kleene_chain3()
    assert evaluate(k3, parse_term("neg(x0)"), {0: 1}) == 1


def test_evaluate_missing_variable():
    with pytest.raises(KeyError):
        evaluate(algebra("DL01:chain2"), parse_term("meet(x0, x1)"), {0: 1})


def test_satisfaction_examples():
    k3 = kleene_chain3()
    lhs = parse_term("meet(meet(x0, neg(x0)), join(x1, neg(x1)))")
    assert satisfies_quasi_equation(k3, QuasiEquation((), Equation(lhs, parse_term("meet(x0, neg(x0))"))))
    same = parse_equation("x0 = x1")
    assert satisfies_quasi_equation(algebra("DL01:chain2"), QuasiEquation((same,), same))
    sq = algebra("DL01:square")
    comp = (parse_equation("meet(x0, x1) = bot"), parse_equation("join(x0, x1) = top"))
    assert satisfies_quasi_equation(sq, QuasiEquation(comp, parse_equation("x0 = x0")))
    assert not satisfies_quasi_equation(sq, QuasiEquation(comp, parse_equation("x0 = x1")))


def test_table_validation():
    with pytest.raises(ValueError):
        FiniteAlgebra(DL01, 2, {"meet": np.zeros((2, 2)), "join": np.zeros((2, 2)), "bot": 0})
    with pytest.raises(ValueError):
        FiniteAlgebra(DL01, 2, {"meet": np.full((2, 2), 2), "join": np.zeros((2, 2)),
                                "bot": 0, "top": 1})
    with pytest.raises(ValueError):
        FiniteAlgebra(DL01, 0, {"meet": np.zeros((0, 0)), "join": np.zeros((0, 0)),
                                "bot": 0, "top": 0})


def test_empty_algebra_without_constants():
    sig = Signature("U", (("f", 1),))
    E = FiniteAlgebra(sig, 0, {"f": np.zeros(0, dtype=np.int64)})
    assert E.size == 0
    assert len(enumerate_homs(E, FiniteAlgebra(sig, 1, {"f": [0]}))) == 1


def test_hom_examples():
    two = algebra("DL01:chain2")
    assert [h.map for h in enumerate_homs(two, two)] == [(0, 1)]
    from forge.catalog import battery
    from forge.classes import free_algebra
    F = free_algebra(battery("DL01"), 1).algebra
    assert len(enumerate_homs(F, two)) == 2
    for name, A in algebras().items():
        assert len(enumerate_homs(A, trivial_algebra(A.sig))) == 1


def test_homs_sorted_and_verified():
    A, B = algebra("DL01:chain4"), algebra("DL01:square")
    maps = [h.map for h in enumerate_homs(A, B)]
    assert maps == sorted(maps)
    assert maps == oracles.homs(A, B)


@given(small_algebras(), small_algebras())
def test_enumerate_homs_matches_naive(A, B):
    got = [h.map for h in enumerate_homs(A, B)]
    assert got == naive_homs(A, B) == oracles.homs(A, B)


@pytest.mark.parametrize("a,b", [(a, b) for a in ["DL01:chain2", "DL01:chain3", "DL01:square",
                                                  "DL01:chain4", "KA:chain3", "HA:chain3", "HA:bool4"]
                                 for b in ["DL01:chain2", "DL01:chain3", "DL01:square", "DL01:chain4",
                                           "KA:chain3", "HA:chain3", "HA:bool4"]
                                 if a.split(":")[0] == b.split(":")[0]])
def test_catalog_homs_match_oracle(a, b):
    A, B = algebra(a), algebra(b)
    assert [h.map for h in enumerate_homs(A, B)] == oracles.homs(A, B)


def test_non_hom_rejected():
    two, three = algebra("DL01:chain2"), algebra("DL01:chain3")
    with pytest.raises(ValueError, match="does not preserve"):
        Homomorphism(two, three, (0, 1))


def test_product_examples():
    P, projs = product([], DL01)
    assert P.size == 1 and projs == []
    two = algebra("DL01:chain2")
    sq, projs = product([two, two])
    assert sq.size == 4
    assert oracles.homs(sq, two) == sorted(p.map for p in enumerate_homs(sq, two))
    assert len(projs) == 2 and all(isinstance(p, Homomorphism) for p in projs)
    with pytest.raises(ValueError):
        product([two, kleene_chain3()])


def test_subalgebra_examples():
    sq = algebra("DL01:square")
    S, inc = subalgebra_generated(sq, [2])          # (0,1)
    assert S.size == 3 and sorted(inc.map) == [0, 2, 3]
    S, inc = subalgebra_generated(sq, range(4))
    assert S.size == 4 and inc.map == (0, 1, 2, 3)
    S, _ = subalgebra_generated(kleene_chain3(), [1])
    assert S.size == 3


def test_subalgebra_discovery_order():
    S, inc = subalgebra_generated(algebra("DL01:chain4"), [2, 1])
    assert inc.map[:2] == (2, 1)


def test_quotient_examples():
    A = algebra("DL01:chain3")
    Q, proj = quotient(A, Congruence.identity(A))
    assert find_isomorphism(Q, A) is not None
    Q, proj = quotient(A, Congruence.total(A))
    assert Q.size == 1 and proj.is_surjective
    with pytest.raises(ValueError):
        Congruence(A, (0, 1, 0))     # not compatible with meet


def test_quotient_of_free_lattice():
    from forge.catalog import battery
    from forge.classes import cgK, free_algebra
    F = free_algebra(battery("DL01"), 2)
    pair = (F.element_of(parse_term("meet(x0, x1)")), F.element_of(parse_term("bot")))
    theta = cgK(battery("DL01"), F.algebra, [pair])
    Q, proj = quotient(F.algebra, theta)
    assert Q.size == 5
    assert [b for b in theta.blocks() if len(b) > 1] == [sorted(pair)]


def test_kernel_examples():
    A = algebra("DL01:chain3")
    assert kernel(identity_hom(A)) == Congruence.identity(A)
    T = trivial_algebra(DL01)
    assert kernel(Homomorphism(A, T, (0, 0, 0))).num_blocks == 1


def test_first_isomorphism_theorem():
    for (na, A), (nb, B) in itertools.product(algebras().items(), repeat=2):
        if A.sig != B.sig or A.size > 8 or B.size > 8:
            continue
        for h in enumerate_homs(A, B)[:4]:
            image, _ = subalgebra_generated(B, sorted(set(h.map)))
            Q, _ = quotient(A, kernel(h))
            assert find_isomorphism(Q, image) is not None


def test_compose_and_identity():
    A, B = algebra("DL01:chain4"), algebra("DL01:chain2")
    f = enumerate_homs(A, B)[1]
    assert compose(f, identity_hom(A)) == f
    assert compose(identity_hom(B), f) == f


def test_chain_tables():
    c = chain(5)
    assert c.op("meet", 3, 1) == 1 and c.op("join", 3, 1) == 3
    assert c.constant("bot") == 0 and c.constant("top") == 4


def test_tables_are_read_only():
    A = algebra("DL01:chain2")
    with pytest.raises(ValueError):
        A.tables["meet"][0, 0] = 1
