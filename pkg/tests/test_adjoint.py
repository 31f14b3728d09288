import itertools

import pytest

from forge.adjoint import (
    apply_left_adjoint, apply_right_adjoint, apply_right_adjoint_hom, finiteness_report,
    right_adjoint_spec, verify_homset_bijection, verify_sigma_iso,
)
from forge.catalog import (
    TRANSLATIONS, algebra, algebras_of, axioms, presentations, right_adjoint, translation,
)
from forge.classes import Presentation, free_algebra, parse_presentation, presented
from forge.finalg import (
    Homomorphism, compose, enumerate_homs, find_isomorphism, identity_hom, trivial_algebra,
)
from forge.matpow import encode, matrix_power
from forge.terms import parse_equation
from forge.thetasub import theta_sub


def test_spec_shape():
    spec = right_adjoint("kleene")
    assert spec.lang.exponent == 2
    assert spec.lang.signature == spec.X.sig
    assert spec.theta.describe() == ["<meet(x0, x1), meet(x0, x1)> = <bot, bot>"]
    ct, X, Y = translation("kleene")
    with pytest.raises(ValueError):
        right_adjoint_spec(ct, Y, X)


@pytest.mark.parametrize("name,source,expected", [
    ("kleene", "DL01:chain2", "KA:chain3"),
    ("godel", "IA:op4", "HA:chain3"),
    ("kolmogorov", "HA:chain3", "BA:bool2"),
])
def test_right_adjoint_examples(name, source, expected):
    G = apply_right_adjoint(right_adjoint(name), algebra(source))
    assert find_isomorphism(G, algebra(expected)) is not None


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_right_adjoint_images_satisfy_source_laws(name):
    spec = right_adjoint(name)
    for _, B in algebras_of(spec.Y.sig.name):
        G = apply_right_adjoint(spec, B)
        assert G.sig == spec.X.sig and G.size >= 1


def test_right_adjoint_rejects_wrong_signature():
    with pytest.raises(ValueError):
        apply_right_adjoint(right_adjoint("kleene"), algebra("KA:chain3"))


def test_right_adjoint_hom_examples():
    spec = right_adjoint("kleene")
    A = algebra("DL01:chain3")
    assert apply_right_adjoint_hom(spec, identity_hom(A)) == identity_hom(apply_right_adjoint(spec, A))
    f = Homomorphism(A, algebra("DL01:chain2"), (0, 1, 1))
    g = apply_right_adjoint_hom(spec, f)
    assert (g.source.size, g.target.size) == (5, 3)


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_right_adjoint_hom_functorial(name):
    spec = right_adjoint(name)
    algs = [B for _, B in algebras_of(spec.Y.sig.name) if B.size <= 4]
    for A, B, C in itertools.product(algs, repeat=3):
        for f in enumerate_homs(A, B)[:2]:
            for g in enumerate_homs(B, C)[:2]:
                assert apply_right_adjoint_hom(spec, compose(g, f)) == compose(
                    apply_right_adjoint_hom(spec, g), apply_right_adjoint_hom(spec, f))


def test_left_adjoint_examples():
    kleene = right_adjoint("kleene")
    alg, Q = apply_left_adjoint(kleene, Presentation(1))
    assert alg.size == 5
    assert Q == Presentation(2, (parse_equation("meet(x0, x1) = bot", kleene.Y.sig),))
    alg, Q = apply_left_adjoint(kleene, Presentation(0))
    assert alg.size == 2 and Q == Presentation(0)
    kol = right_adjoint("kolmogorov")
    alg, Q = apply_left_adjoint(kol, Presentation(1))
    assert Q == Presentation(1, (parse_equation("x0 = neg(neg(x0))", kol.Y.sig),))
    assert alg.size == presented(kol.Y, Q).algebra.size


@pytest.mark.parametrize("name,expected", [("DL01:chain2", 3), ("DL01:chain3", 5),
                                           ("DL01:square", 9)])
def test_homset_examples(name, expected):
    r = verify_homset_bijection(right_adjoint("kleene"), Presentation(1), algebra(name))
    assert (r.count_left, r.count_right) == (expected, expected) and r


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_homset_terminal_target(name):
    spec = right_adjoint(name)
    r = verify_homset_bijection(spec, Presentation(1), trivial_algebra(spec.Y.sig))
    assert (r.count_left, r.count_right, r.bijective) == (1, 1, True)


@pytest.mark.parametrize("name", TRANSLATIONS)
def test_homset_all_catalog_pairs(name):
    spec = right_adjoint(name)
    for (pn, P), (bn, B) in itertools.product(presentations(spec.X.sig.name),
                                             algebras_of(spec.Y.sig.name)):
        r = verify_homset_bijection(spec, P, B)
        assert r, (pn, bn, r)


@pytest.mark.parametrize("name,size", [("DL01:chain2", 3), ("DL01:chain3", 5)])
def test_sigma_iso_examples(name, size):
    r = verify_sigma_iso(right_adjoint("kleene"), algebra(name))
    assert r and r.size_hom == r.size_image == size


def test_sigma_iso_terminal():
    spec = right_adjoint("kleene")
    r = verify_sigma_iso(spec, trivial_algebra(spec.Y.sig))
    assert r and r.size_hom == 1


@pytest.mark.parametrize("name", ["kleene", "kolmogorov"])
def test_sigma_iso_catalog(name):
    spec = right_adjoint(name)
    for _, B in algebras_of(spec.Y.sig.name):
        assert verify_sigma_iso(spec, B)


def test_sigma_needs_functor_data():
    with pytest.raises(ValueError, match="functor data"):
        verify_sigma_iso(right_adjoint("godel"), algebra("IA:op4"))


def sigma_map(spec, B):
    """sigma_B as a dict from hom maps to elements of G(B), computed directly."""
    data = spec.data
    k = spec.ct.kappa
    gens = [data.pi1.map[g] for g in free_algebra(data.Y, k).generators]
    _, inclusion = theta_sub(matrix_power(B, spec.lang), spec.theta)
    where = {e: j for j, e in enumerate(inclusion)}
    return {h.map: where[int(encode([h.map[g] for g in gens], B.size))]
            for h in enumerate_homs(data.pi1.target, B)}


@pytest.mark.parametrize("name", ["kleene", "kolmogorov"])
def test_sigma_naturality(name):
    spec = right_adjoint(name)
    F1 = spec.data.pi1.target
    algs = [B for _, B in algebras_of(spec.Y.sig.name) if B.size <= 5]
    for B, C in itertools.product(algs, repeat=2):
        sb, sc = sigma_map(spec, B), sigma_map(spec, C)
        for g in enumerate_homs(B, C):
            Gg = apply_right_adjoint_hom(spec, g)
            for fmap, s in sb.items():
                post = compose(g, Homomorphism(F1, B, fmap))
                assert sc[post.map] == Gg.map[s]


def test_left_adjoint_preserves_quotients():
    spec = right_adjoint("kleene")
    sig = spec.X.sig
    base = parse_presentation("2; meet(x0, x1) = x0", sig)
    more = parse_presentation("2; meet(x0, x1) = x0; neg(x1) = x1", sig)
    _, Qb = apply_left_adjoint(spec, base)
    _, Qm = apply_left_adjoint(spec, more)
    assert set(Qb.relations) <= set(Qm.relations)
    small, big = presented(spec.Y, Qb), presented(spec.Y, Qm)
    q = small.hom_to(big.algebra, big.generators)
    assert q.is_surjective and big.algebra.size < small.algebra.size


def test_finiteness_reports():
    kleene = finiteness_report(right_adjoint("kleene"))
    assert kleene.kappa_finite and kleene.theta_finite
    assert str(kleene.witness) == "2; meet(x0, x1) = bot"
    assert str(finiteness_report(right_adjoint("godel")).witness) == "1; x0 = box(x0)"
    assert str(finiteness_report(right_adjoint("kolmogorov")).witness) == "1; x0 = neg(neg(x0))"


def test_axioms_recorded():
    assert right_adjoint("kleene").axioms == axioms("KA")
