"""
Matrix powers and idempotent terms
==================================

A matrix power keeps hom-sets intact once the language is rich enough,
and an idempotent, invertible unary term sigma carves out an algebra of
sigma-fixed points with the same homomorphisms.
"""
import itertools

from forge.catalog import DL01, KA, algebras_of, battery, kleene_chain3
from forge.finalg import count_homs
from forge.matpow import (
    full_language, matrix_power, pointwise_language, sigma_check, sigma_construction,
)
from forge.terms import parse_term, print_term

algs = algebras_of("DL01")[:4]

# pointwise operations alone add homomorphisms (coordinate swaps, ...)
for lang_name, L in [("pointwise", pointwise_language(DL01, 2)), ("full", full_language(DL01, 2))]:
    diffs = 0
    for (na, A), (nb, B) in itertools.product(algs, repeat=2):
        diffs += count_homs(A, B) != count_homs(matrix_power(A, L), matrix_power(B, L))
    print(f"{lang_name} language: {diffs} of {len(algs) ** 2} hom counts change")

# sigma checks
cases = [("DL01", "x0"), ("DL01", "meet(x0, bot)"), ("KA", "neg(neg(x0))"), ("KA", "neg(x0)")]
for cls, text in cases:
    K = battery(cls)
    sigma = parse_term(text, K.sig)
    r = sigma_check(K, sigma)
    w = print_term(r.witness) if r.witness is not None else "-"
    print(f"{cls} sigma={text}: idempotent {r.idempotent}, invertible {r.invertible}, witness {w}")

S = sigma_construction(kleene_chain3(), battery("KA"), parse_term("neg(neg(x0))", KA))
print("A(sigma) on the Kleene 3-chain has", S.size, "elements")
