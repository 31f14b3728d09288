"""
Kleene algebras from pairs of lattice elements
==============================================

A bounded distributive lattice A gives a Kleene algebra on the pairs
(a, b) with a & b = 0, negation swapping the coordinates.  This walk-through
builds that construction as a matrix power followed by a solution subalgebra,
then checks the adjunction numerically.
"""
from forge.adjoint import apply_left_adjoint, apply_right_adjoint, verify_homset_bijection
from forge.catalog import DL01, algebra, battery, right_adjoint
from forge.classes import Presentation, free_algebra, parse_presentation, present
from forge.terms import print_term

# free algebras on few generators are small enough to list
for cls, n in [("DL01", 2), ("KA", 1)]:
    F = free_algebra(battery(cls), n)
    print(f"free {cls} on {n}:", ", ".join(print_term(t) for t in F.terms))

# killing meet(x0, x1) leaves five elements
Q, proj = present(battery("DL01"), parse_presentation("2; meet(x0, x1) = bot", DL01))
print("quotient size", Q.size, "labels", [Q.label(i) for i in range(Q.size)])

# the right adjoint: square the lattice, keep the disjoint pairs
spec = right_adjoint("kleene")
print("theta:", spec.theta.describe())
for name in ["DL01:chain2", "DL01:chain3", "DL01:square"]:
    G = apply_right_adjoint(spec, algebra(name))
    print(f"G({name}) has {G.size} elements:", [G.label(i) for i in range(G.size)])

# the left adjoint of the free Kleene algebra on one generator
A, P = apply_left_adjoint(spec, Presentation(1))
print("F(free KA on 1) is presented by", P, "and has", A.size, "elements")

# hom(F(P), B) and hom(P, G(B)) have the same size
for name in ["DL01:chain2", "DL01:chain3", "DL01:square"]:
    r = verify_homset_bijection(spec, Presentation(1), algebra(name))
    print(f"{name}: {r.count_left} = {r.count_right}", "ok" if r else "MISMATCH")
