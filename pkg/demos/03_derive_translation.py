"""
Reading a translation off a left adjoint
========================================

Going the other way: given where a left adjoint sends the free algebras,
recover a context (generators of the kernel of pi1) and a term for every
operation (preimages of F(psi) applied to the generators).
"""
from forge.catalog import battery, kleene_functor_data, translation
from forge.classes import cgK, free_algebra
from forge.formats import format_translation
from forge.xlate import derive_translation

data = kleene_functor_data()
print("pi1: free DL01 on", data.kappa, "generators ->", data.pi1.target.size, "elements")
for sym, f in data.ops:
    print(f"F({sym}): {f.source.size} -> {f.target.size} elements")

ct = derive_translation(battery("KA"), data)
print(format_translation(ct), end="")

# the derived context and the hand-written one generate the same congruence
Y = battery("DL01")
F = free_algebra(Y, 2)


def congruence(eqs):
    return cgK(Y, F.algebra, [(F.element_of(e.lhs), F.element_of(e.rhs)) for e in eqs])


catalog_ct = translation("kleene")[0]
print("same congruence as the catalog context:",
      congruence(ct.context) == congruence(catalog_ct.context))
