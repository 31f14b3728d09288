"""
Three contextual translations
=============================

Each catalog translation sends source operations to tuples of target terms
and carries a context that picks out the admissible tuples.  We check the
translation conditions on the catalog batteries and look at what the
resulting right adjoint does to a few target algebras.
"""
from forge.adjoint import apply_right_adjoint, finiteness_report
from forge.catalog import TRANSLATIONS, algebras_of, axioms, right_adjoint, translation
from forge.formats import format_translation
from forge.xlate import (
    check_condition1, check_condition2, check_nontrivial, deductions_from_axioms,
)

for name in TRANSLATIONS:
    ct, X, Y = translation(name)
    print(f"== {name}: {X} -> {Y}")
    print(format_translation(ct), end="")

    ds = deductions_from_axioms(axioms(X.sig.name))
    passed = sum(check_condition1(ct, X, Y, d).passes for d in ds)
    print(f"condition 1 on {passed}/{len(ds)} axiom instances")
    print("condition 2:", bool(check_condition2(ct, Y)))
    nt = check_nontrivial(ct, Y)
    print("nontrivial:", nt.nontrivial, "free coordinate", nt.coordinate)
    print("presents F(free on 1) as", finiteness_report(right_adjoint(name)).witness)

    # sizes of G(B) for the target catalog
    spec = right_adjoint(name)
    sizes = {bn: apply_right_adjoint(spec, B).size for bn, B in algebras_of(Y.sig.name)}
    print("right adjoint sizes:", sizes)
    print()
