"""Command line interface: ``forge <command> ...``.

Verification commands print one ``CHECK <name> PASS|FAIL <details>`` line per
item and exit 1 if any item fails.  Usage errors exit 2.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable

from . import catalog
from .adjoint import (
    apply_left_adjoint, apply_right_adjoint, finiteness_report, right_adjoint_spec,
    verify_homset_bijection, verify_sigma_iso,
)
from .classes import ClassBattery, countermodel, free_algebra, parse_presentation
from .finalg import FiniteAlgebra, enumerate_homs, satisfies_quasi_equation
from .formats import (
    format_algebra, format_presentation, format_translation, parse_algebra,
    parse_language, parse_theta_spec, parse_translation, read_text,
)
from .matpow import full_language, matrix_power, pointwise_language
from .terms import parse_equation, print_term
from .thetasub import compatibility_failure, theta_sub
from .xlate import (
    FunctorData, check_condition1, check_condition2, check_nontrivial, deductions_from_axioms,
    derive_context, derive_translation, lift_term, translation_presentation,
)


class UsageError(Exception):
    pass


class Report:
    def __init__(self, out):
        self.out = out
        self.failed = False

    def check(self, name: str, ok: bool, details: str = ""):
        self.failed |= not ok
        line = f"CHECK {name} {'PASS' if ok else 'FAIL'}"
        self.out.write(line + (f" {details}" if details else "") + "\n")

    def line(self, text: str = ""):
        self.out.write(text + "\n")


# ----------------------------------------------------------------- resolving

def _algebra(ref: str) -> FiniteAlgebra:
    if ref in catalog.algebras():
        return catalog.algebra(ref)
    if os.path.exists(ref):
        return parse_algebra(read_text(ref))
    raise UsageError(f"no catalog algebra or file {ref!r}")


def _battery(ref: str) -> ClassBattery:
    if ref in catalog.SIGNATURES:
        return catalog.battery(ref)
    members = [_algebra(r) for r in ref.split(",")]
    try:
        return ClassBattery(members[0].sig, tuple(members), members[0].sig.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _translation(ref: str, source: str | None, target: str | None):
    if ref in catalog.TRANSLATIONS:
        ct, X, Y = catalog.translation(ref)
    elif os.path.exists(ref):
        ct = parse_translation(read_text(ref))
        X = catalog.battery(ct.tau.source.name)
        Y = catalog.battery(ct.tau.target.name)
    else:
        raise UsageError(f"no catalog translation or file {ref!r}")
    if source:
        X = _battery(source)
    if target:
        Y = _battery(target)
    return ct, X, Y


def _spec(args):
    if args.translation in catalog.TRANSLATIONS and not args.source_class and not args.target_class:
        return catalog.right_adjoint(args.translation)
    ct, X, Y = _translation(args.translation, args.source_class, args.target_class)
    axioms = catalog.axioms(X.sig.name) if X.sig.name in catalog.SIGNATURES else ()
    return right_adjoint_spec(ct, X, Y, axioms)


def _presentation(text: str, sig):
    try:
        return parse_presentation(text, sig)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _listing(A: FiniteAlgebra, out):
    out.write(format_algebra(A))


# ------------------------------------------------------------------ commands

def cmd_catalog_list(args, rep: Report):
    rep.line("signatures")
    for name, sig in catalog.SIGNATURES.items():
        rep.line(f"  {name} " + " ".join(f"{s}/{a}" for s, a in sig.ops))
    rep.line("algebras")
    for name, A in catalog.algebras().items():
        rep.line(f"  {name} size {A.size}")
    rep.line("batteries")
    for name in catalog.SIGNATURES:
        rep.line(f"  {name} " + str(catalog.battery(name)))
    rep.line("translations")
    for name in catalog.TRANSLATIONS:
        ct, X, Y = catalog.translation(name)
        rep.line(f"  {name} {X.sig.name} -> {Y.sig.name} kappa {ct.kappa}")


def cmd_alg_check(args, rep: Report):
    A = _algebra(args.algebra)
    rep.check("tables", True, f"size {A.size} signature {A.sig.name}")
    if A.sig.name in catalog.SIGNATURES and catalog.SIGNATURES[A.sig.name] == A.sig:
        for q in catalog.axioms(A.sig.name):
            rep.check(f"axiom[{q}]", satisfies_quasi_equation(A, q))


def cmd_alg_show(args, rep: Report):
    _listing(_algebra(args.algebra), rep.out)


def cmd_free(args, rep: Report):
    K = _battery(args.cls)
    F = free_algebra(K, args.gens)
    rep.line(f"# free algebra of {K} on {args.gens} generator(s): {F.algebra.size} elements")
    _listing(F.algebra, rep.out)


def cmd_homs(args, rep: Report):
    A, B = _algebra(args.source), _algebra(args.target)
    homs = enumerate_homs(A, B)
    rep.line(f"count {len(homs)}")
    if not args.count:
        for h in homs:
            rep.line(" ".join(map(str, h.map)))


def cmd_entails(args, rep: Report):
    K = _battery(args.cls)
    prem = [parse_equation(p, K.sig) for p in args.premise]
    concl = parse_equation(args.conclusion, K.sig)
    cm = countermodel(K, prem, concl, args.vars)
    if cm is None:
        rep.check("entails", True, f"over {K}")
    else:
        rep.check("entails", False, f"countermodel battery #{cm[0]} assignment {list(cm[1])}")


def cmd_matpow(args, rep: Report):
    A = _algebra(args.algebra)
    if args.language:
        L = parse_language(read_text(args.language))
    elif args.full:
        L = full_language(A.sig, args.kappa)
    else:
        L = pointwise_language(A.sig, args.kappa)
    _listing(matrix_power(A, L), rep.out)


def cmd_theta_sub(args, rep: Report):
    A = _algebra(args.algebra)
    if args.spec:
        spec = parse_theta_spec(read_text(args.spec))
    elif args.translation:
        spec = _spec(args).theta
    else:
        raise UsageError("theta-sub needs --spec or --translation")
    bad = compatibility_failure([A], spec)
    if bad is not None:
        rep.check("compatible", False, str(bad))
        return
    S, inc = theta_sub(A, spec)
    rep.line(f"# solutions: {S.size} of {A.size ** spec.exponent}")
    _listing(S, rep.out)


def cmd_translate_check(args, rep: Report):
    ct, X, Y = _translation(args.translation, args.source_class, args.target_class)
    c2 = check_condition2(ct, Y)
    rep.check("condition2", bool(c2), "" if c2 else
              f"symbol {c2.symbol} equation {c2.equation} battery #{c2.battery_index} "
              f"assignment {list(c2.assignment)}")
    nt = check_nontrivial(ct, Y)
    detail = ("no ground solution" if nt.ground is None else
              "ground " + ",".join(print_term(t) for t in nt.ground)
              + (f" coordinate {nt.coordinate}" if nt.coordinate is not None else ""))
    rep.check("nontrivial", nt.nontrivial, detail)
    axioms = catalog.axioms(X.sig.name) if X.sig.name in catalog.SIGNATURES else ()
    ds = deductions_from_axioms(axioms)
    passed = 0
    for i, d in enumerate(ds):
        r = check_condition1(ct, X, Y, d)
        passed += r.passes
        if not r.passes:
            rep.check(f"condition1[{i}]", False, str(d))
    rep.check("condition1", passed == len(ds), f"verified on {passed} of {len(ds)} instances")


def cmd_translate_apply(args, rep: Report):
    ct, X, Y = _translation(args.translation, args.source_class, args.target_class)
    if args.term:
        from .terms import parse_term
        rep.line(", ".join(print_term(t) for t in lift_term(ct.tau, parse_term(args.term, X.sig))))
    if args.presentation:
        rep.line(format_presentation(translation_presentation(ct, _presentation(args.presentation, X.sig))))
    if not args.term and not args.presentation:
        rep.out.write(format_translation(ct))


def cmd_translate_derive(args, rep: Report):
    name = args.functor
    if name == "kleene":
        data = catalog.kleene_functor_data()
        X = catalog.battery("KA")
    elif name in catalog.TRANSLATIONS:
        from .adjoint import functor_data
        ct, X, Y = catalog.translation(name)
        if name == "godel":
            F1 = functor_data(ct, Y, symbols=()).pi1
            data = FunctorData(ct.kappa, Y, F1)
            ctx = derive_context(data)
            rep.line("kappa 1")
            for e in ctx:
                rep.line(f"context {e}")
            rep.line("# operation images need the two-generator canonical algebra; not built")
            return
        data = functor_data(ct, Y)
    else:
        raise UsageError(f"no functor data for {name!r}")
    rep.out.write(format_translation(derive_translation(X, data)))


def cmd_adjoint_right(args, rep: Report):
    spec = _spec(args)
    _listing(apply_right_adjoint(spec, _algebra(args.algebra)), rep.out)


def cmd_adjoint_left(args, rep: Report):
    spec = _spec(args)
    A, Q = apply_left_adjoint(spec, _presentation(args.presentation, spec.X.sig))
    rep.line(f"# presentation {format_presentation(Q)}")
    _listing(A, rep.out)


def cmd_adjoint_verify(args, rep: Report):
    spec = _spec(args)
    if args.all:
        pairs = [(str(P), P, name, B)
                 for _, P in catalog.presentations(spec.X.sig.name)
                 for name, B in catalog.algebras_of(spec.Y.sig.name)]
    else:
        if not args.presentation or not args.algebra:
            raise UsageError("verify needs --presentation and --algebra, or --all")
        P = _presentation(args.presentation, spec.X.sig)
        pairs = [(str(P), P, args.algebra, _algebra(args.algebra))]
    for ptxt, P, name, B in pairs:
        r = verify_homset_bijection(spec, P, B)
        rep.check(f"homset[{ptxt}|{name}]", r.bijective,
                  f"countLeft {r.count_left} countRight {r.count_right}")
        if len(pairs) == 1:
            rep.line(f"countLeft {r.count_left} countRight {r.count_right} "
                     f"{'PASS' if r.bijective else 'FAIL'}")
    fr = finiteness_report(spec)
    rep.check("finite", fr.kappa_finite and fr.theta_finite, f"witness {fr.witness}")


def cmd_adjoint_sigma(args, rep: Report):
    spec = _spec(args)
    if spec.data is None:
        raise UsageError(f"no functor data available for {args.translation!r}")
    names = ([n for n, _ in catalog.algebras_of(spec.Y.sig.name)] if args.all
             else [args.algebra] if args.algebra else None)
    if not names:
        raise UsageError("sigma needs --algebra or --all")
    for name in names:
        r = verify_sigma_iso(spec, _algebra(name))
        rep.check(f"sigma[{name}]", bool(r),
                  f"hom {r.size_hom} image {r.size_image} bijective {r.bijective} "
                  f"homomorphism {r.homomorphism}")


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forge", description="Finite-algebra adjunction toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(parent, name, func: Callable, help_: str):
        sp = parent.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    def translation_opts(sp):
        sp.add_argument("--translation", required=True, help="catalog name or translation file")
        sp.add_argument("--source-class", help="override the source battery")
        sp.add_argument("--target-class", help="override the target battery")

    cat = sub.add_parser("catalog").add_subparsers(dest="sub", required=True)
    add(cat, "list", cmd_catalog_list, "list catalog objects")

    alg = sub.add_parser("alg").add_subparsers(dest="sub", required=True)
    sp = add(alg, "check", cmd_alg_check, "validate an algebra")
    sp.add_argument("algebra")
    sp = add(alg, "show", cmd_alg_show, "print an algebra")
    sp.add_argument("algebra")

    sp = add(sub, "free", cmd_free, "free algebra of a battery")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--gens", type=int, required=True)

    sp = add(sub, "homs", cmd_homs, "enumerate homomorphisms")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--count", action="store_true")

    sp = add(sub, "entails", cmd_entails, "decide relative consequence")
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--premise", action="append", default=[])
    sp.add_argument("--conclusion", required=True)
    sp.add_argument("--vars", type=int)

    sp = add(sub, "matpow", cmd_matpow, "matrix power of an algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--kappa", type=int, default=2)
    sp.add_argument("--language", help="matrix language file")
    sp.add_argument("--full", action="store_true", help="pointwise ops plus diag, shift, mix")

    sp = add(sub, "theta-sub", cmd_theta_sub, "solution subalgebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--spec", help="theta spec file")
    sp.add_argument("--translation")
    sp.add_argument("--source-class")
    sp.add_argument("--target-class")

    tr = sub.add_parser("translate").add_subparsers(dest="sub", required=True)
    sp = add(tr, "check", cmd_translate_check, "check contextual translation conditions")
    translation_opts(sp)
    sp = add(tr, "apply", cmd_translate_apply, "lift a term or presentation")
    translation_opts(sp)
    sp.add_argument("--term")
    sp.add_argument("--presentation")
    sp = add(tr, "derive", cmd_translate_derive, "derive a translation from functor data")
    sp.add_argument("--functor", required=True, help="kleene, godel or kolmogorov")

    adj = sub.add_parser("adjoint").add_subparsers(dest="sub", required=True)
    sp = add(adj, "right", cmd_adjoint_right, "apply the right adjoint")
    translation_opts(sp)
    sp.add_argument("--algebra", required=True)
    sp = add(adj, "left", cmd_adjoint_left, "apply the left adjoint to a presentation")
    translation_opts(sp)
    sp.add_argument("--presentation", required=True)
    sp = add(adj, "verify", cmd_adjoint_verify, "hom-set bijection")
    translation_opts(sp)
    sp.add_argument("--presentation")
    sp.add_argument("--algebra")
    sp.add_argument("--all", action="store_true")
    sp = add(adj, "sigma", cmd_adjoint_sigma, "decomposition isomorphism")
    translation_opts(sp)
    sp.add_argument("--algebra")
    sp.add_argument("--all", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(sys.stdout)
    try:
        args.func(args, rep)
    except (UsageError, KeyError, ValueError, OverflowError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"forge: error: {msg}", file=sys.stderr)
        return 2
    return 1 if rep.failed else 0


if __name__ == "__main__":
    sys.exit(main())
