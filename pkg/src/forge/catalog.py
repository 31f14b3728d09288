"""Built-in signatures, algebras, batteries, axioms and translations.

The batteries chosen for HA and IA are conventions of this package: small
algebras whose generated quasi-varieties are used as stand-ins for the full
varieties.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .classes import ClassBattery, Presentation
from .finalg import FiniteAlgebra, product, satisfies_quasi_equation
from .terms import QuasiEquation, Signature, parse_equation

DL01 = Signature("DL01", (("meet", 2), ("join", 2), ("bot", 0), ("top", 0)))
KA = Signature("KA", (("meet", 2), ("join", 2), ("neg", 1), ("bot", 0), ("top", 0)))
HA = Signature("HA", (("meet", 2), ("join", 2), ("imp", 2), ("neg", 1), ("bot", 0), ("top", 0)))
BA = Signature("BA", HA.ops)
IA = Signature("IA", (("meet", 2), ("join", 2), ("imp", 2), ("neg", 1), ("box", 1),
                      ("bot", 0), ("top", 0)))

SIGNATURES = {s.name: s for s in (DL01, KA, BA, HA, IA)}


# ------------------------------------------------------------ constructors

def _lattice_tables(leq: np.ndarray):
    n = len(leq)
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        lower = [c for c in range(n) if leq[c, a] and leq[c, b]]
        upper = [c for c in range(n) if leq[a, c] and leq[b, c]]
        meet[a, b] = next(c for c in lower if all(leq[d, c] for d in lower))
        join[a, b] = next(c for c in upper if all(leq[c, d] for d in upper))
    bot = next(c for c in range(n) if leq[c].all())
    top = next(c for c in range(n) if leq[:, c].all())
    return meet, join, bot, top


def bounded_lattice(leq, sig: Signature = DL01, labels=None) -> FiniteAlgebra:
    """Lattice-based algebra from an order matrix ``leq[a, b] = a <= b``.

    For HA/BA the implication is the relative pseudo-complement and
    ``neg(a) = imp(a, bot)``.
    """
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    meet, join, bot, top = _lattice_tables(leq)
    tables = {"meet": meet, "join": join, "bot": bot, "top": top}
    if "imp" in sig:
        imp = np.empty((n, n), dtype=np.int64)
        for a, b in itertools.product(range(n), repeat=2):
            cands = [c for c in range(n) if leq[meet[a, c], b]]
            imp[a, b] = next(c for c in cands if all(leq[d, c] for d in cands))
        tables["imp"] = imp
        tables["neg"] = imp[:, bot]
    return FiniteAlgebra(sig, n, tables, labels)


def chain(n: int, sig: Signature = DL01, labels=None) -> FiniteAlgebra:
    leq = np.array([[a <= b for b in range(n)] for a in range(n)])
    return bounded_lattice(leq, sig, labels)


def kleene_chain3() -> FiniteAlgebra:
    base = chain(3)
    tables = dict(base.tables)
    tables["neg"] = np.array([2, 1, 0])
    return FiniteAlgebra(KA, 3, tables, ("0", "1/2", "1"))


def diamond_top(sig: Signature = HA) -> FiniteAlgebra:
    """2x2 with a new top: 0 < a, b < c < 1."""
    up = {0: {0, 1, 2, 3, 4}, 1: {1, 3, 4}, 2: {2, 3, 4}, 3: {3, 4}, 4: {4}}
    leq = np.array([[b in up[a] for b in range(5)] for a in range(5)])
    return bounded_lattice(leq, sig, ("0", "a", "b", "c", "1"))


def interior_algebra(points: int, opens, labels=None) -> FiniteAlgebra:
    """Powerset of ``points`` with box = topological interior."""
    n = 1 << points
    full = n - 1
    opens = [sum(1 << p for p in o) for o in opens]
    if 0 not in opens or full not in opens:
        raise ValueError("a topology contains the empty set and the whole space")
    u = np.arange(n)
    meet = u[:, None] & u[None, :]
    join = u[:, None] | u[None, :]
    neg = full ^ u
    imp = neg[:, None] | u[None, :]
    box = np.array([max((o for o in opens if o & ~a & full == 0), key=lambda o: bin(o).count("1"))
                    for a in range(n)])
    if labels is None:
        labels = ["{" + "".join(str(p) for p in range(points) if a >> p & 1) + "}" for a in range(n)]
    return FiniteAlgebra(IA, n, {"meet": meet, "join": join, "imp": imp, "neg": neg, "box": box,
                                 "bot": 0, "top": full}, labels)


@lru_cache(maxsize=None)
def algebras() -> dict[str, FiniteAlgebra]:
    """Named catalog algebras, keyed ``"<SIG>:<name>"``."""
    out: dict[str, FiniteAlgebra] = {}
    two = chain(2, DL01, ("0", "1"))
    three = chain(3, DL01, ("0", "1", "2"))
    out["DL01:chain2"] = two
    out["DL01:chain3"] = three
    out["DL01:chain4"] = chain(4, DL01, ("0", "1", "2", "3"))
    out["DL01:square"] = product([two, two])[0]
    out["DL01:chain2x3"] = product([two, three])[0]
    out["DL01:cube"] = product([two, two, two])[0]
    out["KA:chain3"] = kleene_chain3()
    out["BA:bool2"] = chain(2, BA, ("0", "1"))
    out["HA:chain2"] = chain(2, HA, ("0", "1"))
    out["HA:chain3"] = chain(3, HA, ("0", "1/2", "1"))
    out["HA:chain4"] = chain(4, HA, ("0", "1", "2", "3"))
    out["HA:diamond"] = diamond_top(HA)
    out["HA:bool4"] = bounded_lattice(np.array([[a & b == a for b in range(4)] for a in range(4)]),
                                      HA, ("0", "a", "b", "1"))
    out["IA:ia2"] = interior_algebra(1, [(), (0,)])
    out["IA:op4"] = interior_algebra(2, [(), (0,), (0, 1)], ("0", "a", "b", "1"))
    out["IA:disc4"] = interior_algebra(2, [(), (0,), (1,), (0, 1)])
    out["IA:indisc4"] = interior_algebra(2, [(), (0, 1)])
    out["IA:chain8"] = interior_algebra(3, [(), (0,), (0, 1), (0, 1, 2)])
    out["IA:fork8"] = interior_algebra(3, [(), (0,), (1,), (0, 1), (0, 1, 2)])
    for name, alg in out.items():
        sig = name.split(":")[0]
        for q in axioms(sig):
            if not satisfies_quasi_equation(alg, q):
                raise AssertionError(f"catalog algebra {name} violates {q}")
    return out


def algebra(name: str) -> FiniteAlgebra:
    try:
        return algebras()[name]
    except KeyError:
        raise KeyError(f"no catalog algebra {name!r}") from None


def algebras_of(sig_name: str) -> list[tuple[str, FiniteAlgebra]]:
    return [(k, v) for k, v in algebras().items() if k.split(":")[0] == sig_name]


_BATTERY_MEMBERS = {
    "DL01": ["DL01:chain2"],
    "BA": ["BA:bool2"],
    "KA": ["KA:chain3"],
    "HA": ["HA:chain2", "HA:chain3", "HA:chain4", "HA:diamond"],
    "IA": ["IA:ia2", "IA:op4", "IA:disc4", "IA:indisc4", "IA:chain8", "IA:fork8"],
}


@lru_cache(maxsize=None)
def battery(name: str) -> ClassBattery:
    try:
        members = _BATTERY_MEMBERS[name]
    except KeyError:
        raise KeyError(f"no catalog battery {name!r}") from None
    return ClassBattery(SIGNATURES[name], tuple(algebra(m) for m in members), name)


# ------------------------------------------------------------------ axioms

_LATTICE = [
    "meet(x0, x1) = meet(x1, x0)",
    "join(x0, x1) = join(x1, x0)",
    "meet(x0, meet(x1, x2)) = meet(meet(x0, x1), x2)",
    "join(x0, join(x1, x2)) = join(join(x0, x1), x2)",
    "meet(x0, join(x0, x1)) = x0",
    "join(x0, meet(x0, x1)) = x0",
    "meet(x0, join(x1, x2)) = join(meet(x0, x1), meet(x0, x2))",
    "meet(x0, bot) = bot",
    "join(x0, top) = top",
]
_KLEENE = [
    "neg(neg(x0)) = x0",
    "neg(meet(x0, x1)) = join(neg(x0), neg(x1))",
    "neg(join(x0, x1)) = meet(neg(x0), neg(x1))",
    "neg(bot) = top",
    # x & -x <= y | -y
    "meet(meet(x0, neg(x0)), join(x1, neg(x1))) = meet(x0, neg(x0))",
]
_HEYTING = [
    "imp(x0, x0) = top",
    "meet(x0, imp(x0, x1)) = meet(x0, x1)",
    "meet(x1, imp(x0, x1)) = x1",
    "imp(x0, meet(x1, x2)) = meet(imp(x0, x1), imp(x0, x2))",
    "neg(x0) = imp(x0, bot)",
]
_BOOLEAN = ["join(x0, neg(x0)) = top"]
_INTERIOR = [
    "join(x0, neg(x0)) = top",
    "box(top) = top",
    "box(meet(x0, x1)) = meet(box(x0), box(x1))",
    "meet(box(x0), x0) = box(x0)",
    "box(box(x0)) = box(x0)",
]
_QUASI = {
    "DL01": ["meet(x0, x2) = meet(x1, x2) & join(x0, x2) = join(x1, x2) => x0 = x1"],
    "KA": ["meet(x0, x2) = meet(x1, x2) & join(x0, x2) = join(x1, x2) => x0 = x1"],
    "HA": ["x0 = top & imp(x0, x1) = top => x1 = top"],
    "BA": ["x0 = top & imp(x0, x1) = top => x1 = top"],
    "IA": ["x0 = top & imp(x0, x1) = top => x1 = top", "x0 = top => box(x0) = top"],
}


def _quasi(text: str, sig: Signature) -> QuasiEquation:
    if "=>" not in text:
        return QuasiEquation((), parse_equation(text, sig))
    lhs, rhs = text.split("=>")
    prem = tuple(parse_equation(p, sig) for p in lhs.split("&"))
    return QuasiEquation(prem, parse_equation(rhs, sig))


@lru_cache(maxsize=None)
def axioms(sig_name: str) -> tuple[QuasiEquation, ...]:
    """Laws valid in the catalog class; used as deduction batteries and
    sanity checks on constructed algebras."""
    sig = SIGNATURES[sig_name]
    eqs = list(_LATTICE)
    if sig_name == "KA":
        eqs += _KLEENE
    if sig_name in ("HA", "BA", "IA"):
        eqs += _HEYTING
    if sig_name == "BA":
        eqs += _BOOLEAN
    if sig_name == "IA":
        eqs += _INTERIOR
    return tuple(_quasi(t, sig) for t in eqs + _QUASI.get(sig_name, []))


# ------------------------------------------------------------ presentations

def presentations(sig_name: str) -> list[tuple[str, Presentation]]:
    """Catalog presentations over a source class (used by adjointness suites)."""
    sig = SIGNATURES[sig_name]
    out = [("free0", Presentation(0)), ("free1", Presentation(1))]
    if sig_name == "KA":
        out.append(("fixed", Presentation(1, (parse_equation("neg(x0) = x0", sig),))))
        out.append(("free2", Presentation(2)))
    elif sig_name in ("HA", "BA"):
        out.append(("regular", Presentation(1, (parse_equation("neg(neg(x0)) = x0", sig),))))
        out.append(("top", Presentation(1, (parse_equation("x0 = top", sig),))))
    elif sig_name == "DL01":
        out.append(("free2", Presentation(2)))
        out.append(("disjoint", Presentation(2, (parse_equation("meet(x0, x1) = bot", sig),))))
    return out


# ------------------------------------------------------------- translations

def _translation(src: Signature, tgt: Signature, k: int, images: dict[str, str]):
    from .terms import _split_top, parse_term
    from .xlate import Translation
    parsed = {sym: tuple(parse_term(c, tgt, k) for c in _split_top(text, ","))
              for sym, text in images.items()}
    return Translation(k, src, tgt, parsed)


_TRANSLATIONS = {
    # (source, target, kappa, images, context)
    "kleene": ("KA", "DL01", 2, {
        "meet": "meet(x0_0, x1_0), join(x0_1, x1_1)",
        "join": "join(x0_0, x1_0), meet(x0_1, x1_1)",
        "neg": "x0_1, x0_0",
        "bot": "bot, top",
        "top": "top, bot",
    }, ["meet(x0, x1) = bot"]),
    "godel": ("HA", "IA", 1, {
        "meet": "meet(x0, x1)",
        "join": "join(x0, x1)",
        "imp": "box(imp(x0, x1))",
        "neg": "box(neg(x0))",
        "bot": "bot",
        "top": "top",
    }, ["x0 = box(x0)"]),
    "kolmogorov": ("BA", "HA", 1, {
        "meet": "neg(neg(meet(x0, x1)))",
        "join": "neg(neg(join(x0, x1)))",
        "imp": "neg(neg(imp(x0, x1)))",
        "neg": "neg(x0)",
        "bot": "bot",
        "top": "top",
    }, ["x0 = neg(neg(x0))"]),
}

TRANSLATIONS = tuple(_TRANSLATIONS)


@lru_cache(maxsize=None)
def translation(name: str):
    """``(contextual translation, source battery, target battery)``."""
    from .xlate import ContextualTranslation
    try:
        src, tgt, k, images, context = _TRANSLATIONS[name]
    except KeyError:
        raise KeyError(f"no catalog translation {name!r}") from None
    S, T = SIGNATURES[src], SIGNATURES[tgt]
    ct = ContextualTranslation(_translation(S, T, k, images),
                               tuple(parse_equation(e, T) for e in context))
    return ct, battery(src), battery(tgt)


def kleene_functor_data():
    """Left adjoint of the Kleene right adjoint, given on free Kleene algebras.

    ``F(x)`` is the distributive lattice with two disjoint generators a, b
    (0 < a, b < a|b < 1).  ``F(neg)`` is its automorphism swapping a and b;
    the other operations are given by where they send a and b.
    """
    from .classes import free_algebra, presented
    from .finalg import enumerate_homs
    from .terms import parse_term
    from .xlate import FunctorData
    Y = battery("DL01")
    disjoint = parse_equation("meet(x0, x1) = bot", DL01)

    def canonical(n):
        rels = [parse_equation(f"meet(x{2 * j}, x{2 * j + 1}) = bot", DL01) for j in range(n)]
        return presented(Y, Presentation(2 * n, tuple(rels)))

    F1 = presented(Y, Presentation(2, (disjoint,)))
    pi1 = free_algebra(Y, 2).hom_to(F1.algebra, F1.generators)
    a, b = F1.generators
    swap = next(h for h in enumerate_homs(F1.algebra, F1.algebra)
                if h.map[a] == b and h.map[b] == a)
    where = {
        "meet": ("meet(x0_0, x1_0)", "join(x0_1, x1_1)"),
        "join": ("join(x0_0, x1_0)", "meet(x0_1, x1_1)"),
        "bot": ("bot", "top"),
        "top": ("top", "bot"),
    }
    ops, targets = [("neg", swap)], [("neg", F1)]
    for sym, (ta, tb) in where.items():
        T = canonical(KA.arity(sym))
        images = [T.element_of(parse_term(t, DL01, 2)) for t in (ta, tb)]
        ops.append((sym, F1.hom_to(T.algebra, images)))
        targets.append((sym, T))
    return FunctorData(2, Y, pi1, tuple(ops), tuple(targets))


@lru_cache(maxsize=None)
def right_adjoint(name: str):
    """The catalog right adjoint, with functor data where it is cheap to build."""
    from .adjoint import functor_data, right_adjoint_spec
    ct, X, Y = translation(name)
    data = None
    if name == "kleene":
        data = kleene_functor_data()
    elif name == "kolmogorov":
        data = functor_data(ct, Y)
    return right_adjoint_spec(ct, X, Y, axioms(X.sig.name), data)
