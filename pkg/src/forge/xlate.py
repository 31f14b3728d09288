"""k-translations, their liftings, and contextual-translation checks.

Variable convention: coordinate i of source variable j is the flattened
target variable ``j*k + i``; an image of an n-ary symbol is a k-tuple of
target terms over ``0 .. n*k-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .classes import (
    ClassBattery, FreeAlgebra, Presentation, cgK, countermodel, entails, free_algebra, presented,
)
from .finalg import Homomorphism, kernel
from .terms import (
    Equation, QuasiEquation, Signature, Term, Var, check_term, print_term, shift, substitute,
    variables_of,
)

__all__ = [
    "Translation", "ContextualTranslation", "Deduction", "lift_term", "lift_equations",
    "context_block", "Condition1", "check_condition1", "Condition2", "check_condition2",
    "Nontriviality", "check_nontrivial", "deductions_from_axioms", "FunctorData",
    "derive_context", "derive_translation", "translation_presentation",
]


@dataclass(frozen=True)
class Translation:
    kappa: int
    source: Signature
    target: Signature
    images: tuple[tuple[str, tuple[Term, ...]], ...]
    _by_symbol: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        items = self.images.items() if isinstance(self.images, Mapping) else self.images
        table = {}
        for sym, comps in items:
            comps = tuple(comps)
            ar = self.source.arity(sym)
            if len(comps) != self.kappa:
                raise ValueError(f"{sym}: expected {self.kappa} components, got {len(comps)}")
            for t in comps:
                check_term(t, self.target)
                bad = [j for j in variables_of(t) if j >= ar * self.kappa]
                if bad:
                    raise ValueError(f"{sym}: variable x{bad[0]} exceeds arity {ar} blocks")
            table[sym] = comps
        missing = [s for s in self.source.symbols if s not in table]
        if missing:
            raise ValueError(f"no image for symbol(s) {', '.join(missing)}")
        object.__setattr__(self, "images", tuple((s, table[s]) for s in self.source.symbols))
        object.__setattr__(self, "_by_symbol", table)

    def image(self, symbol: str) -> tuple[Term, ...]:
        try:
            return self._by_symbol[symbol]
        except KeyError:
            raise KeyError(f"translation has no image for {symbol!r}") from None


@dataclass(frozen=True)
class ContextualTranslation:
    tau: Translation
    context: tuple[Equation, ...] = ()

    def __post_init__(self):
        ctx = tuple(dict.fromkeys(self.context))
        for e in ctx:
            check_term(e.lhs, self.tau.target)
            check_term(e.rhs, self.tau.target)
            if any(j >= self.kappa for j in e.variables()):
                raise ValueError(f"context equation {e} uses variables beyond x{self.kappa - 1}")
        object.__setattr__(self, "context", ctx)

    @property
    def kappa(self) -> int:
        return self.tau.kappa


@dataclass(frozen=True)
class Deduction:
    num_vars: int
    premises: tuple[Equation, ...]
    conclusion: Equation

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        vs = set(self.conclusion.variables())
        for p in self.premises:
            vs.update(p.variables())
        if vs and max(vs) >= self.num_vars:
            raise ValueError(f"deduction uses x{max(vs)} but declares {self.num_vars} variables")

    def __str__(self):
        if not self.premises:
            return f"|= {self.conclusion}"
        return ", ".join(map(str, self.premises)) + f" |= {self.conclusion}"


# ------------------------------------------------------------------ lifting

def lift_term(tau: Translation, t: Term) -> tuple[Term, ...]:
    k = tau.kappa
    if isinstance(t, Var):
        return tuple(Var(t.index * k + i) for i in range(k))
    comps = tau.image(t.symbol)
    if not t.args:
        return comps
    lifted = [lift_term(tau, a) for a in t.args]
    mapping = {m * k + i: lifted[m][i] for m in range(len(lifted)) for i in range(k)}
    return tuple(substitute(c, mapping) for c in comps)


def lift_equations(tau: Translation, eqs: Iterable[Equation]) -> tuple[Equation, ...]:
    out = []
    for e in eqs:
        out.extend(Equation(a, b) for a, b in zip(lift_term(tau, e.lhs), lift_term(tau, e.rhs)))
    return tuple(dict.fromkeys(out))


def _block(context: Sequence[Equation], k: int, j: int) -> tuple[Equation, ...]:
    off = j * k
    return tuple(Equation(shift(e.lhs, off), shift(e.rhs, off)) for e in context)


def context_block(ct: ContextualTranslation, j: int) -> tuple[Equation, ...]:
    """The context on the coordinates of source variable j."""
    return _block(ct.context, ct.kappa, j)


def _blocks(context: Sequence[Equation], k: int, n: int) -> tuple[Equation, ...]:
    out: list[Equation] = []
    for j in range(n):
        out.extend(_block(context, k, j))
    return tuple(dict.fromkeys(out))


def _contexts(ct: ContextualTranslation, n: int) -> tuple[Equation, ...]:
    return _blocks(ct.context, ct.kappa, n)


def translation_presentation(ct: ContextualTranslation, P: Presentation) -> Presentation:
    """Target presentation with k*lambda generators, the lifted relations and the contexts."""
    rels = lift_equations(ct.tau, P.relations) + _contexts(ct, P.num_generators)
    return Presentation(ct.kappa * P.num_generators, rels)


# --------------------------------------------------------------- conditions

@dataclass(frozen=True)
class Condition1:
    deduction: Deduction
    holds_in_source: bool
    transferred: bool
    counterexample: tuple | None = None

    @property
    def passes(self) -> bool:
        return self.transferred or not self.holds_in_source


def check_condition1(ct: ContextualTranslation, X: ClassBattery, Y: ClassBattery,
                     d: Deduction) -> Condition1:
    """One instance of consequence transfer, decided over both batteries."""
    holds = entails(X, d.premises, d.conclusion, d.num_vars)
    prem = lift_equations(ct.tau, d.premises) + _contexts(ct, d.num_vars)
    nv = ct.kappa * d.num_vars
    bad = None
    for goal in lift_equations(ct.tau, [d.conclusion]):
        cm = countermodel(Y, prem, goal, nv)
        if cm is not None:
            bad = (goal, cm)
            break
    return Condition1(d, holds, bad is None, bad)


@dataclass(frozen=True)
class Condition2:
    ok: bool
    symbol: str | None = None
    equation: Equation | None = None
    battery_index: int | None = None
    assignment: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def check_condition2(ct: ContextualTranslation, Y: ClassBattery) -> Condition2:
    """Each translated operation maps context solutions to context solutions."""
    k = ct.kappa
    for sym, comps in ct.tau.images:
        n = ct.tau.source.arity(sym)
        prem = _contexts(ct, n)
        mapping = dict(enumerate(comps))
        for e in ct.context:
            goal = Equation(substitute(e.lhs, mapping), substitute(e.rhs, mapping))
            cm = countermodel(Y, prem, goal, n * k)
            if cm is not None:
                return Condition2(False, sym, goal, cm[0], cm[1])
    return Condition2(True)


@dataclass(frozen=True)
class Nontriviality:
    nontrivial: bool
    ground: tuple[Term, ...] | None = None
    coordinate: int | None = None


def check_nontrivial(ct: ContextualTranslation, Y: ClassBattery) -> Nontriviality:
    """If some ground k-tuple solves the context, some coordinate stays free.

    Ground tuples range over representatives of all elements of the free
    algebra on no generators, i.e. over ground terms up to equivalence.
    """
    k = ct.kappa
    ground = free_algebra(Y, 0).terms
    solved = None
    for tup in itertools.product(ground, repeat=k):
        mapping = dict(enumerate(tup))
        if all(entails(Y, (), Equation(substitute(e.lhs, mapping), substitute(e.rhs, mapping)), 0)
               for e in ct.context):
            solved = tup
            break
    if solved is None:
        return Nontriviality(True)
    prem = _contexts(ct, 2)
    for i in range(k):
        if not entails(Y, prem, Equation(Var(i), Var(k + i)), 2 * k):
            return Nontriviality(True, solved, i)
    return Nontriviality(False, solved)


def deductions_from_axioms(axioms: Sequence[QuasiEquation]) -> list[Deduction]:
    out = []
    for q in axioms:
        vs = q.variables()
        out.append(Deduction(vs[-1] + 1 if vs else 0, q.premises, q.conclusion))
    return out


# --------------------------------------------------------------- derivation

@dataclass(frozen=True)
class FunctorData:
    """A left adjoint given on the free algebras of the source class.

    ``pi1`` maps the free target algebra on ``kappa`` generators onto the
    image of the free source algebra on one generator.  ``ops[psi]`` sends
    that image into ``targets[psi]``, the image of the free source algebra on
    ``arity(psi)`` generators, whose generator ``j*kappa + i`` is coordinate i
    of variable j.
    """
    kappa: int
    Y: ClassBattery
    pi1: Homomorphism
    ops: tuple[tuple[str, Homomorphism], ...] = ()
    targets: tuple[tuple[str, FreeAlgebra], ...] = ()

    def op(self, sym: str) -> Homomorphism:
        return dict(self.ops)[sym]

    def target(self, sym: str) -> FreeAlgebra:
        return dict(self.targets)[sym]


def _generating_pairs(K: ClassBattery, F: FreeAlgebra, theta) -> list[tuple[int, int]]:
    """Greedy generating set of a K-congruence of a free algebra.

    Candidate pairs are scanned by (larger index, smaller index), so pairs of
    short representatives are preferred.
    """
    chosen: list[tuple[int, int]] = []
    current = cgK(K, F.algebra, chosen)
    if current == theta:
        return chosen
    for b in range(F.algebra.size):
        for a in range(b):
            if theta.related(a, b) and not current.related(a, b):
                chosen.append((a, b))
                current = cgK(K, F.algebra, chosen)
                if current == theta:
                    return chosen
    return chosen


def derive_context(data: FunctorData) -> tuple[Equation, ...]:
    """Equations generating the kernel of ``pi1`` as a K-congruence."""
    F = free_algebra(data.Y, data.kappa)
    if data.pi1.source != F.algebra:
        raise ValueError("pi1 must start at the free algebra on kappa generators")
    if not data.pi1.is_surjective:
        raise ValueError("pi1 is not surjective")
    theta = kernel(data.pi1)
    pairs = _generating_pairs(data.Y, F, theta)
    return tuple(Equation(F.terms[a], F.terms[b]) for a, b in pairs)


def derive_translation(X: ClassBattery, data: FunctorData) -> ContextualTranslation:
    """Read a contextual translation off left-adjoint data.

    The context generates ``ker(pi1)``.  The image of an n-ary symbol psi at
    coordinate i is the representative term of ``F(psi)(pi1(x^i))`` in the
    canonical presented algebra on ``n*kappa`` generators.
    """
    k = data.kappa
    context = derive_context(data)
    F1 = free_algebra(data.Y, k)
    images = {}
    for sym, ar in X.sig.ops:
        f = data.op(sym)
        T = data.target(sym)
        rels = _blocks(context, k, ar)
        canon = presented(data.Y, Presentation(ar * k, rels))
        if f.source != data.pi1.target or f.target != T.algebra:
            raise ValueError(f"F({sym}) has the wrong source or target")
        if len(T.generators) != ar * k or T.algebra.size != canon.algebra.size:
            raise ValueError(f"target of F({sym}) is not the canonical presented algebra")
        if any(T.element_of(e.lhs) != T.element_of(e.rhs) for e in rels):
            raise ValueError(f"target of F({sym}) violates the context")
        comps = tuple(T.terms[f.map[data.pi1.map[F1.generators[i]]]] for i in range(k))
        # pi_n . tau(psi) = F(psi) . pi1 on all of F1
        lifted = F1.hom_to(T.algebra, [T.element_of(c) for c in comps])
        for e in range(F1.algebra.size):
            if lifted.map[e] != f.map[data.pi1.map[e]]:
                raise ValueError(f"diagram for {sym} does not commute at {print_term(F1.terms[e])}")
        images[sym] = comps
    ct = ContextualTranslation(Translation(k, X.sig, data.Y.sig, images), context)
    c2 = check_condition2(ct, data.Y)
    if not c2:
        raise ValueError(f"derived translation fails context preservation at {c2.symbol}")
    return ct

