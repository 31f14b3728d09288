"""Compatible one-variable equation sets and the solution-subalgebra functor.

An equation of a :class:`ThetaSpec` is a pair of k-tuples of base terms over
the coordinates ``x^0 .. x^{k-1}`` (flattened indices ``0 .. k-1``) of a
single matrix-power variable.  An element of ``A^[k]`` solves it when both
tuples evaluate to the same k-tuple at its coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .finalg import FiniteAlgebra, Homomorphism, all_assignments, evaluate_columns
from .matpow import MatrixLanguage, MatrixPower, decode, matrix_power
from .terms import Term, check_term, print_term, variables_of

__all__ = ["ThetaSpec", "Incompatibility", "is_compatible", "compatibility_failure",
           "solutions", "solution_mask", "theta_sub", "theta_sub_hom"]

TermTuple = tuple[Term, ...]


@dataclass(frozen=True)
class ThetaSpec:
    theta: tuple[tuple[TermTuple, TermTuple], ...]
    lang: MatrixLanguage

    def __post_init__(self):
        k = self.lang.exponent
        theta = []
        for lhs, rhs in self.theta:
            lhs, rhs = tuple(lhs), tuple(rhs)
            if len(lhs) != k or len(rhs) != k:
                raise ValueError(f"theta equations need {k}-tuples on both sides")
            for t in lhs + rhs:
                check_term(t, self.lang.base)
                if any(j >= k for j in variables_of(t)):
                    raise ValueError(f"theta term {print_term(t)} uses more than one variable")
            theta.append((lhs, rhs))
        object.__setattr__(self, "theta", tuple(dict.fromkeys(theta)))

    @property
    def exponent(self) -> int:
        return self.lang.exponent

    def describe(self) -> list[str]:
        def tup(ts):
            return "<" + ", ".join(print_term(t) for t in ts) + ">"
        return [f"{tup(a)} = {tup(b)}" for a, b in self.theta]


@dataclass(frozen=True)
class Incompatibility:
    algebra: int
    op: str
    assignment: tuple[int, ...]

    def __str__(self):
        return f"algebra #{self.algebra}: {self.op} applied to solutions {list(self.assignment)} leaves the solution set"


def _base_and_power(A: FiniteAlgebra, spec: ThetaSpec) -> tuple[FiniteAlgebra, MatrixPower]:
    if isinstance(A, MatrixPower) and A.lang == spec.lang:
        return A.base, A
    if A.sig == spec.lang.base:
        return A, matrix_power(A, spec.lang)
    raise ValueError(f"algebra over {A.sig.name} does not fit the language over {spec.lang.base.name}")


def solution_mask(base: FiniteAlgebra, spec: ThetaSpec) -> np.ndarray:
    """Boolean mask over the encoded universe of ``base^[k]``."""
    k, n = spec.exponent, base.size
    size = n ** k
    coords = decode(np.arange(size), n, k)
    cols = {i: coords[i] for i in range(k)}
    ok = np.ones(size, dtype=bool)
    for lhs, rhs in spec.theta:
        for s, t in zip(lhs, rhs):
            ok &= evaluate_columns(base, s, cols, size) == evaluate_columns(base, t, cols, size)
    return ok


def solutions(A: FiniteAlgebra, spec: ThetaSpec) -> list[int]:
    base, _ = _base_and_power(A, spec)
    return [int(e) for e in np.flatnonzero(solution_mask(base, spec))]


def compatibility_failure(algebras: Sequence[FiniteAlgebra], spec: ThetaSpec) -> Incompatibility | None:
    """First ``(algebra, op, assignment)`` where an op leaves the solution set."""
    for ai, A in enumerate(algebras):
        base, P = _base_and_power(A, spec)
        mask = solution_mask(base, spec)
        sols = np.flatnonzero(mask)
        for op in spec.lang.ops:
            table = np.asarray(P.tables[op.name])
            if op.arity == 0:
                if not mask[int(table)]:
                    return Incompatibility(ai, op.name, ())
                continue
            if len(sols) == 0:
                continue
            args = sols[all_assignments(len(sols), op.arity)]
            vals = table[tuple(args)]
            bad = np.flatnonzero(~mask[vals])
            if len(bad):
                return Incompatibility(ai, op.name, tuple(int(a) for a in args[:, bad[0]]))
    return None


def is_compatible(algebras: Sequence[FiniteAlgebra] | FiniteAlgebra, spec: ThetaSpec) -> bool:
    if isinstance(algebras, FiniteAlgebra):
        algebras = [algebras]
    return compatibility_failure(algebras, spec) is None


def theta_sub(A: FiniteAlgebra, spec: ThetaSpec) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Solutions of theta in ``A^[k]`` with the restricted operations.

    ``A`` may be the base algebra or its matrix power over ``spec.lang``.
    Returns the algebra and the inclusion into the matrix power as a tuple of
    encoded elements.
    """
    base, P = _base_and_power(A, spec)
    bad = compatibility_failure([P], spec)
    if bad is not None:
        raise ValueError(f"theta is not compatible with the language: {bad}")
    sols = np.flatnonzero(solution_mask(base, spec))
    index = np.full(P.size, -1, dtype=np.int64)
    index[sols] = np.arange(len(sols))
    tables = {}
    for op in spec.lang.ops:
        t = np.asarray(P.tables[op.name])
        if op.arity == 0:
            tables[op.name] = index[int(t)]
        else:
            tables[op.name] = index[t[np.ix_(*([sols] * op.arity))]]
    labels = [P.label(int(e)) for e in sols] if P.labels is not None else None
    S = FiniteAlgebra(P.sig, len(sols), tables, labels)
    return S, tuple(int(e) for e in sols)


def theta_sub_hom(f: Homomorphism, spec: ThetaSpec) -> Homomorphism:
    """Restriction of ``f`` (between matrix powers, or between bases) to the solutions."""
    if f.source.sig == spec.lang.base:
        from .matpow import matrix_power_hom
        f = matrix_power_hom(f, spec.lang)
    S, inc_s = theta_sub(f.source, spec)
    T, inc_t = theta_sub(f.target, spec)
    where = {e: j for j, e in enumerate(inc_t)}
    out = []
    for e in inc_s:
        img = f.map[e]
        if img not in where:
            raise ValueError(f"the map sends solution {e} to non-solution {img}")
        out.append(where[img])
    return Homomorphism(S, T, tuple(out))

