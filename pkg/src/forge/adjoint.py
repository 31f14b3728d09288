"""Right adjoints from contextual translations, left adjoints on presentations,
and exhaustive adjointness checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classes import ClassBattery, FreeAlgebra, Presentation, presented
from .finalg import (
    FiniteAlgebra, Homomorphism, _HomSearch, all_assignments, evaluate_columns,
    satisfies_quasi_equation,
)
from .matpow import MatrixLanguage, MatrixOp, decode, matrix_power, matrix_power_hom
from .terms import QuasiEquation
from .thetasub import ThetaSpec, theta_sub, theta_sub_hom
from .xlate import ContextualTranslation, FunctorData, translation_presentation

__all__ = [
    "RightAdjointSpec", "right_adjoint_spec", "apply_right_adjoint", "apply_right_adjoint_hom",
    "apply_left_adjoint", "functor_data", "HomsetReport", "verify_homset_bijection",
    "SigmaIsoReport", "verify_sigma_iso", "FinitenessReport", "finiteness_report",
]


@dataclass(frozen=True)
class RightAdjointSpec:
    ct: ContextualTranslation
    X: ClassBattery
    Y: ClassBattery
    lang: MatrixLanguage
    theta: ThetaSpec
    axioms: tuple[QuasiEquation, ...] = ()
    data: FunctorData | None = None


def right_adjoint_spec(ct: ContextualTranslation, X: ClassBattery, Y: ClassBattery,
                       axioms: Sequence[QuasiEquation] = (),
                       data: FunctorData | None = None) -> RightAdjointSpec:
    """``L = {tau(psi)}`` over ``Y^[k]`` and ``theta = {<e,..,e> = <d,..,d> : e = d in context}``."""
    if ct.tau.source != X.sig or ct.tau.target != Y.sig:
        raise ValueError("translation signatures do not match the batteries")
    k = ct.kappa
    ops = tuple(MatrixOp(sym, ct.tau.source.arity(sym), k, comps) for sym, comps in ct.tau.images)
    lang = MatrixLanguage(Y.sig, k, ops, name=X.sig.name)
    theta = ThetaSpec(tuple(((e.lhs,) * k, (e.rhs,) * k) for e in ct.context), lang)
    return RightAdjointSpec(ct, X, Y, lang, theta, tuple(axioms), data)


def apply_right_adjoint(spec: RightAdjointSpec, B: FiniteAlgebra) -> FiniteAlgebra:
    if B.sig != spec.Y.sig:
        raise ValueError(f"expected an algebra over {spec.Y.sig.name}")
    G, _ = theta_sub(matrix_power(B, spec.lang), spec.theta)
    for q in spec.axioms:
        if not satisfies_quasi_equation(G, q):
            raise ValueError(f"right adjoint image violates {q}")
    return G


def apply_right_adjoint_hom(spec: RightAdjointSpec, f: Homomorphism) -> Homomorphism:
    return theta_sub_hom(matrix_power_hom(f, spec.lang), spec.theta)


def apply_left_adjoint(spec: RightAdjointSpec, P: Presentation) -> tuple[FiniteAlgebra, Presentation]:
    """Left adjoint on a presented source algebra, via the translated presentation."""
    Q = translation_presentation(spec.ct, P)
    return presented(spec.Y, Q).algebra, Q


def functor_data(ct: ContextualTranslation, Y: ClassBattery,
                 symbols: Sequence[str] | None = None) -> FunctorData:
    """Left-adjoint data induced by ``ct`` on free algebras.

    ``symbols`` restricts which operations get ``F(psi)``; the canonical target
    algebras are built only for those.
    """
    k = ct.kappa
    F1 = presented(Y, Presentation(k, ct.context))
    pi1 = _free_to(Y, k, F1)
    ops, targets = [], []
    for sym, comps in ct.tau.images:
        if symbols is not None and sym not in symbols:
            continue
        n = ct.tau.source.arity(sym)
        T = presented(Y, translation_presentation(ct, Presentation(n)))
        ops.append((sym, F1.hom_to(T.algebra, [T.element_of(c) for c in comps])))
        targets.append((sym, T))
    return FunctorData(k, Y, pi1, tuple(ops), tuple(targets))


def _free_to(Y: ClassBattery, k: int, F1: FreeAlgebra) -> Homomorphism:
    from .classes import free_algebra
    return free_algebra(Y, k).hom_to(F1.algebra, F1.generators)


# ---------------------------------------------------------- verification

@dataclass(frozen=True)
class HomsetReport:
    count_left: int
    count_right: int
    bijective: bool

    def __bool__(self):
        return self.bijective


def _hom_maps(A: FiniteAlgebra, B: FiniteAlgebra) -> list[tuple[int, ...]]:
    return _HomSearch(A, B).run()


def verify_homset_bijection(spec: RightAdjointSpec, P: Presentation, B: FiniteAlgebra) -> HomsetReport:
    """Compare ``hom_Y(F(P), B)`` with ``hom_X(P, G(B))``.

    Both sides are encoded by where they send generators: a Y-hom by the
    images of the k*lambda generators, an X-hom by the coordinates of the
    images of the lambda generators.  The correspondence is this re-reading,
    and it is checked to be one-to-one and onto.
    """
    k = spec.ct.kappa
    FP = presented(spec.Y, translation_presentation(spec.ct, P))
    left = [tuple(m[g] for g in FP.generators) for m in _hom_maps(FP.algebra, B)]
    G, inclusion = theta_sub(matrix_power(B, spec.lang), spec.theta)
    XP = presented(spec.X, P)
    right = []
    for m in _hom_maps(XP.algebra, G):
        flat = []
        for g in XP.generators:
            flat.extend(int(c) for c in decode(inclusion[m[g]], B.size, k))
        right.append(tuple(flat))
    ok = (len(left) == len(right) and len(set(left)) == len(left)
          and len(set(right)) == len(right) and set(left) == set(right))
    return HomsetReport(len(left), len(right), ok)


@dataclass(frozen=True)
class SigmaIsoReport:
    size_hom: int
    size_image: int
    bijective: bool
    homomorphism: bool

    def __bool__(self):
        return self.bijective and self.homomorphism


def _cotuple_values(T: FreeAlgebra, B: FiniteAlgebra, gen_values: np.ndarray) -> np.ndarray:
    """``values[e, c]``: element e of T under generator assignment column c."""
    cols = list(gen_values)
    length = gen_values.shape[1]
    return np.stack([evaluate_columns(B, t, cols, length) for t in T.terms])


def verify_sigma_iso(spec: RightAdjointSpec, B: FiniteAlgebra) -> SigmaIsoReport:
    """Check ``sigma_B : hom_Y(F(Tm_X(1)), B) -> G(B)`` is an X-isomorphism.

    ``hom_Y(F1, B)`` carries ``psi(f_1..f_n) = [f_1..f_n] . F(psi)``, where
    ``[f_1..f_n]`` is the homomorphism out of the canonical n-fold algebra
    sending generator ``j*k+i`` to ``f_j(pi1(x^i))``.  ``sigma(f)`` is the
    tuple ``(f(pi1(x^i)))_i``.
    """
    data = spec.data
    if data is None:
        raise ValueError("this right adjoint carries no functor data")
    k = spec.ct.kappa
    F1 = data.pi1.target
    from .classes import free_algebra
    gens = [data.pi1.map[g] for g in free_algebra(data.Y, k).generators]
    H = _hom_maps(F1, B)
    index = {m: j for j, m in enumerate(H)}
    G, inclusion = theta_sub(matrix_power(B, spec.lang), spec.theta)
    where = {e: j for j, e in enumerate(inclusion)}
    hmat = np.asarray(H, dtype=np.int64).reshape(len(H), F1.size)
    # sigma
    sigma = []
    for m in H:
        code = sum(m[g] * B.size ** i for i, g in enumerate(gens))
        sigma.append(where.get(int(code), -1))
    bijective = -1 not in sigma and sorted(sigma) == list(range(G.size))
    is_hom = bijective
    for sym, ar in spec.X.sig.ops:
        if not is_hom:
            break
        f = data.op(sym)
        T = data.target(sym)
        tuples = all_assignments(len(H), ar)
        # generator j*k+i of T goes to f_j(pi1(x^i))
        gen_values = np.empty((ar * k, tuples.shape[1]), dtype=np.int64)
        for j in range(ar):
            for i, g in enumerate(gens):
                gen_values[j * k + i] = hmat[tuples[j], g]
        vals = _cotuple_values(T, B, gen_values)           # (|T|, columns)
        composite = vals[np.asarray(f.map, dtype=np.int64)]   # (|F1|, columns)
        table = np.asarray(G.tables[sym])
        for c in range(tuples.shape[1]):
            res = index.get(tuple(int(v) for v in composite[:, c]))
            if res is None:
                is_hom = False
                break
            args = tuple(sigma[int(a)] for a in tuples[:, c])
            if sigma[res] != int(table[args] if ar else table):
                is_hom = False
                break
    return SigmaIsoReport(len(H), G.size, bijective, is_hom)


@dataclass(frozen=True)
class FinitenessReport:
    kappa_finite: bool
    theta_finite: bool
    witness: Presentation


def finiteness_report(spec: RightAdjointSpec) -> FinitenessReport:
    """Both are always finite here; the witness presents F(Tm_X(1))."""
    ct = spec.ct
    return FinitenessReport(True, True, Presentation(ct.kappa, ct.context))

