"""Relative equational consequence over a finite battery of algebras.

A :class:`ClassBattery` stands for the quasi-variety its generators produce.
Quasi-equations persist under I, S and P, so checking every assignment in
every generator decides consequence for that quasi-variety exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .finalg import (
    Congruence, FiniteAlgebra, Homomorphism, _dense, _HomSearch, all_assignments,
    close, evaluate, evaluate_columns, quasi_counterexample, quotient, trivial_algebra, max_universe,
)
from .terms import Equation, Signature, Term, print_term

__all__ = [
    "ClassBattery", "Presentation", "FreeAlgebra", "entails", "countermodel",
    "free_algebra", "presented", "cgK", "present", "hom_from_generators", "parse_presentation",
]


@dataclass(frozen=True)
class ClassBattery:
    sig: Signature
    generators: tuple[FiniteAlgebra, ...]
    label: str = "K"

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a battery needs at least one generator")
        for g in gens:
            if g.sig != self.sig:
                raise ValueError(f"generator over {g.sig.name}, battery over {self.sig.name}")
        object.__setattr__(self, "generators", gens)

    def __str__(self):
        sizes = ",".join(str(g.size) for g in self.generators)
        return f"{self.label}[{sizes}]"


@dataclass(frozen=True)
class Presentation:
    num_generators: int
    relations: tuple[Equation, ...] = ()

    def __post_init__(self):
        rels = tuple(dict.fromkeys(self.relations))
        for r in rels:
            vs = r.variables()
            if vs and vs[-1] >= self.num_generators:
                raise ValueError(f"relation {r} uses a variable beyond x{self.num_generators - 1}")
        object.__setattr__(self, "relations", rels)

    def __str__(self):
        return "; ".join([str(self.num_generators)] + [str(r) for r in self.relations]) + (
            "" if self.relations else ";")


def parse_presentation(text: str, sig: Signature | None = None) -> Presentation:
    from .terms import parse_equation
    parts = [p.strip() for p in text.split(";")]
    try:
        n = int(parts[0])
    except ValueError:
        raise ValueError(f"presentation must start with a generator count: {text!r}") from None
    rels = tuple(parse_equation(p, sig) for p in parts[1:] if p)
    return Presentation(n, rels)


def countermodel(K: ClassBattery, premises: Iterable[Equation], conclusion: Equation,
                 num_vars: int | None = None) -> tuple[int, tuple[int, ...]] | None:
    """``(generator index, assignment)`` refuting the deduction, or ``None``."""
    premises = tuple(premises)
    if num_vars is None:
        vs = set(conclusion.variables())
        for p in premises:
            vs.update(p.variables())
        num_vars = max(vs) + 1 if vs else 0
    for gi, A in enumerate(K.generators):
        bad = quasi_counterexample(A, premises, conclusion, num_vars)
        if bad is not None:
            return gi, bad
    return None


def entails(K: ClassBattery, premises: Iterable[Equation], conclusion: Equation,
            num_vars: int | None = None) -> bool:
    return countermodel(K, premises, conclusion, num_vars) is None


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    """Free algebra with its generators and a representative term per element.

    Unpacks as ``(algebra, generators, terms)``.  ``rows[e, c]`` is the value
    of element e at coordinate c, where coordinate c is the pair
    ``coords[c] = (battery index, assignment)``; each coordinate is thus a
    homomorphism into a battery member.
    """
    algebra: FiniteAlgebra
    generators: tuple[int, ...]
    terms: tuple[Term, ...]
    battery: ClassBattery
    rows: np.ndarray
    coords: tuple[tuple[int, tuple[int, ...]], ...]

    def __iter__(self):
        return iter((self.algebra, self.generators, self.terms))

    def term_of(self, e: int) -> Term:
        return self.terms[e]

    def element_of(self, t: Term) -> int:
        return evaluate(self.algebra, t, {j: g for j, g in enumerate(self.generators)})

    def hom_to(self, target: FiniteAlgebra, images: Sequence[int]) -> Homomorphism:
        """The homomorphism sending generator j to ``images[j]``.

        Raises ``ValueError`` if the images violate a relation.
        """
        if len(images) != len(self.generators):
            raise ValueError("need one image per generator")
        asg = dict(enumerate(int(v) for v in images))
        fmap = tuple(evaluate(target, t, asg) for t in self.terms)
        try:
            return Homomorphism(self.algebra, target, fmap)
        except ValueError:
            raise ValueError("generator images do not respect the relations") from None


_FREE_REGISTRY: dict[FiniteAlgebra, FreeAlgebra] = {}


def _satisfying(A: FiniteAlgebra, n: int, relations: Sequence[Equation]) -> np.ndarray:
    asg = all_assignments(A.size, n)
    ok = np.ones(asg.shape[1], dtype=bool)
    cols = list(asg)
    for r in relations:
        ok &= (evaluate_columns(A, r.lhs, cols, asg.shape[1])
               == evaluate_columns(A, r.rhs, cols, asg.shape[1]))
    return asg[:, ok]


@lru_cache(maxsize=None)
def presented(K: ClassBattery, P: Presentation) -> FreeAlgebra:
    """The K-algebra presented by ``P``, built directly.

    Homomorphisms out of the presented algebra into battery members are the
    assignments that satisfy the relations, so the algebra is the subalgebra
    generated by the generator tuples inside the product over exactly those
    assignments.  With no relations this is the free algebra.
    """
    n = P.num_generators
    coords: list[FiniteAlgebra] = []
    seed_cols: list[np.ndarray] = []
    where: list[tuple[int, tuple[int, ...]]] = []
    for gi, A in enumerate(K.generators):
        asg = _satisfying(A, n, P.relations)
        coords.extend([A] * asg.shape[1])
        seed_cols.append(asg)
        where.extend((gi, tuple(int(v) for v in asg[:, c])) for c in range(asg.shape[1]))
    seeds = np.concatenate(seed_cols, axis=1)
    if not coords:
        # no assignment satisfies the relations: the presented algebra is trivial
        coords = [trivial_algebra(K.sig)]
        seeds = np.zeros((n, 1), dtype=np.int64)
    cl = close(K.sig, coords, [seeds[j] for j in range(n)], max_size=max_universe() // 10)
    alg = FiniteAlgebra(K.sig, len(cl.terms), cl.tables,
                        [print_term(t) for t in cl.terms])
    rows = np.asarray(cl.rows, dtype=np.int64).reshape(len(cl.terms), len(coords))
    rows.setflags(write=False)
    fa = FreeAlgebra(alg, tuple(cl.seeds), tuple(cl.terms), K, rows, tuple(where))
    _FREE_REGISTRY.setdefault(alg, fa)
    return fa


def free_algebra(K: ClassBattery, n: int) -> FreeAlgebra:
    """Free algebra of Q(K) on ``n`` generators.

    Built inside the product over all pairs (generator A, assignment n -> A),
    seeded with the generator tuples.  Element order is discovery order, so the
    free generators come first; each representative term has minimal depth.
    """
    return presented(K, Presentation(n))


def _kernel_meet(A: FiniteAlgebra, maps: np.ndarray) -> Congruence:
    if len(maps) == 0:
        return Congruence.total(A)
    cols = np.ascontiguousarray(np.asarray(maps, dtype=np.int64).T)
    keys = cols.view(np.dtype((np.void, cols.dtype.itemsize * cols.shape[1]))).reshape(-1)
    return Congruence(A, _dense(k.tobytes() for k in keys))


def cgK(K: ClassBattery, A: FiniteAlgebra, pairs: Iterable[tuple[int, int]],
        method: str = "auto") -> Congruence:
    """Least K-congruence of ``A`` containing ``pairs``.

    Intersection of the kernels of all homomorphisms from ``A`` into battery
    members that identify every pair; the total congruence if there are none.
    For free algebras of ``K`` those homomorphisms are exactly the product
    coordinates (``method="auto"``); ``method="search"`` always enumerates.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    fa = _FREE_REGISTRY.get(A) if method == "auto" else None
    if fa is not None and fa.battery == K:
        maps = fa.rows.T
        keep = np.ones(len(maps), dtype=bool)
        for a, b in pairs:
            keep &= maps[:, a] == maps[:, b]
        return _kernel_meet(A, maps[keep])
    kernels: list[tuple[int, ...]] = []
    for G in K.generators:
        for m in _HomSearch(A, G).run():
            if all(m[a] == m[b] for a, b in pairs):
                kernels.append(m)
    return _kernel_meet(A, np.asarray(kernels, dtype=np.int64).reshape(len(kernels), A.size))


def present(K: ClassBattery, P: Presentation) -> tuple[FiniteAlgebra, Homomorphism]:
    """The K-algebra presented by ``P`` and its projection from the free algebra."""
    F = free_algebra(K, P.num_generators)
    pairs = [(F.element_of(r.lhs), F.element_of(r.rhs)) for r in P.relations]
    theta = cgK(K, F.algebra, pairs)
    Q, proj = quotient(F.algebra, theta)
    labels = [F.algebra.label(blk[0]) for blk in theta.blocks()]
    Q = Q.with_labels(labels)
    return Q, Homomorphism(F.algebra, Q, proj.map)


def hom_from_generators(source: FiniteAlgebra, generators: Sequence[int], target: FiniteAlgebra,
                        images: Sequence[int]) -> Homomorphism:
    """The homomorphism sending ``generators[j]`` to ``images[j]``.

    ``source`` must be generated by ``generators``.  Raises ``ValueError`` when
    the assignment does not extend (e.g. it violates a defining relation).
    """
    if len(images) != len(generators):
        raise ValueError("need one image per generator")
    fixed: dict[int, int] = {}
    for g, v in zip(generators, images):
        if fixed.setdefault(int(g), int(v)) != int(v):
            raise ValueError("generator images do not respect the relations")
    found = _HomSearch(source, target, fixed=fixed).run(limit=2)
    if not found:
        raise ValueError("generator images do not respect the relations")
    if len(found) > 1:
        raise ValueError("source is not generated by the given elements")
    return Homomorphism(source, target, found[0])
