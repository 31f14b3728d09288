"""Finite-exponent matrix powers.

An element of ``A^[k]`` is a k-tuple over A, encoded as the mixed-radix
integer ``sum(a_i * |A|**i)`` (coordinate 0 least significant).  A matrix
operation of arity n is a k-tuple of base terms over the flattened variables
``(m-1)*k + i`` standing for coordinate i of argument m (1-based).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classes import ClassBattery, entails, free_algebra
from .finalg import (
    FiniteAlgebra, Homomorphism, all_assignments, close, evaluate_columns, max_universe,
)
from .terms import App, Equation, Signature, Term, Var, check_term, print_term, substitute, variables_of

__all__ = [
    "MatrixOp", "MatrixLanguage", "MatrixPower", "matrix_power", "matrix_power_hom",
    "pointwise_language", "full_language", "sigma_check", "SigmaReport",
    "sigma_language", "sigma_construction", "encode", "decode", "max_universe",
]

@dataclass(frozen=True)
class MatrixOp:
    name: str
    arity: int
    exponent: int
    components: tuple[Term, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if self.exponent <= 0:
            raise ValueError("exponent must be positive")
        if len(comps) != self.exponent:
            raise ValueError(f"{self.name}: expected {self.exponent} components, got {len(comps)}")
        limit = self.arity * self.exponent
        for t in comps:
            bad = [j for j in variables_of(t) if j >= limit]
            if bad:
                raise ValueError(f"{self.name}: variable x{bad[0]} outside {limit} allowed")

    def __str__(self):
        return f"{self.name}/{self.arity} := " + ", ".join(print_term(t) for t in self.components)


@dataclass(frozen=True)
class MatrixLanguage:
    base: Signature
    exponent: int
    ops: tuple[MatrixOp, ...]
    name: str | None = None

    def __post_init__(self):
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        names = [o.name for o in ops]
        if len(set(names)) != len(names):
            raise ValueError("matrix operation names must be distinct")
        for o in ops:
            if o.exponent != self.exponent:
                raise ValueError(f"{o.name} has exponent {o.exponent}, language has {self.exponent}")
            for t in o.components:
                check_term(t, self.base)

    @property
    def signature(self) -> Signature:
        return Signature(self.name or f"{self.base.name}^[{self.exponent}]",
                         tuple((o.name, o.arity) for o in self.ops))

    def op(self, name: str) -> MatrixOp:
        for o in self.ops:
            if o.name == name:
                return o
        raise KeyError(name)


@dataclass(frozen=True, eq=False)
class MatrixPower(FiniteAlgebra):
    """``base^[k]`` over a chosen finite language; remembers how it was built."""
    base: FiniteAlgebra | None = None
    lang: MatrixLanguage | None = None

    def coordinates(self, e: int) -> tuple[int, ...]:
        return tuple(int(c) for c in decode(e, self.base.size, self.lang.exponent))


def decode(e, n: int, k: int) -> np.ndarray:
    """Coordinates of encoded element(s) ``e``; shape ``(k,) + shape(e)``."""
    e = np.asarray(e, dtype=np.int64)
    return np.stack([(e // n ** i) % n for i in range(k)])


def encode(coords: Sequence, n: int) -> np.ndarray | int:
    total = 0
    for i, c in enumerate(coords):
        total = total + np.asarray(c, dtype=np.int64) * n ** i
    return total


def _component_values(A: FiniteAlgebra, comps: Sequence[Term], arg_coords: Sequence[np.ndarray],
                       k: int, length: int) -> list[np.ndarray]:
    """Evaluate each component with x_{m*k+i} := coordinate i of argument m."""
    cols = {m * k + i: arg_coords[m][i] for m in range(len(arg_coords)) for i in range(k)}
    return [evaluate_columns(A, t, cols, length) for t in comps]


def matrix_power(A: FiniteAlgebra, L: MatrixLanguage, limit: int | None = None) -> MatrixPower:
    if A.sig != L.base:
        raise ValueError(f"algebra over {A.sig.name}, language over {L.base.name}")
    k, n = L.exponent, A.size
    size = n ** k
    limit = max_universe() if limit is None else limit
    if size > limit:
        raise OverflowError(f"|A|^{k} = {size} exceeds the universe limit {limit}")
    tables = {}
    for op in L.ops:
        args = all_assignments(size, op.arity)
        length = args.shape[1]
        arg_coords = [decode(args[m], n, k) for m in range(op.arity)]
        vals = _component_values(A, op.components, arg_coords, k, length)
        tables[op.name] = encode(vals, n).reshape((size,) * op.arity)
    labels = None
    if A.labels is not None and size <= 4096:
        labels = ["<" + ",".join(A.label(int(c)) for c in decode(e, n, k)) + ">" for e in range(size)]
    return MatrixPower(L.signature, size, tables, labels, base=A, lang=L)


def matrix_power_hom(f: Homomorphism, L: MatrixLanguage,
                     source: MatrixPower | None = None, target: MatrixPower | None = None) -> Homomorphism:
    """``f^[k]``: apply ``f`` coordinatewise."""
    k = L.exponent
    src = source if source is not None else matrix_power(f.source, L)
    tgt = target if target is not None else matrix_power(f.target, L)
    fmap = np.asarray(f.map, dtype=np.int64)
    coords = decode(np.arange(src.size), f.source.size, k)
    image = encode([fmap[c] for c in coords], f.target.size) if src.size else np.zeros(0, dtype=np.int64)
    return Homomorphism(src, tgt, tuple(int(x) for x in np.atleast_1d(image)))


# -------------------------------------------------------------- languages

def pointwise_language(base: Signature, k: int) -> MatrixLanguage:
    """Every basic operation applied coordinatewise."""
    ops = []
    for sym, ar in base.ops:
        comps = tuple(App(sym, tuple(Var(m * k + i) for m in range(ar))) for i in range(k))
        ops.append(MatrixOp(sym, ar, k, comps))
    return MatrixLanguage(base, k, tuple(ops))


def full_language(base: Signature, k: int) -> MatrixLanguage:
    """A finite language generating all of the k-th matrix power clone.

    Pointwise basic operations plus the diagonal ``<x^0,...,x^0>``, the cyclic
    shift ``<x^1,...,x^{k-1},x^0>`` and the k-ary diagonal mixer
    ``<x_1^0, x_2^1, ..., x_k^{k-1}>``.
    """
    L = pointwise_language(base, k)
    extra = []
    if k > 1:
        extra.append(MatrixOp("diag", 1, k, tuple(Var(0) for _ in range(k))))
        extra.append(MatrixOp("shift", 1, k, tuple(Var((i + 1) % k) for i in range(k))))
        extra.append(MatrixOp("mix", k, k, tuple(Var(i * k + i) for i in range(k))))
    for o in extra:
        if o.name in base:
            raise ValueError(f"base signature already uses {o.name!r}")
    return MatrixLanguage(base, k, L.ops + tuple(extra))


# ------------------------------------------------------- sigma construction

@dataclass(frozen=True)
class SigmaReport:
    idempotent: bool
    invertible: bool
    witness: Term | None

    def __bool__(self):
        return self.idempotent and self.invertible


def _unary(sigma: Term):
    if variables_of(sigma) not in ((0,), ()):
        raise ValueError("sigma must be a term in x0 alone")


def sigma_check(K: ClassBattery, sigma: Term) -> SigmaReport:
    """Decide whether ``sigma(x)`` is idempotent and invertible over Q(K).

    Invertibility: the free generator must lie in the subalgebra of the free
    algebra on one generator generated by the image of sigma.  The witness is
    a term ``t(sigma t_1(x), ..., sigma t_n(x))`` equal to x over K.
    """
    _unary(sigma)
    x = Var(0)
    idem = entails(K, (), Equation(substitute(sigma, {0: sigma}), sigma), 1)
    F = free_algebra(K, 1)
    alg = F.algebra
    s_image = [F.element_of(substitute(sigma, {0: t})) for t in F.terms]
    seeds = list(dict.fromkeys(s_image))
    cl = close(alg.sig, [alg], [[s] for s in seeds])
    members = [int(r[0]) for r in cl.rows]
    gen = F.generators[0]
    if gen not in members:
        return SigmaReport(idem, False, None)
    # Var(j) in a closure term stands for seed j = sigma(t_j(x))
    producer = {}
    for u, s in zip(F.terms, s_image):
        producer.setdefault(s, u)
    term = cl.terms[members.index(gen)]
    images = {j: substitute(sigma, {0: producer[seeds[j]]}) for j in range(len(seeds))}
    witness = substitute(term, images)
    assert entails(K, (), Equation(witness, x), 1)
    return SigmaReport(idem, True, witness)


def sigma_language(base: Signature, sigma: Term) -> MatrixLanguage:
    """``{sigma t : t basic}`` as exponent-1 matrix operations."""
    _unary(sigma)
    ops = []
    for sym, ar in base.ops:
        t = App(sym, tuple(Var(m) for m in range(ar)))
        ops.append(MatrixOp(sym, ar, 1, (substitute(sigma, {0: t}),)))
    return MatrixLanguage(base, 1, tuple(ops), name=f"{base.name}(sigma)")


def sigma_construction(A: FiniteAlgebra, K: ClassBattery, sigma: Term) -> FiniteAlgebra:
    """``A(sigma)``: the fixed points of sigma with the operations ``sigma t``."""
    from .thetasub import ThetaSpec, theta_sub
    report = sigma_check(K, sigma)
    if not report.idempotent:
        raise ValueError(f"{print_term(sigma)} is not idempotent over {K}")
    if not report.invertible:
        raise ValueError(f"{print_term(sigma)} is not invertible over {K}")
    L = sigma_language(A.sig, sigma)
    spec = ThetaSpec(((( Var(0),), (sigma,)),), L)
    B, _ = theta_sub(matrix_power(A, L), spec)
    return B
