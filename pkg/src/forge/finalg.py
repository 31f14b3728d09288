"""Finite algebras over the universe {0..n-1}.

Operation tables are numpy arrays of shape ``(n,) * arity`` (so a flat,
row-major view is the serialized table).  Everything is decided by
exhaustive evaluation, vectorized over assignments where it matters.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .terms import App, Equation, QuasiEquation, Signature, Term, Var

__all__ = [
    "FiniteAlgebra", "Homomorphism", "Congruence", "count_homs", "quasi_counterexample",
    "evaluate", "evaluate_columns",
    "satisfies_equation", "satisfies_quasi_equation", "enumerate_homs",
    "naive_homs", "product", "subalgebra_generated", "quotient", "kernel",
    "find_isomorphism", "is_isomorphic", "identity_hom", "compose",
    "trivial_algebra", "all_assignments", "Closure", "close", "max_universe",
]


DEFAULT_MAX_UNIVERSE = 10 ** 6


def max_universe() -> int:
    """Size limit for constructed universes; ``FORGE_MAX_UNIVERSE`` overrides it."""
    return int(os.environ.get("FORGE_MAX_UNIVERSE", DEFAULT_MAX_UNIVERSE))


def _freeze(arr: np.ndarray) -> np.ndarray:
    # np.ascontiguousarray would promote 0-d constant tables to 1-d
    arr = np.array(arr, dtype=np.int64, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    sig: Signature
    size: int
    tables: Mapping[str, np.ndarray]
    labels: tuple[str, ...] | None = None
    _hash: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        n = int(self.size)
        if n < 0:
            raise ValueError("negative size")
        if n == 0 and self.sig.constants:
            raise ValueError("the empty algebra needs a signature without constants")
        tables = {}
        for sym, ar in self.sig.ops:
            if sym not in self.tables:
                raise ValueError(f"missing table for {sym!r}")
            t = np.asarray(self.tables[sym], dtype=np.int64)
            if t.size != n ** ar:
                raise ValueError(f"table {sym!r} has {t.size} entries, expected {n ** ar}")
            t = t.reshape((n,) * ar)
            if t.size and (t.min() < 0 or t.max() >= n):
                raise ValueError(f"table {sym!r} has entries outside 0..{n - 1}")
            tables[sym] = _freeze(t)
        extra = set(self.tables) - set(tables)
        if extra:
            raise ValueError(f"tables for symbols outside the signature: {sorted(extra)}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise ValueError("labels must name every element")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "tables", tables)
        h = hash((self.sig, n) + tuple(t.tobytes() for t in tables.values()))
        object.__setattr__(self, "_hash", h)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self._hash == other._hash and self.sig == other.sig and self.size == other.size
                and all(np.array_equal(self.tables[s], other.tables[s]) for s in self.sig.symbols))

    def __repr__(self):
        return f"FiniteAlgebra({self.sig.name}, size={self.size})"

    @property
    def universe(self) -> range:
        return range(self.size)

    def op(self, symbol: str, *args: int) -> int:
        return int(self.tables[symbol][tuple(args)])

    def constant(self, symbol: str) -> int:
        return int(self.tables[symbol][()])

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else str(e)

    def with_signature(self, sig: Signature, rename: Mapping[str, str] | None = None) -> "FiniteAlgebra":
        """Same tables under another signature (``rename`` maps new -> old symbols)."""
        rename = rename or {}
        tables = {s: self.tables[rename.get(s, s)] for s in sig.symbols}
        return FiniteAlgebra(sig, self.size, tables, self.labels)

    def with_labels(self, labels: Sequence[str] | None) -> "FiniteAlgebra":
        return FiniteAlgebra(self.sig, self.size, self.tables, labels)


def trivial_algebra(sig: Signature) -> FiniteAlgebra:
    return FiniteAlgebra(sig, 1, {s: np.zeros((1,) * a, dtype=np.int64) for s, a in sig.ops})


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        fmap = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", fmap)
        if self.source.sig != self.target.sig:
            raise ValueError("homomorphism between algebras of different signatures")
        if len(fmap) != self.source.size:
            raise ValueError("map length differs from source size")
        if any(not 0 <= x < self.target.size for x in fmap):
            raise ValueError("map value outside target universe")
        bad = _preservation_failure(self.source, self.target, np.asarray(fmap, dtype=np.int64))
        if bad is not None:
            sym, args = bad
            raise ValueError(f"map does not preserve {sym!r} at arguments {args}")

    def __call__(self, e: int) -> int:
        return self.map[e]

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return self.map == other.map and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash((self.map, self.source, self.target))

    def __repr__(self):
        return f"Homomorphism({self.source!r} -> {self.target!r}, {list(self.map)})"

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.size


def _preservation_failure(A, B, fmap):
    for sym, ar in A.sig.ops:
        ta, tb = A.tables[sym], B.tables[sym]
        if ar == 0:
            if fmap[ta[()]] != tb[()]:
                return sym, ()
            continue
        if A.size == 0:
            continue
        lhs = fmap[ta]
        rhs = tb[np.ix_(*([fmap] * ar))]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            return sym, tuple(int(x) for x in diff[0])
    return None


def identity_hom(A: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(A, A, tuple(range(A.size)))


def compose(g: Homomorphism, f: Homomorphism) -> Homomorphism:
    """``g o f``."""
    if f.target != g.source:
        raise ValueError("cannot compose: codomain of f is not the domain of g")
    return Homomorphism(f.source, g.target, tuple(g.map[x] for x in f.map))


@dataclass(frozen=True, eq=False)
class Congruence:
    algebra: FiniteAlgebra
    block_of: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        dense = tuple(relabel.setdefault(int(b), len(relabel)) for b in self.block_of)
        if len(dense) != self.algebra.size:
            raise ValueError("block assignment must cover every element")
        object.__setattr__(self, "block_of", dense)
        witness = _congruence_failure(self.algebra, np.asarray(dense, dtype=np.int64))
        if witness is not None:
            raise ValueError(f"partition is not a congruence: {witness}")

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.block_of == other.block_of and self.algebra == other.algebra

    def __hash__(self):
        return hash(self.block_of)

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for e, b in enumerate(self.block_of):
            out[b].append(e)
        return out

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def pairs(self) -> list[tuple[int, int]]:
        """Nontrivial related pairs ``(a, b)`` with ``a < b``."""
        return [(a, b) for blk in self.blocks() for a, b in itertools.combinations(blk, 2)]

    def __le__(self, other: "Congruence") -> bool:
        return all(other.related(a, b) for a, b in self.pairs())

    def meet(self, other: "Congruence") -> "Congruence":
        return Congruence(self.algebra, _dense(zip(self.block_of, other.block_of)))

    @classmethod
    def identity(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, tuple(range(A.size)))

    @classmethod
    def total(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, (0,) * A.size)


def _dense(keys: Iterable) -> tuple[int, ...]:
    seen: dict = {}
    return tuple(seen.setdefault(k, len(seen)) for k in keys)


def _congruence_failure(A, blocks):
    if A.size == 0:
        return None
    nb = int(blocks.max()) + 1
    rep = np.full(nb, -1, dtype=np.int64)
    for e in range(A.size - 1, -1, -1):
        rep[blocks[e]] = e
    for sym, ar in A.sig.ops:
        if ar == 0:
            continue
        t = A.tables[sym]
        canon = blocks[t]
        # compare against the table evaluated at block representatives
        reps = rep[blocks]
        ref = blocks[t[np.ix_(*([reps] * ar))]]
        diff = np.argwhere(canon != ref)
        if len(diff):
            args = tuple(int(x) for x in diff[0])
            return f"{sym}{args} lands in block {int(canon[tuple(diff[0])])}, not {int(ref[tuple(diff[0])])}"
    return None


# ----------------------------------------------------------------- evaluation

def evaluate_columns(alg: FiniteAlgebra, t: Term, columns: Mapping[int, np.ndarray] | Sequence[np.ndarray],
                     length: int | None = None) -> np.ndarray:
    """Evaluate ``t`` on many assignments at once.

    ``columns[j]`` holds the values of variable j, one per assignment.
    """
    if not isinstance(columns, Mapping):
        columns = dict(enumerate(columns))
    if length is None:
        length = len(next(iter(columns.values()))) if columns else 1
    memo: dict[Term, np.ndarray] = {}

    def ev(s: Term) -> np.ndarray:
        got = memo.get(s)
        if got is not None:
            return got
        if isinstance(s, Var):
            if s.index not in columns:
                raise KeyError(f"unassigned variable x{s.index}")
            out = np.asarray(columns[s.index], dtype=np.int64)
        else:
            try:
                table = alg.tables[s.symbol]
            except KeyError:
                raise KeyError(f"unknown symbol {s.symbol!r} for {alg.sig.name}") from None
            if table.ndim != len(s.args):
                raise ValueError(f"arity mismatch for {s.symbol!r}")
            if not s.args:
                out = np.full(length, table[()], dtype=np.int64)
            else:
                out = table[tuple(ev(a) for a in s.args)]
        memo[s] = out
        return out

    return ev(t)


def evaluate(alg: FiniteAlgebra, t: Term, assignment: Mapping[int, int] | Sequence[int] = ()) -> int:
    if not isinstance(assignment, Mapping):
        assignment = dict(enumerate(assignment))
    cols = {j: np.array([v], dtype=np.int64) for j, v in assignment.items()}
    return int(evaluate_columns(alg, t, cols, 1)[0])


def all_assignments(size: int, num_vars: int) -> np.ndarray:
    """Array of shape ``(num_vars, size**num_vars)``, lexicographic with x0 slowest."""
    if num_vars == 0:
        return np.zeros((0, 1), dtype=np.int64)
    return np.indices((size,) * num_vars, dtype=np.int64).reshape(num_vars, -1)


def _holds(alg, eq: Equation, cols, length):
    return evaluate_columns(alg, eq.lhs, cols, length) == evaluate_columns(alg, eq.rhs, cols, length)


def quasi_counterexample(alg: FiniteAlgebra, premises: Sequence[Equation], conclusion: Equation,
                         num_vars: int) -> tuple[int, ...] | None:
    """First assignment of x0..x_{num_vars-1} violating the implication, if any."""
    if alg.size == 0:
        return None
    cols = all_assignments(alg.size, num_vars)
    length = cols.shape[1]
    ok = np.ones(length, dtype=bool)
    for p in premises:
        ok &= _holds(alg, p, cols, length)
        if not ok.any():
            return None
    bad = ok & ~_holds(alg, conclusion, cols, length)
    idx = np.flatnonzero(bad)
    if len(idx) == 0:
        return None
    return tuple(int(v) for v in cols[:, idx[0]])


def _num_vars(q: QuasiEquation) -> int:
    vs = q.variables()
    return vs[-1] + 1 if vs else 0


def satisfies_quasi_equation(alg: FiniteAlgebra, q: QuasiEquation) -> bool:
    return quasi_counterexample(alg, q.premises, q.conclusion, _num_vars(q)) is None


def satisfies_equation(alg: FiniteAlgebra, eq: Equation) -> bool:
    return satisfies_quasi_equation(alg, QuasiEquation((), eq))


# --------------------------------------------------------------- hom search

def _profiles(alg: FiniteAlgebra) -> list[tuple]:
    """Cheap isomorphism invariants per element."""
    n = alg.size
    feats = []
    idx = np.arange(n)
    for sym, ar in alg.sig.ops:
        t = alg.tables[sym]
        if ar == 0:
            feats.append(idx == t[()])
        elif ar == 1:
            feats.append(t == idx)
            feats.append(np.bincount(t, minlength=n))
        elif ar == 2:
            feats.append(t[idx, idx] == idx)
            feats.append((t == idx[:, None]).sum(axis=1))
            feats.append((t == idx[None, :]).sum(axis=0))
    return [tuple(int(f[e]) for f in feats) for e in range(n)]


class _HomSearch:
    def __init__(self, A: FiniteAlgebra, B: FiniteAlgebra, injective: bool = False,
                 fixed: Mapping[int, int] | None = None):
        if A.sig != B.sig:
            raise ValueError(f"signature mismatch: {A.sig.name} vs {B.sig.name}")
        self.A, self.B = A, B
        self.injective = injective
        self.fixed = dict(fixed or {})
        n = A.size
        self.rules = []
        for sym, ar in A.sig.ops:
            ta, tb = A.tables[sym], B.tables[sym]
            if ar == 0:
                self.rules.append((0, None, np.array([ta[()]]), tb))
            else:
                args = all_assignments(n, ar)
                self.rules.append((ar, args, ta.reshape(-1), tb))
        self.allowed = None
        if injective:
            pa, pb = _profiles(A), _profiles(B)
            self.allowed = [[b for b in range(B.size) if pb[b] == pa[a]] for a in range(n)]

    def propagate(self, fmap: np.ndarray) -> bool:
        changed = True
        while changed:
            changed = False
            for ar, args, res, tb in self.rules:
                if ar == 0:
                    r, img = res, np.array([tb[()]])
                else:
                    mapped = fmap[args]
                    known = (mapped >= 0).all(axis=0)
                    if not known.any():
                        continue
                    img = tb[tuple(mapped[:, known])]
                    r = res[known]
                cur = fmap[r]
                if ((cur >= 0) & (cur != img)).any():
                    return False
                fresh = cur < 0
                if fresh.any():
                    rr, ii = r[fresh], img[fresh]
                    fmap[rr] = ii
                    if (fmap[rr] != ii).any():
                        return False
                    changed = True
        if self.injective:
            vals = fmap[fmap >= 0]
            if len(np.unique(vals)) != len(vals):
                return False
            if self.allowed is not None:
                for a in np.flatnonzero(fmap >= 0):
                    if int(fmap[a]) not in self.allowed[a]:
                        return False
        return True

    def run(self, limit: int | None = None) -> list[tuple[int, ...]]:
        n = self.A.size
        if n == 0:
            return [()]
        if self.B.size == 0:
            return []
        fmap = np.full(n, -1, dtype=np.int64)
        for a, b in self.fixed.items():
            fmap[a] = b
        if not self.propagate(fmap):
            return []
        out: list[tuple[int, ...]] = []
        stack = [fmap]
        # depth-first, candidates ascending -> lexicographic output order
        while stack:
            cur = stack.pop()
            free = np.flatnonzero(cur < 0)
            if len(free) == 0:
                out.append(tuple(int(x) for x in cur))
                if limit is not None and len(out) >= limit:
                    break
                continue
            pos = int(free[0])
            cands = self.allowed[pos] if self.allowed is not None else range(self.B.size)
            children = []
            for b in cands:
                nxt = cur.copy()
                nxt[pos] = b
                if self.propagate(nxt):
                    children.append(nxt)
            stack.extend(reversed(children))
        return out


def enumerate_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Homomorphism]:
    """All homomorphisms A -> B, sorted lexicographically by map."""
    maps = sorted(_HomSearch(A, B).run())
    return [Homomorphism(A, B, m) for m in maps]


def count_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> int:
    return len(_HomSearch(A, B).run())


def naive_homs(A: FiniteAlgebra, B: FiniteAlgebra) -> list[tuple[int, ...]]:
    """Brute force over all |B|^|A| maps; the oracle for ``enumerate_homs``."""
    out = []
    for m in itertools.product(range(B.size), repeat=A.size):
        if _preservation_failure(A, B, np.asarray(m, dtype=np.int64)) is None:
            out.append(tuple(m))
    return out


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> Homomorphism | None:
    if A.sig != B.sig or A.size != B.size:
        return None
    found = _HomSearch(A, B, injective=True).run(limit=1)
    return Homomorphism(A, B, found[0]) if found else None


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    return find_isomorphism(A, B) is not None


# ------------------------------------------------------------------ closure

@dataclass
class Closure:
    """Result of closing a seed set inside a product of coordinate algebras."""
    rows: np.ndarray                 # (k, d) coordinates of each element
    terms: list[Term]                # minimal-depth representative per element
    tables: dict[str, np.ndarray]    # operation tables on element indices
    seeds: list[int]                 # element index of each seed


def _cartesian(first: np.ndarray, rest: np.ndarray) -> np.ndarray:
    """Rows ``(a, *r)`` for a in ``first``, r in columns of ``rest``; lex order kept."""
    m = rest.shape[0] + 1
    out = np.empty((m, len(first) * rest.shape[1]), dtype=np.int64)
    out[0] = np.repeat(first, rest.shape[1])
    out[1:] = np.tile(rest, len(first))
    return out


def _fresh(k: int, m: int, start: int) -> np.ndarray:
    """All m-tuples over range(k) with some entry >= start, lexicographic."""
    if m == 1:
        return np.arange(start, k, dtype=np.int64)[None, :]
    return np.concatenate([_cartesian(np.arange(start), _fresh(k, m - 1, start)),
                           _cartesian(np.arange(start, k), all_assignments(k, m - 1))], axis=1)


def _fresh_tuples(k: int, m: int, start: int, budget: int):
    """Chunks of ``_fresh(k, m, start)`` in order, each at most ~``budget`` columns."""
    if m == 1:
        for s in range(start, k, budget):
            yield np.arange(s, min(k, s + budget), dtype=np.int64)[None, :]
        return
    tails = ((0, start, _fresh(k, m - 1, start) if start < k else None),
             (start, k, all_assignments(k, m - 1)))
    for lo, hi, rest in tails:
        if rest is None or rest.shape[1] == 0 or lo >= hi:
            continue
        step = max(1, budget // rest.shape[1])
        for a in range(lo, hi, step):
            yield _cartesian(np.arange(a, min(hi, a + step)), rest)


def _row_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).reshape(-1)


def close(sig: Signature, coords: Sequence[FiniteAlgebra], seeds: Sequence[Sequence[int]],
          chunk_bytes: int = 1 << 25, max_size: int | None = None) -> Closure:
    """Subuniverse of ``prod(coords)`` generated by ``seeds`` and the constants.

    Elements are discovered level by level (level = term depth).  Level 0 is
    the seeds in the given order, then constants in signature order; each
    later level is ordered by the first (symbol, argument-index tuple)
    producing it.  Since element order then agrees with the term order
    (depth, Var < App, symbol index, arguments), the first producer of each
    element gives its minimal representative term.
    """
    d = len(coords)
    maxn = max((c.size for c in coords), default=1)
    dtype = np.uint8 if maxn <= 256 else np.int64
    groups: dict[int, tuple[FiniteAlgebra, np.ndarray]] = {}
    for j, c in enumerate(coords):
        key = id(c)
        if key not in groups:
            groups[key] = (c, [])
        groups[key][1].append(j)
    groups = {k: (c, np.asarray(cols)) for k, (c, cols) in groups.items()}

    index: dict[bytes, int] = {}
    rows_list: list[np.ndarray] = []
    terms: list[Term] = []

    def add(row: np.ndarray, term: Term) -> int:
        key = row.tobytes()
        got = index.get(key)
        if got is not None:
            return got
        index[key] = len(terms)
        rows_list.append(row)
        terms.append(term)
        if max_size is not None and len(terms) > max_size:
            raise OverflowError(f"closure exceeds {max_size} elements")
        return len(terms) - 1

    seed_at = [add(np.asarray(s, dtype=dtype).reshape(d), Var(k)) for k, s in enumerate(seeds)]
    tables: dict[str, np.ndarray] = {}
    for sym in sig.constants:
        row = np.empty(d, dtype=dtype)
        for c, cols in groups.values():
            row[cols] = c.tables[sym][()]
        tables[sym] = np.array(add(row, App(sym)), dtype=np.int64)

    ops = [(sym, ar, sig.index(sym)) for sym, ar in sig.ops if ar > 0]
    partial = {sym: [] for sym, _, _ in ops}   # (tuple chunk, result indices) per round
    level_start, level_end = 0, len(terms)
    while level_start < level_end:
        rows = np.stack(rows_list) if rows_list else np.zeros((0, d), dtype=dtype)
        k = level_end
        new_rows: dict[bytes, tuple[int, int, np.ndarray, np.ndarray]] = {}
        pending = []   # (sym, tuple_idx, result_keys)
        for sym, ar, sidx in ops:
            budget = max(1, chunk_bytes // max(1, d * ar))
            for part in _fresh_tuples(k, ar, level_start, budget):
                res = np.empty((part.shape[1], d), dtype=dtype)
                for c, cols in groups.values():
                    res[:, cols] = c.tables[sym][tuple(rows[part[i]][:, cols] for i in range(ar))]
                keys = _row_keys(res)
                uniq, first, inv = np.unique(keys, return_index=True, return_inverse=True)
                for u, fi in zip(uniq, first):
                    kb = u.tobytes()
                    if kb in index:
                        continue
                    cand = (sidx, tuple(int(x) for x in part[:, fi]))
                    prev = new_rows.get(kb)
                    if prev is None or cand < prev[:2]:
                        new_rows[kb] = (cand[0], cand[1], res[fi].copy(), sym)
                pending.append((sym, part, uniq, inv))
        for kb, (sidx, args, row, sym) in sorted(new_rows.items(), key=lambda kv: kv[1][:2]):
            add(row, App(sym, tuple(terms[a] for a in args)))
        for sym, part, uniq, inv in pending:
            found = np.array([index[u.tobytes()] for u in uniq], dtype=np.int64)
            partial[sym].append((part, found[inv.reshape(-1)]))
        level_start, level_end = level_end, len(terms)

    k = len(terms)
    for sym, ar, _ in ops:
        tab = np.full((k,) * ar, -1, dtype=np.int64)
        for part, vals in partial[sym]:
            tab[tuple(part)] = vals
        tables[sym] = tab
    rows = np.stack(rows_list) if rows_list else np.zeros((0, d), dtype=dtype)
    return Closure(rows, terms, tables, seed_at)


# ------------------------------------------------------- class operators

def product(algebras: Sequence[FiniteAlgebra], sig: Signature | None = None
            ) -> tuple[FiniteAlgebra, list[Homomorphism]]:
    """Direct product with projections; element encoding is mixed radix with
    coordinate 0 least significant.  The empty product is the trivial algebra."""
    algebras = list(algebras)
    if sig is None:
        if not algebras:
            raise ValueError("empty product needs an explicit signature")
        sig = algebras[0].sig
    for a in algebras:
        if a.sig != sig:
            raise ValueError("signature mismatch in product")
    sizes = [a.size for a in algebras]
    n = int(np.prod(sizes, dtype=np.int64)) if sizes else 1
    coords = _decode(np.arange(n), sizes)
    tables = {}
    for sym, ar in sig.ops:
        if ar == 0:
            tables[sym] = np.array(_encode([a.tables[sym][()] for a in algebras], sizes))
            continue
        args = all_assignments(n, ar)
        comps = [a.tables[sym][tuple(coords[i][args[m]] for m in range(ar))]
                 for i, a in enumerate(algebras)]
        enc = np.broadcast_to(np.asarray(_encode(comps, sizes), dtype=np.int64), args.shape[1:])
        tables[sym] = enc.reshape((n,) * ar)
    labels = None
    if algebras and all(a.labels for a in algebras):
        labels = ["(" + ",".join(a.label(int(coords[i][e])) for i, a in enumerate(algebras)) + ")"
                  for e in range(n)]
    P = FiniteAlgebra(sig, n, tables, labels)
    projections = [Homomorphism(P, a, tuple(int(x) for x in coords[i])) for i, a in enumerate(algebras)]
    return P, projections


def _decode(elems: np.ndarray, sizes: Sequence[int]) -> list[np.ndarray]:
    out, rest = [], np.asarray(elems, dtype=np.int64)
    for s in sizes:
        out.append(rest % s)
        rest = rest // s
    return out


def _encode(comps: Sequence, sizes: Sequence[int]):
    total, radix = 0, 1
    for c, s in zip(comps, sizes):
        total = total + np.asarray(c, dtype=np.int64) * radix
        radix *= s
    return total


def subalgebra_generated(A: FiniteAlgebra, seed: Iterable[int]
                         ) -> tuple[FiniteAlgebra, Homomorphism]:
    seed = list(dict.fromkeys(int(s) for s in seed))
    cl = close(A.sig, [A], [[s] for s in seed])
    incl = tuple(int(x) for x in cl.rows[:, 0])
    labels = [A.label(e) for e in incl] if A.labels else None
    S = FiniteAlgebra(A.sig, len(incl), cl.tables, labels)
    return S, Homomorphism(S, A, incl)


def quotient(A: FiniteAlgebra, theta: Congruence) -> tuple[FiniteAlgebra, Homomorphism]:
    if theta.algebra != A:
        raise ValueError("congruence belongs to another algebra")
    blocks = np.asarray(theta.block_of, dtype=np.int64)
    k = theta.num_blocks
    reps = np.array([blk[0] for blk in theta.blocks()], dtype=np.int64)
    tables = {}
    for sym, ar in A.sig.ops:
        t = A.tables[sym]
        tables[sym] = blocks[t] if ar == 0 else blocks[t[np.ix_(*([reps] * ar))]]
    labels = None
    if A.labels:
        labels = ["{" + ",".join(A.label(e) for e in blk) + "}" for blk in theta.blocks()]
    Q = FiniteAlgebra(A.sig, k, tables, labels)
    return Q, Homomorphism(A, Q, theta.block_of)


def kernel(f: Homomorphism) -> Congruence:
    return Congruence(f.source, _dense(f.map))
