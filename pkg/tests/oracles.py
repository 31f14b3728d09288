"""Brute-force reference computations, kept independent of the package internals.

Algebras are handled as plain dicts ``{symbol: {args tuple: value}}`` built
from a FiniteAlgebra's tables, and everything is plain itertools.
"""
from __future__ import annotations

import itertools

import numpy as np


def tables_of(A):
    out = {}
    for sym, ar in A.sig.ops:
        t = np.asarray(A.tables[sym])
        out[sym] = {args: int(t[args]) for args in itertools.product(range(A.size), repeat=ar)}
    return out


def ev(tabs, t, asg):
    """Evaluate a term (Var/App duck-typed) over dict tables."""
    if hasattr(t, "index"):
        return asg[t.index]
    return tabs[t.symbol][tuple(ev(tabs, a, asg) for a in t.args)]


def homs(A, B):
    """Every map A -> B preserving every operation, by trying all |B|^|A| maps."""
    ta, tb = tables_of(A), tables_of(B)
    out = []
    for f in itertools.product(range(B.size), repeat=A.size):
        if all(f[ta[s][args]] == tb[s][tuple(f[a] for a in args)]
               for s in ta for args in ta[s]):
            out.append(f)
    return out


def free_size(algebras, n, sig, rounds=6):
    """Size of the free algebra: distinct term functions on n variables.

    A term function is its value vector over every (algebra, assignment) pair;
    closing under the operations until nothing new appears.
    """
    points = []
    for A in algebras:
        tabs = tables_of(A)
        for asg in itertools.product(range(A.size), repeat=n):
            points.append((tabs, asg))
    funcs = {tuple(asg[j] for _, asg in points) for j in range(n)}
    for sym, ar in sig.ops:
        if ar == 0:
            funcs.add(tuple(tabs[sym][()] for tabs, _ in points))
    for _ in range(rounds):
        new = set(funcs)
        for sym, ar in sig.ops:
            if ar == 0:
                continue
            for args in itertools.product(sorted(funcs), repeat=ar):
                new.add(tuple(tabs[sym][tuple(a[p] for a in args)]
                              for p, (tabs, _) in enumerate(points)))
        if new == funcs:
            return len(funcs)
        funcs = new
    raise RuntimeError("closure did not stabilize")


def kleene_pairs(A):
    """G(A) = {(a, b) : a & b = 0} with the twisted Kleene operations, as dicts."""
    t = tables_of(A)
    meet, join = t["meet"], t["join"]
    bot, top = t["bot"][()], t["top"][()]
    elems = [(a, b) for a in range(A.size) for b in range(A.size) if meet[(a, b)] == bot]
    ops = {
        "meet": {(p, q): (meet[(p[0], q[0])], join[(p[1], q[1])]) for p in elems for q in elems},
        "join": {(p, q): (join[(p[0], q[0])], meet[(p[1], q[1])]) for p in elems for q in elems},
        "neg": {(p,): (p[1], p[0]) for p in elems},
        "bot": {(): (bot, top)},
        "top": {(): (top, bot)},
    }
    return elems, ops


def dict_algebra(elems, ops, sig):
    """A FiniteAlgebra on ``range(len(elems))`` from dict operations over ``elems``."""
    from forge.finalg import FiniteAlgebra
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    tables = {}
    for sym, ar in sig.ops:
        t = np.zeros((n,) * ar, dtype=np.int64)
        for args, v in ops[sym].items():
            t[tuple(idx[x] for x in args)] = idx[v]
        tables[sym] = t
    return FiniteAlgebra(sig, n, tables)


def preserves(f, A, B):
    """Does the list ``f`` preserve every operation from A to B (dict check)?"""
    ta, tb = tables_of(A), tables_of(B)
    return all(f[ta[s][args]] == tb[s][tuple(f[a] for a in args)]
               for s in ta for args in ta[s])
