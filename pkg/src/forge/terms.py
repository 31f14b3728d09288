"""Signatures, terms, equations and quasi-equations.

Variables are indexed, never named: ``Var(j)`` prints as ``x<j>``.  Terms are
plain immutable trees; equality is syntactic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Signature", "Var", "App", "Term", "Equation", "QuasiEquation",
    "TermSyntaxError", "parse_term", "parse_equation", "print_term",
    "substitute", "variables_of", "depth", "shift", "check_term",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VARNAME = re.compile(r"x(\d+)(?:_(\d+))?")


class TermSyntaxError(ValueError):
    """Raised on malformed term text; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


@dataclass(frozen=True)
class Signature:
    name: str
    ops: tuple[tuple[str, int], ...]
    _arity: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ops = tuple((str(s), int(a)) for s, a in self.ops)
        object.__setattr__(self, "ops", ops)
        arity = {}
        for sym, ar in ops:
            if sym in arity:
                raise ValueError(f"duplicate symbol {sym!r} in signature {self.name}")
            if ar < 0:
                raise ValueError(f"negative arity for {sym!r}")
            if not _IDENT.fullmatch(sym) or _VARNAME.fullmatch(sym):
                raise ValueError(f"bad symbol name {sym!r}")
            arity[sym] = ar
        object.__setattr__(self, "_arity", arity)

    def arity(self, symbol: str) -> int:
        try:
            return self._arity[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol {symbol!r} in signature {self.name}") from None

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._arity

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.ops)

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(s for s, a in self.ops if a == 0)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def renamed(self, name: str) -> "Signature":
        return Signature(name, self.ops)


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return print_term(self)


Term = Union[Var, App]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{print_term(self.lhs)} = {print_term(self.rhs)}"

    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(set(variables_of(self.lhs)) | set(variables_of(self.rhs))))


@dataclass(frozen=True)
class QuasiEquation:
    premises: tuple[Equation, ...]
    conclusion: Equation

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def __str__(self):
        if not self.premises:
            return str(self.conclusion)
        return " & ".join(map(str, self.premises)) + " => " + str(self.conclusion)

    def variables(self) -> tuple[int, ...]:
        vs = set(self.conclusion.variables())
        for p in self.premises:
            vs.update(p.variables())
        return tuple(sorted(vs))


# ---------------------------------------------------------------- printing

def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(print_term(a) for a in t.args)})"


# ----------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str, sig: Signature | None, kappa: int | None):
        self.text = text
        self.pos = 0
        self.sig = sig
        self.kappa = kappa

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise TermSyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def term(self) -> Term:
        self.skip()
        start = self.pos
        m = _IDENT.match(self.text, self.pos)
        if not m:
            got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise TermSyntaxError(f"expected a term, got {got!r}", start)
        name = m.group(0)
        self.pos = m.end()
        vm = _VARNAME.fullmatch(name)
        if vm:
            j = int(vm.group(1))
            if vm.group(2) is None:
                return Var(j)
            if self.kappa is None:
                raise TermSyntaxError(f"block variable {name!r} needs an exponent", start)
            i = int(vm.group(2))
            if i >= self.kappa:
                raise TermSyntaxError(f"coordinate {i} out of range for exponent {self.kappa}", start)
            return Var(j * self.kappa + i)
        args: list[Term] = []
        if self.peek() == "(":
            self.pos += 1
            if self.peek() != ")":
                args.append(self.term())
                while self.peek() == ",":
                    self.pos += 1
                    args.append(self.term())
            self.expect(")")
        if self.sig is not None:
            if name not in self.sig:
                raise TermSyntaxError(f"unknown symbol {name!r}", start)
            ar = self.sig.arity(name)
            if ar != len(args):
                raise TermSyntaxError(
                    f"arity mismatch: {name!r} takes {ar} argument(s), got {len(args)}", start)
        return App(name, tuple(args))


def parse_term(text: str, sig: Signature | None = None, kappa: int | None = None) -> Term:
    """Parse ``text`` into a term.

    ``x<j>`` is variable j.  When ``kappa`` is given, ``x<j>_<i>`` denotes the
    i-th coordinate of block j, i.e. the flattened index ``j*kappa + i``.
    """
    p = _Parser(text, sig, kappa)
    t = p.term()
    p.skip()
    if p.pos != len(text):
        raise TermSyntaxError(f"unexpected trailing input {text[p.pos:]!r}", p.pos)
    return t


def parse_equation(text: str, sig: Signature | None = None, kappa: int | None = None) -> Equation:
    parts = _split_top(text, "=")
    if len(parts) != 2:
        raise TermSyntaxError(f"equation needs exactly one '=': {text!r}")
    return Equation(parse_term(parts[0], sig, kappa), parse_term(parts[1], sig, kappa))


def _split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses."""
    out, level, cur = [], 0, []
    for ch in text:
        if ch == "(":
            level += 1
        elif ch == ")":
            level -= 1
        if ch == sep and level == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ------------------------------------------------------------ manipulation

def check_term(t: Term, sig: Signature) -> None:
    """Raise ``ValueError`` unless every application in ``t`` fits ``sig``."""
    if isinstance(t, Var):
        return
    if t.symbol not in sig:
        raise ValueError(f"symbol {t.symbol!r} not in signature {sig.name}")
    if sig.arity(t.symbol) != len(t.args):
        raise ValueError(f"arity mismatch for {t.symbol!r} in signature {sig.name}")
    for a in t.args:
        check_term(a, sig)


def substitute(t: Term, mapping: Mapping[int, Term] | Sequence[Term],
               sig: Signature | None = None) -> Term:
    """Simultaneous substitution; unmapped variables stay fixed."""
    if not isinstance(mapping, Mapping):
        mapping = dict(enumerate(mapping))
    if sig is not None:
        check_term(t, sig)
        for img in mapping.values():
            check_term(img, sig)
    return _subst(t, mapping)


def _subst(t: Term, mapping: Mapping[int, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.index, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(_subst(a, mapping) for a in t.args))


def shift(t: Term, offset: int) -> Term:
    """Rename every ``Var(j)`` to ``Var(j + offset)``."""
    return _subst(t, {j: Var(j + offset) for j in variables_of(t)})


def variables_of(t: Term) -> tuple[int, ...]:
    out: set[int] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.index)
        else:
            stack.extend(s.args)
    return tuple(sorted(out))


def depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def equations_variables(eqs: Iterable[Equation]) -> tuple[int, ...]:
    vs: set[int] = set()
    for e in eqs:
        vs.update(e.variables())
    return tuple(sorted(vs))
