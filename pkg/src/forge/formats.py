"""Plain-text formats for signatures, algebras, translations, matrix languages,
theta specs and presentations.

Every format is line oriented; blank lines and ``#`` comments are ignored.

Signature::

    name DL01
    op meet 2
    op bot 0

Algebra::

    signature DL01            # catalog signature, or inline "op" lines
    size 2
    table meet 0 0 0 1        # n**arity entries, row-major
    table bot 0
    element 1 top             # optional label

Translation::

    source KA
    target DL01
    kappa 2
    map meet := meet(x0_0, x1_0), join(x0_1, x1_1)
    context meet(x0, x1) = bot

Matrix language / theta spec::

    base DL01
    kappa 2
    op neg 1 := x0_1, x0_0
    theta meet(x0, x1), meet(x0, x1) = bot, bot

Presentation: ``<count>; <eq>; <eq>`` on one line.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .classes import Presentation, parse_presentation
from .finalg import FiniteAlgebra
from .matpow import MatrixLanguage, MatrixOp
from .terms import Signature, _split_top, parse_equation, parse_term, print_term
from .thetasub import ThetaSpec
from .xlate import ContextualTranslation, Translation

__all__ = [
    "FormatError", "parse_signature", "format_signature", "parse_algebra", "format_algebra",
    "parse_translation", "format_translation", "parse_language", "format_language",
    "parse_theta_spec", "format_theta_spec", "parse_presentation", "format_presentation",
    "read_text",
]


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _known_signature(name: str) -> Signature:
    from .catalog import SIGNATURES
    try:
        return SIGNATURES[name]
    except KeyError:
        raise FormatError(f"unknown signature {name!r}") from None


def _tuple(text: str, sig: Signature, k: int, no: int):
    try:
        return tuple(parse_term(c.strip(), sig, k) for c in _split_top(text, ","))
    except ValueError as exc:
        raise FormatError(str(exc), no) from None


# --------------------------------------------------------------- signature

def parse_signature(text: str) -> Signature:
    name, ops = "S", []
    for no, line in _lines(text):
        parts = line.split()
        if parts[0] == "name" and len(parts) == 2:
            name = parts[1]
        elif parts[0] == "op" and len(parts) == 3:
            ops.append((parts[1], int(parts[2])))
        else:
            raise FormatError(f"expected 'name <id>' or 'op <name> <arity>', got {line!r}", no)
    try:
        return Signature(name, tuple(ops))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_signature(sig: Signature) -> str:
    return "".join([f"name {sig.name}\n"] + [f"op {s} {a}\n" for s, a in sig.ops])


# ----------------------------------------------------------------- algebra

def parse_algebra(text: str, sig: Signature | None = None) -> FiniteAlgebra:
    ops, name, size, tables, labels = [], None, None, {}, {}
    for no, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "signature":
            sig = _known_signature(rest)
        elif key == "name":
            name = rest
        elif key == "op":
            s, a = rest.split()
            ops.append((s, int(a)))
        elif key == "size":
            size = int(rest)
        elif key == "table":
            s, *vals = rest.split()
            tables[s] = [int(v) for v in vals]
        elif key == "element":
            i, _, lab = rest.partition(" ")
            labels[int(i)] = lab.strip()
        else:
            raise FormatError(f"unexpected line {line!r}", no)
    if sig is None:
        if not ops:
            raise FormatError("algebra needs a 'signature' line or 'op' lines")
        sig = Signature(name or "S", tuple(ops))
    if size is None:
        raise FormatError("missing 'size' line")
    shaped = {}
    for s, a in sig.ops:
        if s not in tables:
            raise FormatError(f"missing table for {s!r}")
        if len(tables[s]) != size ** a:
            raise FormatError(f"table {s!r} needs {size ** a} entries, has {len(tables[s])}")
        shaped[s] = np.asarray(tables[s], dtype=np.int64).reshape((size,) * a)
    extra = set(tables) - set(sig.symbols)
    if extra:
        raise FormatError(f"table for unknown symbol {sorted(extra)[0]!r}")
    lab = [labels.get(i, str(i)) for i in range(size)] if labels else None
    try:
        return FiniteAlgebra(sig, size, shaped, lab)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_algebra(A: FiniteAlgebra, inline_signature: bool = False) -> str:
    from .catalog import SIGNATURES
    out = []
    if not inline_signature and SIGNATURES.get(A.sig.name) == A.sig:
        out.append(f"signature {A.sig.name}")
    else:
        out.append(f"name {A.sig.name}")
        out.extend(f"op {s} {a}" for s, a in A.sig.ops)
    out.append(f"size {A.size}")
    for s, _ in A.sig.ops:
        flat = np.asarray(A.tables[s]).reshape(-1)
        out.append(" ".join(["table", s] + [str(int(v)) for v in flat]))
    if A.labels is not None:
        out.extend(f"element {i} {A.label(i)}" for i in range(A.size))
    return "\n".join(out) + "\n"


# ------------------------------------------------------------- translation

def parse_translation(text: str) -> ContextualTranslation:
    src = tgt = None
    k = None
    maps, context = [], []
    for no, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "source":
            src = _known_signature(rest)
        elif key == "target":
            tgt = _known_signature(rest)
        elif key == "kappa":
            k = int(rest)
        elif key == "map":
            name, sep, body = rest.partition(":=")
            if not sep:
                raise FormatError("expected 'map <name> := <term>, ...'", no)
            maps.append((name.strip(), body, no))
        elif key == "context":
            context.append((rest, no))
        else:
            raise FormatError(f"unexpected line {line!r}", no)
    if src is None or tgt is None or k is None:
        raise FormatError("translation needs 'source', 'target' and 'kappa' lines")
    images = {name: _tuple(body, tgt, k, no) for name, body, no in maps}
    ctx = []
    for eq, no in context:
        try:
            ctx.append(parse_equation(eq, tgt, k))
        except ValueError as exc:
            raise FormatError(str(exc), no) from None
    try:
        return ContextualTranslation(Translation(k, src, tgt, images), tuple(ctx))
    except (ValueError, KeyError) as exc:
        raise FormatError(str(exc)) from None


def _flat(t, k: int) -> str:
    """Print with ``x<j>_<i>`` block variables."""
    from .terms import Var
    if isinstance(t, Var):
        return f"x{t.index // k}_{t.index % k}" if k > 1 else f"x{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(_flat(a, k) for a in t.args)})"


def format_translation(ct: ContextualTranslation) -> str:
    tau, k = ct.tau, ct.kappa
    out = [f"source {tau.source.name}", f"target {tau.target.name}", f"kappa {k}"]
    for sym, comps in tau.images:
        out.append(f"map {sym} := " + ", ".join(_flat(c, k) for c in comps))
    for e in ct.context:
        out.append(f"context {print_term(e.lhs)} = {print_term(e.rhs)}")
    return "\n".join(out) + "\n"


# -------------------------------------------------- languages, theta specs

def _parse_language_lines(text: str):
    base, k, ops, theta = None, None, [], []
    for no, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "base":
            base = _known_signature(rest)
        elif key == "kappa":
            k = int(rest)
        elif key == "op":
            head, sep, body = rest.partition(":=")
            if not sep:
                raise FormatError("expected 'op <name> <arity> := <term>, ...'", no)
            name, arity = head.split()
            ops.append((name, int(arity), body, no))
        elif key == "theta":
            theta.append((rest, no))
        else:
            raise FormatError(f"unexpected line {line!r}", no)
    if base is None or k is None:
        raise FormatError("needs 'base' and 'kappa' lines")
    try:
        lang = MatrixLanguage(base, k, tuple(MatrixOp(n, a, k, _tuple(b, base, k, no))
                                             for n, a, b, no in ops))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return lang, theta


def parse_language(text: str) -> MatrixLanguage:
    lang, theta = _parse_language_lines(text)
    if theta:
        raise FormatError("a matrix language file has no 'theta' lines")
    return lang


def parse_theta_spec(text: str) -> ThetaSpec:
    lang, lines = _parse_language_lines(text)
    k = lang.exponent
    theta = []
    for body, no in lines:
        sides = _split_top(body, "=")
        if len(sides) != 2:
            raise FormatError("expected 'theta <terms> = <terms>'", no)
        theta.append((_tuple(sides[0], lang.base, k, no), _tuple(sides[1], lang.base, k, no)))
    try:
        return ThetaSpec(tuple(theta), lang)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_language(lang: MatrixLanguage) -> str:
    k = lang.exponent
    out = [f"base {lang.base.name}", f"kappa {k}"]
    for o in lang.ops:
        out.append(f"op {o.name} {o.arity} := " + ", ".join(_flat(c, k) for c in o.components))
    return "\n".join(out) + "\n"


def format_theta_spec(spec: ThetaSpec) -> str:
    k = spec.exponent
    out = [format_language(spec.lang).rstrip("\n")]
    for lhs, rhs in spec.theta:
        out.append("theta " + ", ".join(_flat(t, k) for t in lhs) + " = "
                   + ", ".join(_flat(t, k) for t in rhs))
    return "\n".join(out) + "\n"


def format_presentation(P: Presentation) -> str:
    return str(P)
