"""
A small text language for string diagrams.

Grammar (``;`` binds looser than ``*``; both associate to the left)::

    expr    := term (";" term)*            f ; g  means  g o f
    term    := factor ("*" factor)*        tensor product
    factor  := "(" expr ")"
             | ("dag" | "conj" | "dual") "(" expr ")"
             | ("id" | "cup" | "cap") "[" words "]"
             | "swap" "[" warg "," warg "]"
             | NAME | NUMBER
    words   := [ fac ("," fac)* ]          fac is an int with optional "*"
    warg    := fac | "(" words ")"

Numbers are scalars: ``2``, ``-0.5``, ``1e-3``, ``2j`` or ``1.5-2j``.
Diagrams are evaluated to matrices and compared numerically; nothing is
rewritten symbolically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from . import linalg as la
from .errors import DiagramSyntaxError, SignatureMismatch, TypeMismatch, UnknownGenerator
from .linalg import DEFAULT_TOL, Factor, Morphism, Tolerance, WireWord

KEYWORDS = {"id", "cup", "cap", "swap", "dag", "conj", "dual"}


# --- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    word: WireWord


@dataclass(frozen=True)
class Cup:
    word: WireWord


@dataclass(frozen=True)
class Cap:
    word: WireWord


@dataclass(frozen=True)
class Swap:
    a: WireWord
    b: WireWord


@dataclass(frozen=True)
class Scalar:
    value: complex


@dataclass(frozen=True)
class Compose:
    first: "Expr"
    then: "Expr"


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Dag:
    arg: "Expr"


@dataclass(frozen=True)
class Conj:
    arg: "Expr"


@dataclass(frozen=True)
class Dual:
    arg: "Expr"


Expr = Union[Gen, Id, Cup, Cap, Swap, Scalar, Compose, Tensor, Dag, Conj, Dual]
Env = Mapping[str, Morphism]

_UNARY = {"dag": Dag, "conj": Conj, "dual": Dual}
_WORDED = {"id": Id, "cup": Cup, "cap": Cap}


# --- parser ---------------------------------------------------------------

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_SCALAR_RE = re.compile(rf"-?{_NUM}(?:[+-]{_NUM}j|j)?")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        raise DiagramSyntaxError(msg, len(self.text[:pos].encode("utf-8")))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek() == ";":
            self.pos += 1
            e = Compose(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek() == "*":
            self.pos += 1
            e = Tensor(e, self.factor())
        return e

    def factor(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if not ch:
            self.error("unexpected end of input")
        m = _SCALAR_RE.match(self.text, self.pos)
        if m and (ch.isdigit() or ch in "-."):
            self.pos = m.end()
            return Scalar(complex(m.group().replace("+-", "-")))
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected {ch!r}")
        start = self.pos
        name = m.group()
        self.pos = m.end()
        if name in _UNARY:
            self.expect("(")
            e = self.expr()
            self.expect(")")
            return _UNARY[name](e)
        if name in _WORDED:
            self.expect("[")
            w = self.words("]")
            self.expect("]")
            return _WORDED[name](w)
        if name == "swap":
            self.expect("[")
            a = self.warg()
            self.expect(",")
            b = self.warg()
            self.expect("]")
            return Swap(a, b)
        if name in KEYWORDS:
            self.error(f"keyword {name!r} used as a name", start)
        return Gen(name)

    def fac(self) -> Factor:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected a dimension")
        self.pos = m.end()
        dual = self.peek() == "*"
        if dual:
            self.pos += 1
        return Factor(int(m.group()), dual)

    def words(self, close: str) -> WireWord:
        if self.peek() == close:
            return WireWord(())
        fs = [self.fac()]
        while self.peek() == ",":
            self.pos += 1
            fs.append(self.fac())
        return WireWord(tuple(fs))

    def warg(self) -> WireWord:
        if self.peek() == "(":
            self.pos += 1
            w = self.words(")")
            self.expect(")")
            return w
        return WireWord((self.fac(),))


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# --- printer --------------------------------------------------------------

def _word(w: WireWord) -> str:
    return ",".join(str(f) for f in w.factors)


def _warg(w: WireWord) -> str:
    return _word(w) if len(w) == 1 else f"({_word(w)})"


def _scalar(c: complex) -> str:
    re_, im = float(c.real), float(c.imag)
    if im == 0:
        return repr(re_)
    if re_ == 0:
        return f"{im!r}j"
    sign = "" if im < 0 else "+"
    return f"{re_!r}{sign}{im!r}j"


def to_text(e: Expr, ctx: int = 0) -> str:
    """Print with the fewest parentheses that re-parse to the same AST."""
    if isinstance(e, Compose):
        s, prec = f"{to_text(e.first, 1)} ; {to_text(e.then, 2)}", 1
    elif isinstance(e, Tensor):
        s, prec = f"{to_text(e.left, 2)} * {to_text(e.right, 3)}", 2
    else:
        prec = 3
        if isinstance(e, Gen):
            s = e.name
        elif isinstance(e, Id):
            s = f"id[{_word(e.word)}]"
        elif isinstance(e, Cup):
            s = f"cup[{_word(e.word)}]"
        elif isinstance(e, Cap):
            s = f"cap[{_word(e.word)}]"
        elif isinstance(e, Swap):
            s = f"swap[{_warg(e.a)},{_warg(e.b)}]"
        elif isinstance(e, Scalar):
            s = _scalar(e.value)
        elif isinstance(e, (Dag, Conj, Dual)):
            s = f"{type(e).__name__.lower()}({to_text(e.arg)})"
        else:
            raise TypeError(f"not an expression: {e!r}")
    return f"({s})" if prec < ctx else s


# --- typing and evaluation ------------------------------------------------

def _as_expr(e) -> Expr:
    return parse(e) if isinstance(e, str) else e


def typecheck(e, env: Env) -> tuple[WireWord, WireWord]:
    e = _as_expr(e)
    if isinstance(e, Gen):
        if e.name not in env:
            raise UnknownGenerator(f"unknown generator {e.name!r}")
        f = env[e.name]
        return f.dom, f.cod
    if isinstance(e, Id):
        return e.word, e.word
    if isinstance(e, Cup):
        return la.UNIT, e.word.dual() + e.word
    if isinstance(e, Cap):
        return e.word + e.word.dual(), la.UNIT
    if isinstance(e, Swap):
        return e.a + e.b, e.b + e.a
    if isinstance(e, Scalar):
        return la.UNIT, la.UNIT
    if isinstance(e, Compose):
        d1, c1 = typecheck(e.first, env)
        d2, c2 = typecheck(e.then, env)
        if c1 != d2:
            raise TypeMismatch(f"cannot compose {to_text(e.first)} : {d1} -> {c1} "
                               f"with {to_text(e.then)} : {d2} -> {c2}")
        return d1, c2
    if isinstance(e, Tensor):
        d1, c1 = typecheck(e.left, env)
        d2, c2 = typecheck(e.right, env)
        return d1 + d2, c1 + c2
    if isinstance(e, Dag):
        d, c = typecheck(e.arg, env)
        return c, d
    if isinstance(e, Conj):
        d, c = typecheck(e.arg, env)
        return d.dual(), c.dual()
    if isinstance(e, Dual):
        d, c = typecheck(e.arg, env)
        return c.dual(), d.dual()
    raise TypeError(f"not an expression: {e!r}")


def _eval(e: Expr, env: Env) -> Morphism:
    if isinstance(e, Gen):
        return env[e.name]
    if isinstance(e, Id):
        return la.identity(e.word)
    if isinstance(e, Cup):
        return la.cup(e.word)
    if isinstance(e, Cap):
        return la.cap(e.word)
    if isinstance(e, Swap):
        return la.swap(e.a, e.b)
    if isinstance(e, Scalar):
        return la.scalar(e.value)
    if isinstance(e, Compose):
        return la.compose(_eval(e.then, env), _eval(e.first, env))
    if isinstance(e, Tensor):
        return la.tensor(_eval(e.left, env), _eval(e.right, env))
    if isinstance(e, Dag):
        return la.dagger(_eval(e.arg, env))
    if isinstance(e, Conj):
        return la.conjugate(_eval(e.arg, env))
    if isinstance(e, Dual):
        return la.dual(_eval(e.arg, env))
    raise TypeError(f"not an expression: {e!r}")


def evaluate(e, env: Env) -> Morphism:
    e = _as_expr(e)
    typecheck(e, env)
    return _eval(e, env)


@dataclass(frozen=True)
class EqualityReport:
    passed: bool
    deviation: float
    dom: WireWord
    cod: WireWord

    def to_dict(self) -> dict:
        return {"pass": self.passed, "deviation": self.deviation,
                "dom": str(self.dom), "cod": str(self.cod)}


def check_equal(e1, e2, env: Env, tol: Tolerance = DEFAULT_TOL) -> EqualityReport:
    e1, e2 = _as_expr(e1), _as_expr(e2)
    s1, s2 = typecheck(e1, env), typecheck(e2, env)
    if s1 != s2:
        raise SignatureMismatch(f"{s1[0]} -> {s1[1]} versus {s2[0]} -> {s2[1]}")
    a, b = _eval(e1, env).data, _eval(e2, env).data
    return EqualityReport(tol.close(a, b), Tolerance.deviation(a, b), *s1)


# --- identity families for monoids ----------------------------------------

def monoid_env(M) -> dict:
    return {"m": M.m, "u": M.u}


def identity_families(obj, special: bool = False) -> dict:
    """Named equations about a monoid ``(m, u)`` on ``obj``.

    Each family maps to a list of ``(label, lhs, rhs)`` texts over the
    generators ``m`` and ``u``.
    """
    W = la.as_word(obj)
    w, wd = _word(W), _word(W.dual())
    counit = "(m ; dag(u))"
    cocopy = "(u ; dag(m))"
    sL = f"(id[{w}] * cup[{wd}] ; {counit} * id[{wd}])"
    sR = f"(cup[{w}] * id[{w}] ; id[{wd}] * {counit})"
    fam = {
        "triangle": [
            ("snake_left", f"id[{w}] * {cocopy} ; {counit} * id[{w}]", f"id[{w}]"),
            ("snake_right", f"{cocopy} * id[{w}] ; id[{w}] * {counit}", f"id[{w}]"),
            ("zigzag_A", f"id[{w}] * cup[{w}] ; cap[{w}] * id[{w}]", f"id[{w}]"),
            ("zigzag_A*", f"cup[{w}] * id[{wd}] ; id[{wd}] * cap[{w}]", f"id[{wd}]"),
        ],
        "frobenius": [
            ("left", f"dag(m) * id[{w}] ; id[{w}] * m", "m ; dag(m)"),
            ("right", f"id[{w}] * dag(m) ; m * id[{w}]", "m ; dag(m)"),
        ],
        "unit": [
            ("left_unit", f"u * id[{w}] ; m", f"id[{w}]"),
            ("right_unit", f"id[{w}] * u ; m", f"id[{w}]"),
            ("left_counit", f"dag(m) ; dag(u) * id[{w}]", f"id[{w}]"),
            ("right_counit", f"dag(m) ; id[{w}] * dag(u)", f"id[{w}]"),
        ],
        "invprop": [
            ("sL*=sR", f"dual({sL})", sR),
            ("sR*=sL", f"dual({sR})", sL),
            ("sL_* sL=1", f"{sL} ; conj({sL})", f"id[{w}]"),
            ("sL sL_*=1", f"conj({sL}) ; {sL}", f"id[{wd}]"),
            ("sR_* sR=1", f"{sR} ; conj({sR})", f"id[{w}]"),
            ("sR sR_*=1", f"conj({sR}) ; {sR}", f"id[{wd}]"),
            ("sR^dag sL=1", f"{sL} ; dag({sR})", f"id[{w}]"),
            ("sL sR^dag=1", f"dag({sR}) ; {sL}", f"id[{wd}]"),
            ("sL^dag sR=1", f"{sR} ; dag({sL})", f"id[{w}]"),
            ("sR sL^dag=1", f"dag({sL}) ; {sR}", f"id[{wd}]"),
        ],
        "dimension": [
            ("Z0=dim", "u ; dag(m) ; m ; dag(u)", f"cup[{w}] ; dag(cup[{w}])"),
        ],
    }
    if special:
        fam["dimension"].append(("unit_norm=dim", "u ; dag(u)", f"cup[{w}] ; dag(cup[{w}])"))
    return fam


def prove_family(M, family: str, special: bool | None = None,
                 tol: Tolerance = DEFAULT_TOL) -> dict:
    """``label -> EqualityReport`` for one family evaluated on ``M``."""
    from .frobenius import classify
    if special is None:
        special = classify(M, tol)["special"]
    env = monoid_env(M)
    return {label: check_equal(lhs, rhs, env, tol)
            for label, lhs, rhs in identity_families(M.obj, special)[family]}
