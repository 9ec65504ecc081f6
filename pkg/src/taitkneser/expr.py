"""Coordinate-expression language.

Grammar (lowest to highest precedence)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?
    primary := NUMBER | "t" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"

``^`` is right-associative and binds tighter than unary minus, so ``-t^2``
is ``-(t^2)`` while ``t^-2`` is ``t^(-2)``.  The exponent must not depend on
``t``.  There is no implicit multiplication.

Functions: sin, cos, tan, exp, log, sqrt, atan.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import jet as _jet
from .errors import DomainError, ExpressionError, NonFiniteError, UnknownIdentifierError
from .jet import Jet

VARIABLE = "t"
FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "atan")
CONSTANTS = {"pi": math.pi, "e": math.e}


class Expression:
    """Base class of AST nodes."""

    def __str__(self):
        return unparse(self)


@dataclass(frozen=True)
class Num(Expression):
    value: float


@dataclass(frozen=True)
class Var(Expression):
    name: str = VARIABLE


@dataclass(frozen=True)
class Const(Expression):
    name: str


@dataclass(frozen=True)
class Neg(Expression):
    operand: Expression


@dataclass(frozen=True)
class BinOp(Expression):
    op: str
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Pow(Expression):
    base: Expression
    exponent: Expression


@dataclass(frozen=True)
class Call(Expression):
    func: str
    arg: Expression


# lexer --------------------------------------------------------------------

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
      | (?P<ident>[A-Za-z_]\w*)
      | (?P<op>[-+*/^()−])
    )""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.lastgroup is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        if tok == "−":
            tok = "-"
        toks.append(_Tok(kind, tok, start))
        pos = m.end()
    toks.append(_Tok("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, chars):
        return self.tok.kind == "op" and self.tok.text in chars

    def expect(self, text):
        if not self.at_op(text):
            found = self.tok.text or "end of input"
            raise ExpressionError(f"expected {text!r}, found {found!r}", self.tok.pos)
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise ExpressionError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        left = self.term()
        while self.at_op("+-"):
            op = self.advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self):
        left = self.unary()
        while self.at_op("*/"):
            op = self.advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.at_op("^"):
            caret = self.advance()
            exponent = self.unary()
            if not is_constant(exponent):
                raise ExpressionError("exponent must not depend on t", caret.pos)
            return Pow(base, exponent)
        return base

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == VARIABLE:
                return Var()
            if name in CONSTANTS:
                return Const(name)
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            raise UnknownIdentifierError(f"unknown identifier {name!r}", tok.pos)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "eof":
            raise ExpressionError("unexpected end of input", tok.pos)
        raise ExpressionError(f"unexpected {tok.text!r}", tok.pos)


def parse_expression(text: str) -> Expression:
    """Parse ``text`` into an AST.

    Raises :class:`ExpressionError` (with a 0-based ``offset``) on syntax
    errors, :class:`UnknownIdentifierError` on unknown names.
    """
    if not text or not text.strip():
        raise ExpressionError("empty expression", 0)
    return _Parser(text).parse()


# unparse ------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG_PREC = 3
_POW_PREC = 4
_ATOM_PREC = 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Pow):
        return _POW_PREC
    if isinstance(node, Num) and (node.value < 0 or math.copysign(1.0, node.value) < 0):
        return 0
    return _ATOM_PREC


def _fmt_num(v):
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def unparse(node: Expression) -> str:
    """Render an AST back to source text with minimal parentheses."""

    def wrap(child, need):
        s = unparse(child)
        return f"({s})" if need else s

    if isinstance(node, Num):
        s = _fmt_num(node.value)
        return s
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        return "-" + wrap(node.operand, _prec(node.operand) < _NEG_PREC)
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = wrap(node.left, _prec(node.left) < p)
        right = wrap(node.right, _prec(node.right) <= p)
        return f"{left} {node.op} {right}"
    if isinstance(node, Pow):
        base = wrap(node.base, _prec(node.base) <= _POW_PREC)
        exponent = wrap(node.exponent, _prec(node.exponent) < _NEG_PREC)
        return f"{base}^{exponent}"
    if isinstance(node, Call):
        return f"{node.func}({unparse(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


# utilities ----------------------------------------------------------------

def is_constant(node: Expression) -> bool:
    if isinstance(node, Var):
        return False
    if isinstance(node, (Num, Const)):
        return True
    if isinstance(node, Neg):
        return is_constant(node.operand)
    if isinstance(node, BinOp):
        return is_constant(node.left) and is_constant(node.right)
    if isinstance(node, Pow):
        return is_constant(node.base)
    if isinstance(node, Call):
        return is_constant(node.arg)
    raise TypeError(f"not an expression node: {node!r}")


def substitute(node: Expression, replacement: Expression) -> Expression:
    """Replace every occurrence of ``t`` with ``replacement``."""
    if isinstance(node, Var):
        return replacement
    if isinstance(node, (Num, Const)):
        return node
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, replacement))
    if isinstance(node, BinOp):
        return BinOp(node.op, substitute(node.left, replacement), substitute(node.right, replacement))
    if isinstance(node, Pow):
        return Pow(substitute(node.base, replacement), node.exponent)
    if isinstance(node, Call):
        return Call(node.func, substitute(node.arg, replacement))
    raise TypeError(f"not an expression node: {node!r}")


def constant_value(node: Expression) -> float:
    """Evaluate a ``t``-free expression to a float."""
    if not is_constant(node):
        raise ExpressionError(f"expression {unparse(node)!r} depends on t")
    return float(evaluate_jet(node, 0.0, order=0).value)


# evaluation ---------------------------------------------------------------

_JET_FUNCS = {
    "sin": _jet.sin,
    "cos": _jet.cos,
    "tan": _jet.tan,
    "exp": _jet.exp,
    "log": _jet.log,
    "sqrt": _jet.sqrt,
    "atan": _jet.atan,
}


def _eval(node, tj, order, shape):
    if isinstance(node, Var):
        return tj
    if isinstance(node, Num):
        return Jet.constant(node.value, order, shape)
    if isinstance(node, Const):
        return Jet.constant(CONSTANTS[node.name], order, shape)
    if isinstance(node, Neg):
        return -_eval(node.operand, tj, order, shape)
    if isinstance(node, BinOp):
        a = _eval(node.left, tj, order, shape)
        b = _eval(node.right, tj, order, shape)
        try:
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            return a / b
        except DomainError as err:
            raise DomainError(f"{err} in {unparse(node)!r}", node) from err
    if isinstance(node, Pow):
        base = _eval(node.base, tj, order, shape)
        exponent = float(_eval(node.exponent, tj, 0, ()).c[0])
        try:
            return _jet.power(base, exponent)
        except DomainError as err:
            raise DomainError(f"{err} in {unparse(node)!r}", node) from err
    if isinstance(node, Call):
        arg = _eval(node.arg, tj, order, shape)
        try:
            return _JET_FUNCS[node.func](arg)
        except DomainError as err:
            raise DomainError(f"{err} in {unparse(node)!r}", node) from err
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_jet(expr: Expression, t0, order: int = _jet.DEFAULT_ORDER) -> Jet:
    """Value and derivatives of ``expr`` at ``t0`` by truncated Taylor arithmetic.

    ``t0`` may be a scalar or an array; the returned jet is batched the same
    way.  Raises :class:`DomainError` naming the offending subexpression, or
    :class:`NonFiniteError` if the result overflows.
    """
    t0 = np.asarray(t0, dtype=float)
    tj = Jet.variable(t0, order)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        try:
            result = _eval(expr, tj, order, t0.shape)
        except DomainError as err:
            if t0.ndim == 0:
                raise DomainError(f"{err} at t={float(t0)!r}", err.node) from err
            # locate the first offending parameter for the message
            for tk in t0.ravel():
                evaluate_jet(expr, float(tk), order)
            raise
    if not np.all(np.isfinite(result.c)):
        raise NonFiniteError(f"non-finite value evaluating {unparse(expr)!r}")
    return result


def evaluate(expr: Expression, t):
    """Plain value of ``expr`` at ``t`` (scalar or array)."""
    return evaluate_jet(expr, t, order=0).value
