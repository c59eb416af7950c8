"""Closed-form expressions in one complex variable ``s``.

Used to specify weights g and symbol maps beta from the CLI, the service
and config files.  Grammar:

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := ['-'] base ('^' exponent)?
    base     := NUMBER | 'i' | 's' | '(' expr ')' | '(' NUM ',' NUM ')'
    exponent := ['-'] NUMBER          (a real literal)

Complex literals are written ``(re,im)`` or composed as ``re+im*i``.
Powers use the principal branch, x^p := exp(p Log x).  Evaluation is
backend-agnostic: it accepts Python complex or gmpy2 multiprecision
arguments (the norm estimator needs the latter).
"""

import re as _re
from dataclasses import dataclass, field
from typing import Union

from ._numeric import c_exp, c_log, conj
from .errors import EvalError, ParseError, PoleError

_MAX_DEPTH = 200
_POLE_EPS = 1e-300


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: complex
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "NodeT"
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "NodeT"
    right: "NodeT"
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: "NodeT"
    exponent: float
    span: tuple = field(default=(0, 0), compare=False)


NodeT = Union[Num, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class FuncExpr:
    """A parsed expression; immutable, evaluation is pure."""

    ast: NodeT

    def __call__(self, s):
        return evaluate(self, s)

    def __str__(self):
        return to_string(self)


# ---------------------------------------------------------- tokenizer

_TOKEN_RE = _re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        if m.group("num") is not None:
            value = float(m.group("num"))
            if value != value or value in (float("inf"), float("-inf")):
                raise ParseError("numeric literal overflows", m.start("num"))
            tokens.append(("num", value, m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("eof", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, val, pos = self.peek()
        got = "end of input" if kind == "eof" else repr(val)
        raise ParseError(
            f"expected {' or '.join(expected)}, got {got}", pos, expected
        )

    def accept_op(self, *ops):
        kind, val, _ = self.peek()
        if kind == "op" and val in ops:
            return self.next()[1]
        return None

    def expect_op(self, op):
        if self.accept_op(op) is None:
            self.fail([repr(op)])

    # expr := ['-'] term (('+'|'-') term)*
    def expr(self):
        self.depth += 1
        if self.depth > _MAX_DEPTH:
            raise ParseError("nesting too deep", self.peek()[2])
        try:
            start = self.peek()[2]
            if self.accept_op("-"):
                node = Neg(self.term(), span=(start, self._end()))
            elif self.accept_op("+"):
                node = self.term()
            else:
                node = self.term()
            while True:
                op = self.accept_op("+", "-")
                if op is None:
                    return node
                rhs = self.term()
                node = BinOp(op, node, rhs, span=(start, self._end()))
        finally:
            self.depth -= 1

    def term(self):
        start = self.peek()[2]
        node = self.factor()
        while True:
            op = self.accept_op("*", "/")
            if op is None:
                return node
            rhs = self.factor()
            node = BinOp(op, node, rhs, span=(start, self._end()))

    def factor(self):
        start = self.peek()[2]
        if self.accept_op("-"):
            return Neg(self.factor(), span=(start, self._end()))
        node = self.base()
        if self.accept_op("^"):
            expo = self.exponent()
            node = Pow(node, expo, span=(start, self._end()))
        return node

    def exponent(self):
        sign = -1.0 if self.accept_op("-") else 1.0
        kind, val, pos = self.peek()
        if kind != "num":
            self.fail(["real literal"])
        self.next()
        return sign * val

    def base(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.next()
            return Num(complex(val), span=(pos, self._end()))
        if kind == "ident":
            self.next()
            if val == "s":
                return Var(span=(pos, self._end()))
            if val == "i":
                return Num(1j, span=(pos, self._end()))
            raise ParseError(f"unknown identifier {val!r}", pos, ["s", "i"])
        if kind == "op" and val == "(":
            self.next()
            lit = self._complex_literal(pos)
            if lit is not None:
                return lit
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.fail(["number", "'s'", "'i'", "'('"])

    def _complex_literal(self, start):
        # lookahead for '(' [-] NUM ',' [-] NUM ')'
        save = self.i
        try:
            re_part = self._signed_number()
            if self.accept_op(","):
                im_part = self._signed_number()
                self.expect_op(")")
                return Num(complex(re_part, im_part), span=(start, self._end()))
        except ParseError:
            pass
        self.i = save
        return None

    def _signed_number(self):
        sign = -1.0 if self.accept_op("-") else 1.0
        kind, val, _ = self.peek()
        if kind != "num":
            self.fail(["real literal"])
        self.next()
        return sign * val

    def _end(self):
        return self.tokens[self.i - 1][2] if self.i else 0


def parse(text: str) -> FuncExpr:
    """Parse ``text`` into a FuncExpr, or raise a positioned ParseError."""
    if not isinstance(text, str):
        raise ParseError("input is not a string", 0)
    p = _Parser(text)
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"trailing input {val!r}", pos, ["end of input"])
    return FuncExpr(node)


# --------------------------------------------------------- evaluation

def _eval(node, s):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return s
    if isinstance(node, Neg):
        return -_eval(node.operand, s)
    if isinstance(node, BinOp):
        a = _eval(node.left, s)
        b = _eval(node.right, s)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if abs(b) < _POLE_EPS:
            raise PoleError(
                f"division by near-zero denominator at span {node.span}",
                span=node.span,
            )
        return a / b
    if isinstance(node, Pow):
        b = _eval(node.base, s)
        p = node.exponent
        if p == int(p):
            if abs(b) < _POLE_EPS and p < 0:
                raise PoleError(
                    f"zero base with negative power at span {node.span}",
                    span=node.span,
                )
            return b ** int(p)
        if abs(b) < _POLE_EPS:
            raise PoleError(
                f"zero base with non-integer power at span {node.span}",
                span=node.span,
            )
        return c_exp(p * c_log(b))
    raise EvalError(f"malformed AST node {node!r}")


def evaluate(expr: FuncExpr, s):
    return _eval(expr.ast, s)


# ------------------------------------------------------ pretty-printer

def _fmt_real(x: float) -> str:
    r = repr(float(x))
    return r


def _print(node) -> str:
    if isinstance(node, Num):
        v = node.value
        r = _fmt_real(v.real)
        if v.imag == 0.0 and not r.startswith("-"):
            return r
        return f"({r},{_fmt_real(v.imag)})"
    if isinstance(node, Var):
        return "s"
    if isinstance(node, Neg):
        return f"-{_print(node.operand)}"
    if isinstance(node, BinOp):
        return f"({_print(node.left)}{node.op}{_print(node.right)})"
    if isinstance(node, Pow):
        expo = _fmt_real(node.exponent)
        if node.exponent < 0:
            expo = "-" + _fmt_real(-node.exponent)
        return f"({_print(node.base)})^{expo}"
    raise EvalError(f"malformed AST node {node!r}")


def to_string(expr: FuncExpr) -> str:
    """Canonical text form; parse(to_string(e)) reproduces the same AST."""
    return _print(expr.ast)


# ----------------------------------------------------------- involution

def _inv(node):
    if isinstance(node, Num):
        return Num(conj(node.value), span=node.span)
    if isinstance(node, Var):
        return node
    if isinstance(node, Neg):
        return Neg(_inv(node.operand), span=node.span)
    if isinstance(node, BinOp):
        return BinOp(node.op, _inv(node.left), _inv(node.right), span=node.span)
    if isinstance(node, Pow):
        return Pow(_inv(node.base), node.exponent, span=node.span)
    raise EvalError(f"malformed AST node {node!r}")


def involute(expr: FuncExpr) -> FuncExpr:
    """The map g |-> conj(g(conj(s))): conjugate every literal, keep the
    structure.  Exact for the rational operations; for real powers it
    agrees with the principal branch wherever the base stays off the
    negative real axis, which holds for the weights used here."""
    return FuncExpr(_inv(expr.ast))
