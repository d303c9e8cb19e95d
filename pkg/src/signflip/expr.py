"""Scalar functions of x1..xn: parsing, evaluation, gradients and Hessians.

The grammar (whitespace-insensitive):

    expr  := term (("+"|"-") term)* ;
    term  := unary (("*"|"/") unary)* ;
    unary := "-" unary | power ;
    power := atom ("^" unary)? ;
    atom  := NUMBER | VAR | FUNC "(" expr ")" | "(" expr ")" ;
    VAR   := "x" [1-9][0-9]* ;  FUNC := "sin"|"cos"|"exp"|"log"|"sqrt" ;

``^`` is right-associative and binds tighter than unary minus, so ``-x1^2``
means ``-(x1^2)``.  Derivatives come from second-order forward-mode
(hyper-dual) evaluation: one pass per variable for the gradient, one pass
per index pair for the Hessian, each exact to roundoff.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError


class ParseError(ValueError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnknownIdentifierError(ParseError):
    """Identifier is neither a variable x1..xn nor a known function."""


class VarIndexError(ParseError):
    """Variable index exceeds the declared number of variables."""


class DomainError(ArithmeticError):
    """Evaluation left the mathematical domain (log, sqrt, /, ^)."""


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Var:
    index: int  # 1-based


@dataclass(frozen=True)
class Neg:
    child: object


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    child: object


@dataclass(frozen=True)
class Expression:
    """Parsed scalar function of ``n_vars`` variables."""

    root: object
    n_vars: int

    def __str__(self) -> str:
        return to_string(self.root)


_TOKEN_RE = re.compile(
    r"(?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op>[-+*/^()])"
)
_VAR_RE = re.compile(r"^x([1-9][0-9]*)$")
FUNCTION_NAMES = ("sin", "cos", "exp", "log", "sqrt")


@dataclass(frozen=True)
class _Token:
    kind: str  # number | var | func | op | end
    text: str
    position: int
    value: float | int | None = None


def _tokenize(text: str, n_vars: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        word = m.group()
        if m.lastgroup == "number":
            tokens.append(_Token("number", word, pos, float(word)))
        elif m.lastgroup == "op":
            tokens.append(_Token("op", word, pos))
        else:
            vm = _VAR_RE.match(word)
            if vm:
                index = int(vm.group(1))
                if index > n_vars:
                    raise VarIndexError(
                        f"variable {word} out of range for n = {n_vars}", pos
                    )
                tokens.append(_Token("var", word, pos, index))
            elif word in FUNCTION_NAMES:
                tokens.append(_Token("func", word, pos))
            else:
                raise UnknownIdentifierError(f"unknown identifier {word!r}", pos)
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}, got {tok.text or 'end of input'!r}", tok.position)

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def expr(self):
        node = self.term()
        while self.at_op("+", "-"):
            op = self.next().text
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.next().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self):
        if self.at_op("-"):
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.next()
            return Binary("^", base, self.unary())
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "number":
            return Number(tok.value)
        if tok.kind == "var":
            return Var(tok.value)
        if tok.kind == "func":
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            return Call(tok.text, inner)
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(
            f"expected a number, variable, function or '(', got {tok.text or 'end of input'!r}",
            tok.position,
        )


def parse(text: str, n_vars: int) -> Expression:
    """Parse ``text`` into an Expression over x1..x{n_vars}."""
    if not isinstance(n_vars, int) or n_vars < 1:
        raise ValueError(f"n_vars must be a positive integer, got {n_vars!r}")
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(_tokenize(text, n_vars))
    root = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.position)
    return Expression(root, n_vars)


class HyperDual:
    """Truncated second-order Taylor number along two seed directions.

    Carries ``value``, first partials ``d1``/``d2`` along the two seeded
    directions, and the mixed second partial ``d12``.  Arithmetic follows
    the product/chain rules, e.g.
    ``(a*b).d12 = a.value*b.d12 + a.d1*b.d2 + a.d2*b.d1 + a.d12*b.value``.
    """

    __slots__ = ("value", "d1", "d2", "d12")

    def __init__(self, value: float, d1: float = 0.0, d2: float = 0.0, d12: float = 0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)
        self.d12 = float(d12)

    def __repr__(self) -> str:
        return f"HyperDual({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d12!r})"

    @staticmethod
    def lift(x) -> "HyperDual":
        return x if isinstance(x, HyperDual) else HyperDual(float(x))

    def __neg__(self) -> "HyperDual":
        return HyperDual(-self.value, -self.d1, -self.d2, -self.d12)

    def __pos__(self) -> "HyperDual":
        return self

    def __add__(self, other) -> "HyperDual":
        o = HyperDual.lift(other)
        return HyperDual(
            self.value + o.value, self.d1 + o.d1, self.d2 + o.d2, self.d12 + o.d12
        )

    __radd__ = __add__

    def __sub__(self, other) -> "HyperDual":
        return self + (-HyperDual.lift(other))

    def __rsub__(self, other) -> "HyperDual":
        return HyperDual.lift(other) + (-self)

    def __mul__(self, other) -> "HyperDual":
        o = HyperDual.lift(other)
        return HyperDual(
            self.value * o.value,
            self.value * o.d1 + self.d1 * o.value,
            self.value * o.d2 + self.d2 * o.value,
            self.value * o.d12 + self.d1 * o.d2 + self.d2 * o.d1 + self.d12 * o.value,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "HyperDual":
        if self.value == 0.0:
            raise DomainError("division by zero")
        iv = 1.0 / self.value
        i2 = iv * iv
        return HyperDual(
            iv,
            -self.d1 * i2,
            -self.d2 * i2,
            (2.0 * self.d1 * self.d2 * iv - self.d12) * i2,
        )

    def __truediv__(self, other) -> "HyperDual":
        return self * HyperDual.lift(other).reciprocal()

    def __rtruediv__(self, other) -> "HyperDual":
        return HyperDual.lift(other) * self.reciprocal()


def _chain(u: HyperDual, f0: float, f1: float, f2: float) -> HyperDual:
    """Compose an outer scalar function (value f0, derivatives f1, f2) with u."""
    return HyperDual(
        f0,
        f1 * u.d1,
        f1 * u.d2,
        f1 * u.d12 + f2 * u.d1 * u.d2,
    )


_FUNCTION_TABLE = {
    "sin": (math.sin, math.cos, lambda v: -math.sin(v)),
    "cos": (math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v)),
    "exp": (math.exp, math.exp, math.exp),
    "log": (math.log, lambda v: 1.0 / v, lambda v: -1.0 / (v * v)),
    "sqrt": (
        math.sqrt,
        lambda v: 0.5 / math.sqrt(v),
        lambda v: -0.25 / (v * math.sqrt(v)),
    ),
}


def _apply_function(name: str, x):
    f, f1, f2 = _FUNCTION_TABLE[name]
    v = x.value if isinstance(x, HyperDual) else x
    if name == "log" and v <= 0.0:
        raise DomainError(f"log of non-positive value {v!r}")
    if name == "sqrt":
        if v < 0.0:
            raise DomainError(f"sqrt of negative value {v!r}")
        if v == 0.0 and isinstance(x, HyperDual):
            raise DomainError("sqrt derivative undefined at zero")
    if isinstance(x, HyperDual):
        return _chain(x, f(v), f1(v), f2(v))
    return f(v)


def _powi(x, k: int):
    """x**k for integer k by repeated squaring; works on floats and hyper-duals."""
    if k < 0:
        v = x.value if isinstance(x, HyperDual) else x
        if v == 0.0:
            raise DomainError("zero raised to a negative power")
        return 1.0 / _powi(x, -k)
    result = 1.0
    base = x
    while True:
        if k & 1:
            result = result * base
        k >>= 1
        if not k:
            return result
        base = base * base


def _apply_pow(base, expo):
    if isinstance(expo, HyperDual):
        bv = base.value if isinstance(base, HyperDual) else base
        if bv <= 0.0:
            raise DomainError("exponent depending on variables requires a positive base")
        return _apply_function("exp", expo * _apply_function("log", HyperDual.lift(base)))
    ev = float(expo)
    if ev.is_integer():
        return _powi(base, int(ev))
    bv = base.value if isinstance(base, HyperDual) else base
    if bv <= 0.0:
        raise DomainError(f"non-integer exponent {ev!r} requires a positive base")
    if isinstance(base, HyperDual):
        return _chain(
            base, bv ** ev, ev * bv ** (ev - 1.0), ev * (ev - 1.0) * bv ** (ev - 2.0)
        )
    return bv ** ev


def _eval(node, xs):
    if isinstance(node, Number):
        return node.value
    if isinstance(node, Var):
        return xs[node.index - 1]
    if isinstance(node, Neg):
        return -_eval(node.child, xs)
    if isinstance(node, Call):
        return _apply_function(node.name, _eval(node.child, xs))
    left = _eval(node.left, xs)
    right = _eval(node.right, xs)
    op = node.op
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        dv = right.value if isinstance(right, HyperDual) else right
        if dv == 0.0:
            raise DomainError("division by zero")
        return left / right
    return _apply_pow(left, right)


def _coerce_point(e: Expression, point) -> list[float]:
    xs = [float(v) for v in np.asarray(point, dtype=np.float64).reshape(-1)]
    if len(xs) != e.n_vars:
        raise DimensionMismatchError(
            f"expression takes {e.n_vars} variables, point has {len(xs)}"
        )
    return xs


def evaluate(e: Expression, point) -> float:
    """Evaluate the expression at the point in IEEE double arithmetic."""
    xs = _coerce_point(e, point)
    return float(_eval(e.root, xs))


def gradient(e: Expression, point) -> np.ndarray:
    """All first partials, one forward dual pass per variable."""
    xs = _coerce_point(e, point)
    out = np.zeros(e.n_vars)
    for i in range(e.n_vars):
        seeded = list(xs)
        seeded[i] = HyperDual(xs[i], d1=1.0)
        r = _eval(e.root, seeded)
        out[i] = r.d1 if isinstance(r, HyperDual) else 0.0
    return out


def hessian(e: Expression, point) -> np.ndarray:
    """Symmetric matrix of second partials, one pass per index pair.

    Entry (i, j) is seeded with d1 along i and d2 along j and read from
    d12; it is stored at (i, j) and (j, i), so the output passes a
    zero-tolerance symmetry test.
    """
    xs = _coerce_point(e, point)
    n = e.n_vars
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            seeded = list(xs)
            if i == j:
                seeded[i] = HyperDual(xs[i], d1=1.0, d2=1.0)
            else:
                seeded[i] = HyperDual(xs[i], d1=1.0)
                seeded[j] = HyperDual(xs[j], d2=1.0)
            r = _eval(e.root, seeded)
            second = r.d12 if isinstance(r, HyperDual) else 0.0
            out[i, j] = second
            out[j, i] = second
    return out


_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 9


def _prec(node) -> int:
    if isinstance(node, Binary):
        if node.op == "^":
            return _PREC_POW
        return _PREC_MUL if node.op in "*/" else _PREC_ADD
    if isinstance(node, Neg):
        return _PREC_NEG
    return _PREC_ATOM


def _wrap(node, need: bool) -> str:
    text = _render(node)
    return f"({text})" if need else text


def _render(node) -> str:
    if isinstance(node, Number):
        return repr(node.value)
    if isinstance(node, Var):
        return f"x{node.index}"
    if isinstance(node, Call):
        return f"{node.name}({_render(node.child)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.child, _prec(node.child) < _PREC_NEG)
    op = node.op
    if op == "^":
        # left must be an atom; right may be any unary (so bare Neg/^ are fine)
        left = _wrap(node.left, _prec(node.left) <= _PREC_POW)
        right = _wrap(node.right, _prec(node.right) < _PREC_NEG)
        return f"{left}^{right}"
    p = _prec(node)
    left = _wrap(node.left, _prec(node.left) < p)
    right = _wrap(node.right, _prec(node.right) <= p)
    if op in "+-":
        return f"{left} {op} {right}"
    return f"{left}{op}{right}"


def to_string(node) -> str:
    """Render an AST to text that re-parses to a structurally equal AST.

    Round-trip holds for parser-produced trees; hand-built Number nodes
    with negative values render with a leading minus and re-parse as a
    negation node instead.
    """
    if isinstance(node, Expression):
        node = node.root
    return _render(node)
