"""Expression language — tokenizer, recursive-descent parser and evaluator.

Grammar (lowest precedence first)::

    top    := sum ('@' sum)*
    sum    := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := atom ('^' exponent)?
    atom   := 'x' | NUMBER | NAME ['^' INT] '(' args ')' | '(' top ')'
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

import scalar
from calculus import derive, integrate
from compose import compose
from conjugacy import abel, commutator_sign, conjugator, exponentiality, iterate
from errors import ParseError, PreconditionError, UnknownFunction
from invert import comp_inverse
from models import AbelResult
from series import Series, compare, div, mul, power_int
from translog import exp_s, log_iterated, pow_s

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)(?:~\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^@(),−])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        kind = match.lastgroup
        value = match.group(kind)
        if value == "−":
            value = "-"
        tokens.append(Token(kind, value, match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    position: int = 0


@dataclass(frozen=True)
class Num:
    text: str
    position: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    position: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    position: int = 0


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    iterations: int = 1
    position: int = 0


Expr = Union[Var, Num, Neg, BinOp, Call]


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def accept(self, text: str) -> Optional[Token]:
        if self.current.kind == "op" and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            found = self.current.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", position=self.current.position)
        return token

    def parse(self) -> Expr:
        expr = self.top()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r}", position=self.current.position)
        return expr

    def top(self) -> Expr:
        expr = self.sum()
        while (token := self.accept("@")) is not None:
            expr = BinOp("@", expr, self.sum(), token.position)
        return expr

    def sum(self) -> Expr:
        expr = self.term()
        while True:
            token = self.accept("+") or self.accept("-")
            if token is None:
                return expr
            expr = BinOp(token.text, expr, self.term(), token.position)

    def term(self) -> Expr:
        expr = self.unary()
        while True:
            token = self.accept("*") or self.accept("/")
            if token is None:
                return expr
            expr = BinOp(token.text, expr, self.unary(), token.position)

    def unary(self) -> Expr:
        token = self.accept("-")
        if token is not None:
            return Neg(self.unary(), token.position)
        if self.accept("+") is not None:
            return self.unary()
        return self.factor()

    def factor(self) -> Expr:
        expr = self.atom()
        token = self.accept("^")
        if token is not None:
            expr = BinOp("^", expr, self.exponent(), token.position)
        return expr

    def exponent(self) -> Expr:
        token = self.accept("-")
        if token is not None:
            return Neg(self.exponent(), token.position)
        return self.atom()

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(token.text, token.position)
        if token.kind == "name":
            self.advance()
            if token.text == "x":
                return Var(token.position)
            iterations = 1
            if self.current.text == "^" and self.tokens[self.index + 1].kind == "number":
                self.advance()
                count = self.advance()
                if not count.text.isdigit():
                    raise ParseError("iterated function count must be an integer", position=count.position)
                iterations = int(count.text)
            self.expect("(")
            args = [] if self.current.text == ")" else [self.top()]
            while self.accept(",") is not None:
                args.append(self.top())
            self.expect(")")
            return Call(token.text, tuple(args), iterations, token.position)
        if self.accept("(") is not None:
            expr = self.top()
            self.expect(")")
            return expr
        found = token.text or "end of input"
        raise ParseError(f"unexpected {found!r}", position=token.position)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _series(value: Any, position: int = 0) -> Series:
    if isinstance(value, AbelResult):
        return value.V
    if isinstance(value, Series):
        return value
    raise PreconditionError(f"expected a series, got {value}", position=position)


def _constant(value: Any, position: int = 0):
    s = _series(value, position)
    if s.is_zero:
        return scalar.zero()
    if s.cutoff is not None or len(s.terms) != 1 or not s.terms[0][1].is_one:
        raise PreconditionError("expected a constant", position=position)
    return s.terms[0][0]


def _big_o(value: Any, position: int = 0) -> Series:
    s = _series(value, position)
    if len(s.terms) != 1 or s.cutoff is not None:
        raise PreconditionError("O(...) takes a single monomial", position=position)
    return Series.big_o(s.terms[0][1])


# name -> (arity, implementation taking evaluated args and the call node)
_FUNCTIONS: dict[str, tuple[int, Callable]] = {
    "log": (1, lambda a, node: log_iterated(_series(a[0]), node.iterations)),
    "exp": (1, lambda a, node: exp_s(_series(a[0]))),
    "sqrt": (1, lambda a, node: pow_s(_series(a[0]), scalar.const(1, 2))),
    "inv": (1, lambda a, node: comp_inverse(_series(a[0]))),
    "abel": (1, lambda a, node: abel(_series(a[0]))),
    "iter": (2, lambda a, node: iterate(_series(a[0]), _constant(a[1], node.position))),
    "conj": (2, lambda a, node: conjugator(_series(a[0]), _series(a[1]))),
    "cmp": (2, lambda a, node: compare(_series(a[0]), _series(a[1]))),
    "commutator": (2, lambda a, node: commutator_sign(_series(a[0]), _series(a[1]))),
    "exponentiality": (1, lambda a, node: exponentiality(_series(a[0]))),
    "diff": (1, lambda a, node: derive(_series(a[0]))),
    "integral": (1, lambda a, node: integrate(_series(a[0]))),
    "O": (1, lambda a, node: _big_o(a[0], node.position)),
}


def evaluate(expr: Expr) -> Any:
    if isinstance(expr, Var):
        return Series.x()
    if isinstance(expr, Num):
        return Series.constant(scalar.parse_literal(expr.text))
    if isinstance(expr, Neg):
        return -_series(evaluate(expr.operand), expr.position)
    if isinstance(expr, Call):
        if expr.name not in _FUNCTIONS:
            raise UnknownFunction(f"unknown function {expr.name!r}", position=expr.position)
        arity, impl = _FUNCTIONS[expr.name]
        if len(expr.args) != arity:
            raise ParseError(
                f"{expr.name} takes {arity} argument(s), got {len(expr.args)}",
                position=expr.position,
            )
        if expr.iterations != 1 and expr.name != "log":
            raise ParseError(f"{expr.name}^k is only defined for log", position=expr.position)
        return impl([evaluate(arg) for arg in expr.args], expr)
    left = _series(evaluate(expr.left), expr.position)
    if expr.op == "^":
        r = _constant(evaluate(expr.right), expr.position)
        if scalar.is_integer(r):
            return power_int(left, int(r))
        return pow_s(left, r)
    right = _series(evaluate(expr.right), expr.position)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return mul(left, right)
    if expr.op == "/":
        return div(left, right)
    if expr.op == "@":
        return compose(left, right)
    raise ParseError(f"unknown operator {expr.op!r}", position=expr.position)


def evaluate_text(text: str) -> Any:
    logger.debug("evaluating %r", text)
    return evaluate(parse(text))
