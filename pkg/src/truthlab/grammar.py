"""Concrete syntax.

Terms::

    t ::= 0 | S(t) | (t + t) | (t * t) | vN

Formulas::

    f ::= t = t | !f | (f & f) | (f | f) | (f -> f) | forall vN. f | exists vN. f
        | PrProp(N)

``pretty_print`` emits exactly this grammar (every binary connective in
parentheses). ``parse_formula`` is more lenient: outer parentheses may be
dropped, with ``&`` binding tighter than ``|``, ``|`` tighter than ``->``
(right associative), and ``+``/``*`` left associative with the usual
precedence. ``!`` and the quantifiers are prefix operators binding a single
unary formula, so ``forall v0. a & b`` is ``(forall v0. a) & b``.
``->`` is desugared on input: ``f -> g`` becomes ``(!f | g)``.
``PrProp(N)`` is the tautology oracle atom; N is the Goedel code of its
argument.
"""

from __future__ import annotations

import re

from .syntax import (
    Add, And, Eq, Exists, Forall, Formula, Mul, Not, Or, PrProp, Succ, Term, Var, Zero,
    implies,
)

__all__ = ["ParseError", "parse_formula", "parse_term", "pretty_print"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(r"\s*(?:(->)|([()=!&|+*.])|([A-Za-z_][A-Za-z0-9_]*)|(\d+))")
_KEYWORDS = {"forall", "exists", "S", "PrProp"}
_VAR = re.compile(r"v(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, pos) triples; kinds: op, kw, var, num, end."""
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        arrow, op, ident, num = m.groups()
        if arrow or op:
            tokens.append(("op", arrow or op, start))
        elif ident:
            vm = _VAR.match(ident)
            if vm:
                tokens.append(("var", vm.group(1), start))
            elif ident in _KEYWORDS:
                tokens.append(("kw", ident, start))
            else:
                raise ParseError(f"unknown identifier {ident!r}", start, text)
        else:
            tokens.append(("num", num, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.furthest: ParseError | None = None

    # token helpers

    def peek(self):
        return self.tokens[self.i]

    def at(self, kind: str, value: str | None = None) -> bool:
        k, v, _ = self.tokens[self.i]
        return k == kind and (value is None or v == value)

    def error(self, message: str) -> ParseError:
        _, v, pos = self.peek()
        found = repr(v) if v else "end of input"
        err = ParseError(f"{message}, found {found}", pos, self.text)
        if self.furthest is None or err.pos >= self.furthest.pos:
            self.furthest = err
        return err

    def expect(self, kind: str, value: str | None = None):
        if not self.at(kind, value):
            raise self.error(f"expected {value or kind}")
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    # formulas

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("op", "->"):
            self.i += 1
            return implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        acc = self.conjunction()
        while self.at("op", "|"):
            self.i += 1
            acc = Or(acc, self.conjunction())
        return acc

    def conjunction(self) -> Formula:
        acc = self.unary()
        while self.at("op", "&"):
            self.i += 1
            acc = And(acc, self.unary())
        return acc

    def unary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "op" and value == "!":
            self.i += 1
            return Not(self.unary())
        if kind == "kw" and value in ("forall", "exists"):
            self.i += 1
            var = int(self.expect("var")[1])
            self.expect("op", ".")
            body = self.unary()
            return Forall(var, body) if value == "forall" else Exists(var, body)
        if kind == "kw" and value == "PrProp":
            self.i += 1
            self.expect("op", "(")
            code = int(self.expect("num")[1])
            self.expect("op", ")")
            from .coding import DecodeError, decode_formula
            try:
                return PrProp(decode_formula(code))
            except DecodeError as exc:
                raise ParseError(f"PrProp argument is not a formula code ({exc})",
                                 self.tokens[self.i - 2][2], self.text) from None
        if kind == "op" and value == "(":
            mark = self.i
            try:
                return self.equation()
            except ParseError:
                self.i = mark
            self.i += 1
            inner = self.formula()
            self.expect("op", ")")
            return inner
        return self.equation()

    def equation(self) -> Formula:
        lhs = self.sum()
        self.expect("op", "=")
        return Eq(lhs, self.sum())

    # terms

    def sum(self) -> Term:
        return self.sum_from(self.primary())

    def sum_from(self, first: Term) -> Term:
        acc = self.product_from(first)
        while self.at("op", "+"):
            self.i += 1
            acc = Add(acc, self.product_from(self.primary()))
        return acc

    def product_from(self, first: Term) -> Term:
        acc = first
        while self.at("op", "*"):
            self.i += 1
            acc = Mul(acc, self.primary())
        return acc

    def primary(self) -> Term:
        kind, value, _ = self.peek()
        if kind == "num":
            if value != "0":
                raise self.error("expected a term (only 0 is a numeral literal)")
            self.i += 1
            return Zero()
        if kind == "var":
            self.i += 1
            return Var(int(value))
        if kind == "kw" and value == "S":
            # S(S(...)) chains are folded iteratively to keep deep numerals off the stack
            depth = 0
            while self.at("kw", "S"):
                self.i += 1
                self.expect("op", "(")
                depth += 1
            t = self.sum()
            for _ in range(depth):
                self.expect("op", ")")
                t = Succ(t)
                if _ != depth - 1:
                    t = self.sum_from(t)
            return t
        if kind == "op" and value == "(":
            self.i += 1
            t = self.sum()
            self.expect("op", ")")
            return t
        raise self.error("expected a term")

    def finish(self, result):
        if not self.at("end"):
            raise self.error("unexpected trailing input")
        return result


def parse_formula(text: str) -> Formula:
    """Parse formula text; raises ParseError carrying the offending position."""
    p = _Parser(text)
    try:
        return p.finish(p.formula())
    except ParseError as exc:
        best = p.furthest if p.furthest is not None and p.furthest.pos > exc.pos else exc
        raise best from None


def parse_term(text: str) -> Term:
    p = _Parser(text)
    return p.finish(p.sum())


def _term_str(t: Term) -> str:
    prefix = 0
    while isinstance(t, Succ):
        prefix += 1
        t = t.arg
    match t:
        case Zero():
            core = "0"
        case Var(index):
            core = f"v{index}"
        case Add(a, b):
            core = f"({_term_str(a)} + {_term_str(b)})"
        case Mul(a, b):
            core = f"({_term_str(a)} * {_term_str(b)})"
        case _:
            raise TypeError(f"not a term: {t!r}")
    return "S(" * prefix + core + ")" * prefix


def _formula_str(phi: Formula) -> str:
    match phi:
        case Eq(a, b):
            return f"{_term_str(a)} = {_term_str(b)}"
        case Not(body):
            return "!" + _formula_str(body)
        case And(a, b):
            return f"({_formula_str(a)} & {_formula_str(b)})"
        case Or(a, b):
            return f"({_formula_str(a)} | {_formula_str(b)})"
        case Forall(v, body):
            return f"forall v{v}. {_formula_str(body)}"
        case Exists(v, body):
            return f"exists v{v}. {_formula_str(body)}"
        case PrProp():
            return f"PrProp({phi.code})"
    raise TypeError(f"not a formula: {phi!r}")


def pretty_print(node: Term | Formula) -> str:
    if isinstance(node, Term):
        return _term_str(node)
    return _formula_str(node)
