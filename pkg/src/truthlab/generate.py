"""Seeded random terms, formulas and sentences for tests and demos."""

from __future__ import annotations

import random

from .evaluation import val
from .syntax import (
    Add, And, Eq, Exists, Forall, Formula, Mul, Not, Or, PrProp, Succ, Term, Var, Zero, numeral,
)

__all__ = ["random_term", "random_formula", "random_sentence", "random_tautology",
           "equal_value_variant"]

MAX_QUANTIFIER_NESTING = 3


def random_term(rng: random.Random, depth: int, scope: tuple[int, ...] = ()) -> Term:
    """A term of height at most ``depth`` whose variables come from ``scope``."""
    if depth <= 0 or rng.random() < 0.3:
        if scope and rng.random() < 0.6:
            return Var(rng.choice(scope))
        return Zero()
    match rng.randrange(4):
        case 0 | 1:
            return Succ(random_term(rng, depth - 1, scope))
        case 2:
            return Add(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))
        case _:
            return Mul(random_term(rng, depth - 1, scope), random_term(rng, depth - 1, scope))


def random_formula(rng: random.Random, depth: int, scope: tuple[int, ...] = (),
                   nvars: int = 4, prprop: bool = False, open_vars: bool = False,
                   _nesting: int = 0) -> Formula:
    """A formula of height at most ``depth``.

    Variables are drawn from ``scope`` (plus v0..v{nvars-1} when ``open_vars``),
    so with an empty scope and ``open_vars`` off the result is a sentence.
    Quantifier nesting is capped to keep bounded evaluation cheap.
    """
    leaves = tuple(range(nvars)) if open_vars else scope
    if depth <= 1:
        return Eq(random_term(rng, 2, leaves), random_term(rng, 2, leaves))
    choices = ["eq", "not", "and", "or"]
    if _nesting < MAX_QUANTIFIER_NESTING:
        choices += ["forall", "exists"]
    if prprop:
        choices.append("prprop")
    kind = rng.choice(choices)
    sub = dict(nvars=nvars, prprop=prprop, open_vars=open_vars)
    match kind:
        case "eq":
            return Eq(random_term(rng, min(depth, 3), leaves), random_term(rng, min(depth, 3), leaves))
        case "not":
            return Not(random_formula(rng, depth - 1, scope, _nesting=_nesting, **sub))
        case "and" | "or":
            cls = And if kind == "and" else Or
            return cls(random_formula(rng, depth - 1, scope, _nesting=_nesting, **sub),
                       random_formula(rng, depth - 1, scope, _nesting=_nesting, **sub))
        case "forall" | "exists":
            v = rng.randrange(nvars)
            cls = Forall if kind == "forall" else Exists
            inner = tuple(sorted(set(scope) | {v}))
            return cls(v, random_formula(rng, depth - 1, inner, _nesting=_nesting + 1, **sub))
        case _:
            return PrProp(random_formula(rng, depth - 1, (), nvars=nvars, _nesting=_nesting))


def random_sentence(rng: random.Random, depth: int, nvars: int = 4, prprop: bool = False) -> Formula:
    return random_formula(rng, depth, (), nvars=nvars, prprop=prprop)


def random_tautology(rng: random.Random, depth: int) -> Formula:
    """A sentence that is a propositional tautology by construction."""
    a = random_sentence(rng, max(depth - 2, 1))
    match rng.randrange(4):
        case 0:
            return Or(a, Not(a))
        case 1:
            return Not(And(a, Not(a)))
        case 2:
            b = random_sentence(rng, max(depth - 2, 1))
            return Or(Not(And(a, b)), a)
        case _:
            b = random_sentence(rng, max(depth - 2, 1))
            return Or(Or(Not(a), b), Not(b))


def _variant(rng: random.Random, t: Term) -> Term:
    v = val(t)
    match rng.randrange(3):
        case 0 if v <= 64:
            return numeral(v)
        case 1:
            return Add(t, Zero())
        case _:
            return Mul(Succ(Zero()), t)


def equal_value_variant(rng: random.Random, phi: Formula) -> Formula:
    """Replace every maximal closed term of ``phi`` by a different term of the same value."""
    def term(t: Term) -> Term:
        if t.closed:
            return _variant(rng, t)
        match t:
            case Succ(a):
                return Succ(term(a))
            case Add(a, b):
                return Add(term(a), term(b))
            case Mul(a, b):
                return Mul(term(a), term(b))
        return t

    def go(f: Formula) -> Formula:
        match f:
            case Eq(a, b):
                return Eq(term(a), term(b))
            case Not(a):
                return Not(go(a))
            case And(a, b):
                return And(go(a), go(b))
            case Or(a, b):
                return Or(go(a), go(b))
            case Forall(v, body):
                return Forall(v, go(body))
            case Exists(v, body):
                return Exists(v, go(body))
        return f

    return go(phi)
