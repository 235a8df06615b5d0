"""Truth evaluation at desk scale.

``val`` computes the standard value of a closed term. ``eval_bounded`` is a
truth predicate over the sentences of the language obeying every
compositional clause, with quantifiers ranging over ``0..B``. ``eval_delta0``
gives exact standard truth for sentences whose quantifiers are all
syntactically bounded, where ``s <= t`` is spelled ``exists w (w + s = t)``
with ``w`` not occurring in ``s`` or ``t``. The bounded quantifier forms are

    exists v (v <= t & phi)          forall v (!(v <= t) | phi)

Oracle atoms (``PrProp``) are answered by procedures attached by name in the
configuration.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Protocol

from ._node import iter_dag
from .syntax import (
    Add, And, Eq, Exists, Forall, Formula, Mul, Not, Or, PrProp, Succ, Term, Var, Zero,
)

__all__ = [
    "val", "EvalConfig", "Evaluator", "eval_bounded", "eval_delta0",
    "MissingOracleError", "Delta0Error", "TruthOracle", "BoundedOracle",
    "LabeledOracle", "ValuationOracle", "ConstantOracle", "prprop_attachment",
]


class MissingOracleError(LookupError):
    """An oracle atom was reached but no procedure is attached for it."""


class Delta0Error(ValueError):
    """The sentence has a quantifier outside the accepted bounded forms."""


def val(t: Term) -> int:
    """Standard value of a closed term."""
    if not isinstance(t, Term):
        raise TypeError(f"expected a Term, got {type(t).__name__}")
    if not t.closed:
        raise ValueError(f"val of an open term: {t}")
    cached = getattr(t, "_c_val", None)
    if cached is not None:
        return cached
    values: dict[int, int] = {}
    for node in iter_dag(t):
        hit = getattr(node, "_c_val", None)
        if hit is not None:
            values[id(node)] = hit
            continue
        match node:
            case Zero():
                v = 0
            case Succ(a):
                v = values[id(a)] + 1
            case Add(a, b):
                v = values[id(a)] + values[id(b)]
            case Mul(a, b):
                v = values[id(a)] * values[id(b)]
        values[id(node)] = v
        node._c_val = v
    return values[id(t)]


def _term_value(t: Term, env: Mapping[int, int], closed_cache: dict) -> int:
    if t.closed:
        v = closed_cache.get(t)
        if v is None:
            v = closed_cache[t] = val(t)
        return v
    match t:
        case Var(i):
            return env[i]
        case Succ(a):
            return _term_value(a, env, closed_cache) + 1
        case Add(a, b):
            return _term_value(a, env, closed_cache) + _term_value(b, env, closed_cache)
        case Mul(a, b):
            return _term_value(a, env, closed_cache) * _term_value(b, env, closed_cache)
    raise TypeError(f"not a term: {t!r}")


def prprop_attachment() -> dict[str, Callable[[Formula], bool]]:
    """Attach the propositional tautology checker to ``PrProp`` atoms."""
    from .prop import is_tautology
    return {"PrProp": is_tautology}


@dataclass(frozen=True)
class EvalConfig:
    bound: int
    oracle_atoms: Mapping[str, Callable[[Formula], bool]] = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.bound, bool) or not isinstance(self.bound, int) or self.bound < 1:
            raise ValueError(f"domain bound must be an integer >= 1, got {self.bound!r}")

    @classmethod
    def with_prprop(cls, bound: int) -> EvalConfig:
        return cls(bound, prprop_attachment())


def _oracle_value(phi: PrProp, atoms: Mapping[str, Callable[[Formula], bool]]) -> bool:
    proc = atoms.get("PrProp")
    if proc is None:
        raise MissingOracleError("no procedure attached for PrProp atoms")
    return bool(proc(phi.arg))


def _env_key(phi: Formula, env: Mapping[int, int]):
    fv = phi.free_vars
    if not fv:
        return phi
    return (phi, tuple(sorted((v, env[v]) for v in fv)))


class Evaluator:
    """Bounded-domain truth predicate with a memo shared across calls.

    Quantifiers range over ``0..cfg.bound``. Before sweeping a quantifier the
    body is evaluated three-valuedly with the bound variable unknown; if that
    already settles it, the sweep is skipped. This is what keeps long
    existential prefixes over many pairwise constraints tractable.
    """

    def __init__(self, cfg: EvalConfig):
        self.cfg = cfg
        self._memo: dict = {}
        self._terms: dict = {}

    def __call__(self, phi: Formula) -> bool:
        if not isinstance(phi, Formula):
            raise TypeError(f"expected a Formula, got {type(phi).__name__}")
        if phi.free_vars:
            raise ValueError(f"not a sentence: free variables {sorted(phi.free_vars)}")
        return self._eval(phi, {})

    def _eval(self, phi: Formula, env: Mapping[int, int]) -> bool:
        key = _env_key(phi, env)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        match phi:
            case Eq(a, b):
                out = _term_value(a, env, self._terms) == _term_value(b, env, self._terms)
            case Not(body):
                out = not self._eval(body, env)
            case And(a, b):
                out = self._eval(a, env) and self._eval(b, env)
            case Or(a, b):
                out = self._eval(a, env) or self._eval(b, env)
            case Forall(v, body) | Exists(v, body):
                out = self._quantifier(phi, v, body, env)
            case PrProp():
                out = _oracle_value(phi, self.cfg.oracle_atoms)
            case _:
                raise TypeError(f"not a formula: {phi!r}")
        self._memo[key] = out
        return out

    def _quantifier(self, phi, v, body, env) -> bool:
        outer = {k: x for k, x in env.items() if k != v}
        settled = self._eval3(body, outer, {})
        if settled is not None:
            return settled
        values = range(self.cfg.bound + 1)
        if isinstance(phi, Forall):
            return all(self._eval(body, {**outer, v: n}) for n in values)
        return any(self._eval(body, {**outer, v: n}) for n in values)

    def _eval3(self, phi: Formula, env: Mapping[int, int], memo: dict) -> bool | None:
        """Kleene three-valued value with unassigned variables unknown (None)."""
        if phi.free_vars <= env.keys():
            return self._eval(phi, env)
        hit = memo.get(id(phi), memo)
        if hit is not memo:
            return hit
        match phi:
            case Eq():
                out = None
            case Not(body):
                r = self._eval3(body, env, memo)
                out = None if r is None else not r
            case And(a, b):
                left = self._eval3(a, env, memo)
                if left is False:
                    out = False
                else:
                    right = self._eval3(b, env, memo)
                    out = False if right is False else (True if left and right else None)
            case Or(a, b):
                left = self._eval3(a, env, memo)
                if left is True:
                    out = True
                else:
                    right = self._eval3(b, env, memo)
                    out = True if right is True else (False if left is False and right is False else None)
            case Forall(v, body) | Exists(v, body):
                out = self._eval3(body, {k: x for k, x in env.items() if k != v}, {})
            case _:
                raise TypeError(f"not a formula: {phi!r}")
        memo[id(phi)] = out
        return out


def eval_bounded(phi: Formula, cfg: EvalConfig) -> bool:
    return Evaluator(cfg)(phi)


def _leq_pattern(phi: Formula):
    """Match exists w (w + s = t) with w not in s, t; return (s, t) or None."""
    match phi:
        case Exists(w, Eq(Add(Var(w2), s), t)) if w == w2 and w not in s.free_vars and w not in t.free_vars:
            return s, t
    return None


def _bounded_pattern(phi: Formula):
    """Match a bounded quantifier; return (v, bound term, body) or None."""
    match phi:
        case Exists(v, And(guard, body)):
            pass
        case Forall(v, Or(Not(guard), body)):
            pass
        case _:
            return None
    m = _leq_pattern(guard)
    if m is None:
        return None
    s, t = m
    if s != Var(v) or v in t.free_vars:
        return None
    return v, t, body


def eval_delta0(phi: Formula, oracle_atoms: Mapping[str, Callable[[Formula], bool]] | None = None) -> bool:
    """Exact standard truth of a sentence whose quantifiers are all bounded.

    Raises Delta0Error on any other quantifier.
    """
    if phi.free_vars:
        raise ValueError(f"not a sentence: free variables {sorted(phi.free_vars)}")
    atoms = oracle_atoms or {}
    terms: dict = {}
    memo: dict = {}

    def go(f: Formula, env: dict[int, int]) -> bool:
        key = _env_key(f, env)
        hit = memo.get(key)
        if hit is not None:
            return hit
        le = _leq_pattern(f)
        if le is not None:
            out = _term_value(le[0], env, terms) <= _term_value(le[1], env, terms)
        else:
            match f:
                case Eq(a, b):
                    out = _term_value(a, env, terms) == _term_value(b, env, terms)
                case Not(body):
                    out = not go(body, env)
                case And(a, b):
                    out = go(a, env) and go(b, env)
                case Or(a, b):
                    out = go(a, env) or go(b, env)
                case Forall() | Exists():
                    m = _bounded_pattern(f)
                    if m is None:
                        raise Delta0Error(f"unbounded quantifier over v{f.var}")
                    v, bound_term, body = m
                    bound = _term_value(bound_term, env, terms)
                    values = range(bound + 1)
                    if isinstance(f, Forall):
                        out = all(go(body, {**env, v: n}) for n in values)
                    else:
                        out = any(go(body, {**env, v: n}) for n in values)
                case PrProp():
                    out = _oracle_value(f, atoms)
                case _:
                    raise TypeError(f"not a formula: {f!r}")
        memo[key] = out
        return out

    return go(phi, {})


class TruthOracle(Protocol):
    """Anything answering ``oracle(sentence) -> bool`` deterministically."""

    def __call__(self, phi: Formula) -> bool: ...


class BoundedOracle:
    """``eval_bounded`` with a persistent memo; PrProp attached by default."""

    def __init__(self, bound: int, oracle_atoms: Mapping[str, Callable[[Formula], bool]] | None = None):
        atoms = prprop_attachment() if oracle_atoms is None else oracle_atoms
        self.evaluator = Evaluator(EvalConfig(bound, atoms))

    @property
    def bound(self) -> int:
        return self.evaluator.cfg.bound

    def __call__(self, phi: Formula) -> bool:
        return self.evaluator(phi)


class LabeledOracle:
    """Look sentences up in a fixed labeling; unlisted sentences get ``default``."""

    def __init__(self, labels: Mapping[Formula, bool], default: bool | None = None):
        self.labels = dict(labels)
        self.default = default

    def __call__(self, phi: Formula) -> bool:
        if phi in self.labels:
            return self.labels[phi]
        if self.default is None:
            raise KeyError(f"sentence not labeled: {phi}")
        return self.default


class ValuationOracle:
    """Classical evaluation of the boolean structure over labeled atoms.

    Every subsentence whose head is not !, &, | is an atom and must be in
    ``valuation``.
    """

    def __init__(self, valuation: Mapping[Formula, bool]):
        self.valuation = dict(valuation)
        self._memo: dict = {}

    def __call__(self, phi: Formula) -> bool:
        hit = self._memo.get(phi)
        if hit is not None:
            return hit
        match phi:
            case Not(body):
                out = not self(body)
            case And(a, b):
                out = self(a) and self(b)
            case Or(a, b):
                out = self(a) or self(b)
            case _:
                try:
                    out = self.valuation[phi]
                except KeyError:
                    raise KeyError(f"atom not valued: {phi}") from None
        self._memo[phi] = out
        return out


class ConstantOracle:
    def __init__(self, value: bool):
        self.value = value

    def __call__(self, phi: Formula) -> bool:
        return self.value
