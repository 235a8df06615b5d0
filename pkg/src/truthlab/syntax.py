"""Abstract syntax for the language of arithmetic: 0, S, +, *, =, !, &, |, forall, exists.

Terms and formulas are interned (see :mod:`truthlab._node`), so ``a == b`` is
structural equality and runs in constant time. Variables are canonical and
indexed: ``Var(3)`` prints as ``v3``.
"""

from __future__ import annotations

from collections.abc import Iterable

from ._node import Node, dag_size, iter_dag, tree_size

__all__ = [
    "Term", "Zero", "Succ", "Add", "Mul", "Var",
    "Formula", "Eq", "Not", "And", "Or", "Forall", "Exists", "PrProp",
    "numeral", "numeral_value", "is_numeral", "substitute", "big_and", "big_or",
    "spine", "free_vars", "is_sentence", "implies", "leq", "bounded_exists",
    "bounded_forall", "fresh_var", "dag_size", "tree_size", "iter_dag",
]

_EMPTY: frozenset[int] = frozenset()


def _var_index(v) -> int:
    if isinstance(v, Var):
        return v.index
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise TypeError(f"variable index must be a natural number, got {v!r}")
    return v


class Term(Node):
    __slots__ = ("_c_fv", "_c_maxvar", "_c_val")

    def _init_cache(self) -> None:
        fv = _EMPTY
        mv = -1
        for c in self.children():
            if c._c_fv:
                fv = fv | c._c_fv
            mv = max(mv, c._c_maxvar)
        self._c_fv = fv
        self._c_maxvar = mv

    @property
    def free_vars(self) -> frozenset[int]:
        return self._c_fv

    @property
    def closed(self) -> bool:
        return not self._c_fv

    def __str__(self) -> str:
        from .grammar import pretty_print
        return pretty_print(self)


def _term(x) -> Term:
    if not isinstance(x, Term):
        raise TypeError(f"expected a Term, got {type(x).__name__}")
    return x


def _formula(x) -> Formula:
    if not isinstance(x, Formula):
        raise TypeError(f"expected a Formula, got {type(x).__name__}")
    return x


class Zero(Term):
    __slots__ = ()
    __match_args__ = ()


class Succ(Term):
    __slots__ = ()
    _fields = ("arg",)
    __match_args__ = ("arg",)

    @classmethod
    def _normalize(cls, arg):
        return (_term(arg),)

    @property
    def arg(self) -> Term:
        return self._args[0]


class _BinaryTerm(Term):
    __slots__ = ()
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    @classmethod
    def _normalize(cls, left, right):
        return (_term(left), _term(right))

    @property
    def left(self) -> Term:
        return self._args[0]

    @property
    def right(self) -> Term:
        return self._args[1]


class Add(_BinaryTerm):
    __slots__ = ()


class Mul(_BinaryTerm):
    __slots__ = ()


class Var(Term):
    __slots__ = ()
    _fields = ("index",)
    __match_args__ = ("index",)

    @classmethod
    def _normalize(cls, index):
        return (_var_index(index),)

    def _init_cache(self) -> None:
        self._c_fv = frozenset((self.index,))
        self._c_maxvar = self.index

    @property
    def index(self) -> int:
        return self._args[0]


class Formula(Node):
    __slots__ = ("_c_fv", "_c_maxvar")

    _init_cache = Term._init_cache

    @property
    def free_vars(self) -> frozenset[int]:
        return self._c_fv

    @property
    def is_sentence(self) -> bool:
        return not self._c_fv

    def __str__(self) -> str:
        from .grammar import pretty_print
        return pretty_print(self)


class Eq(Formula):
    __slots__ = ()
    _fields = ("lhs", "rhs")
    __match_args__ = ("lhs", "rhs")

    @classmethod
    def _normalize(cls, lhs, rhs):
        return (_term(lhs), _term(rhs))

    @property
    def lhs(self) -> Term:
        return self._args[0]

    @property
    def rhs(self) -> Term:
        return self._args[1]


class Not(Formula):
    __slots__ = ()
    _fields = ("body",)
    __match_args__ = ("body",)

    @classmethod
    def _normalize(cls, body):
        return (_formula(body),)

    @property
    def body(self) -> Formula:
        return self._args[0]


class _BinaryFormula(Formula):
    __slots__ = ()
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    @classmethod
    def _normalize(cls, left, right):
        return (_formula(left), _formula(right))

    @property
    def left(self) -> Formula:
        return self._args[0]

    @property
    def right(self) -> Formula:
        return self._args[1]


class And(_BinaryFormula):
    __slots__ = ()


class Or(_BinaryFormula):
    __slots__ = ()


class _Quantifier(Formula):
    __slots__ = ()
    _fields = ("var", "body")
    __match_args__ = ("var", "body")

    @classmethod
    def _normalize(cls, var, body):
        return (_var_index(var), _formula(body))

    def _init_cache(self) -> None:
        self._c_fv = self.body._c_fv - {self.var}
        self._c_maxvar = max(self.var, self.body._c_maxvar)

    @property
    def var(self) -> int:
        return self._args[0]

    @property
    def body(self) -> Formula:
        return self._args[1]


class Forall(_Quantifier):
    __slots__ = ()


class Exists(_Quantifier):
    __slots__ = ()


class PrProp(Formula):
    """Oracle atom asserting that its argument is a propositional tautology.

    The argument is held as a formula so the node stays DAG-shared; ``code``
    gives the Goedel number the atom stands for. The atom itself is a closed
    sentence: the argument is mentioned, not used, so it contributes no free
    variables and substitution never enters it.
    """

    __slots__ = ()
    _fields = ("arg",)
    __match_args__ = ("arg",)

    @classmethod
    def _normalize(cls, arg):
        return (_formula(arg),)

    def _init_cache(self) -> None:
        self._c_fv = _EMPTY
        self._c_maxvar = -1

    @property
    def arg(self) -> Formula:
        return self._args[0]

    @property
    def code(self) -> int:
        from .coding import encode_formula
        return encode_formula(self.arg)


def numeral(x: int) -> Term:
    """The canonical numeral S(S(...S(0)...)) with ``x`` successors."""
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ValueError(f"numeral needs a natural number, got {x!r}")
    t: Term = Zero()
    for _ in range(x):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> int | None:
    """Return n if ``t`` is the canonical numeral for n, else None."""
    n = 0
    while isinstance(t, Succ):
        t = t.arg
        n += 1
    return n if isinstance(t, Zero) else None


def is_numeral(t: Term) -> bool:
    return numeral_value(t) is not None


def free_vars(phi: Node) -> frozenset[int]:
    return phi.free_vars


def is_sentence(phi: Formula) -> bool:
    return isinstance(phi, Formula) and not phi.free_vars


def substitute(phi, v, t: Term):
    """Replace the free occurrences of variable ``v`` in ``phi`` by the closed term ``t``.

    Works on terms and formulas. Open ``t`` is rejected: only closed terms
    are substituted, so variable capture cannot arise.
    """
    v = _var_index(v)
    t = _term(t)
    if not t.closed:
        raise ValueError(f"substitute: term {t} is not closed")
    memo: dict[int, Node] = {}

    def go(node):
        if v not in node.free_vars:
            return node
        hit = memo.get(id(node))
        if hit is not None:
            return hit
        match node:
            case Var(_):
                out = t
            case _Quantifier(var, body):
                # v is free in node, so var != v
                out = type(node)(var, go(body))
            case _:
                out = type(node)(*(go(a) if isinstance(a, Node) else a for a in node.args))
        memo[id(node)] = out
        return out

    return go(phi)


def _nonempty(phis: Iterable[Formula], name: str) -> list[Formula]:
    items = list(phis)
    if not items:
        raise ValueError(f"{name} of an empty sequence")
    return items


def big_and(phis: Iterable[Formula]) -> Formula:
    """Left-grouped conjunction: ((phi0 & phi1) & phi2) & ..."""
    items = _nonempty(phis, "big_and")
    acc = items[0]
    for phi in items[1:]:
        acc = And(acc, phi)
    return acc


def big_or(phis: Iterable[Formula]) -> Formula:
    """Left-grouped disjunction: ((phi0 | phi1) | phi2) | ..."""
    items = _nonempty(phis, "big_or")
    acc = items[0]
    for phi in items[1:]:
        acc = Or(acc, phi)
    return acc


def spine(phi: Formula, kind: type, length: int | None = None) -> list[Formula]:
    """Peel the left spine of ``kind`` nodes (And or Or) back into the folded list.

    With ``length`` given, peel exactly ``length - 1`` nodes; otherwise peel
    as far as the spine goes.
    """
    right: list[Formula] = []
    node = phi
    while isinstance(node, kind) and (length is None or len(right) < length - 1):
        right.append(node.right)
        node = node.left
    if length is not None and len(right) != length - 1:
        raise ValueError(f"spine shorter than {length}")
    return [node, *reversed(right)]


def implies(phi: Formula, psi: Formula) -> Formula:
    """phi -> psi, as !phi | psi."""
    return Or(Not(phi), psi)


def leq(x: Term, t: Term, witness: int) -> Formula:
    """x <= t, spelled exists w (w + x = t) with ``witness`` as w."""
    return Exists(witness, Eq(Add(Var(witness), x), t))


def bounded_exists(v: int, bound: Term, body: Formula, witness: int) -> Formula:
    """exists v (v <= bound & body)."""
    return Exists(v, And(leq(Var(v), bound, witness), body))


def bounded_forall(v: int, bound: Term, body: Formula, witness: int) -> Formula:
    """forall v (!(v <= bound) | body)."""
    return Forall(v, Or(Not(leq(Var(v), bound, witness)), body))


def fresh_var(*nodes: Node) -> int:
    """Smallest variable index above every variable (free or bound) in ``nodes``."""
    return 1 + max((n._c_maxvar for n in nodes), default=-1)
