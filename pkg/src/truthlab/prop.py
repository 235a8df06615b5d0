"""Propositional skeletons, tautology checking and propositional provability.

A sentence is read propositionally by replacing each maximal subformula whose
head is not !, & or | with an atom; structurally equal subformulas share an
atom. Validity of the skeleton is decided by truth tables when there are at
most ``EXHAUSTIVE_LIMIT`` atoms, evaluated bit-parallel (one bit per
assignment), and otherwise by a DPLL search for a model of the negation.

DPLL branching is deterministic: variables are tried in a fixed order (atoms
in order of first appearance, then Tseitin gate variables in creation order),
the true phase first, with chronological backtracking.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from collections.abc import Iterable, Sequence

from ._node import Node, iter_dag
from .syntax import And, Formula, Not, Or, big_and, implies

__all__ = [
    "PropFormula", "PAtom", "PNot", "PAnd", "POr", "Atomization", "skeletonize",
    "is_tautology", "is_valid", "countermodel", "proves_prop", "max_prefix_entailment",
    "ALL", "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 20


class PropFormula(Node):
    __slots__ = ()

    def __str__(self) -> str:
        match self:
            case PAtom(i):
                return f"p{i}"
            case PNot(a):
                return f"~{a}"
            case PAnd(a, b):
                return f"({a} & {b})"
            case POr(a, b):
                return f"({a} | {b})"
        return repr(self)


class PAtom(PropFormula):
    __slots__ = ()
    _fields = ("index",)
    __match_args__ = ("index",)

    @property
    def index(self) -> int:
        return self._args[0]


class PNot(PropFormula):
    __slots__ = ()
    _fields = ("body",)
    __match_args__ = ("body",)

    @property
    def body(self) -> PropFormula:
        return self._args[0]


class _PBinary(PropFormula):
    __slots__ = ()
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    @property
    def left(self) -> PropFormula:
        return self._args[0]

    @property
    def right(self) -> PropFormula:
        return self._args[1]


class PAnd(_PBinary):
    __slots__ = ()


class POr(_PBinary):
    __slots__ = ()


class Atomization:
    """Bijection between propositional atoms and the sentences they stand for.

    One instance can skeletonize several formulas so that they share atoms,
    which is required whenever premises and goal are compared.
    """

    def __init__(self):
        self.atoms: list[Formula] = []
        self._index: dict[Formula, int] = {}
        self._memo: dict[Formula, PropFormula] = {}

    def __len__(self) -> int:
        return len(self.atoms)

    def atom_for(self, phi: Formula) -> PAtom:
        i = self._index.get(phi)
        if i is None:
            i = self._index[phi] = len(self.atoms)
            self.atoms.append(phi)
        return PAtom(i)

    def skeleton(self, phi: Formula) -> PropFormula:
        hit = self._memo.get(phi)
        if hit is not None:
            return hit
        match phi:
            case Not(body):
                out = PNot(self.skeleton(body))
            case And(a, b):
                left = self.skeleton(a)
                out = PAnd(left, self.skeleton(b))
            case Or(a, b):
                left = self.skeleton(a)
                out = POr(left, self.skeleton(b))
            case _:
                out = self.atom_for(phi)
        self._memo[phi] = out
        return out

    def unskeletonize(self, p: PropFormula) -> Formula:
        memo: dict[int, Formula] = {}
        for node in iter_dag(p):
            match node:
                case PAtom(i):
                    out = self.atoms[i]
                case PNot(a):
                    out = Not(memo[id(a)])
                case POr(a, b):
                    out = Or(memo[id(a)], memo[id(b)])
                case PAnd(a, b):
                    out = And(memo[id(a)], memo[id(b)])
            memo[id(node)] = out
        return memo[id(p)]


def skeletonize(phi: Formula) -> tuple[PropFormula, Atomization]:
    atomization = Atomization()
    return atomization.skeleton(phi), atomization


# truth tables, one bit per assignment

def _atom_mask(i: int, n: int) -> int:
    """Bit j set iff atom i is true in assignment j (atom i is bit i of j)."""
    period = 1 << (i + 1)
    mask = ((1 << (1 << i)) - 1) << (1 << i)
    total = 1 << n
    while period < total:
        mask |= mask << period
        period <<= 1
    return mask


def _truth_table(p: PropFormula, n: int) -> int:
    full = (1 << (1 << n)) - 1
    masks = [_atom_mask(i, n) for i in range(n)]
    tables: dict[int, int] = {}
    for node in iter_dag(p):
        match node:
            case PAtom(i):
                t = masks[i]
            case PNot(a):
                t = full ^ tables[id(a)]
            case POr(a, b):
                t = tables[id(a)] | tables[id(b)]
            case PAnd(a, b):
                t = tables[id(a)] & tables[id(b)]
        tables[id(node)] = t
    return tables[id(p)]


# DPLL on a Tseitin encoding

def _tseitin(p: PropFormula, n_atoms: int) -> tuple[list[list[int]], int, int]:
    lits: dict[int, int] = {}
    clauses: list[list[int]] = []
    nvars = n_atoms
    for node in iter_dag(p):
        match node:
            case PAtom(i):
                lit = i + 1
            case PNot(a):
                lit = -lits[id(a)]
            case POr(a, b):
                nvars += 1
                lit, x, y = nvars, lits[id(a)], lits[id(b)]
                clauses += [[-lit, x, y], [lit, -x], [lit, -y]]
            case PAnd(a, b):
                nvars += 1
                lit, x, y = nvars, lits[id(a)], lits[id(b)]
                clauses += [[-lit, x], [-lit, y], [lit, -x, -y]]
        lits[id(node)] = lit
    return clauses, nvars, lits[id(p)]


def _dpll(clauses: list[list[int]], nvars: int) -> list[int] | None:
    """Return a satisfying assignment (index v -> +1/-1) or None."""
    assign = [0] * (nvars + 1)
    watches: dict[int, list[int]] = defaultdict(list)
    db: list[list[int]] = []
    units: list[int] = []
    for clause in clauses:
        c = list(dict.fromkeys(clause))
        if any(-lit in c for lit in c):
            continue
        if len(c) == 1:
            units.append(c[0])
            continue
        watches[c[0]].append(len(db))
        watches[c[1]].append(len(db))
        db.append(c)

    def value(lit: int) -> int:
        a = assign[abs(lit)]
        return a if lit > 0 else -a

    trail: list[int] = []
    qhead = 0

    def enqueue(lit: int) -> bool:
        v = value(lit)
        if v == -1:
            return False
        if v == 0:
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append(lit)
        return True

    def propagate() -> bool:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = -trail[qhead]
            qhead += 1
            ws = watches[false_lit]
            kept: list[int] = []
            for pos, ci in enumerate(ws):
                c = db[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    kept.append(ci)
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(ci)
                        break
                else:
                    kept.append(ci)
                    if not enqueue(c[0]):
                        kept.extend(ws[pos + 1:])
                        watches[false_lit] = kept
                        return False
            watches[false_lit] = kept
        return True

    for lit in units:
        if not enqueue(lit):
            return None
    if not propagate():
        return None

    # decision stack: (trail length before decision, literal, flipped)
    decisions: list[tuple[int, int, bool]] = []
    next_var = 1
    while True:
        while next_var <= nvars and assign[next_var] != 0:
            next_var += 1
        if next_var > nvars:
            return assign
        decisions.append((len(trail), next_var, False))
        enqueue(next_var)
        while not propagate():
            while decisions and decisions[-1][2]:
                decisions.pop()
            if not decisions:
                return None
            mark, lit, _ = decisions.pop()
            for undone in trail[mark:]:
                assign[abs(undone)] = 0
            del trail[mark:]
            qhead = mark
            next_var = min(next_var, abs(lit))
            decisions.append((mark, -lit, True))
            enqueue(-lit)


def _countermodel_index(p: PropFormula, n: int) -> dict[int, bool] | None:
    """Falsifying assignment of atom indices, or None if ``p`` is valid."""
    if n <= EXHAUSTIVE_LIMIT:
        full = (1 << (1 << n)) - 1
        table = _truth_table(p, n)
        if table == full:
            return None
        missing = full ^ table
        j = (missing & -missing).bit_length() - 1
        return {i: bool((j >> i) & 1) for i in range(n)}
    clauses, nvars, root = _tseitin(p, n)
    model = _dpll(clauses + [[-root]], nvars)
    if model is None:
        return None
    return {i: model[i + 1] > 0 for i in range(n)}


def is_valid(p: PropFormula, n_atoms: int) -> bool:
    """Validity of a propositional formula over atoms ``0..n_atoms-1``."""
    return _countermodel_index(p, n_atoms) is None


def countermodel(phi: Formula) -> dict[Formula, bool] | None:
    """An assignment to the atoms of ``phi`` making it false, or None if it is a tautology."""
    p, atomization = skeletonize(phi)
    found = _countermodel_index(p, len(atomization))
    if found is None:
        return None
    return {atomization.atoms[i]: v for i, v in found.items()}


@functools.lru_cache(maxsize=1 << 16)
def is_tautology(phi: Formula) -> bool:
    p, atomization = skeletonize(phi)
    return _countermodel_index(p, len(atomization)) is None


def proves_prop(gamma: Iterable[Formula], phi: Formula) -> bool:
    """Whether ``phi`` follows propositionally from the finite premise list ``gamma``."""
    premises = list(gamma)
    if not premises:
        return is_tautology(phi)
    return is_tautology(implies(big_and(premises), phi))


class _AllPrefixes:
    __slots__ = ()

    def __repr__(self) -> str:
        return "ALL"


ALL = _AllPrefixes()


def max_prefix_entailment(psi: Formula, phis: Sequence[Formula]) -> int | None | _AllPrefixes:
    """Largest k such that ``psi`` propositionally proves phis[0] & ... & phis[k].

    Returns None when even phis[0] is not entailed and ``ALL`` when every
    prefix, the whole sequence included, is entailed. Entailing a longer
    prefix entails every shorter one, so the scan stops at the first failure.
    """
    items = list(phis)
    if not items:
        raise ValueError("max_prefix_entailment needs a nonempty sequence")
    prefix = None
    for k, phi in enumerate(items):
        prefix = phi if prefix is None else And(prefix, phi)
        if not proves_prop([psi], prefix):
            return k - 1 if k > 0 else None
    return ALL
