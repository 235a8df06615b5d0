"""Finite versions of the overspill constructions.

The builders here produce sentences (stopping disjunctions, the alpha/beta/gamma
sequences, outer disjunctions, psi-sequences, distinctness sentences); the
checkers evaluate them against a truth oracle and report which step of the
corresponding argument holds or breaks.
"""

from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass, field

from ._node import dag_size
from .evaluation import TruthOracle
from .prop import ALL, max_prefix_entailment
from .syntax import (
    Add, And, Eq, Exists, Formula, Not, Or, PrProp, Var, Zero, big_and, big_or, fresh_var,
    implies, leq, numeral,
)

__all__ = [
    "Rank", "Finite", "OMEGA", "NotFound", "StoppingSpec", "ResourceLimitError",
    "stopping_disjunction", "build_alpha", "build_beta", "build_gamma_sequence", "rank",
    "find_max_rank_index", "progress_violation", "outer_disjunction_D", "build_psi_sequence",
    "distinctness_sentence", "numeral_distinctness", "outer_disjunction_tautologies", "truth_atom",
    "PsiStep", "PsiReport", "check_psi_sequence", "OuterDisjunctionReport",
    "check_outer_disjunction", "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 10**7


class ResourceLimitError(RuntimeError):
    def __init__(self, what: str, nodes: int, cap: int):
        self.nodes = nodes
        self.cap = cap
        super().__init__(f"{what}: {nodes} DAG nodes exceeds the cap of {cap}")


# ranks in omega + 1

@functools.total_ordering
class Rank:
    __slots__ = ()

    def _key(self) -> tuple[int, int]:
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, Rank):
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other):
        return isinstance(other, Rank) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_omega(self) -> bool:
        return self._key()[0] == 1


class Finite(Rank):
    __slots__ = ("k",)

    def __init__(self, k: int):
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise ValueError(f"finite rank must be a natural number, got {k!r}")
        self.k = k

    def _key(self):
        return (0, self.k)

    def __repr__(self):
        return f"Finite({self.k})"

    def __str__(self):
        return str(self.k)


class _Omega(Rank):
    __slots__ = ()

    def _key(self):
        return (1, 0)

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "omega"


OMEGA = _Omega()


@dataclass(frozen=True)
class NotFound:
    """No maximal rank was located. ``index`` is the first progress failure, if any."""

    reason: str
    index: int | None = None


def progress_violation(ranks: Sequence[Rank]) -> int | None:
    """First index a where ranks[a] is not maximal and not below ranks[a + 1]."""
    for a in range(len(ranks) - 1):
        if not ranks[a].is_omega and not ranks[a] < ranks[a + 1]:
            return a
    return None


def find_max_rank_index(ranks: Sequence[Rank]) -> int | NotFound:
    """Least index holding OMEGA, provided the progress condition holds on the list."""
    if not ranks:
        raise ValueError("find_max_rank_index needs a nonempty list")
    bad = progress_violation(ranks)
    if bad is not None:
        return NotFound("progress", bad)
    for a, r in enumerate(ranks):
        if r.is_omega:
            return a
    return NotFound("no-omega")


# disjunctions with stopping conditions

@dataclass(frozen=True)
class StoppingSpec:
    alphas: tuple[Formula, ...]
    betas: tuple[Formula, ...]
    c: int

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(self.alphas))
        object.__setattr__(self, "betas", tuple(self.betas))
        if self.c < 0 or len(self.alphas) != self.c + 1 or len(self.betas) != self.c + 1:
            raise ValueError(
                f"stopping spec needs c+1 = {self.c + 1} alphas and betas, "
                f"got {len(self.alphas)} and {len(self.betas)}")


def stopping_disjunction(spec: StoppingSpec) -> Formula:
    """Guard chain whose value is beta_k for the least k with alpha_k true, false if none.

    chain(c) = alpha_c & beta_c
    chain(i) = (alpha_i & beta_i) | (!alpha_i & chain(i + 1))
    """
    chain = And(spec.alphas[-1], spec.betas[-1])
    for a, b in zip(reversed(spec.alphas[:-1]), reversed(spec.betas[:-1])):
        chain = Or(And(a, b), And(Not(a), chain))
    return chain


# the gamma construction

def build_beta(i: int, phis: Sequence[Formula]) -> Formula:
    if not 0 <= i < len(phis):
        raise IndexError(f"beta index {i} outside 0..{len(phis) - 1}")
    return big_and(phis[: i + 1])


def build_alpha(psi: Formula, i: int, phis: Sequence[Formula]) -> Formula:
    """!(psi & PrProp(psi -> phi_0 & ... & phi_i))"""
    return Not(And(psi, PrProp(implies(psi, build_beta(i, phis)))))


def build_gamma_sequence(phis: Sequence[Formula], c: int, steps: int,
                         max_nodes: int = DEFAULT_NODE_CAP) -> list[Formula]:
    """gamma_0 = phi_0, gamma_{i+1} = stopping disjunction of alpha_j[gamma_i], beta_j (j <= c)."""
    phis = list(phis)
    if not 0 <= c < len(phis):
        raise ValueError(f"need c < len(phis), got c={c} with {len(phis)} sentences")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    betas = [build_beta(j, phis) for j in range(c + 1)]
    gammas = [phis[0]]
    for _ in range(steps):
        g = gammas[-1]
        alphas = [build_alpha(g, j, phis) for j in range(c + 1)]
        nxt = stopping_disjunction(StoppingSpec(alphas, betas, c))
        size = dag_size(nxt)
        if size > max_nodes:
            raise ResourceLimitError(f"gamma_{len(gammas)}", size, max_nodes)
        gammas.append(nxt)
    return gammas


def rank(psi: Formula, phis: Sequence[Formula], oracle: TruthOracle) -> Rank:
    """0 if the oracle rejects psi; k + 1 for the longest entailed prefix phi_0..phi_k;
    OMEGA if every prefix of ``phis`` is entailed.

    A true psi that does not even entail phi_0 also gets rank 0.
    """
    if not oracle(psi):
        return Finite(0)
    k = max_prefix_entailment(psi, phis)
    if k is ALL:
        return OMEGA
    if k is None:
        return Finite(0)
    return Finite(k + 1)


# outer disjunctions and the psi-sequence

def outer_disjunction_D(phis: Sequence[Formula]) -> Formula:
    """exists x (x <= b & OR_{i<=b} (x = i & phi_i)) with b = len(phis) - 1."""
    phis = list(phis)
    if not phis:
        raise ValueError("outer disjunction of an empty sequence")
    x = fresh_var(*phis)
    w = x + 1
    b = len(phis) - 1
    body = big_or([And(Eq(Var(x), numeral(i)), phi) for i, phi in enumerate(phis)])
    return Exists(x, And(leq(Var(x), numeral(b), w), body))


def build_psi_sequence(phis: Sequence[Formula], max_nodes: int = DEFAULT_NODE_CAP) -> list[Formula]:
    """psi_0 = phi_0, psi_{i+1} = !phi_{i+1} -> D(<!psi_j>_{j<=i})."""
    phis = list(phis)
    if not phis:
        raise ValueError("psi sequence of an empty sequence")
    psis = [phis[0]]
    negs = [Not(phis[0])]
    for phi in phis[1:]:
        nxt = implies(Not(phi), outer_disjunction_D(negs))
        size = dag_size(nxt)
        if size > max_nodes:
            raise ResourceLimitError(f"psi_{len(psis)}", size, max_nodes)
        psis.append(nxt)
        negs.append(Not(nxt))
    return psis


def distinctness_sentence(c: int) -> Formula:
    """exists v1 ... exists vc AND_{i != j} !(vi = vj), ordered pairs, left grouped.

    For c = 1 the empty conjunction is replaced by v1 = v1.
    """
    if c < 1:
        raise ValueError("distinctness sentence needs c >= 1")
    if c == 1:
        body: Formula = Eq(Var(1), Var(1))
    else:
        body = big_and([Not(Eq(Var(i), Var(j)))
                        for i in range(1, c + 1) for j in range(1, c + 1) if i != j])
    for i in range(c, 0, -1):
        body = Exists(i, body)
    return body


def numeral_distinctness(b: int) -> tuple[Formula, Formula]:
    """(AND_{i<=b} !(i = b+1), AND_{i,j<=b, i!=j} !(i = j)), numerals throughout.

    The second conjunction is empty for b = 0 and is then replaced by 0 = 0.
    """
    if b < 0:
        raise ValueError("b must be a natural number")
    first = big_and([Not(Eq(numeral(i), numeral(b + 1))) for i in range(b + 1)])
    pairs = [Not(Eq(numeral(i), numeral(j)))
             for i in range(b + 1) for j in range(b + 1) if i != j]
    second = big_and(pairs) if pairs else Eq(Zero(), Zero())
    return first, second


def outer_disjunction_tautologies(b: int, phis: Sequence[Formula]) -> tuple[Formula, list[Formula]]:
    """The two tautologies used to verify that D is an outer disjunction.

    first:        AND_{i<=b} !(b+1 = i) -> !OR_{i<=b} (b+1 = i & phi_i)
    second[j]:    (j = j & AND_{i!=j} !(j = i) & OR_{i<=b} (j = i & phi_i)) -> phi_j

    Equations are oriented as they arise from instantiating the disjuncts
    ``x = i`` of D with ``x := b+1`` or ``x := j``.
    """
    phis = list(phis)
    if len(phis) != b + 1:
        raise ValueError(f"need b+1 = {b + 1} sentences, got {len(phis)}")

    def instance(x: int) -> Formula:
        return big_or([And(Eq(numeral(x), numeral(i)), phi) for i, phi in enumerate(phis)])

    first = implies(big_and([Not(Eq(numeral(b + 1), numeral(i))) for i in range(b + 1)]),
                    Not(instance(b + 1)))
    second = []
    for j in range(b + 1):
        others = [Not(Eq(numeral(j), numeral(i))) for i in range(b + 1) if i != j]
        parts = [Eq(numeral(j), numeral(j))]
        if others:
            parts.append(big_and(others))
        parts.append(instance(j))
        second.append(implies(big_and(parts), phis[j]))
    return first, second


def truth_atom(i: int, value: bool) -> Formula:
    """A closed atomic sentence, distinct for each i, with the given standard truth value.

    ``i + 0 = i`` when true and ``i + 0 = S(i)`` when false.
    """
    n = numeral(i)
    return Eq(Add(n, Zero()), n if value else numeral(i + 1))


@dataclass
class OuterDisjunctionReport:
    """Clause-by-clause check of D on one sequence and an extra sentence psi."""

    sentence: bool
    extension: bool
    witness: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.sentence and self.extension and self.witness


def check_outer_disjunction(phis: Sequence[Formula], psi: Formula,
                            oracle: TruthOracle) -> OuterDisjunctionReport:
    """D(phis) is a sentence; T D(phis ^ psi) <-> T D(phis) | T psi; T D(phis) -> some T phi_i."""
    phis = list(phis)
    d = outer_disjunction_D(phis)
    d_ext = outer_disjunction_D(phis + [psi])
    t_d, t_ext, t_psi = oracle(d), oracle(d_ext), oracle(psi)
    t_phis = [oracle(p) for p in phis]
    return OuterDisjunctionReport(
        sentence=d.is_sentence and d_ext.is_sentence,
        extension=t_ext == (t_d or t_psi),
        witness=(not t_d) or any(t_phis),
        details={"D": t_d, "D_ext": t_ext, "psi": t_psi, "phis": t_phis},
    )


@dataclass
class PsiStep:
    index: int
    phi: bool
    psi: bool
    outer: bool | None  # T D(<!psi_j>_{j<index}), None for index 0


@dataclass
class PsiReport:
    steps: list[PsiStep]
    hypotheses_hold: bool
    violated_hypothesis: str | None
    failing_step: str | None
    conclusion_holds: bool

    @property
    def ok(self) -> bool:
        """True when the argument behaves as predicted: conclusion under the
        hypotheses, a pinpointed failure otherwise."""
        if self.hypotheses_hold:
            return self.conclusion_holds and self.failing_step is None
        return self.failing_step is not None

    def lines(self) -> list[str]:
        out = []
        for s in self.steps:
            d = "-" if s.outer is None else str(s.outer).lower()
            out.append(f"i={s.index}: T phi={str(s.phi).lower()} T psi={str(s.psi).lower()} "
                       f"T D<!psi_j>_(j<i)={d}")
        if self.violated_hypothesis:
            out.append(f"hypothesis violated: {self.violated_hypothesis}")
        if self.failing_step:
            out.append(f"failing step: {self.failing_step}")
        out.append("conclusion: " + ("every phi_i true" if self.conclusion_holds else "some phi_i false"))
        return out


def check_psi_sequence(phis: Sequence[Formula], oracle: TruthOracle) -> PsiReport:
    """Evaluate the psi-sequence argument on ``phis`` and locate the first broken inference."""
    phis = list(phis)
    psis = build_psi_sequence(phis)
    t_phi = [oracle(p) for p in phis]
    t_psi = [oracle(p) for p in psis]
    negs = [Not(p) for p in psis]
    t_outer: list[bool | None] = [None] + [oracle(outer_disjunction_D(negs[:i]))
                                           for i in range(1, len(phis))]
    steps = [PsiStep(i, t_phi[i], t_psi[i], t_outer[i]) for i in range(len(phis))]

    violated = None
    if not t_phi[0]:
        violated = "base: T phi_0 fails"
    else:
        for i in range(len(phis) - 1):
            if t_phi[i] and not t_phi[i + 1]:
                violated = f"progress: T phi_{i} -> T phi_{i + 1} fails"
                break

    failing = None
    first_bad_psi = next((i for i, t in enumerate(t_psi) if not t), None)
    if first_bad_psi == 0:
        failing = "T psi_0 fails: psi_0 is phi_0 and T phi_0 does not hold"
    elif first_bad_psi is not None:
        i = first_bad_psi
        facts = f"T !D<!psi_j>_(j<={i - 1}) and T !phi_{i} hold"
        if t_outer[i]:
            failing = f"T !psi_{i} although T D<!psi_j>_(j<={i - 1}): compositional clause for -> fails"
        elif t_phi[i - 1]:
            failing = f"{facts}, but T phi_{i - 1}: progress T phi_{i - 1} -> T phi_{i} fails"
        elif not t_psi[i - 1]:
            failing = f"{facts}, but T psi_{i - 1} fails: outer disjunction extension clause fails"
        else:
            failing = (f"{facts}, T psi_{i - 1} and T !phi_{i - 1} force T D<!psi_j>_(j<{i - 1}), "
                       f"contradicting the extension clause")
    else:
        bad_phi = next((i for i, t in enumerate(t_phi) if not t), None)
        if bad_phi is not None:
            failing = (f"every psi_i true but T phi_{bad_phi} fails: "
                       f"T D<!psi_j>_(j<{bad_phi}) yields no true disjunct (witness clause fails)")

    return PsiReport(
        steps=steps,
        hypotheses_hold=violated is None,
        violated_hypothesis=violated,
        failing_step=failing,
        conclusion_holds=all(t_phi) and all(t_psi),
    )
