"""End-to-end finite runs of the two overspill arguments.

``demo_theorem31`` drives the gamma construction: it ranks every gamma_i,
looks for the first maximal rank, checks each stopping-disjunction step
against the oracle and evaluates the final conjunction. ``demo_theorem33``
builds the psi-sequence over a truth pattern of atomic sentences and traces
the case analysis of the argument.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from ._node import dag_size
from .evaluation import BoundedOracle, TruthOracle
from .overspill import (
    NotFound, PsiReport, Rank, build_alpha, build_beta, build_gamma_sequence,
    check_psi_sequence, distinctness_sentence, find_max_rank_index, rank, truth_atom,
)
from .syntax import Formula, big_and

__all__ = ["GammaReport", "demo_theorem31", "PsiDemoReport", "demo_theorem33", "MAX_DEMO_C"]

MAX_DEMO_C = 12


@dataclass
class GammaReport:
    c: int
    bound: int
    sizes: list[int]
    ranks: list[Rank]
    omega_index: int | NotFound
    stopping_ok: list[bool]
    conjunction: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 3

    def lines(self) -> list[str]:
        out = [f"c={self.c} B={self.bound}"]
        for i, (size, r) in enumerate(zip(self.sizes, self.ranks)):
            step = "" if i == 0 else f"  stopping step {'ok' if self.stopping_ok[i - 1] else 'FAILS'}"
            out.append(f"gamma_{i}: dag={size} rank={r}{step}")
        d = self.omega_index
        out.append(f"omega index: {d if isinstance(d, int) else 'not found (' + d.reason + ')'}")
        out.append(f"T phi_0 & ... & phi_c: {str(self.conjunction).lower()}")
        out += [f"FAILED: {f}" for f in self.failures]
        out.append("confirmed" if self.ok else "invariant failure")
        return out

    def to_json(self) -> dict:
        d = self.omega_index
        return {
            "c": self.c, "bound": self.bound, "dag_sizes": self.sizes,
            "ranks": [str(r) for r in self.ranks],
            "omega_index": d if isinstance(d, int) else None,
            "stopping_ok": self.stopping_ok, "conjunction": self.conjunction,
            "failures": self.failures, "ok": self.ok,
        }


def _least_true(oracle: TruthOracle, sentences: Sequence[Formula]) -> int | None:
    return next((k for k, s in enumerate(sentences) if oracle(s)), None)


def demo_theorem31(c: int, bound: int, phis: Sequence[Formula] | None = None,
                   oracle: TruthOracle | None = None) -> GammaReport:
    """Run the gamma construction for c + 1 steps and check every bullet of the argument.

    By default phi_i is the sentence saying that i + 1 distinct elements exist,
    all true once the domain has at least c + 1 elements.
    """
    if not 1 <= c <= MAX_DEMO_C:
        raise ValueError(f"c must lie in 1..{MAX_DEMO_C}")
    if bound < c:
        raise ValueError("the domain bound must be at least c")
    phis = [distinctness_sentence(i + 1) for i in range(c + 1)] if phis is None else list(phis)
    if len(phis) != c + 1:
        raise ValueError(f"need c+1 = {c + 1} sentences, got {len(phis)}")
    oracle = BoundedOracle(bound) if oracle is None else oracle

    gammas = build_gamma_sequence(phis, c, steps=c + 1)
    ranks = [rank(g, phis, oracle) for g in gammas]
    betas = [build_beta(j, phis) for j in range(c + 1)]
    failures = []

    stopping_ok = []
    for i in range(1, len(gammas)):
        k = _least_true(oracle, [build_alpha(gammas[i - 1], j, phis) for j in range(c + 1)])
        expected = False if k is None else oracle(betas[k])
        stopping_ok.append(oracle(gammas[i]) == expected)
    if not all(stopping_ok):
        i = stopping_ok.index(False) + 1
        failures.append(f"stopping disjunction: T gamma_{i} differs from T beta_k at the least true alpha_k")

    for i in range(len(ranks) - 1):
        if not ranks[i].is_omega and not ranks[i] < ranks[i + 1]:
            failures.append(f"rank progress: r(gamma_{i + 1}) > r(gamma_{i}) fails ({ranks[i]} then {ranks[i + 1]})")
            break

    d = find_max_rank_index(ranks)
    if isinstance(d, NotFound):
        failures.append(f"rank lemma: no gamma_d with d <= {c + 1} has rank omega")
    elif not oracle(gammas[d]):
        failures.append(f"T gamma_{d} fails although its rank is omega")

    conjunction = oracle(big_and(phis))
    if not conjunction:
        failures.append("conclusion: T phi_0 & ... & phi_c fails")

    return GammaReport(c, bound, [dag_size(g) for g in gammas], ranks, d,
                       stopping_ok, conjunction, failures)


@dataclass
class PsiDemoReport:
    c: int
    bound: int
    pattern: list[bool]
    report: PsiReport

    @property
    def exit_code(self) -> int:
        """0 when the conclusion is confirmed, 1 when a broken hypothesis is
        correctly pinpointed, 3 when the trace contradicts the argument."""
        if not self.report.ok:
            return 3
        return 0 if self.report.hypotheses_hold else 1

    def lines(self) -> list[str]:
        pattern = "".join("1" if v else "0" for v in self.pattern)
        return [f"c={self.c} B={self.bound} pattern={pattern}", *self.report.lines()]

    def to_json(self) -> dict:
        r = self.report
        return {
            "c": self.c, "bound": self.bound, "pattern": self.pattern,
            "steps": [{"i": s.index, "phi": s.phi, "psi": s.psi, "outer": s.outer} for s in r.steps],
            "hypotheses_hold": r.hypotheses_hold,
            "violated_hypothesis": r.violated_hypothesis,
            "failing_step": r.failing_step,
            "conclusion_holds": r.conclusion_holds,
            "ok": r.ok,
        }


def demo_theorem33(c: int, bound: int, break_at: int | None = None,
                   pattern: Sequence[bool] | None = None) -> PsiDemoReport:
    """psi-sequence over atomic sentences phi_i with prescribed truth values.

    All phi_i are true unless ``break_at`` makes that single one false, or an
    explicit ``pattern`` of c + 1 values is given.
    """
    if c < 0:
        raise ValueError("c must be a natural number")
    if bound < max(c, 1):
        raise ValueError("the domain bound must be at least max(c, 1)")
    if pattern is None:
        pattern = [i != break_at for i in range(c + 1)]
    elif break_at is not None:
        raise ValueError("give either break_at or pattern, not both")
    pattern = [bool(v) for v in pattern]
    if len(pattern) != c + 1:
        raise ValueError(f"pattern needs c+1 = {c + 1} values")
    phis = [truth_atom(i, v) for i, v in enumerate(pattern)]
    return PsiDemoReport(c, bound, pattern, check_psi_sequence(phis, BoundedOracle(bound)))
