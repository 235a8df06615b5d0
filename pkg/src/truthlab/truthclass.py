"""Checks that a finite labeling of sentences behaves like a compositional truth predicate.

A ``LabeledSentenceSet`` maps sentences to truth values. Each checker looks
for keys whose clause can be tested inside the set and reports violations
with the sentences involved. A clause whose ingredients are missing from the
set is listed as inapplicable, never counted as passing.

Manifest format (JSON)::

    {"numeral_bound": N,
     "entries": [{"formula": "<formula text>", "value": true}, ...]}
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from .evaluation import TruthOracle, val
from .grammar import ParseError, parse_formula, pretty_print
from .prop import is_tautology
from .syntax import (
    And, Eq, Exists, Forall, Formula, Not, Or, PrProp, Term, numeral, substitute,
)

__all__ = [
    "LabeledSentenceSet", "Violation", "Inapplicable", "ViolationReport", "ManifestError",
    "check_compositional", "check_regularity", "check_propsnd", "check_dc", "check_dcin",
    "CHECKS", "run_checks", "anti_unify", "AMBIGUOUS", "sentence_closure", "label_with",
    "load_manifest", "dump_manifest",
]


class ManifestError(ValueError):
    pass


@dataclass
class LabeledSentenceSet:
    entries: dict[Formula, bool]
    numeral_bound: int = 0

    def __post_init__(self):
        self.entries = dict(self.entries)
        self._instances: dict[Formula, list[Formula]] = {}
        for phi, label in self.entries.items():
            if not isinstance(phi, Formula) or phi.free_vars:
                raise ValueError(f"keys must be sentences, got {phi}")
            if not isinstance(label, bool):
                raise ValueError(f"labels must be booleans, got {label!r}")
        if self.numeral_bound < 0:
            raise ValueError("numeral_bound must be a natural number")

    def __contains__(self, phi) -> bool:
        return phi in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def instances(self, phi: Forall | Exists) -> list[Formula]:
        hit = self._instances.get(phi)
        if hit is None:
            hit = self._instances[phi] = [substitute(phi.body, phi.var, numeral(x))
                                          for x in range(self.numeral_bound + 1)]
        return hit

    def required(self, phi: Formula) -> list[Formula]:
        """Sentences the compositional clause for ``phi`` refers to."""
        match phi:
            case Not(body):
                return [body]
            case And(a, b) | Or(a, b):
                return [a, b]
            case Forall() | Exists():
                return self.instances(phi)
        return []

    def missing(self, phi: Formula) -> list[Formula]:
        return [s for s in self.required(phi) if s not in self.entries]

    def without(self, phis: Iterable[Formula]) -> LabeledSentenceSet:
        drop = set(phis)
        return LabeledSentenceSet({k: v for k, v in self.entries.items() if k not in drop},
                                  self.numeral_bound)


@dataclass(frozen=True)
class Violation:
    check: str
    clause: str
    witness: tuple[tuple[Formula, bool], ...]
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "clause": self.clause,
            "witness": [{"formula": pretty_print(f), "value": v} for f, v in self.witness],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class Inapplicable:
    check: str
    key: Formula
    reason: str
    missing: tuple[Formula, ...] = ()

    def to_json(self) -> dict:
        return {"check": self.check, "formula": pretty_print(self.key), "reason": self.reason,
                "missing": [pretty_print(f) for f in self.missing]}


@dataclass
class ViolationReport:
    check: str
    violations: list[Violation] = field(default_factory=list)
    inapplicable: list[Inapplicable] = field(default_factory=list)
    ambiguous: list[tuple[Formula, Formula]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "clean": self.clean,
            "violations": [v.to_json() for v in self.violations],
            "inapplicable": [i.to_json() for i in self.inapplicable],
            "ambiguous": [[pretty_print(a), pretty_print(b)] for a, b in self.ambiguous],
        }


def check_compositional(s: LabeledSentenceSet) -> ViolationReport:
    report = ViolationReport("compositional")
    e = s.entries
    for key, label in e.items():
        if isinstance(key, Eq):
            if label != (val(key.lhs) == val(key.rhs)):
                report.violations.append(Violation(
                    "compositional", "atomic", ((key, label),),
                    f"values {val(key.lhs)} and {val(key.rhs)}"))
            continue
        if isinstance(key, PrProp):
            report.inapplicable.append(Inapplicable("compositional", key, "oracle atom"))
            continue
        missing = s.missing(key)
        if missing:
            report.inapplicable.append(Inapplicable("compositional", key, "missing", tuple(missing)))
            continue
        parts = s.required(key)
        values = [e[p] for p in parts]
        match key:
            case Not():
                clause, expected = "negation", not values[0]
            case And():
                clause, expected = "conjunction", values[0] and values[1]
            case Or():
                clause, expected = "disjunction", values[0] or values[1]
            case Forall():
                clause, expected = "universal", all(values)
            case Exists():
                clause, expected = "existential", any(values)
        if label != expected:
            witness = ((key, label),) + tuple(zip(parts, values))
            report.violations.append(Violation("compositional", clause, witness))
    return report


class _Ambiguous:
    __slots__ = ()

    def __repr__(self):
        return "AMBIGUOUS"


AMBIGUOUS = _Ambiguous()


def anti_unify(f: Formula, g: Formula):
    """Common template of two formulas with closed terms at the differing positions.

    Returns the list of differing (s_i, t_i) pairs, taking maximal differing
    closed subterms; None if the formulas do not share a template; AMBIGUOUS
    when they differ at a position where one side is an open term.
    """
    pairs: list[tuple[Term, Term]] = []
    ambiguous = False

    def terms(s: Term, t: Term) -> bool:
        nonlocal ambiguous
        if s is t:
            return True
        if s.closed and t.closed:
            pairs.append((s, t))
            return True
        if type(s) is not type(t) or s.children() == () or (s.closed or t.closed):
            if s.closed or t.closed:
                ambiguous = True
            return False
        return all(terms(a, b) for a, b in zip(s.children(), t.children()))

    def formulas(a: Formula, b: Formula) -> bool:
        if a is b:
            return True
        if type(a) is not type(b):
            return False
        match a:
            case Eq(l1, r1):
                return terms(l1, b.lhs) and terms(r1, b.rhs)
            case Forall(v, body) | Exists(v, body):
                return v == b.var and formulas(body, b.body)
            case PrProp():
                return False
        return all(formulas(x, y) for x, y in zip(a.children(), b.children()))

    if formulas(f, g):
        return pairs
    return AMBIGUOUS if ambiguous else None


def check_regularity(s: LabeledSentenceSet) -> ViolationReport:
    report = ViolationReport("regularity")
    keys = list(s.entries)
    for i, f in enumerate(keys):
        for g in keys[i + 1:]:
            if type(f) is not type(g):
                continue
            pairs = anti_unify(f, g)
            if pairs is AMBIGUOUS:
                report.ambiguous.append((f, g))
                continue
            if not pairs or any(val(a) != val(b) for a, b in pairs):
                continue
            if s.entries[f] != s.entries[g]:
                note = "; ".join(f"{pretty_print(a)} ~ {pretty_print(b)}" for a, b in pairs)
                report.violations.append(Violation(
                    "regularity", "regularity", ((f, s.entries[f]), (g, s.entries[g])), note))
    return report


def check_propsnd(s: LabeledSentenceSet) -> ViolationReport:
    report = ViolationReport("propsnd")
    for key, label in s.entries.items():
        if not label and is_tautology(key):
            report.violations.append(Violation("propsnd", "tautology", ((key, label),)))
    return report


def _disjunctions(key: Formula):
    """Every reading of ``key`` as a left-grouped big disjunction of length >= 2."""
    rights: list[Formula] = []
    node = key
    while isinstance(node, Or):
        rights.append(node.right)
        node = node.left
        yield [node, *reversed(rights)]


def _check_disjunctive(s: LabeledSentenceSet, name: str, both_ways: bool) -> ViolationReport:
    report = ViolationReport(name)
    e = s.entries
    for key, label in e.items():
        if not isinstance(key, Or):
            continue
        applicable = False
        for parts in _disjunctions(key):
            if any(p not in e for p in parts):
                continue
            applicable = True
            some_true = any(e[p] for p in parts)
            ok = label == some_true if both_ways else (not label or some_true)
            if not ok:
                witness = ((key, label),) + tuple((p, e[p]) for p in parts)
                report.violations.append(Violation(name, f"length {len(parts)}", witness))
        if not applicable:
            missing = tuple(p for p in (key.left, key.right) if p not in e)
            report.inapplicable.append(Inapplicable(name, key, "missing", missing))
    return report


def check_dc(s: LabeledSentenceSet) -> ViolationReport:
    """A big disjunction is true iff some disjunct is true."""
    return _check_disjunctive(s, "dc", both_ways=True)


def check_dcin(s: LabeledSentenceSet) -> ViolationReport:
    """A true big disjunction has a true disjunct (one direction only)."""
    return _check_disjunctive(s, "dcin", both_ways=False)


CHECKS = {
    "compositional": check_compositional,
    "regularity": check_regularity,
    "propsnd": check_propsnd,
    "dc": check_dc,
    "dcin": check_dcin,
}


def run_checks(s: LabeledSentenceSet, names: Iterable[str] = CHECKS) -> dict[str, ViolationReport]:
    out = {}
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        out[name] = CHECKS[name](s)
    return out


def sentence_closure(sentences: Iterable[Formula], numeral_bound: int) -> list[Formula]:
    """All sentences reachable through the clauses: operands and numeral instances up to the bound."""
    out: dict[Formula, None] = {}
    stack = list(sentences)[::-1]
    while stack:
        phi = stack.pop()
        if phi in out:
            continue
        out[phi] = None
        match phi:
            case Not(body):
                stack.append(body)
            case And(a, b) | Or(a, b):
                stack += [b, a]
            case Forall(v, body) | Exists(v, body):
                stack += [substitute(body, v, numeral(x)) for x in range(numeral_bound, -1, -1)]
    return list(out)


def label_with(oracle: TruthOracle, sentences: Iterable[Formula], numeral_bound: int = 0) -> LabeledSentenceSet:
    return LabeledSentenceSet({phi: bool(oracle(phi)) for phi in sentences}, numeral_bound)


def load_manifest(source) -> LabeledSentenceSet:
    """Read a manifest from a path or an already-decoded JSON value."""
    if not isinstance(source, (str, Path)):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ManifestError(f"manifest is not valid JSON: {exc}") from None
        except OSError as exc:
            raise ManifestError(f"cannot read manifest: {exc.strerror}") from None
    if not isinstance(data, Mapping) or "entries" not in data:
        raise ManifestError("manifest must be an object with an 'entries' list")
    bound = data.get("numeral_bound", 0)
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 0:
        raise ManifestError("numeral_bound must be a natural number")
    entries: dict[Formula, bool] = {}
    for n, item in enumerate(data["entries"]):
        try:
            text, value = item["formula"], item["value"]
        except (KeyError, TypeError):
            raise ManifestError(f"entry {n} needs 'formula' and 'value'") from None
        if not isinstance(value, bool):
            raise ManifestError(f"entry {n}: value must be true or false")
        try:
            phi = parse_formula(text)
        except ParseError as exc:
            raise ManifestError(f"entry {n}: {exc}") from None
        if phi.free_vars:
            raise ManifestError(f"entry {n}: not a sentence")
        if phi in entries and entries[phi] != value:
            raise ManifestError(f"entry {n}: conflicting labels for {text}")
        entries[phi] = value
    return LabeledSentenceSet(entries, bound)


def dump_manifest(s: LabeledSentenceSet) -> dict:
    return {
        "numeral_bound": s.numeral_bound,
        "entries": [{"formula": pretty_print(k), "value": v} for k, v in s.entries.items()],
    }
