"""Check labeled sentence sets against the truth clauses.

A set labeled by the bounded evaluator is clean; a hand-made labeling with
mistakes gets one report per broken clause, each with its witness.
"""

from pathlib import Path

from truthlab import BoundedOracle, load_manifest
from truthlab.grammar import parse_formula, pretty_print
from truthlab.truthclass import label_with, run_checks, sentence_closure

roots = [parse_formula(t) for t in (
    "forall v0. (v0 = 0 | exists v1. S(v1) = v0)",
    "(S(0) + 0 = S(0) & !0 = S(0))",
)]
family = sentence_closure(roots, 3)
clean = label_with(BoundedOracle(3), family, 3)
print(f"{len(clean)} sentences labeled by the evaluator:",
      {name: len(r.violations) for name, r in run_checks(clean).items()})

manifest = load_manifest(Path(__file__).with_name("manifest.json"))
for name, rep in run_checks(manifest).items():
    for v in rep.violations:
        witness = ", ".join(f"{pretty_print(f)} -> {b}" for f, b in v.witness)
        print(f"{name:13} {v.clause:12} {witness}")
