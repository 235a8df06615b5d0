"""Propositional reading of arithmetic sentences: tautologies, countermodels, entailment."""

from truthlab import countermodel, is_tautology, max_prefix_entailment, parse_formula, pretty_print
from truthlab.syntax import big_and, big_or, Not
from truthlab.overspill import truth_atom

excluded_middle = parse_formula("(forall v0. v0 = v0 | !forall v0. v0 = v0)")
print("p | !p over a quantified atom:", is_tautology(excluded_middle))

# True arithmetic is not enough: the quantified sentence is an opaque atom.
print("forall v0. v0 = v0 alone:     ", is_tautology(parse_formula("forall v0. v0 = v0")))

atoms = [truth_atom(i, True) for i in range(30)]
print("30-atom disjunction valid?    ", is_tautology(big_or(atoms)))
print("... with one negated atom:    ", is_tautology(big_or(atoms + [Not(atoms[7])])))

cm = countermodel(parse_formula("(0 = S(0) -> S(0) = 0) -> 0 = S(0)"))
print("countermodel:", {pretty_print(a): v for a, v in cm.items()})

phis = atoms[:6]
print("longest prefix entailed by phi_0 & phi_1 & phi_2:", max_prefix_entailment(big_and(phis[:3]), phis))
