"""The outer disjunction D and the psi-sequence argument on truth patterns."""

import itertools

from truthlab import BoundedOracle, check_outer_disjunction, demo_theorem33
from truthlab.overspill import outer_disjunction_D, truth_atom
from truthlab.grammar import pretty_print

phis = [truth_atom(0, False), truth_atom(1, True)]
print("D:", pretty_print(outer_disjunction_D(phis)))
ok = all(
    check_outer_disjunction([truth_atom(i, v) for i, v in enumerate(bits[:-1])],
                            truth_atom(3, bits[-1]), BoundedOracle(5)).ok
    for bits in itertools.product([False, True], repeat=4)
)
print("all three clauses hold on every valuation with b = 2:", ok)

print()
print("\n".join(demo_theorem33(4, 4).lines()))
print()
print("\n".join(demo_theorem33(4, 4, break_at=2).lines()))

print()
counts = {0: 0, 1: 0, 3: 0}
for pattern in itertools.product([False, True], repeat=6):
    counts[demo_theorem33(5, 5, pattern=pattern).exit_code] += 1
print(f"c=5: {counts[0]} pattern confirmed, {counts[1]} broken patterns pinpointed, {counts[3]} contradictions")
