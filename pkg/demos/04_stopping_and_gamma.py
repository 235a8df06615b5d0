"""Disjunctions with stopping conditions and the gamma construction.

The stopping contract holds under every valuation. The gamma ranks, however,
do not climb: each gamma_{i+1} can be made true with phi_0 true and phi_1
false by a valuation that makes a PrProp atom false, so it never entails a
longer prefix than gamma_0 does.
"""

import itertools

from truthlab import ValuationOracle, demo_theorem31
from truthlab.overspill import StoppingSpec, stopping_disjunction, truth_atom

alphas = [truth_atom(i, True) for i in range(3)]
betas = [truth_atom(i, True) for i in range(3, 6)]
chain = stopping_disjunction(StoppingSpec(alphas, betas, 2))
agree = 0
for bits in itertools.product([False, True], repeat=6):
    v = dict(zip(alphas + betas, bits))
    k = next((i for i, a in enumerate(alphas) if v[a]), None)
    expected = False if k is None else v[betas[k]]
    agree += ValuationOracle(v)(chain) == expected
print(f"stopping contract: {agree}/64 valuations agree")

print()
report = demo_theorem31(4, 4)
print("\n".join(report.lines()))
