"""Truth at desk scale: quantifiers over 0..B, and exact truth for bounded quantifiers."""

from truthlab import EvalConfig, eval_bounded, eval_delta0, parse_formula
from truthlab.overspill import distinctness_sentence, numeral_distinctness
from truthlab.syntax import Eq, Mul, Var, bounded_exists, numeral

succ_total = parse_formula("forall v0. exists v1. v1 = S(v0)")
for bound in (1, 3, 6):
    # false for every B: the largest element has no successor in the domain
    print(f"B={bound}  every x has a successor:", eval_bounded(succ_total, EvalConfig(bound)))

print()
for c in range(1, 6):
    row = [eval_bounded(distinctness_sentence(c), EvalConfig(b)) for b in range(1, 6)]
    print(f"{c} distinct elements exist, B=1..5:", "".join("T" if v else "." for v in row))

print()
square = bounded_exists(0, numeral(10), Eq(Mul(Var(0), Var(0)), numeral(49)), 1)
print("exists x <= 10 with x*x = 49:", eval_delta0(square))
first, second = numeral_distinctness(6)
print("numerals 0..7 pairwise distinct:", eval_delta0(first) and eval_delta0(second))
