"""Build formulas, print and parse them, and look at their Goedel codes."""

from truthlab import (
    And, Eq, Exists, Not, Succ, Var, Zero, decode_formula, encode_formula, encode_seq,
    parse_formula, pretty_print, seq_get,
)
from truthlab._node import dag_size, tree_size

phi = And(Not(Eq(Succ(Zero()), Zero())), Exists(1, Eq(Var(1), Succ(Zero()))))
print("formula:      ", pretty_print(phi))
print("parsed back:  ", parse_formula(pretty_print(phi)) is phi)

# Nodes are interned, so rebuilding the same formula gives the same object.
print("interned:     ", Eq(Succ(Zero()), Zero()) is phi.left.body)

code = encode_formula(phi)
print("code (hex):   ", hex(code))
print("decoded:      ", pretty_print(decode_formula(code)))

# Doubling a formula sixty times costs sixty nodes, not 2**60.
big = Eq(Zero(), Zero())
for _ in range(60):
    big = And(big, big)
print("dag vs tree:  ", dag_size(big), "nodes shared,", tree_size(big), "in the tree")

seq = encode_seq([phi, phi.left])
print("seq element 1:", pretty_print(seq_get(seq, 1)))
