"""
Branching numbers behind the running time
=========================================

Each branching rule cuts the measure m1 by a known amount in every branch.
The root of sum(x^-d) = 1 bounds how fast the search tree grows.
"""

from subcubic_wvc.instrumentation import (branching_number, combined_constant,
                                          lemma1_four_branch_sum, lemma1_two_branch_sum,
                                          rule4_vector, rule7_vector, rule13_m2_vector)

# plain binary branching on one vertex: x^-1 + x^-1 = 1 gives 2
print("(1, 1):", round(branching_number([1, 1]), 6))

# triangle/pair composition: three long branches and one short one
vec = rule4_vector()
print("triangle rule", [float(d) for d in vec], "->", round(branching_number(vec), 4))

# cycles in G[U], by length
for k in (4, 5, 6):
    print(f"cycle length {k}:", round(branching_number(rule7_vector(k)), 4))

# the second phase trades m1 for m2 = (1 + alpha*beta)|VCC2|
print("pair branching under m2:", round(branching_number(rule13_m2_vector()), 4))

# the potential M pays for the phase switch; these three numbers close the argument
print("sqrt2 * 0.9808^(1-3beta) =", round(combined_constant(), 4))
print("four-branch sum =", round(lemma1_four_branch_sum(), 4))
print("two-branch sum  =", round(lemma1_two_branch_sum(), 4))
