"""
The second phase and its potential
==================================

Once pairs dominate the cover the solver switches to q = 2, where the
number of leaves is bounded by sqrt(2)^m * 0.9808^M.
"""

import random
from fractions import Fraction

from subcubic_wvc import SolverConfig, SolveState, WVCSolver, build_graph
from subcubic_wvc.cover import lemma2_holds, measures
from subcubic_wvc.instrumentation import lemma1_bound

# five covered pairs, each pair member wired to a few outside vertices
rng = random.Random(3)
pairs = [(2 * i, 2 * i + 1) for i in range(5)]
outside = list(range(10, 22))
edges = set(pairs)
deg = {v: 0 for v in range(22)}
for a, b in pairs:
    deg[a] = deg[b] = 1
for _ in range(200):
    a, x = rng.randrange(10), rng.choice(outside)
    if deg[a] < 3 and deg[x] < 3 and (a, x) not in edges:
        edges.add((a, x))
        deg[a] += 1
        deg[x] += 1
g = build_graph(22, sorted(edges))
u = set(range(10))
w = {v: Fraction(rng.randint(1, 5)) for v in range(22)}

# the potential never falls below |VCC2| - 3|VCC1|
ms = measures(g, u)
print("m =", ms.m, " M =", ms.M, " lower bound holds:", lemma2_holds(g, u)[0])

# start the recursion directly in the second phase
solver = WVCSolver(SolverConfig(mode="strict", audit=True))
out, report = solver.run(SolveState(g, u, w, q=2))
print("weight", out.weight, "rules", report.rule_counts)
print("leaves", report.leaves, "<= bound", round(lemma1_bound(ms.m, ms.M), 2))
