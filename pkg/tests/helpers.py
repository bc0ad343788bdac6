"""Shared builders and a subset-enumeration oracle for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from subcubic_wvc.graph import Graph


def enum_min_vc(g: Graph, w) -> Fraction:
    """Minimum cover weight by scanning every subset (n <= 16)."""
    vs = g.vertices()
    assert len(vs) <= 16
    edges = g.edges()
    best = None
    for r in range(len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            s = set(sub)
            if all(a in s or b in s for a, b in edges):
                wt = sum((Fraction(w[v]) for v in s), Fraction(0))
                if best is None or wt < best:
                    best = wt
    return best


def random_subcubic(rng: random.Random, n: int, density: float = 0.8,
                    max_deg: int = 3) -> Graph:
    deg = [0] * n
    edges = set()
    for _ in range(int(density * n * 3)):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b:
            continue
        e = (min(a, b), max(a, b))
        if e in edges or deg[a] >= max_deg or deg[b] >= max_deg:
            continue
        edges.add(e)
        deg[a] += 1
        deg[b] += 1
    return Graph.from_edges(n, sorted(edges))


def random_weights(rng: random.Random, n: int, kind: str = "int") -> dict[int, Fraction]:
    if kind == "unit":
        return {v: Fraction(1) for v in range(n)}
    if kind == "zero":
        return {v: Fraction(rng.choice([0, 0, 1, 2])) for v in range(n)}
    return {v: Fraction(rng.randint(1, 9)) for v in range(n)}


def random_good_cover(rng: random.Random, singles: int, pairs: int,
                      outside: int) -> tuple[Graph, set[int]]:
    """Subcubic graph with a good cover U: singletons and pairs of G[U], V \\ U independent."""
    n = singles + 2 * pairs + outside
    deg = [0] * n
    edges = set()
    u_vertices = list(range(singles + 2 * pairs))
    for i in range(pairs):
        a, b = singles + 2 * i, singles + 2 * i + 1
        edges.add((a, b))
        deg[a] += 1
        deg[b] += 1
    out = list(range(singles + 2 * pairs, n))
    for _ in range(4 * n):
        if not out or not u_vertices:
            break
        a, x = rng.choice(u_vertices), rng.choice(out)
        e = (min(a, x), max(a, x))
        if e in edges or deg[a] >= 3 or deg[x] >= 3:
            continue
        edges.add(e)
        deg[a] += 1
        deg[x] += 1
    return Graph.from_edges(n, sorted(edges)), set(u_vertices)


# criterion number -> PASS/FAIL line, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}
