"""Exact reference solvers for small graphs.

``exact_min_weight_vc`` is the test oracle: a plain branch-and-bound that
shares no code with the rule-based engine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ComponentTooLarge, NotAComponent, TooLarge
from .graph import Graph

DEFAULT_MAX_N = 26
SMALL_COMPONENT = 10


def _matching_bound(adj: dict[int, set[int]], w: Mapping[int, Fraction]) -> Fraction:
    # Disjoint edges each force one endpoint into any cover.
    used: set[int] = set()
    total = Fraction(0)
    for u in sorted(adj):
        if u in used:
            continue
        for v in sorted(adj[u]):
            if v not in used:
                used.add(u)
                used.add(v)
                total += min(w[u], w[v])
                break
    return total


def _remove(adj: dict[int, set[int]], vs: Iterable[int]) -> dict[int, set[int]]:
    gone = set(vs)
    out = {}
    for v, nb in adj.items():
        if v in gone:
            continue
        rest = nb - gone
        if rest:
            out[v] = rest
    return out


def _min_vc(adj: dict[int, set[int]], w: Mapping[int, Fraction]) -> tuple[set[int], Fraction]:
    full = {v: set(nb) for v, nb in adj.items()}
    best: list = [None, None]  # weight, sorted tuple

    def is_minimal(cover: set[int]) -> bool:
        return all(full[v] - cover for v in cover)

    def rec(rest: dict[int, set[int]], chosen: set[int], weight: Fraction) -> None:
        if best[0] is not None and weight + _matching_bound(rest, w) > best[0]:
            return
        if not rest:
            if not is_minimal(chosen):
                return
            key = tuple(sorted(chosen))
            if best[0] is None or weight < best[0] or (weight == best[0] and key < best[1]):
                best[0], best[1] = weight, key
            return
        v = max(sorted(rest), key=lambda x: len(rest[x]))
        rec(_remove(rest, [v]), chosen | {v}, weight + w[v])
        nv = rest[v]
        rec(_remove(rest, nv | {v}), chosen | nv, weight + sum((w[x] for x in nv), Fraction(0)))

    start = {v: set(nb) for v, nb in adj.items() if nb}
    rec(start, set(), Fraction(0))
    return set(best[1]), best[0]


def exact_min_weight_vc(g: Graph, w: Mapping[int, Fraction],
                        max_n: int = DEFAULT_MAX_N) -> tuple[set[int], Fraction]:
    """Minimum-weight vertex cover by exhaustive branch and bound.

    Ties are broken toward the lexicographically smallest sorted id tuple
    among inclusion-minimal optimal covers (identical to the plain
    lexicographic rule whenever all weights are positive).
    """
    if len(g.alive) > max_n:
        raise TooLarge(f"{len(g.alive)} vertices exceeds oracle limit {max_n}")
    wf = {v: Fraction(w[v]) for v in g.alive}
    if any(x < 0 for x in wf.values()):
        raise ValueError("weights must be nonnegative")
    return _min_vc({v: set(g.adj[v]) for v in g.alive}, wf)


def solve_small_component(g: Graph, comp: Iterable[int],
                          w: Mapping[int, Fraction]) -> tuple[set[int], Fraction]:
    c = set(comp)
    if len(c) > SMALL_COMPONENT:
        raise ComponentTooLarge(f"component has {len(c)} > {SMALL_COMPONENT} vertices")
    if not c or not c <= g.alive or any(g.adj[v] - c for v in c) \
            or len(g.connected_components(c)) != 1:
        raise NotAComponent("vertex set is not a connected component of G")
    wf = {v: Fraction(w[v]) for v in c}
    return _min_vc({v: set(g.adj[v]) for v in c}, wf)
