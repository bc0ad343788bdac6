"""Minimum-weight vertex cover on bipartite graphs via s-t minimum cut."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

from .errors import InvalidColoring
from .graph import Graph

SOURCE = "s"
SINK = "t"


@dataclass
class FlowNetwork:
    """Directed network with exact capacities; residual arcs are implicit."""

    cap: dict[Hashable, dict[Hashable, Fraction]] = field(default_factory=dict)

    def add_arc(self, a: Hashable, b: Hashable, c: Fraction) -> None:
        if c < 0:
            raise ValueError("capacities must be nonnegative")
        self.cap.setdefault(a, {})
        self.cap.setdefault(b, {})
        self.cap[a][b] = self.cap[a].get(b, Fraction(0)) + c
        self.cap[b].setdefault(a, Fraction(0))


def max_flow(net: FlowNetwork, source: Hashable = SOURCE,
             sink: Hashable = SINK) -> tuple[Fraction, set]:
    """Shortest-augmenting-path max flow.

    Returns the flow value and the set of nodes reachable from ``source``
    in the final residual network (the source side of a minimum cut).
    """
    residual = {a: dict(out) for a, out in net.cap.items()}
    residual.setdefault(source, {})
    residual.setdefault(sink, {})
    value = Fraction(0)
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in residual[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return value, set(parent)
        path = []
        b = sink
        while parent[b] is not None:
            path.append((parent[b], b))
            b = parent[b]
        push = min(residual[a][b] for a, b in path)
        for a, b in path:
            residual[a][b] -= push
            residual[b][a] = residual[b].get(a, Fraction(0)) + push
        value += push


def _check_coloring(g: Graph, coloring: Mapping[int, int]) -> None:
    for v in g.alive:
        if coloring.get(v) not in (0, 1):
            raise InvalidColoring(f"vertex {v} has no color in {{0, 1}}")
    for u, v in g.edges():
        if coloring[u] == coloring[v]:
            raise InvalidColoring(f"edge ({u}, {v}) is monochromatic")


def build_network(g: Graph, w: Mapping[int, Fraction],
                  coloring: Mapping[int, int]) -> FlowNetwork:
    """source -> side 0 (w), side 0 -> side 1 (unbounded), side 1 -> sink (w)."""
    _check_coloring(g, coloring)
    active = [v for v in sorted(g.alive) if g.adj[v]]
    big = 1 + sum((Fraction(w[v]) for v in active), Fraction(0))
    net = FlowNetwork()
    for v in active:
        if coloring[v] == 0:
            net.add_arc(SOURCE, v, Fraction(w[v]))
            for x in sorted(g.adj[v]):
                net.add_arc(v, x, big)
        else:
            net.add_arc(v, SINK, Fraction(w[v]))
    return net


def min_weight_vc_bipartite(g: Graph, w: Mapping[int, Fraction],
                            coloring: Mapping[int, int]) -> tuple[set[int], Fraction]:
    net = build_network(g, w, coloring)
    active = [v for v in sorted(g.alive) if g.adj[v]]
    if not active:
        return set(), Fraction(0)
    value, reach = max_flow(net)
    cover = {v for v in active if (coloring[v] == 0) != (v in reach)}
    weight = sum((Fraction(w[v]) for v in cover), Fraction(0))
    assert all(a in cover or b in cover for a, b in g.edges()), "cut does not induce a cover"
    assert weight == value, "cover weight differs from max-flow value"
    return cover, weight
