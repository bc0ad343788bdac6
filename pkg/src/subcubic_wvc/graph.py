"""Mutable undirected simple graph with an undo journal.

Vertices are dense integer ids that stay valid for the lifetime of the
graph; deleting a vertex never frees its id. Deletions are recorded on a
journal so a recursive search can undo them in LIFO order instead of
copying the graph at every node.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

from .errors import (
    DuplicateEdge,
    IdOutOfRange,
    OutOfOrderRestore,
    SelfLoop,
    VertexNotAlive,
)


class MutationToken(NamedTuple):
    """Handle for one journal frame; restore frames newest first."""

    index: int
    serial: int


class Bipartition(NamedTuple):
    """Result of a 2-coloring attempt.

    Exactly one of ``coloring`` and ``odd_cycle`` is not None.
    """

    coloring: dict[int, int] | None
    odd_cycle: list[int] | None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None


class Graph:
    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n_total = n
        self.alive: set[int] = set(range(n))
        self.adj: dict[int, set[int]] = {v: set() for v in range(n)}
        self._journal: list[tuple[int, list[tuple[int, set[int]]]]] = []
        self._serial = 0

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        for x in (u, v):
            if not 0 <= x < self.n_total:
                raise IdOutOfRange(f"vertex {x} not in [0, {self.n_total})")
            if x not in self.alive:
                raise VertexNotAlive(x)
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in self.adj[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        self.adj[u].add(v)
        self.adj[v].add(u)

    # -- queries ---------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self.alive

    def __len__(self) -> int:
        return len(self.alive)

    def vertices(self) -> list[int]:
        return sorted(self.alive)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> set[int]:
        return self.adj[v] | {v}

    def neighborhood_of_set(self, s: Iterable[int]) -> set[int]:
        s = set(s)
        out: set[int] = set()
        for v in s:
            out |= self.adj[v]
        return out - s

    def max_degree(self) -> int:
        return max((len(self.adj[v]) for v in self.alive), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in self.alive for v in self.adj[u] if u < v)

    def num_edges(self) -> int:
        return sum(len(self.adj[v]) for v in self.alive) // 2

    def copy(self) -> Graph:
        """Independent copy of the current state (journal not copied)."""
        g = Graph.__new__(Graph)
        g.n_total = self.n_total
        g.alive = set(self.alive)
        g.adj = {v: set(self.adj[v]) for v in self.alive}
        g._journal = []
        g._serial = 0
        return g

    def snapshot(self) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        return frozenset(self.alive), frozenset(self.edges())

    # -- mutation --------------------------------------------------------

    def delete_vertices(self, s: Iterable[int]) -> MutationToken:
        order = sorted(set(s))
        for v in order:
            if v not in self.alive:
                raise VertexNotAlive(v)
        frame: list[tuple[int, set[int]]] = []
        for v in order:
            nbrs = self.adj.pop(v)
            for u in nbrs:
                self.adj[u].discard(v)
            self.alive.discard(v)
            frame.append((v, nbrs))
        self._serial += 1
        self._journal.append((self._serial, frame))
        return MutationToken(len(self._journal) - 1, self._serial)

    def restore(self, token: MutationToken) -> None:
        if not self._journal or token.index != len(self._journal) - 1 \
                or self._journal[-1][0] != token.serial:
            raise OutOfOrderRestore(f"token {token} is not the newest frame")
        _, frame = self._journal.pop()
        for v, nbrs in reversed(frame):
            self.adj[v] = nbrs
            self.alive.add(v)
            for u in nbrs:
                self.adj[u].add(v)

    @property
    def journal_depth(self) -> int:
        return len(self._journal)

    # -- structure -------------------------------------------------------

    def connected_components(self, within: Iterable[int] | None = None) -> list[set[int]]:
        """Components of the graph (or of the subgraph induced by ``within``).

        Sorted by smallest member so callers get a deterministic order.
        """
        pool = self.alive if within is None else set(within)
        seen: set[int] = set()
        comps = []
        for root in sorted(pool):
            if root in seen:
                continue
            comp = {root}
            seen.add(root)
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y in pool and y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def bipartition(self) -> Bipartition:
        color: dict[int, int] = {}
        parent: dict[int, int] = {}
        for root in sorted(self.alive):
            if root in color:
                continue
            color[root] = 0
            parent[root] = -1
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in sorted(self.adj[x]):
                    if y not in color:
                        color[y] = 1 - color[x]
                        parent[y] = x
                        queue.append(y)
                    elif color[y] == color[x]:
                        return Bipartition(None, _odd_cycle(parent, x, y))
        return Bipartition(color, None)


def _odd_cycle(parent: dict[int, int], x: int, y: int) -> list[int]:
    # x, y are adjacent and equidistant-parity in the BFS tree; join their
    # root paths at the lowest common ancestor.
    path_x = [x]
    while parent[path_x[-1]] != -1:
        path_x.append(parent[path_x[-1]])
    path_y = [y]
    while parent[path_y[-1]] != -1:
        path_y.append(parent[path_y[-1]])
    on_x = {v: i for i, v in enumerate(path_x)}
    for j, v in enumerate(path_y):
        if v in on_x:
            i = on_x[v]
            return path_x[: i + 1] + list(reversed(path_y[:j]))
    raise AssertionError("BFS tree paths must meet")


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, edges)


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(u in c or v in c for u in g.alive for v in g.adj[u])
