"""Top-level preparation: a minimum-size cover U* and the triangle-to-pair map f.

f assigns each triangle component C of G[U] (with no outside vertex seeing
all of C) a size-2 component P of G[U] together with a witness: an outside
vertex adjacent to some vertex of C and to both vertices of P.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .cover import partition_cover
from .graph import Graph

Triangle = tuple[int, int, int]
Pair = tuple[int, int]


@dataclass(frozen=True)
class FEntry:
    pair: Pair
    witness: int


@dataclass
class FMapping:
    entries: dict[Triangle, FEntry] = field(default_factory=dict)

    def __contains__(self, tri: Triangle) -> bool:
        return tri in self.entries

    def __getitem__(self, tri: Triangle) -> FEntry:
        return self.entries[tri]

    def __len__(self) -> int:
        return len(self.entries)

    def triangles_sharing(self, pair: Pair) -> list[Triangle]:
        return sorted(t for t, e in self.entries.items() if e.pair == pair)


@dataclass(frozen=True)
class FStatus:
    uncovered: tuple[Triangle, ...] = ()

    @property
    def satisfied(self) -> bool:
        return not self.uncovered

    def __str__(self) -> str:
        if self.satisfied:
            return "Satisfied"
        return f"Unsatisfied({list(self.uncovered)})"


# -- minimum-size vertex cover ---------------------------------------------

def min_size_vc(g: Graph) -> set[int]:
    """Minimum-cardinality vertex cover.

    Branch and reduce: degree-0 removal, degree-1 (take the neighbor),
    degree-2 (triangle: take both neighbors; otherwise fold), then branch
    on a maximum-degree vertex, pruned by a greedy matching bound.
    """
    adj = {v: set(g.adj[v]) for v in g.alive if g.adj[v]}
    if not adj:
        return set()
    fresh = itertools.count(g.n_total)
    best = _mvc(adj, len(adj) + 1, fresh)
    assert best is not None
    return best


def _drop(adj: dict[int, set[int]], vs: Iterable[int]) -> None:
    for v in vs:
        for u in adj.pop(v, ()):
            nb = adj.get(u)
            if nb is not None:
                nb.discard(v)


def _greedy_matching(adj: dict[int, set[int]]) -> int:
    used: set[int] = set()
    size = 0
    for u in sorted(adj):
        if u in used:
            continue
        for v in sorted(adj[u]):
            if v not in used:
                used.update((u, v))
                size += 1
                break
    return size


def _mvc(adj: dict[int, set[int]], limit: int, fresh) -> set[int] | None:
    """Smallest cover of ``adj`` with size < limit, or None if there is none."""
    adj = {v: set(nb) for v, nb in adj.items()}
    taken: set[int] = set()
    folds: list[tuple[int, int, int, int]] = []  # (z, v, a, b)
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        d = len(adj[v])
        if d == 0:
            del adj[v]
        elif d == 1:
            (u,) = adj[v]
            taken.add(u)
            _drop(adj, [u, v])
        elif d == 2:
            a, b = sorted(adj[v])
            if b in adj[a]:
                taken.update((a, b))
                _drop(adj, [a, b, v])
            else:
                z = next(fresh)
                nz = (adj[a] | adj[b]) - {v}
                _drop(adj, [a, b, v])
                adj[z] = set(nz)
                for x in nz:
                    adj[x].add(z)
                folds.append((z, v, a, b))
        else:
            break

    def unfold(cover: set[int]) -> set[int]:
        out = set(cover) | taken
        for z, v, a, b in reversed(folds):
            if z in out:
                out.discard(z)
                out.update((a, b))
            else:
                out.add(v)
        return out

    # every fold contributes one vertex to the final cover
    base = len(taken) + len(folds)
    if not adj:
        return unfold(set()) if base < limit else None
    if base + _greedy_matching(adj) >= limit:
        return None
    v = max(sorted(adj), key=lambda x: len(adj[x]))
    best: set[int] | None = None
    budget = limit - base

    rest = {x: set(nb) for x, nb in adj.items()}
    _drop(rest, [v])
    sub = _mvc(rest, budget - 1, fresh)
    if sub is not None:
        best = sub | {v}
        budget = len(best)

    nv = set(adj[v])
    rest = {x: set(nb) for x, nb in adj.items()}
    _drop(rest, nv | {v})
    sub = _mvc(rest, budget - len(nv), fresh)
    if sub is not None:
        best = sub | nv
    if best is None:
        return None
    return unfold(best)


# -- the f mapping ----------------------------------------------------------

def compute_f(g: Graph, u: Iterable[int]) -> tuple[FMapping, FStatus]:
    """Witness map over the current CCS3 triangles, lowest-id witness first."""
    uset = set(u)
    part = partition_cover(g, uset)
    pair_of = {v: p for p in part.cc2 for v in p}
    fmap = FMapping()
    uncovered = []
    for tri in part.ccs3:
        candidates = sorted(set().union(*(g.adj[c] for c in tri)) - uset)
        entry = None
        for x in candidates:
            pairs = sorted({pair_of[y] for y in g.adj[x] if y in pair_of})
            for p in pairs:
                if p[0] in g.adj[x] and p[1] in g.adj[x]:
                    entry = FEntry(p, x)
                    break
            if entry is not None:
                break
        if entry is None:
            uncovered.append(tri)
        else:
            fmap.entries[tri] = entry
    return fmap, FStatus(tuple(uncovered))


def establish_f_property(g: Graph, u: Iterable[int],
                         max_iter: int | None = None) -> tuple[set[int], FMapping, FStatus]:
    """Search for a same-size cover whose triangles all have witnesses.

    Repair move: for a triangle without a witness, trade one of its
    vertices c for c's unique outside neighbor. The result is still a
    cover of the same size. A move is kept only if it strictly reduces the
    number of triangles without a witness, so the loop terminates; it is
    not guaranteed to reach zero.
    """
    cur = set(u)
    fmap, status = compute_f(g, cur)
    limit = len(g.alive) if max_iter is None else max_iter
    for _ in range(limit):
        if status.satisfied:
            break
        best = None
        for tri in status.uncovered:
            for c in tri:
                outside = g.adj[c] - cur
                if len(outside) != 1:
                    continue
                (x,) = outside
                trial = (cur - {c}) | {x}
                fm, st = compute_f(g, trial)
                if best is None or len(st.uncovered) < len(best[2].uncovered):
                    best = (trial, fm, st)
        if best is None or len(best[2].uncovered) >= len(status.uncovered):
            break
        cur, fmap, status = best
    return cur, fmap, status


def validate_f(g: Graph, u: Iterable[int], fmap: FMapping) -> list[str]:
    """Problems with ``fmap`` against the current (G, U); empty when valid."""
    uset = set(u)
    part = partition_cover(g, uset)
    ccs3, cc2 = set(part.ccs3), set(part.cc2)
    problems = []
    for tri, e in fmap.entries.items():
        if tri not in ccs3:
            problems.append(f"{tri} is not a CCS3 component")
        if e.pair not in cc2:
            problems.append(f"{e.pair} is not a CC2 component")
        x = e.witness
        if x in uset or x not in g.alive:
            problems.append(f"witness {x} is not an outside vertex")
            continue
        if not g.adj[x] & set(tri):
            problems.append(f"witness {x} misses triangle {tri}")
        if not set(e.pair) <= g.adj[x]:
            problems.append(f"witness {x} misses a vertex of {e.pair}")
    return problems
