"""Bookkeeping over a vertex cover U: component classes, vertex classes, measures.

Everything here is recomputed from scratch per query. Potentials and
measures are exact ``Fraction`` values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import NotAVertexCover, NotGoodCover
from .graph import Graph

ALPHA = Fraction(156, 1000)
BETA = Fraction(175, 1000)


class OutsideClass(enum.Enum):
    BAD = "bad"
    SEMI_BAD = "semi-bad"
    GOOD = "good"


@dataclass
class CoverPartition:
    """Components of G[U], grouped by size and completeness.

    ``ccs2``/``ccs3`` are the components that no outside vertex sees whole.
    """

    cc1: list[int] = field(default_factory=list)
    cc2: list[tuple[int, int]] = field(default_factory=list)
    cc3: list[tuple[int, int, int]] = field(default_factory=list)
    ccs2: list[tuple[int, int]] = field(default_factory=list)
    ccs3: list[tuple[int, int, int]] = field(default_factory=list)
    larger: list[tuple[int, ...]] = field(default_factory=list)
    partner: dict[int, int] = field(default_factory=dict)

    @property
    def vcc1(self) -> set[int]:
        return set(self.cc1)

    @property
    def vcc2(self) -> set[int]:
        return {v for pair in self.cc2 for v in pair}

    @property
    def vccs2(self) -> set[int]:
        return {v for pair in self.ccs2 for v in pair}

    @property
    def vcc3(self) -> set[int]:
        return {v for tri in self.cc3 for v in tri}

    @property
    def is_good(self) -> bool:
        return not self.cc3 and not self.larger

    def components(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = [(v,) for v in self.cc1]
        out += self.cc2 + self.cc3 + self.larger
        return sorted(out)


@dataclass(frozen=True)
class Measures:
    m1: Fraction
    m2: Fraction | None
    m: int | None
    M: Fraction | None
    n_vcc1: int
    n_vcc2: int
    n_vcc_ge2: int
    alpha: Fraction = ALPHA
    beta: Fraction = BETA


def check_cover(g: Graph, u: Iterable[int]) -> set[int]:
    uset = set(u)
    if not uset <= g.alive:
        raise NotAVertexCover(f"vertices {sorted(uset - g.alive)} are not in the graph")
    for x in g.alive:
        if x not in uset and not g.adj[x] <= uset:
            raise NotAVertexCover(f"edge at outside vertex {x} is uncovered")
    return uset


def _common_outside_neighbor(g: Graph, uset: set[int], comp: tuple[int, ...]) -> bool:
    common = g.adj[comp[0]] - uset
    for c in comp[1:]:
        common = common & g.adj[c]
        if not common:
            return False
    return bool(common)


def partition_cover(g: Graph, u: Iterable[int]) -> CoverPartition:
    uset = check_cover(g, u)
    part = CoverPartition()
    for comp in g.connected_components(uset):
        members = tuple(sorted(comp))
        size = len(members)
        if size == 1:
            part.cc1.append(members[0])
        elif size == 2:
            a, b = members
            part.cc2.append((a, b))
            part.partner[a] = b
            part.partner[b] = a
            if not _common_outside_neighbor(g, uset, members):
                part.ccs2.append((a, b))
        elif size == 3 and all(len(g.adj[c] & comp) == 2 for c in members):
            part.cc3.append(members)  # type: ignore[arg-type]
            if not _common_outside_neighbor(g, uset, members):
                part.ccs3.append(members)  # type: ignore[arg-type]
        else:
            part.larger.append(members)
    return part


def is_good_cover(g: Graph, u: Iterable[int]) -> bool:
    uset = check_cover(g, u)
    return all(len(c) <= 2 for c in g.connected_components(uset))


def _require_good(part: CoverPartition) -> None:
    if not part.is_good:
        raise NotGoodCover("G[U] has a component with more than two vertices")


def classify_outside(g: Graph, u: Iterable[int], part: CoverPartition, x: int) -> OutsideClass:
    return _classify(g.adj[x], part.vcc1, part.vcc2, part.partner)


def _classify(nbrs: set[int], vcc1: set[int], vcc2: set[int],
              partner: dict[int, int]) -> OutsideClass:
    n1 = len(nbrs & vcc1)
    in_pairs = nbrs & vcc2
    n2 = len(in_pairs)
    sees_whole_pair = any(partner[p] in nbrs for p in in_pairs)
    if n1 >= 1 and (n2 == 1 or sees_whole_pair):
        return OutsideClass.BAD
    if n1 == 1 and n2 == 2:
        return OutsideClass.SEMI_BAD
    return OutsideClass.GOOD


def outside_classes(g: Graph, u: Iterable[int], part: CoverPartition) -> dict[int, OutsideClass]:
    uset = set(u)
    vcc1, vcc2 = part.vcc1, part.vcc2
    return {x: _classify(g.adj[x], vcc1, vcc2, part.partner)
            for x in sorted(g.alive - uset)}


def potentials(g: Graph, u: Iterable[int], part: CoverPartition,
               classes: dict[int, OutsideClass] | None = None) -> dict[int, Fraction]:
    """Potential of every pair vertex; values lie in {0, 1/4, 1/2, 3/4, 1}."""
    _require_good(part)
    uset = set(u)
    if classes is None:
        classes = outside_classes(g, uset, part)
    ccs2 = set(part.ccs2)
    out: dict[int, Fraction] = {}
    for pair in part.cc2:
        if pair in ccs2:
            for v in pair:
                b1, b2 = _count(classes, g.adj[v] - uset)
                out[v] = max(Fraction(0), 1 - b1 - Fraction(b2, 2))
        else:
            a, b = pair
            b1, b2 = _count(classes, (g.adj[a] | g.adj[b]) - uset)
            val = max(Fraction(0), 1 - Fraction(b1, 2) - Fraction(b2, 4))
            out[a] = out[b] = val
    return out


def _count(classes: dict[int, OutsideClass], xs: Iterable[int]) -> tuple[int, int]:
    b1 = b2 = 0
    for x in xs:
        c = classes[x]
        if c is OutsideClass.BAD:
            b1 += 1
        elif c is OutsideClass.SEMI_BAD:
            b2 += 1
    return b1, b2


def potential(g: Graph, u: Iterable[int], part: CoverPartition, v: int) -> Fraction:
    pots = potentials(g, u, part)
    if v not in pots:
        raise ValueError(f"vertex {v} is not in a size-2 component of G[U]")
    return pots[v]


def measures(g: Graph, u: Iterable[int], part: CoverPartition | None = None,
             alpha: Fraction = ALPHA, beta: Fraction = BETA) -> Measures:
    """m1 for any cover; m, m2 and M only when U is a good cover (else None)."""
    uset = set(u)
    if part is None:
        part = partition_cover(g, uset)
    n1 = len(part.cc1)
    n_ge2 = len(uset) - n1
    m1 = n_ge2 + alpha * n1
    if not part.is_good:
        return Measures(m1, None, None, None, n1, 2 * len(part.cc2), n_ge2, alpha, beta)
    n2 = 2 * len(part.cc2)
    big_m = sum(potentials(g, uset, part).values(), Fraction(0))
    return Measures(m1, (1 + alpha * beta) * n2, n2, big_m, n1, n2, n_ge2, alpha, beta)


def lemma2_holds(g: Graph, u: Iterable[int]) -> tuple[bool, Fraction]:
    """Check M(G,U) >= |VCC2| - 3|VCC1|; returns (holds, slack)."""
    uset = set(u)
    part = partition_cover(g, uset)
    _require_good(part)
    ms = measures(g, uset, part)
    slack = ms.M - (ms.n_vcc2 - 3 * ms.n_vcc1)
    return slack >= 0, slack
