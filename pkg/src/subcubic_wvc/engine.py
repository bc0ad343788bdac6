"""The recursive branch-and-reduce procedure for weighted vertex cover.

Each call receives (G, U, w, q): a graph of maximum degree 3, a vertex
cover U of G, exact weights and a phase flag q. The first applicable rule
in the fixed order below is applied.

    1  G bipartite: solve exactly by minimum cut (leaf).
    2  a component of size <= 10: solve it exhaustively, recurse on the rest.
    3  a vertex of U with no neighbor outside U: drop it from U.
    4  a triangle component C of G[U] whose witness pair is not shared:
       branch on a pair vertex, then on C inside the first branch.
    5  two triangles sharing a witness pair: same, then on the second triangle.
    6  end of a path in G[U] next to a vertex with two U-neighbors: branch there.
    7  a vertex with two U-neighbors (a cycle of G[U]): branch on it.
    8  a degree-1 vertex: take its neighbor, or fold the weight into it.
    9  a triangle with two degree-2 corners, or with a degree-2 vertex outside
       it seeing two of its corners: take the lighter of those two corners.
    10 q = 0: fix q to 1 or 2 depending on |VCC1| / |VCC2|.
    11 q = 2 and a pair vertex with positive potential and no common
       outside neighbor with its partner: branch on one or two nearby pairs.
    12 q = 2, same but the pair has a common outside neighbor.
    13 branch on any pair vertex.

All "choose" steps take the lowest vertex id.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import oracle
from .bipartite import min_weight_vc_bipartite
from .cover import ALPHA, BETA, OutsideClass, measures, outside_classes, partition_cover, potentials
from .errors import FPropertyViolation, NonSubcubic, NotAVertexCover, StuckState, WitnessNotFound
from .graph import Graph, is_vertex_cover
from .instrumentation import BranchReport, TraceNode, audit_trace
from .preprocess import compute_f, establish_f_property, min_size_vc

STRICT = "strict"
ROBUST = "robust"

Plan = list[tuple[set[int], set[int]]]  # (vertices deleted, vertices added to the cover)


@dataclass
class SolverConfig:
    mode: str = ROBUST
    alpha: Fraction = ALPHA
    beta: Fraction = BETA
    audit: bool = False
    check: bool = True

    def __post_init__(self):
        if self.mode not in (STRICT, ROBUST):
            raise ValueError(f"mode must be {STRICT!r} or {ROBUST!r}")
        self.alpha = Fraction(self.alpha)
        self.beta = Fraction(self.beta)


@dataclass
class RuleWitness:
    """The rule chosen for a call and the vertices it fires on."""

    rule: int
    fallback: bool = False
    v: int | None = None
    v_partner: int | None = None
    anchor: int | None = None
    x: int | None = None
    x1: int | None = None
    x2: int | None = None
    u1: int | None = None
    u1_partner: int | None = None
    u2: int | None = None
    u2_partner: int | None = None
    v1: int | None = None
    v2: int | None = None
    v3: int | None = None
    v4: int | None = None
    triangle: tuple[int, ...] | None = None
    triangle2: tuple[int, ...] | None = None
    pair: tuple[int, int] | None = None
    witness: int | None = None
    component: tuple[int, ...] | None = None
    a_set: tuple[int, ...] | None = None
    cycle_len: int | None = None
    q_next: int | None = None
    coloring: dict[int, int] | None = field(default=None, repr=False)

    @property
    def key(self) -> str:
        if self.fallback:
            return "fallback"
        if self.rule == 0:
            return "B1" if self.triangle is None else "B2"
        return str(self.rule)

    def as_dict(self) -> dict:
        skip = {"rule", "fallback", "coloring"}
        out = {}
        for name in self.__dataclass_fields__:
            if name in skip:
                continue
            val = getattr(self, name)
            if val is not None:
                out[name] = list(val) if isinstance(val, tuple) else val
        return out


@dataclass
class SolveOutcome:
    cover: set[int]
    weight: Fraction


@dataclass
class SolveState:
    """Input of one recursive call. ``f`` is informational: it is recomputed per call."""

    g: Graph
    u: set[int]
    w: Mapping[int, Fraction]
    q: int = 0
    f: object = None
    depth: int = 0

    def validate(self) -> None:
        if self.q not in (0, 1, 2):
            raise ValueError(f"phase must be 0, 1 or 2, got {self.q}")
        if self.g.max_degree() > 3:
            raise NonSubcubic(f"maximum degree {self.g.max_degree()} exceeds 3")
        if not set(self.u) <= self.g.alive or not is_vertex_cover(self.g, self.u):
            raise NotAVertexCover("U does not cover every edge of G")


def next_phase(n_vcc1: int, n_vcc2: int, beta: Fraction = BETA) -> int:
    """Phase chosen by rule 10: 1 when |VCC1| >= beta |VCC2|, else 2."""
    return 1 if n_vcc1 >= beta * n_vcc2 else 2


class _Run:
    def __init__(self, g: Graph, w: dict[int, Fraction], config: SolverConfig):
        self.g = g
        self.w = w
        self.config = config
        self.nodes: list[TraceNode] = []
        self.fallbacks = 0

    # -- helpers ----------------------------------------------------------

    def wsum(self, vs) -> Fraction:
        return sum((self.w[v] for v in vs), Fraction(0))

    def b1_plan(self, v: int) -> Plan:
        nv = set(self.g.adj[v])
        return [({v}, {v}), (nv | {v}, nv)]

    @staticmethod
    def b2_plan(tri: tuple[int, ...]) -> Plan:
        return [(set(a), set(a)) for a in itertools.combinations(tri, 2)]

    def compose(self, u: frozenset[int], q: int, node: int,
                steps: list[tuple[Callable[[tuple], bool], Callable[[], Plan]]],
                path: tuple = ()) -> tuple[set[int], Fraction]:
        """Nested branching: step k applies on branch paths its selector accepts.

        Returns the lightest branch; ties go to the earliest branch.
        """
        k = len(path)
        if k < len(steps) and steps[k][0](path):
            results = []
            for i, (dele, add) in enumerate(steps[k][1]()):
                tok = self.g.delete_vertices(dele)
                try:
                    cov, wt = self.compose(u - dele, q, node, steps, path + (i,))
                finally:
                    self.g.restore(tok)
                results.append((cov | add, wt + self.wsum(add)))
            return min(results, key=lambda r: r[1])
        return self.call(u, q, node)

    def reduce_to(self, u: frozenset[int], q: int, node: int,
                  dele: set[int], add: set[int]) -> tuple[set[int], Fraction]:
        tok = self.g.delete_vertices(dele)
        try:
            cov, wt = self.call(u - dele, q, node)
        finally:
            self.g.restore(tok)
        return cov | add, wt + self.wsum(add)

    # -- rule selection ---------------------------------------------------

    def select_rule(self, u: frozenset[int], q: int) -> RuleWitness:
        g = self.g
        bp = g.bipartition()
        if bp.is_bipartite:
            return RuleWitness(1, coloring=bp.coloring)
        for comp in g.connected_components():
            if len(comp) <= oracle.SMALL_COMPONENT:
                return RuleWitness(2, component=tuple(sorted(comp)))
        for v in sorted(u):
            if g.adj[v] <= u:
                return RuleWitness(3, v=v)

        udeg = {v: len(g.adj[v] & u) for v in u}
        tris = [tuple(sorted(c)) for c in g.connected_components(u)
                if len(c) == 3 and all(udeg[x] == 2 for x in c)]
        if tris:
            return self._select_triangle_rule(u, tris)

        for a in sorted(u):
            if udeg[a] == 1:
                (v,) = g.adj[a] & u
                if udeg[v] == 2:
                    return RuleWitness(6, v=v, anchor=a)
        for v in sorted(u):
            if udeg[v] == 2:
                comp = next(c for c in g.connected_components(u) if v in c)
                return RuleWitness(7, v=v, cycle_len=len(comp),
                                   component=tuple(sorted(comp)))

        for v in sorted(g.alive):
            if len(g.adj[v]) == 1:
                (nb,) = g.adj[v]
                return RuleWitness(8, v=v, anchor=nb)
        found = self._select_rule9()
        if found is not None:
            return found

        if q == 0:
            part = partition_cover(g, u)
            return RuleWitness(10, q_next=next_phase(len(part.cc1), 2 * len(part.cc2),
                                                     self.config.beta))

        if q == 2:
            part = partition_cover(g, u)
            classes = outside_classes(g, u, part)
            pots = potentials(g, u, part, classes)
            vccs2 = part.vccs2
            for v in sorted(vccs2):
                if pots[v] > 0:
                    return self._select_rule11(u, part, classes, v)
            for v in sorted(part.vcc2 - vccs2):
                if pots[v] > 0:
                    return self._select_rule12(u, part, classes, v)

        for v in sorted(u):
            if udeg[v] == 1:
                (vp,) = g.adj[v] & u
                return RuleWitness(13, v=v, v_partner=vp)
        raise StuckState(f"no rule applies (q={q}, |V|={len(g.alive)}, |U|={len(u)})")

    def _select_triangle_rule(self, u: frozenset[int], tris: list[tuple]) -> RuleWitness:
        fmap, _ = compute_f(self.g, u)
        with_f = [t for t in tris if t in fmap]
        for c in with_f:
            e = fmap[c]
            if all(fmap[o].pair != e.pair for o in with_f if o != c):
                return RuleWitness(4, triangle=c, pair=e.pair, witness=e.witness,
                                   v=min(e.pair))
        for c, c2 in itertools.combinations(with_f, 2):
            if fmap[c].pair == fmap[c2].pair:
                e = fmap[c]
                return RuleWitness(5, triangle=c, triangle2=c2, pair=e.pair,
                                   witness=e.witness, v=min(e.pair))
        missing = [t for t in tris if t not in fmap]
        if self.config.mode == STRICT:
            raise FPropertyViolation(f"triangle {missing[0]} has no witness pair")
        return RuleWitness(4, fallback=True, triangle=missing[0])

    def _select_rule9(self) -> RuleWitness | None:
        g = self.g
        for a in sorted(g.alive):
            for b in sorted(x for x in g.adj[a] if x > a):
                for c in sorted(x for x in g.adj[a] & g.adj[b] if x > b):
                    tri = (a, b, c)
                    for v1, v2 in itertools.combinations(tri, 2):
                        v3 = next(x for x in tri if x not in (v1, v2))
                        if len(g.adj[v1]) == 2 and len(g.adj[v2]) == 2:
                            return RuleWitness(9, triangle=tri, v1=v1, v2=v2, v3=v3)
                        for v4 in sorted((g.adj[v1] & g.adj[v2]) - {v3}):
                            if g.adj[v4] == {v1, v2}:
                                return RuleWitness(9, triangle=tri, v1=v1, v2=v2,
                                                   v3=v3, v4=v4)
        return None

    def _pick_u2(self, part, x2, u1p, excluded) -> tuple[int | None, int | None]:
        cands = sorted(self.g.adj[x2] - excluded - {u1p})
        if not cands:
            raise WitnessNotFound(f"no u2 candidate next to {x2}")
        u2 = cands[0]
        if u2 not in part.partner:
            raise WitnessNotFound(f"u2={u2} is not a pair vertex")
        return u2, part.partner[u2]

    def _select_rule11(self, u, part, classes, v) -> RuleWitness:
        g = self.g
        vp = part.partner[v]
        xs = sorted(g.adj[v] - u)
        bad, good = OutsideClass.BAD, OutsideClass.GOOD
        x1 = x2 = None
        if len(xs) == 1:
            x1 = xs[0]
            if classes[x1] is bad:
                raise WitnessNotFound(f"x1={x1} is bad although potential({v}) > 0")
        elif len(xs) == 2:
            for a, b in (xs, xs[::-1]):
                if classes[a] is not bad and classes[b] is good:
                    x1, x2 = a, b
                    break
            if x1 is None:
                raise WitnessNotFound(f"no good vertex among {xs}")
        else:
            raise WitnessNotFound(f"vertex {v} has {len(xs)} outside neighbors")
        cands = sorted((g.adj[x1] - {v}) & part.vcc2)
        if not cands:
            raise WitnessNotFound(f"no pair vertex next to x1={x1}")
        u1 = cands[0]
        u1p = part.partner[u1]
        u2 = u2p = None
        if x2 is not None and u1 not in g.adj[x2] and g.adj[x2] - {v} != {u1p}:
            u2, u2p = self._pick_u2(part, x2, u1p, {v})
        self._check_distinct(v, u1, u1p, u2, u2p, forbidden={v, vp})
        return RuleWitness(11, v=v, v_partner=vp, x1=x1, x2=x2, u1=u1,
                           u1_partner=u1p, u2=u2, u2_partner=u2p)

    def _select_rule12(self, u, part, classes, v) -> RuleWitness:
        g = self.g
        vp = part.partner[v]
        common = sorted((g.adj[v] & g.adj[vp]) - u)
        if not common:
            raise WitnessNotFound(f"pair ({v}, {vp}) has no common outside neighbor")
        x = common[0]
        a_set = sorted(y for y in (g.adj[v] | g.adj[vp]) - u if g.adj[y] - {v, vp})
        if len(a_set) not in (2, 3) or (len(a_set) == 3 and x not in a_set):
            raise WitnessNotFound(f"A={a_set} violates |A| in {{2,3}}")
        bad, good, semi = OutsideClass.BAD, OutsideClass.GOOD, OutsideClass.SEMI_BAD
        if len(a_set) == 3 and all(classes[y] is semi for y in a_set):
            raise WitnessNotFound("A consists of three semi-bad vertices")
        x1 = x2 = None
        if len(a_set) == 2:
            x1 = next((y for y in a_set if classes[y] is not bad), None)
        else:
            for a, b in itertools.permutations(a_set, 2):
                if classes[a] is not bad and classes[b] is good:
                    x1, x2 = a, b
                    break
        if x1 is None:
            raise WitnessNotFound(f"no admissible x1 in A={a_set}")
        cands = sorted((g.adj[x1] - {v, vp}) & part.vcc2)
        if not cands:
            raise WitnessNotFound(f"no pair vertex next to x1={x1}")
        u1 = cands[0]
        u1p = part.partner[u1]
        u2 = u2p = None
        if x2 is not None and u1 not in g.adj[x2] and g.adj[x2] - {v, vp} != {u1p}:
            u2, u2p = self._pick_u2(part, x2, u1p, {v, vp})
        self._check_distinct(v, u1, u1p, u2, u2p, forbidden={v, vp})
        return RuleWitness(12, v=v, v_partner=vp, x=x, a_set=tuple(a_set), x1=x1,
                           x2=x2, u1=u1, u1_partner=u1p, u2=u2, u2_partner=u2p)

    @staticmethod
    def _check_distinct(v, u1, u1p, u2, u2p, forbidden) -> None:
        named = [z for z in (u1, u1p, u2, u2p) if z is not None]
        if len(set(named)) != len(named) or set(named) & forbidden:
            raise WitnessNotFound(f"u1, u1', u2, u2' not distinct from each other "
                                  f"and from the pair of {v}: {named}")

    # -- the recursion ----------------------------------------------------

    def call(self, u: frozenset[int], q: int, parent: int | None,
             forced: RuleWitness | None = None) -> tuple[set[int], Fraction]:
        g = self.g
        node_id = len(self.nodes)
        depth = 0 if parent is None else self.nodes[parent].depth + 1
        node = TraceNode(node_id, parent, depth, q)
        self.nodes.append(node)
        if parent is not None:
            self.nodes[parent].children.append(node_id)
        if self.config.audit:
            node.measures = measures(g, u, alpha=self.config.alpha, beta=self.config.beta)
        journal = g.journal_depth

        wit = forced if forced is not None else self.select_rule(u, q)
        node.rule = wit.key
        node.witness = wit.as_dict()
        if wit.rule == 10 and node.measures is None:
            node.measures = measures(g, u, alpha=self.config.alpha, beta=self.config.beta)
        cover, weight = self._apply(wit, u, q, node_id)

        node.leaves = 1 if wit.rule == 1 else sum(self.nodes[c].leaves for c in node.children)
        if self.config.check:
            assert g.journal_depth == journal, "journal not restored"
            assert is_vertex_cover(g, cover), f"rule {wit.key} returned a non-cover"
            assert cover <= g.alive
            assert weight == self.wsum(cover), f"rule {wit.key} misreported its weight"
        return cover, weight

    def _apply(self, wit: RuleWitness, u: frozenset[int], q: int,
               node: int) -> tuple[set[int], Fraction]:
        g = self.g
        r = wit.rule
        always = lambda p: True  # noqa: E731
        if r == 0:
            plan = (lambda: self.b1_plan(wit.v)) if wit.triangle is None \
                else (lambda: self.b2_plan(wit.triangle))
            return self.compose(u, q, node, [(always, plan)])
        if r == 1:
            return min_weight_vc_bipartite(g, self.w, wit.coloring)
        if r == 2:
            comp = set(wit.component)
            s, _ = oracle.solve_small_component(g, comp, self.w)
            return self.reduce_to(u, q, node, comp, s)
        if r == 3:
            return self.call(u - {wit.v}, q, node)
        if r == 4 and wit.fallback:
            self.fallbacks += 1
            tri = wit.triangle
            return self.compose(u, q, node, [(always, lambda: self.b2_plan(tri))])
        if r == 4:
            tri = wit.triangle
            return self.compose(u, q, node, [
                (always, lambda: self.b1_plan(wit.v)),
                (lambda p: p == (0,), lambda: self.b2_plan(tri)),
            ])
        if r == 5:
            t1, t2 = wit.triangle, wit.triangle2
            return self.compose(u, q, node, [
                (always, lambda: self.b1_plan(wit.v)),
                (lambda p: p == (0,), lambda: self.b2_plan(t1)),
                (lambda p: p[0] == 0, lambda: self.b2_plan(t2)),
            ])
        if r in (6, 7, 13):
            return self.compose(u, q, node, [(always, lambda: self.b1_plan(wit.v))])
        if r == 8:
            v, nb = wit.v, wit.anchor
            if self.w[v] >= self.w[nb]:
                return self.reduce_to(u, q, node, {v, nb}, {nb})
            old = self.w[nb]
            self.w[nb] = old - self.w[v]
            tok = g.delete_vertices({v})
            try:
                s, wt = self.call(u - {v}, q, node)
            finally:
                g.restore(tok)
                self.w[nb] = old
            # weight of s under the caller's map, plus v when u is left out
            return (s if nb in s else s | {v}), wt + self.w[v]
        if r == 9:
            v1, v2 = wit.v1, wit.v2
            vi = v1 if (self.w[v1], v1) <= (self.w[v2], v2) else v2
            wit.v = vi
            self.nodes[node].witness["v"] = vi
            return self.reduce_to(u, q, node, {vi}, {vi})
        if r == 10:
            return self.call(u, wit.q_next, node)
        if r in (11, 12):
            steps = [(always, lambda: self.b1_plan(wit.u1))]
            if wit.u2 is not None:
                steps.append((always, lambda: self.b1_plan(wit.u2)))
            return self.compose(u, q, node, steps)
        raise StuckState(f"unknown rule {r}")


class WVCSolver:
    """Exact minimum-weight vertex cover for graphs of maximum degree 3."""

    def __init__(self, config: SolverConfig | None = None):
        self.config = config or SolverConfig()
        self.trace: list[TraceNode] = []
        self.initial_cover: set[int] = set()
        self.f_status = None

    def solve(self, g: Graph, w: Mapping[int, Fraction]) -> tuple[SolveOutcome, BranchReport]:
        if g.max_degree() > 3:
            raise NonSubcubic(f"maximum degree {g.max_degree()} exceeds 3")
        work = g.copy()
        u_star = min_size_vc(work)
        u0, _, status = establish_f_property(work, u_star)
        self.initial_cover, self.f_status = set(u0), status
        if self.config.mode == STRICT and not status.satisfied:
            raise FPropertyViolation(f"no witness pair for {list(status.uncovered)}")
        outcome, report = self.run(SolveState(work, set(u0), w), t=len(u_star))
        assert is_vertex_cover(g, outcome.cover)
        return outcome, report

    def run(self, state: SolveState, t: int | None = None,
            forced: RuleWitness | None = None) -> tuple[SolveOutcome, BranchReport]:
        """Run the recursion on an explicit (G, U, w, q); G is restored on return.

        ``forced`` replaces rule selection at the root call only.
        """
        state.validate()
        g = state.g
        weights = {v: Fraction(state.w[v]) for v in g.alive}
        if any(x < 0 for x in weights.values()):
            raise ValueError("weights must be nonnegative")
        u0 = frozenset(state.u)
        run = _Run(g, weights, self.config)
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 20 * len(g.alive) + 1000))
        try:
            cover, weight = run.call(u0, state.q, None, forced)
        finally:
            sys.setrecursionlimit(old_limit)
        self.trace = run.nodes
        m1 = measures(g, u0, alpha=self.config.alpha, beta=self.config.beta).m1
        report = BranchReport.from_trace(run.nodes, t=len(u0) if t is None else t,
                                         robust_fallbacks=run.fallbacks, m1_root=m1)
        if self.config.audit:
            report.audit_failures = audit_trace(run.nodes, self.config.alpha, self.config.beta)
        return SolveOutcome(cover, weight), report


def wvc_alg(state: SolveState, config: SolverConfig | None = None) -> SolveOutcome:
    return WVCSolver(config).run(state)[0]


def select_rule(state: SolveState, config: SolverConfig | None = None) -> RuleWitness:
    """The rule the recursion would apply to ``state``."""
    state.validate()
    run = _Run(state.g, {v: Fraction(state.w[v]) for v in state.g.alive},
               config or SolverConfig())
    return run.select_rule(frozenset(state.u), state.q)


def apply_rule(state: SolveState, witness: RuleWitness,
               config: SolverConfig | None = None) -> tuple[SolveOutcome, WVCSolver]:
    """Apply ``witness`` at the root, then recurse normally.

    Returns the solver too so callers can inspect ``solver.trace``.
    """
    solver = WVCSolver(config)
    outcome, _ = solver.run(state, forced=witness)
    return outcome, solver


def apply_b1(state: SolveState, v: int, config: SolverConfig | None = None) -> SolveOutcome:
    if v not in state.u:
        raise ValueError(f"B1 needs a vertex of U, got {v}")
    return apply_rule(state, RuleWitness(0, v=v), config)[0]


def apply_b2(state: SolveState, tri: tuple[int, int, int],
             config: SolverConfig | None = None) -> SolveOutcome:
    tri = tuple(sorted(tri))
    if tri not in partition_cover(state.g, state.u).cc3:
        raise ValueError(f"{tri} is not a triangle component of G[U]")
    return apply_rule(state, RuleWitness(0, triangle=tri), config)[0]


def solve(g: Graph, w: Mapping[int, Fraction],
          config: SolverConfig | None = None) -> tuple[SolveOutcome, BranchReport]:
    return WVCSolver(config).solve(g, w)
