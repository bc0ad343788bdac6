"""Deterministic instance generators for subcubic graphs.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister), so a
(model, n, seed, weights) tuple always produces the same instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GenFailure
from .graph import Graph

MODELS = ("cubic-pairing", "subcubic-erdos", "cycle", "path", "triangle-gadget",
          "k4-cluster", "bipartite")
WEIGHT_MODELS = ("unit", "uniform-int", "rational")
PAIRING_RETRIES = 1000


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    seed: int = 0
    weights: str = "unit"
    max_weight: int = 10

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.weights not in WEIGHT_MODELS:
            raise ValueError(f"unknown weight model {self.weights!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.max_weight < 1:
            raise ValueError("max_weight must be at least 1")


@dataclass
class Instance:
    graph: Graph
    weights: dict[int, Fraction]
    spec: GenSpec
    designed_cover: set[int] | None = None
    notes: dict = field(default_factory=dict)


def generate(spec: GenSpec) -> tuple[Graph, dict[int, Fraction]]:
    inst = generate_instance(spec)
    return inst.graph, inst.weights


def generate_instance(spec: GenSpec) -> Instance:
    rng = random.Random(f"{spec.model}:{spec.n}:{spec.seed}")
    builder = _BUILDERS[spec.model]
    edges, cover = builder(spec.n, rng)
    g = Graph.from_edges(spec.n, edges)
    assert g.max_degree() <= 3
    wrng = random.Random(f"weights:{spec.weights}:{spec.max_weight}:{spec.n}:{spec.seed}")
    return Instance(g, sample_weights(spec.n, spec.weights, spec.max_weight, wrng), spec, cover)


def sample_weights(n: int, model: str, max_weight: int, rng: random.Random) -> dict[int, Fraction]:
    if model == "unit":
        return {v: Fraction(1) for v in range(n)}
    if model == "uniform-int":
        return {v: Fraction(rng.randint(1, max_weight)) for v in range(n)}
    if model == "rational":
        return {v: Fraction(rng.randint(1, 1000 * max_weight), 1000) for v in range(n)}
    raise ValueError(f"unknown weight model {model!r}")


def _cycle(n, rng):
    if n < 3:
        return _path(n, rng)
    return [(i, (i + 1) % n) for i in range(n)], None


def _path(n, rng):
    return [(i, i + 1) for i in range(n - 1)], None


def _cubic_pairing(n, rng):
    if n % 2 or n < 4:
        raise GenFailure(f"no 3-regular graph on {n} vertices")
    for _ in range(PAIRING_RETRIES):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            a, b = points[i], points[i + 1]
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return sorted(edges), None
    raise GenFailure(f"pairing model failed {PAIRING_RETRIES} times for n={n}")


def _random_subcubic(vertices, rng, density=0.85, allowed=None):
    """Random edges among ``vertices`` until about density * 3n/2 are placed."""
    vs = list(vertices)
    deg = {v: 0 for v in vs}
    edges = set()
    target = int(density * 3 * len(vs) / 2)
    attempts = 0
    while len(edges) < target and attempts < 50 * len(vs) + 50:
        attempts += 1
        if len(vs) < 2:
            break
        a, b = rng.sample(vs, 2)
        e = (min(a, b), max(a, b))
        if e in edges or deg[a] >= 3 or deg[b] >= 3:
            continue
        if allowed is not None and not allowed(a, b):
            continue
        edges.add(e)
        deg[a] += 1
        deg[b] += 1
    return edges


def _subcubic_erdos(n, rng):
    return sorted(_random_subcubic(range(n), rng)), None


def _bipartite(n, rng):
    left = set(range(0, n, 2))
    edges = _random_subcubic(range(n), rng, allowed=lambda a, b: (a in left) != (b in left))
    return sorted(edges), None


def _k4_cluster(n, rng):
    k = max(1, n // 8) if n >= 4 else 0
    edges = set()
    for i in range(k):
        base = 4 * i
        edges.update((base + a, base + b) for a in range(4) for b in range(a + 1, 4))
    edges |= _random_subcubic(range(4 * k, n), rng)
    return sorted(edges), None


def _triangle_gadget(n, rng):
    """Triangles whose corner sees a CC2 pair through a shared witness.

    Unit: triangle a,b,c; pair p,p'; witness x adjacent to c, p, p';
    private outside neighbors xa, xb, yp, yp'. The rest of the vertices
    form hubs (h, o_h); outside vertices are wired to hubs so that few
    stay pendant. The designed cover (triangles, pairs, hubs) is matched
    into the independent outside set, hence a minimum vertex cover.
    """
    unit, per_unit = 10, 18
    if n < unit:
        raise GenFailure(f"triangle-gadget needs n >= {unit}")
    units = max(1, n // per_unit)
    ids = iter(range(n))
    edges: set[tuple[int, int]] = set()
    deg: dict[int, int] = {v: 0 for v in range(n)}
    cover: set[int] = set()
    needy: list[int] = []

    def link(a, b):
        e = (min(a, b), max(a, b))
        if a == b or e in edges or deg[a] >= 3 or deg[b] >= 3:
            return False
        edges.add(e)
        deg[a] += 1
        deg[b] += 1
        return True

    for _ in range(units):
        a, b, c, p, pp, x, xa, xb, yp, ypp = (next(ids) for _ in range(unit))
        for s, t in [(a, b), (b, c), (a, c), (p, pp), (c, x), (p, x), (pp, x),
                     (a, xa), (b, xb), (p, yp), (pp, ypp)]:
            link(s, t)
        cover.update((a, b, c, p, pp))
        needy.extend((xa, xb, yp, ypp))
    rest = list(ids)
    hubs = []
    while len(rest) >= 2:
        h, o = rest.pop(0), rest.pop(0)
        link(h, o)
        cover.add(h)
        hubs.append(h)
        needy.append(o)
    needy.extend(rest)
    rng.shuffle(needy)
    # first pass: one extra hub edge per outside vertex; second pass fills spare slots
    for rounds in (1, 2):
        for o in needy:
            if deg[o] > rounds:
                continue
            free = [h for h in hubs if deg[h] < 3 and (min(h, o), max(h, o)) not in edges]
            if free:
                link(rng.choice(free), o)
    return sorted(edges), cover


_BUILDERS = {
    "cubic-pairing": _cubic_pairing,
    "subcubic-erdos": _subcubic_erdos,
    "cycle": _cycle,
    "path": _path,
    "triangle-gadget": _triangle_gadget,
    "k4-cluster": _k4_cluster,
    "bipartite": _bipartite,
}
