import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import random_good_cover, random_subcubic, random_weights
from subcubic_wvc.cover import ALPHA
from subcubic_wvc.engine import (ROBUST, STRICT, RuleWitness, SolverConfig, SolveState, WVCSolver,
                                 apply_b1, apply_b2, apply_rule, next_phase, select_rule, solve,
                                 wvc_alg)
from subcubic_wvc.errors import FPropertyViolation, NonSubcubic, NotAVertexCover
from subcubic_wvc.graph import Graph, build_graph
from subcubic_wvc.instgen import GenSpec, generate
from subcubic_wvc.instrumentation import REDUCTIONS, audit_trace, rule7_vector
from subcubic_wvc.oracle import exact_min_weight_vc

F = Fraction


def unit(n):
    return {v: F(1) for v in range(n)}


def chain(nodes, i):
    """Rules applied from node i down its reduction chain, with their v."""
    out, n = [], nodes[i]
    while True:
        out.append((n.rule, n.witness.get("v")))
        if n.rule not in REDUCTIONS:
            return out
        n = nodes[n.children[0]]


def hub_ring(length, closed):
    """U-path or U-cycle 0..L-1, private outside o_i, U-hubs joining o_{i-1} and o_i."""
    n = 3 * length
    edges = [(i, i + 1) for i in range(length - 1)] + ([(0, length - 1)] if closed else [])
    edges += [(i, length + i) for i in range(length)]
    edges += [(2 * length + i, length + i) for i in range(length)]
    edges += [(2 * length + i, length + (i - 1) % length) for i in range(length)]
    u = set(range(length)) | set(range(2 * length, 3 * length))
    return build_graph(n, edges), u


def triangle_gadget():
    # triangle 0,1,2; outside 3,4,5; 3 sees pair (6,7); 8, 9 private to the pair and
    # joined to hub 10, which has private 11
    edges = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (3, 7), (6, 7),
             (6, 8), (7, 9), (8, 10), (9, 10), (10, 11)]
    return build_graph(12, edges), {0, 1, 2, 6, 7, 10}


# -- entry points -------------------------------------------------------

def test_rejects_non_subcubic():
    star = build_graph(5, [(0, i) for i in range(1, 5)])
    with pytest.raises(NonSubcubic):
        solve(star, unit(5))


def test_state_validation():
    g = build_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(NotAVertexCover):
        wvc_alg(SolveState(g, {0}, unit(3)))
    with pytest.raises(ValueError):
        wvc_alg(SolveState(g, {1}, unit(3), q=3))


def test_bipartite_is_single_leaf():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    out, rep = solve(g, {0: F(1), 1: F(5), 2: F(5), 3: F(1)})
    assert out.weight == 6 and rep.rule_counts == {"1": 1} and rep.leaves == 1


def test_small_component_then_empty():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    out, rep = solve(g, {0: F(1), 1: F(2), 2: F(3)})
    assert out.cover == {0, 1} and rep.rule_counts == {"1": 1, "2": 1}


def test_small_component_stripped_first():
    big, _ = hub_ring(5, closed=True)
    edges = big.edges() + [(15, 16), (16, 17), (17, 18), (15, 18)]
    g = build_graph(19, edges)
    rep = solve(g, unit(19))[1]
    state_rule = select_rule(SolveState(g, set(range(19)) - {16, 18} - set(range(5, 10)), unit(19)))
    assert state_rule.rule == 2 and state_rule.component == (15, 16, 17, 18)
    assert rep.rule_counts["2"] >= 1


# -- base branchings ----------------------------------------------------

def test_b1_edge():
    g = build_graph(2, [(0, 1)])
    out = apply_b1(SolveState(g, {0}, {0: F(1), 1: F(10)}), 0)
    assert out.cover == {0} and out.weight == 1


def test_b1_isolated_in_u():
    g = build_graph(2, [(0, 1)])
    assert apply_b1(SolveState(g, {0}, {0: F(2), 1: F(3)}), 0).cover == {0}


def test_b1_tie_goes_to_include_branch():
    g = build_graph(2, [(0, 1)])
    assert apply_b1(SolveState(g, {0}, {0: F(4), 1: F(4)}), 0).cover == {0}


def test_b2_isolated_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    state = SolveState(g, {0, 1, 2}, {0: F(1), 1: F(2), 2: F(3)})
    out, solver = apply_rule(state, RuleWitness(0, triangle=(0, 1, 2)))
    assert out.cover == {0, 1} and out.weight == 3
    assert len(solver.trace[0].children) == 3 and solver.trace[0].rule == "B2"


def test_b1_b2_preconditions():
    g = build_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        apply_b1(SolveState(g, {1}, unit(3)), 0)
    with pytest.raises(ValueError):
        apply_b2(SolveState(g, {1}, unit(3)), (0, 1, 2))


# -- individual rules ---------------------------------------------------

def test_rule3_drops_vertex_without_outside_neighbor():
    g, u = hub_ring(5, closed=True)
    wit = select_rule(SolveState(g, u | {5}, unit(15)))
    assert wit.rule == 3 and wit.v == 0


def test_rule4_four_branches():
    g, u = triangle_gadget()
    state = SolveState(g, u, unit(12))
    wit = select_rule(state)
    assert (wit.rule, wit.triangle, wit.pair, wit.witness, wit.v) == (4, (0, 1, 2), (6, 7), 3, 6)
    solver = WVCSolver(SolverConfig(audit=True))
    out, rep = solver.run(state)
    assert len(solver.trace[0].children) == 4
    assert out.weight == exact_min_weight_vc(g, unit(12))[1]
    assert rep.audit_failures == []


def test_rule4_then_rule3_on_triangle_corpus():
    seen = 0
    for seed in range(40):
        g, w = generate(GenSpec("triangle-gadget", 40, seed, "uniform-int"))
        solver = WVCSolver()
        solver.solve(g, w)
        for node in solver.trace:
            if node.rule != "4":
                continue
            c = chain(solver.trace, node.children[3])
            tri = set(node.witness["triangle"])
            # rule 2 may absorb the triangle's component first
            assert any(r == "3" and v in tri for r, v in c) or c[0][0] in ("1", "2")
            seen += 1
    assert seen > 0


def test_rule4_strict_and_robust_without_witness():
    # triangle whose outside neighbors see no pair
    g, u = hub_ring(5, closed=False)
    edges = g.edges() + [(15, 16), (16, 17), (15, 17), (15, 18), (16, 19), (17, 20), (18, 14)]
    h = build_graph(21, edges)
    state = SolveState(h, u | {15, 16, 17}, unit(21))
    with pytest.raises(FPropertyViolation):
        select_rule(state, SolverConfig(mode=STRICT))
    wit = select_rule(state, SolverConfig(mode=ROBUST))
    assert wit.fallback and wit.key == "fallback"
    out, rep = WVCSolver(SolverConfig(mode=ROBUST)).run(state)
    assert rep.robust_fallbacks >= 1
    assert out.weight == exact_min_weight_vc(h, unit(21))[1]


def test_rule5_ten_branches():
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (8, 2), (8, 6), (8, 7),
             (9, 5), (9, 6), (9, 7), (0, 10), (1, 11), (3, 12), (4, 13), (14, 10), (14, 11),
             (15, 12), (15, 13), (14, 18), (15, 19), (16, 18), (16, 19), (16, 20), (17, 20),
             (17, 10), (17, 12)]
    g = build_graph(21, edges)
    u = {0, 1, 2, 3, 4, 5, 6, 7, 14, 15, 16, 17}
    rng = random.Random(5)
    for w in (unit(21), {v: F(rng.randint(1, 9)) for v in range(21)}):
        solver = WVCSolver(SolverConfig(audit=True))
        out, rep = solver.run(SolveState(g, u, w))
        root = solver.trace[0]
        assert root.rule == "5" and len(root.children) == 10
        assert out.weight == exact_min_weight_vc(g, w)[1]
        assert [f for f in rep.audit_failures if f["tag"] == "PAPER"] == []


def test_rule6_on_path():
    g, u = hub_ring(4, closed=False)
    wit = select_rule(SolveState(g, u, unit(12)))
    assert (wit.rule, wit.anchor, wit.v) == (6, 0, 1)


@pytest.mark.parametrize("length", [4, 5, 6, 7, 8])
def test_rule7_on_cycles(length):
    g, u = hub_ring(length, closed=True)
    n = 3 * length
    for w in (unit(n), {v: F(1 + (7 * v) % 5) for v in range(n)}):
        solver = WVCSolver(SolverConfig(audit=True))
        out, rep = solver.run(SolveState(g, u, w))
        root = solver.trace[0]
        assert root.rule == "7" and root.witness["cycle_len"] == length
        assert out.weight == exact_min_weight_vc(g, w)[1]
        assert rep.audit_failures == []


def test_rule7_c4_pattern():
    g, u = hub_ring(4, closed=True)
    solver = WVCSolver(SolverConfig(audit=True))
    solver.run(SolveState(g, u, unit(12)))
    from subcubic_wvc.instrumentation import _rule7_branches
    ids = _rule7_branches(solver.trace, solver.trace[0])
    root_m1 = solver.trace[0].measures.m1
    deltas = sorted(root_m1 - solver.trace[i].measures.m1 for i in ids)
    assert all(d >= r for d, r in zip(deltas, sorted(rule7_vector(4, ALPHA))))


def test_rule8_heavier_pendant():
    g = build_graph(2, [(0, 1)])
    out, _ = apply_rule(SolveState(g, {0}, {0: F(5), 1: F(2)}), RuleWitness(8, v=0, anchor=1))
    assert out.cover == {1} and out.weight == 2


def test_rule8_fold():
    g = build_graph(3, [(0, 1), (1, 2)])
    out, _ = apply_rule(SolveState(g, {1}, {0: F(1), 1: F(3), 2: F(1)}),
                        RuleWitness(8, v=0, anchor=1))
    assert out.cover == {0, 2} and out.weight == 2


def test_rule8_fold_keeps_neighbor():
    g = build_graph(3, [(0, 1), (1, 2)])
    out, _ = apply_rule(SolveState(g, {1}, {0: F(1), 1: F(3), 2: F(5)}),
                        RuleWitness(8, v=0, anchor=1))
    assert out.cover == {1} and out.weight == 3


def test_rule9_degree_two_corners():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    out, solver = apply_rule(SolveState(g, {0, 1, 2}, {0: F(2), 1: F(1), 2: F(3)}),
                             RuleWitness(9, triangle=(0, 1, 2), v1=0, v2=1, v3=2))
    assert solver.trace[0].witness["v"] == 1
    assert out.cover == {0, 1} and out.weight == 3


def test_rule9_diamond_detected():
    from subcubic_wvc.engine import _Run
    # triangle 0,1,2 plus 3 adjacent to exactly 0 and 1; 2 has a third neighbor
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (2, 4)])
    wit = _Run(g, unit(5), SolverConfig())._select_rule9()
    assert (wit.rule, wit.v1, wit.v2, wit.v3, wit.v4) == (9, 0, 1, 2, 3)
    out, solver = apply_rule(SolveState(g, {0, 1, 2}, {0: F(3), 1: F(2), 2: F(1), 3: F(1), 4: F(1)}), wit)
    assert solver.trace[0].witness["v"] == 1
    assert out.weight == exact_min_weight_vc(g, {0: F(3), 1: F(2), 2: F(1), 3: F(1), 4: F(1)})[1]


def test_rule9_tie_goes_to_lower_id():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    _, solver = apply_rule(SolveState(g, {0, 1, 2}, unit(3)),
                           RuleWitness(9, triangle=(0, 1, 2), v1=0, v2=1, v3=2))
    assert solver.trace[0].witness["v"] == 0


def test_rule10_thresholds():
    assert next_phase(1, 4) == 1
    assert next_phase(0, 6) == 2
    assert next_phase(0, 0) == 1


def test_rule10_on_corpus():
    seen = 0
    for seed in range(20):
        g, w = generate(GenSpec("cubic-pairing", 30, seed))
        solver = WVCSolver()
        solver.solve(g, w)
        for node in solver.trace:
            if node.rule == "10":
                seen += 1
                ms = node.measures
                assert node.q == 0 and ms.M is not None
                assert node.witness["q_next"] == next_phase(ms.n_vcc1, ms.n_vcc2)
                if node.witness["q_next"] == 1:
                    assert ms.m2 <= ms.m1
                assert solver.trace[node.children[0]].q == node.witness["q_next"]
    assert seen > 0


def test_rule13_fires_with_zero_potential():
    rng = random.Random(11)
    seen = 0
    for _ in range(150):
        g, u = random_good_cover(rng, rng.randint(0, 2), rng.randint(3, 8), rng.randint(3, 14))
        if len(g.alive) > 26:
            continue
        w = random_weights(rng, len(g.alive))
        solver = WVCSolver(SolverConfig(audit=True))
        out, rep = solver.run(SolveState(g, u, w, q=2))
        for node in solver.trace:
            if node.rule == "13" and node.q == 2:
                seen += 1
                assert node.measures.M == 0
                assert len(node.children) == 2
        assert out.weight == exact_min_weight_vc(g, w)[1]
    assert seen > 0


def test_pair_rules_from_q2_states():
    rng = random.Random(2024)
    fired = {"11": 0, "12": 0}
    for _ in range(300):
        g, u = random_good_cover(rng, rng.randint(0, 2), rng.randint(4, 9), rng.randint(4, 20))
        if len(g.alive) > 26:
            continue
        w = random_weights(rng, len(g.alive))
        solver = WVCSolver(SolverConfig(audit=True, mode=STRICT))
        out, rep = solver.run(SolveState(g, u, w, q=2))
        assert out.weight == exact_min_weight_vc(g, w)[1]
        assert rep.audit_failures == []
        for node in solver.trace:
            if node.rule not in fired:
                continue
            fired[node.rule] += 1
            wit = node.witness
            assert node.q == 2
            assert wit["u1"] != wit["v_partner"]
            assert len(node.children) == (4 if "u2" in wit else 2)
            named = [wit[k] for k in ("u1", "u1_partner", "u2", "u2_partner") if k in wit]
            assert len(set(named)) == len(named)
            if node.rule == "12" and len(wit["a_set"]) == 3:
                assert wit["x"] in wit["a_set"]
            if len(node.children) == 4:
                c = chain(solver.trace, node.children[3])
                if node.rule == "11":
                    ok = ("3", wit["v"]) in c and ("8", wit["v"]) in c
                else:
                    ok = any(r == "9" for r, _ in c)
                assert ok or any(r in ("1", "2") for r, _ in c)
    assert fired["11"] > 0 and fired["12"] > 0


def test_phase_discipline_on_corpus():
    for seed in range(30):
        g, w = generate(GenSpec("subcubic-erdos", 40, seed, "uniform-int"))
        solver = WVCSolver()
        solver.solve(g, w)
        for node in solver.trace:
            if node.rule in ("4", "5", "6", "7", "fallback"):
                assert node.q == 0
            if node.rule in ("11", "12"):
                assert node.q == 2


# -- global properties --------------------------------------------------

models = st.sampled_from(["cubic-pairing", "subcubic-erdos", "triangle-gadget", "k4-cluster"])


@given(st.integers(0, 10**6), models, st.integers(10, 22),
       st.sampled_from(["unit", "uniform-int", "rational"]), st.sampled_from([STRICT, ROBUST]))
def test_matches_oracle(seed, model, n, weights, mode):
    if model == "cubic-pairing":
        n += n % 2
    g, w = generate(GenSpec(model, n, seed, weights))
    try:
        out, rep = solve(g, w, SolverConfig(mode=mode))
    except FPropertyViolation:
        assert mode == STRICT
        return
    assert out.weight == exact_min_weight_vc(g, w)[1]
    assert rep.leaves <= rep.nodes
    assert sum(rep.rule_counts.values()) == rep.nodes


@given(st.integers(0, 10**6), st.integers(1, 22))
def test_journal_and_input_untouched(seed, n):
    rng = random.Random(seed)
    g = random_subcubic(rng, n)
    before = g.snapshot()
    solve(g, random_weights(rng, n, "zero"))
    assert g.snapshot() == before and g.journal_depth == 0


@given(st.integers(0, 10**6), st.integers(1, 22))
def test_relabeling_keeps_weight(seed, n):
    rng = random.Random(seed)
    g = random_subcubic(rng, n)
    w = random_weights(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    h = Graph.from_edges(n, [(perm[a], perm[b]) for a, b in g.edges()])
    assert solve(g, w)[0].weight == solve(h, {perm[v]: w[v] for v in range(n)})[0].weight


def test_determinism():
    g, w = generate(GenSpec("cubic-pairing", 40, 3, "uniform-int"))
    runs = []
    for _ in range(2):
        solver = WVCSolver(SolverConfig(audit=True))
        out, rep = solver.solve(g, w)
        runs.append((sorted(out.cover), rep.to_json(), [n.to_dict() for n in solver.trace]))
    assert runs[0] == runs[1]


def test_audit_trace_needs_measures():
    g, w = generate(GenSpec("cubic-pairing", 30, 1))
    solver = WVCSolver(SolverConfig(audit=False))
    solver.solve(g, w)
    # without auditing only rule 10 nodes carry measures
    assert all(n.measures is None for n in solver.trace if n.rule != "10")
    assert audit_trace(solver.trace) == []
