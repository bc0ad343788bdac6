"""Auditing the running-time analysis against real branching trees.

The solver records one ``TraceNode`` per recursive call. This module turns
those into a ``BranchReport``, solves branching recurrences, and checks
measured measure decreases against the per-rule bounds of the analysis.

Measure decreases of a branch are taken from the branching node to the
branch's *settled* descendant: the first call reached through reduction
rules (2, 3, 8, 9, 10) that branches or is a leaf. Reductions never raise
the measures, so this only credits the follow-up reductions the analysis
itself counts. A branch that settles in a leaf contributes one leaf no
matter its measure, so its floor is not enforced.

Floating point appears only in this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cover import ALPHA, BETA, Measures
from .errors import UnknownRule

LEAF_BASE = 1.402
SQRT2 = math.sqrt(2.0)
POTENTIAL_BASE = 0.9808
GUARD = 1e-9

REDUCTIONS = frozenset({"2", "3", "8", "9", "10"})
BRANCHING = frozenset({"4", "5", "6", "7", "11", "12", "13", "fallback", "B1", "B2"})
PAPER, DERIVED = "PAPER", "DERIVED"


@dataclass
class TraceNode:
    id: int
    parent: int | None
    depth: int
    q: int
    rule: str = ""
    witness: dict = field(default_factory=dict)
    children: list[int] = field(default_factory=list)
    leaves: int = 0
    measures: Measures | None = None

    def to_dict(self) -> dict:
        out = {"id": self.id, "parent": self.parent, "q": self.q, "rule": self.rule,
               "witness": self.witness, "children": self.children, "leaves": self.leaves}
        if self.measures is not None:
            out["measures"] = measures_dict(self.measures)
        return out


def fraction_str(x: Fraction | int | None) -> str | None:
    """Exact decimal string when the value terminates, else "p/q"."""
    if x is None:
        return None
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(x.numerator)
    scaled = abs(x.numerator) * (10 ** digits // x.denominator)
    sign = "-" if x < 0 else ""
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}".rstrip("0").rstrip(".")


def measures_dict(ms: Measures) -> dict:
    return {"m1": fraction_str(ms.m1), "m2": fraction_str(ms.m2), "m": ms.m,
            "M": fraction_str(ms.M), "vcc1": ms.n_vcc1, "vcc2": ms.n_vcc2}


@dataclass
class BranchReport:
    leaves: int = 0
    nodes: int = 0
    rule_counts: dict[str, int] = field(default_factory=dict)
    t: int = 0
    m1_root: Fraction = Fraction(0)
    m2_at_switch: Fraction | None = None
    m_at_switch: int | None = None
    M_at_switch: Fraction | None = None
    audit_failures: list[dict] = field(default_factory=list)
    robust_fallbacks: int = 0

    @classmethod
    def from_trace(cls, nodes: Sequence[TraceNode], t: int, robust_fallbacks: int,
                   m1_root: Fraction) -> BranchReport:
        counts: dict[str, int] = {}
        for n in nodes:
            counts[n.rule] = counts.get(n.rule, 0) + 1
        rep = cls(leaves=nodes[0].leaves, nodes=len(nodes),
                  rule_counts=dict(sorted(counts.items(), key=lambda kv: _rule_order(kv[0]))),
                  t=t, m1_root=m1_root, robust_fallbacks=robust_fallbacks)
        switch = next((n for n in nodes if n.rule == "10" and n.measures is not None), None)
        if switch is not None:
            ms = switch.measures
            rep.m2_at_switch, rep.m_at_switch, rep.M_at_switch = ms.m2, ms.m, ms.M
        return rep

    def to_dict(self) -> dict:
        return {
            "leaves": self.leaves,
            "nodes": self.nodes,
            "rule_counts": self.rule_counts,
            "t": self.t,
            "m1_root": fraction_str(self.m1_root),
            "m2_at_switch": fraction_str(self.m2_at_switch),
            "m_at_switch": self.m_at_switch,
            "M_at_switch": fraction_str(self.M_at_switch),
            "audit_failures": self.audit_failures,
            "robust_fallbacks": self.robust_fallbacks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _rule_order(key: str) -> tuple[int, str]:
    return (int(key), "") if key.isdigit() else (99, key)



# -- recurrences --------------------------------------------------------

def branching_number(decreases: Sequence[float | Fraction], tol: float = 1e-12) -> float:
    """Unique x >= 1 with sum(x ** -d) == 1, by bisection."""
    ds = [float(d) for d in decreases]
    if not ds or any(d <= 0 for d in ds):
        raise ValueError("branching vector must be nonempty with positive entries")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def excess(x: float) -> float:
        return sum(x ** -d for d in ds) - 1.0

    if len(ds) == 1:
        return 1.0
    lo, hi = 1.0, 2.0
    while excess(hi) > 0:
        lo, hi = hi, hi * 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def rule4_vector(alpha: Fraction = ALPHA) -> list[Fraction]:
    return [5 - 2 * alpha] * 3 + [3 - alpha]


def rule5_vector(alpha: Fraction = ALPHA) -> list[Fraction]:
    return [8 - 3 * alpha] * 9 + [Fraction(4)]


def rule6_vector(alpha: Fraction = ALPHA) -> list[Fraction]:
    return [2 - alpha, Fraction(3)]


def rule7_vector(cycle_len: int, alpha: Fraction = ALPHA) -> list[Fraction]:
    if cycle_len == 4:
        return [4 - 2 * alpha, 4 - alpha, 4 - 2 * alpha]
    if cycle_len == 5:
        return [3 - alpha, 5 - 2 * alpha, 3 - alpha]
    if cycle_len >= 6:
        return [5 - 2 * alpha, 6 - 2 * alpha, 4 - alpha, 5 - 2 * alpha, 6 - 2 * alpha]
    raise ValueError("cycles in G[U] handled by this rule have length >= 4")


def rule13_m2_vector(alpha: Fraction = ALPHA, beta: Fraction = BETA) -> list[Fraction]:
    return [2 * (1 + alpha * beta)] * 2


# (decrease of m, cap on decrease of M) per branch, in branch order
PAIR_RULE_ROWS = {
    4: [(4, 8), (4, 6), (4, 6), (6, 8)],
    2: [(2, 4), (4, 6)],
}


def combined_constant(beta: Fraction = BETA) -> float:
    return SQRT2 * POTENTIAL_BASE ** (1 - 3 * float(beta))


def lemma1_four_branch_sum() -> float:
    c = POTENTIAL_BASE
    return SQRT2 ** -4 * c ** -8 + 2 * SQRT2 ** -4 * c ** -6 + SQRT2 ** -6 * c ** -8


def lemma1_two_branch_sum() -> float:
    c = POTENTIAL_BASE
    return SQRT2 ** -2 * c ** -4 + SQRT2 ** -4 * c ** -6


def lemma1_bound(m: int, big_m: Fraction | float) -> float:
    return SQRT2 ** m * POTENTIAL_BASE ** float(big_m)


def lemma1_subtree_check(m: int, big_m: Fraction | float, subtree_leaves: int) -> bool:
    return subtree_leaves <= lemma1_bound(m, big_m) * (1 + GUARD)


def global_bound_check(report: BranchReport) -> tuple[bool, float]:
    ratio = report.leaves / LEAF_BASE ** float(report.m1_root)
    return ratio <= 1 + GUARD, ratio


# -- per-step audit -----------------------------------------------------

def _violation(rule: str, tag: str, kind: str, **ctx) -> dict:
    out = {"rule": rule, "tag": tag, "kind": kind}
    for k, v in ctx.items():
        if isinstance(v, Fraction):
            v = fraction_str(v)
        elif isinstance(v, (list, tuple)):
            v = [fraction_str(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def audit_step(rule: str | int, before: Measures, after: Sequence[Measures | None], *,
               q: int = 0, cycle_len: int | None = None,
               alpha: Fraction = ALPHA, **ctx) -> list[dict]:
    """Compare one rule application's per-branch decreases with its row.

    ``after[i]`` is None for a branch that ended in a leaf (exempt).
    """
    rule = str(rule)
    out: list[dict] = []
    if rule in REDUCTIONS - {"10"}:
        if q == 0:
            return out
        (ms,) = after
        if ms is None:
            return out
        dm = before.m - ms.m
        d_big = before.M - ms.M
        if dm < 0 or d_big > 2 * dm:
            out.append(_violation(rule, PAPER, "reduction", dm=dm, dM=d_big, **ctx))
        return out
    if rule == "10":
        return out

    if rule in ("4", "5", "6", "7"):
        if rule == "4":
            row, tag = rule4_vector(alpha), PAPER
        elif rule == "5":
            row, tag = rule5_vector(alpha), DERIVED
        elif rule == "6":
            row, tag = rule6_vector(alpha), DERIVED
        else:
            row, tag = rule7_vector(cycle_len, alpha), PAPER
        deltas = [None if ms is None else before.m1 - ms.m1 for ms in after]
        if q != 0:
            out.append(_violation(rule, PAPER, "phase", q=q, **ctx))
        if rule == "7":
            out += _dominance(rule, tag, row, deltas, ctx)
        else:
            if len(deltas) != len(row):
                raise ValueError(f"rule {rule} expects {len(row)} branches, got {len(deltas)}")
            for i, (d, floor) in enumerate(zip(deltas, row)):
                if d is not None and d < floor:
                    out.append(_violation(rule, tag, "m1-floor", branch=i, dm1=d,
                                          floor=floor, **ctx))
        return out

    if rule == "13":
        if q == 2 and before.M != 0:
            out.append(_violation(rule, PAPER, "potential-nonzero", M=before.M, **ctx))
        for i, ms in enumerate(after):
            if ms is not None and before.m - ms.m < 2:
                out.append(_violation(rule, PAPER, "m-floor", branch=i,
                                      dm=before.m - ms.m, floor=2, **ctx))
        return out

    if rule in ("11", "12"):
        if q != 2:
            out.append(_violation(rule, PAPER, "phase", q=q, **ctx))
        if len(after) not in PAIR_RULE_ROWS:
            raise ValueError(f"rule {rule} produced {len(after)} branches")
        for i, (ms, (row_m, cap_big)) in enumerate(zip(after, PAIR_RULE_ROWS[len(after)])):
            if ms is None:
                continue
            dm = before.m - ms.m
            d_big = before.M - ms.M
            if dm < row_m:
                out.append(_violation(rule, PAPER, "m-floor", branch=i, dm=dm,
                                      floor=row_m, **ctx))
            elif d_big > cap_big + 2 * (dm - row_m):
                out.append(_violation(rule, PAPER, "M-cap", branch=i, dm=dm, dM=d_big,
                                      cap=cap_big + 2 * (dm - row_m), **ctx))
        return out

    if rule in ("fallback", "B1", "B2"):
        return out
    raise UnknownRule(rule)


def _dominance(rule, tag, row, deltas, ctx) -> list[dict]:
    live = [d for d in deltas if d is not None]
    if len(deltas) == len(row):
        obs = sorted(math.inf if d is None else d for d in deltas)
        if all(o >= r for o, r in zip(obs, sorted(row))):
            return []
    elif not live or branching_number(live) <= branching_number(row) + GUARD:
        return []
    return [_violation(rule, tag, "vector", deltas=[d for d in deltas], row=row, **ctx)]


# -- whole-trace audit --------------------------------------------------

def settle(nodes: Sequence[TraceNode], i: int) -> TraceNode:
    n = nodes[i]
    while n.rule in REDUCTIONS:
        n = nodes[n.children[0]]
    return n


def _after(nodes: Sequence[TraceNode], i: int) -> Measures | None:
    s = settle(nodes, i)
    return None if s.rule == "1" else s.measures


def _rule7_branches(nodes: Sequence[TraceNode], node: TraceNode) -> list[int]:
    """Settled descendants after unfolding the path branchings the cycle analysis uses."""
    cycle = set(node.witness.get("component", ()))
    length = node.witness.get("cycle_len", 0)

    def unfold(i: int, times: int) -> list[int]:
        s = settle(nodes, i)
        if times and s.rule == "6" and s.witness.get("v") in cycle:
            first, second = s.children
            return unfold(first, times - 1) + [settle(nodes, second).id]
        return [s.id]

    without_v, without_nv = node.children
    if length >= 6:
        return unfold(without_v, 2) + unfold(without_nv, 1)
    return unfold(without_v, 1) + [settle(nodes, without_nv).id]


def audit_trace(nodes: Sequence[TraceNode], alpha: Fraction = ALPHA,
                beta: Fraction = BETA) -> list[dict]:
    """All audit violations in a trace whose nodes carry measures."""
    out: list[dict] = []
    for n in nodes:
        if n.measures is None or n.rule == "1":
            continue
        ctx = {"node": n.id, "q": n.q, "witness": n.witness}
        if n.rule == "7":
            ids = _rule7_branches(nodes, n)
            after = [None if nodes[i].rule == "1" else nodes[i].measures for i in ids]
        elif n.rule in REDUCTIONS:
            after = [nodes[n.children[0]].measures]
        else:
            after = [_after(nodes, c) for c in n.children]
        cyc = n.witness.get("cycle_len")
        out += audit_step(n.rule, n.measures, after, alpha=alpha,
                          cycle_len=cyc, **ctx)
        if n.rule == "10" and n.witness.get("q_next") == 1:
            if n.measures.m2 > n.measures.m1:
                out.append(_violation("10", PAPER, "switch", m1=n.measures.m1,
                                      m2=n.measures.m2, **ctx))
        if n.q == 2:
            if not lemma1_subtree_check(n.measures.m, n.measures.M, n.leaves):
                out.append(_violation(n.rule, PAPER, "lemma1", m=n.measures.m,
                                      M=n.measures.M, leaves=n.leaves, **ctx))
    return out


def switch_roots(nodes: Sequence[TraceNode]) -> list[TraceNode]:
    """Calls entered with q = 2 directly from the phase switch."""
    return [nodes[n.children[0]] for n in nodes
            if n.rule == "10" and n.witness.get("q_next") == 2]


def firing_counts(nodes: Sequence[TraceNode]) -> dict[str, int]:
    out: dict[str, int] = {}
    for n in nodes:
        out[n.rule] = out.get(n.rule, 0) + 1
    return out
