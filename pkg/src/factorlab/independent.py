"""Weighted greedy independent sets with certificate inequalities, the
Caro-Wei bound, and greedy coloring into independent classes.

The greedy certificate uses original-graph degrees even though selection runs
on residual graphs; replacing them with residual degrees would break the
certificate, so do not "optimize" that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PreconditionError
from .graphs import MultiGraph, VertexFn, bits


@dataclass(frozen=True)
class IndependenceReport:
    set: frozenset[int]
    lhs: Fraction            # sum of weights over all vertices
    rhs: Fraction            # sum over the set of weight*(deg+1)
    alpha_lower: Fraction    # Caro-Wei value of the graph

    def to_json(self) -> dict:
        from .core import fmt_rational

        return {
            "set": sorted(self.set),
            "lhs": fmt_rational(self.lhs),
            "rhs": fmt_rational(self.rhs),
            "alpha_lower": fmt_rational(self.alpha_lower),
        }


def greedy_weighted_independent(h: MultiGraph, phi: VertexFn) -> IndependenceReport:
    """Pick a max-weight vertex of the residual graph, delete its closed
    neighborhood, repeat.  The returned maximal independent set I satisfies

        sum_V phi(v)  <=  sum_I phi(v) * (d_H(v) + 1)

    with d_H the degree in the original graph.  Ties break to the smallest
    residual degree and then the lowest vertex index: deterministic, and with
    unit weights the selection becomes the minimum-degree greedy, whose size
    reaches the Caro-Wei bound.
    """
    if any(q < 0 for q in phi.values):
        raise PreconditionError("weights must be nonnegative")
    residual = h.full_mask
    chosen = 0
    while residual:
        best_v = None
        best_key = None
        for v in bits(residual):
            key = (-phi[v], (h.adj[v] & residual).bit_count(), v)
            if best_key is None or key < best_key:
                best_v, best_key = v, key
        chosen |= 1 << best_v
        residual &= ~(h.adj[best_v] | (1 << best_v))
    lhs = phi.total()
    rhs = sum((phi[v] * (h.deg[v] + 1) for v in bits(chosen)), Fraction(0))
    return IndependenceReport(
        set=frozenset(bits(chosen)),
        lhs=lhs,
        rhs=rhs,
        alpha_lower=caro_wei(h),
    )


def surplus_independent(h: MultiGraph, phi: VertexFn, d: VertexFn) -> IndependenceReport:
    """Greedy with surplus weights phi - d, for phi >= d >= d_H pointwise:

        sum_V (phi(v) - d(v))  <=  sum_I (d(v) + 1) * (phi(v) - d(v))
    """
    for v in range(h.n):
        if not (phi[v] >= d[v] >= h.deg[v]):
            raise PreconditionError(
                f"need phi(v) >= d(v) >= deg(v); vertex {v} has "
                f"phi={phi[v]}, d={d[v]}, deg={h.deg[v]}"
            )
    weights = VertexFn.of([phi[v] - d[v] for v in range(h.n)])
    base = greedy_weighted_independent(h, weights)
    rhs = sum(((d[v] + 1) * (phi[v] - d[v]) for v in base.set), Fraction(0))
    return IndependenceReport(set=base.set, lhs=base.lhs, rhs=rhs, alpha_lower=base.alpha_lower)


def caro_wei(h: MultiGraph) -> Fraction:
    """sum over v of 1/(1 + deg(v)): a lower bound for the independence number."""
    return sum((Fraction(1, 1 + h.deg[v]) for v in range(h.n)), Fraction(0))


def greedy_color_classes(h: MultiGraph, k: int) -> list[frozenset[int]]:
    """Sequential greedy coloring into exactly k independent classes (some may
    come back empty).

    Max degree <= k-1 guarantees success; with larger degrees the greedy may
    still fit in k classes, and the call fails only when it does not.
    """
    if k < 1:
        raise PreconditionError("k must be positive")
    color = [-1] * h.n
    for v in range(h.n):
        used = {color[u] for u in bits(h.adj[v]) if color[u] >= 0}
        c = 0
        while c in used:
            c += 1
        if c >= k:
            raise PreconditionError(
                f"greedy coloring needs {c + 1} classes, only {k} allowed "
                f"(guaranteed for max degree <= {k - 1}, got {h.max_degree()})"
            )
        color[v] = c
    classes = [set() for _ in range(k)]
    for v, c in enumerate(color):
        classes[c].add(v)
    return [frozenset(cls) for cls in classes]
