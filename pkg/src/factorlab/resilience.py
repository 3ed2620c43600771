"""Exact and falsification-mode toughness, isolated toughness, and m-strong
toughness, with witness certificates.

All ratios are exact rationals.  Exact modes enumerate; the falsifier samples
seeded random subsets stratified by size and only ever reports violations (a
sound refuter, never a certifier).

Isolated-toughness checks run over independent sets instead of all 2^n
subsets.  This is sound and complete: the isolated set I of G-S is independent
in G, and S' = N_G(I) satisfies S' <= S while every vertex isolated by S stays
isolated after removing only S'; so the worst case is always attained at
S = N_G(I) for some nonempty independent I.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import DEFAULT_BUDGETS, INF, Budgets, PreconditionError, ScaleExceeded
from .graphs import MultiGraph, VertexFn, bits, mask_of


@dataclass(frozen=True)
class CriterionWitness:
    """A violating set S (as ``A`` with empty ``B``) or disjoint pair (A, B).

    ``slack = lhs - rhs`` is positive for a genuine violation.
    """

    A: frozenset[int]
    B: frozenset[int]
    lhs: Fraction
    rhs: Fraction
    condition: str = ""

    @property
    def slack(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def S(self) -> frozenset[int]:
        if self.B:
            raise PreconditionError("witness is an (A,B) pair, not a set")
        return self.A

    def to_json(self) -> dict:
        from .core import fmt_rational

        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "lhs": fmt_rational(self.lhs),
            "rhs": fmt_rational(self.rhs),
            "slack": fmt_rational(self.slack),
            "condition": self.condition,
        }


def set_witness(S_mask: int, lhs, rhs, condition: str) -> CriterionWitness:
    return CriterionWitness(
        A=frozenset(bits(S_mask)),
        B=frozenset(),
        lhs=Fraction(lhs),
        rhs=Fraction(rhs),
        condition=condition,
    )


@dataclass(frozen=True)
class ToughnessReport:
    kind: str                     # tough | iso | strong
    value: Union[Fraction, float]  # exact rational, or INF when no cut qualifies
    witness: Optional[frozenset[int]]
    mode: str                     # exact | falsify
    samples_used: int = 0

    def to_json(self) -> dict:
        from .core import fmt_rational

        return {
            "kind": self.kind,
            "value": fmt_rational(self.value),
            "witness": sorted(self.witness) if self.witness is not None else None,
            "mode": self.mode,
            "samples_used": self.samples_used,
        }


def _require_exact_scale(g: MultiGraph, budgets: Budgets, what: str) -> None:
    if g.n > budgets.subset_n_cap:
        raise ScaleExceeded(
            f"{what}: n={g.n} exceeds the 2^n enumeration cap {budgets.subset_n_cap}"
        )


def toughness(
    g: MultiGraph,
    mode: str = "exact",
    budgets: Budgets = DEFAULT_BUDGETS,
    seed: Optional[int] = None,
    samples: int = 100_000,
) -> ToughnessReport:
    """min |S| / omega(G-S) over cut sets with omega(G-S) >= 2; INF if none.

    Falsify mode reports the smallest sampled ratio, never a lower bound.
    """
    if mode == "exact":
        _require_exact_scale(g, budgets, "toughness")
        best = None
        best_mask = None
        full = g.full_mask
        for s_mask in range(1 << g.n):
            keep = full & ~s_mask
            comps = g.component_masks(keep)
            if len(comps) < 2:
                continue
            ratio = Fraction(s_mask.bit_count(), len(comps))
            if best is None or ratio < best:
                best, best_mask = ratio, s_mask
        if best is None:
            return ToughnessReport("tough", INF, None, "exact")
        return ToughnessReport("tough", best, frozenset(bits(best_mask)), "exact")
    if mode == "falsify":
        return _falsify(g, "tough", seed, samples)
    raise PreconditionError(f"unknown mode {mode!r}")


def _falsify(g: MultiGraph, kind: str, seed: Optional[int], samples: int) -> ToughnessReport:
    if seed is None:
        raise PreconditionError("falsify mode requires a seed")
    rng = random.Random(seed)
    n = g.n
    full = g.full_mask
    best = None
    best_mask = None
    verts = list(range(n))
    for _ in range(samples):
        k = rng.randint(1, max(1, n - 1))
        s_mask = mask_of(rng.sample(verts, k))
        keep = full & ~s_mask
        if kind == "tough":
            denom = len(g.component_masks(keep))
            if denom < 2:
                continue
        else:  # iso
            denom = _iso_count(g, keep)
            if denom < 1:
                continue
        ratio = Fraction(s_mask.bit_count(), denom)
        if best is None or ratio < best:
            best, best_mask = ratio, s_mask
    witness = frozenset(bits(best_mask)) if best_mask is not None else None
    return ToughnessReport(kind, best if best is not None else INF, witness, "falsify", samples)


def _iso_count(g: MultiGraph, keep: int) -> int:
    count = 0
    for v in bits(keep):
        if g.adj[v] & keep == 0:
            count += 1
    return count


def _independent_sets(g: MultiGraph, budget: int):
    """Yield every nonempty independent set of g as a mask (DFS order)."""
    n = g.n
    adj = g.adj
    seen = 0

    # Depth-first: at vertex v either skip it or, if none of its neighbors is
    # chosen, take it.  Yields each independent set exactly once.
    def rec(start: int, current: int):
        nonlocal seen
        for v in range(start, n):
            if current & adj[v]:
                continue
            chosen = current | (1 << v)
            seen += 1
            if seen > budget:
                raise ScaleExceeded("independent-set enumeration budget exhausted")
            yield chosen
            yield from rec(v + 1, chosen)

    yield from rec(0, 0)


def check_iso_tough(
    g: MultiGraph,
    t: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """None when sum of t over isolated vertices of G-S is at most |S| for all S.

    Returns the violating S = N_G(I) otherwise.
    """
    if any(q < 0 for q in t.values):
        raise PreconditionError("iso-toughness function must be nonnegative")
    full = g.full_mask
    for ind in _independent_sets(g, budgets.indep_budget):
        s_mask = 0
        for v in bits(ind):
            s_mask |= g.adj[v]
        keep = full & ~s_mask
        total = Fraction(0)
        for v in bits(keep):
            if g.adj[v] & keep == 0:
                total += t[v]
        size = s_mask.bit_count()
        if total > size:
            return set_witness(s_mask, total, size, "sum_t_isolated<=|S|")
    return None


def iso_toughness(
    g: MultiGraph,
    mode: str = "exact",
    budgets: Budgets = DEFAULT_BUDGETS,
    seed: Optional[int] = None,
    samples: int = 100_000,
) -> ToughnessReport:
    """min |S| / iso(G-S) over sets with iso(G-S) >= 1, via independent sets."""
    if mode == "falsify":
        return _falsify(g, "iso", seed, samples)
    if mode != "exact":
        raise PreconditionError(f"unknown mode {mode!r}")
    full = g.full_mask
    best = None
    best_mask = None
    for ind in _independent_sets(g, budgets.indep_budget):
        s_mask = 0
        for v in bits(ind):
            s_mask |= g.adj[v]
        iso = _iso_count(g, full & ~s_mask)
        if iso < 1:
            continue
        ratio = Fraction(s_mask.bit_count(), iso)
        if best is None or ratio < best:
            best, best_mask = ratio, s_mask
    if best is None:
        return ToughnessReport("iso", INF, None, "exact")
    return ToughnessReport("iso", best, frozenset(bits(best_mask)), "exact")


def is_t_tough(g: MultiGraph, t: Fraction, budgets: Budgets = DEFAULT_BUDGETS) -> Optional[CriterionWitness]:
    """None when omega(G-S) <= max(1, |S|/t) for all S; witness otherwise."""
    if t <= 0:
        raise PreconditionError("toughness threshold must be positive")
    _require_exact_scale(g, budgets, "is_t_tough")
    full = g.full_mask
    p, q = t.numerator, t.denominator
    for s_mask in range(1 << g.n):
        omega = len(g.component_masks(full & ~s_mask))
        if omega <= 1:
            continue
        if p * omega > q * s_mask.bit_count():
            return set_witness(s_mask, omega, max(1, Fraction(s_mask.bit_count()) / t),
                               "omega<=max(1,|S|/t)")
    return None


def check_strong_tough(
    g: MultiGraph,
    m: int,
    t: Fraction,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """None when Omega_m(G-S) <= max(1, |S|/t) for all S; witness otherwise."""
    from .treeconn import MtcIndex

    if m < 1:
        raise PreconditionError("m must be a positive integer")
    if t <= 0:
        raise PreconditionError("toughness threshold must be positive")
    _require_exact_scale(g, budgets, "check_strong_tough")
    index = MtcIndex(g, m, budgets)
    full = g.full_mask
    t = Fraction(t)
    for s_mask in range(1 << g.n):
        num = index.omega_m_times_m(full & ~s_mask)  # m * Omega_m(G-S)
        if num <= m:
            continue  # Omega_m <= 1 always satisfies the bound
        # violation iff Omega_m > |S|/t  <=>  t*num > m*|S|
        if t.numerator * num > t.denominator * m * s_mask.bit_count():
            omega_m = Fraction(num, m)
            return set_witness(s_mask, omega_m, max(1, Fraction(s_mask.bit_count()) / t),
                               "Omega_m<=max(1,|S|/t)")
    return None


def strong_toughness(
    g: MultiGraph,
    m: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> ToughnessReport:
    """min |S| / Omega_m(G-S) over sets with Omega_m(G-S) > 1; INF if none."""
    from .treeconn import MtcIndex

    if m < 1:
        raise PreconditionError("m must be a positive integer")
    _require_exact_scale(g, budgets, "strong_toughness")
    index = MtcIndex(g, m, budgets)
    full = g.full_mask
    best = None
    best_mask = None
    for s_mask in range(1 << g.n):
        num = index.omega_m_times_m(full & ~s_mask)
        if num <= m:
            continue
        ratio = Fraction(s_mask.bit_count() * m, num)
        if best is None or ratio < best:
            best, best_mask = ratio, s_mask
    if best is None:
        return ToughnessReport("strong", INF, None, "exact")
    return ToughnessReport("strong", best, frozenset(bits(best_mask)), "exact")
