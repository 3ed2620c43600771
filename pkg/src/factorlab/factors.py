"""Exact factor-existence criteria and constructive finders.

Criteria (component-count bounds quantified over disjoint vertex pairs) are
swept exhaustively in 3^n time: removal sets U are enumerated once, their
component structure cached, then every split U = A + B is scored with integer
table lookups.

Finders reduce to maximum matching.  An exact-degree factor uses the edge/core
gadget (one edge gadget per parallel copy, complete bipartite core at each
vertex); a range (g,f)-factor is symmetrized onto two graph copies linked by
f-g slack edges, which turns the range into an exact-degree question.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import DEFAULT_BUDGETS, Budgets, PreconditionError, ScaleExceeded
from .graphs import MultiGraph, VertexFn, bits
from .matching import maximum_matching_adj
from .resilience import CriterionWitness, set_witness


@dataclass(frozen=True)
class DegreeSpec:
    """Degree prescription: exact f, near-f (one off-by-one exception), or a
    g..f range.  Near mode requires g = f."""

    g: VertexFn
    f: VertexFn
    mode: str = "exact_f"          # exact_f | near_f | range_gf
    forced_vertex: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("exact_f", "near_f", "range_gf"):
            raise PreconditionError(f"unknown degree mode {self.mode!r}")
        if not (self.g.is_integer_valued() and self.f.is_integer_valued()):
            raise PreconditionError("degree prescriptions must be integer-valued")
        if any(gv > fv for gv, fv in zip(self.g.values, self.f.values)):
            raise PreconditionError("need g <= f pointwise")
        if self.mode == "near_f" and self.g.values != self.f.values:
            raise PreconditionError("near mode requires g = f")


@dataclass(frozen=True)
class FactorCertificate:
    """A found factor: edge ids into the host graph plus its degree audit."""

    edge_ids: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    degree_audit: tuple[int, ...]
    exception: Optional[tuple[int, bool]] = None   # (vertex, True for f+1 / False for f-1)

    def to_json(self) -> dict:
        return {
            "edge_ids": list(self.edge_ids),
            "edges": [list(p) for p in self.pairs],
            "degrees": list(self.degree_audit),
            "exception": list(self.exception) if self.exception else None,
        }


def certificate_from_ids(g: MultiGraph, edge_ids, exception=None) -> FactorCertificate:
    ids = tuple(sorted(edge_ids))
    degs = [0] * g.n
    pairs = []
    for eid in ids:
        u, v = g.edges[eid]
        degs[u] += 1
        degs[v] += 1
        pairs.append((u, v))
    return FactorCertificate(ids, tuple(pairs), tuple(degs), exception)


def validate_certificate(g: MultiGraph, cert: FactorCertificate, spec: DegreeSpec) -> None:
    """Raise unless the certificate is a genuine factor of ``g`` per ``spec``."""
    if len(set(cert.edge_ids)) != len(cert.edge_ids):
        raise PreconditionError("certificate repeats an edge id")
    degs = [0] * g.n
    for eid in cert.edge_ids:
        if not 0 <= eid < len(g.edges):
            raise PreconditionError("certificate edge id out of range")
        u, v = g.edges[eid]
        degs[u] += 1
        degs[v] += 1
    if tuple(degs) != cert.degree_audit:
        raise PreconditionError("degree audit does not match edges")
    f = spec.f.as_ints()
    gl = spec.g.as_ints()
    if spec.mode == "exact_f":
        bad = [v for v in range(g.n) if degs[v] != f[v]]
        if bad:
            raise PreconditionError(f"not an exact factor at vertices {bad}")
    elif spec.mode == "range_gf":
        bad = [v for v in range(g.n) if not gl[v] <= degs[v] <= f[v]]
        if bad:
            raise PreconditionError(f"degrees outside range at vertices {bad}")
    else:  # near_f
        off = [v for v in range(g.n) if degs[v] != f[v]]
        if not off:
            if cert.exception is not None:
                raise PreconditionError("exception recorded but all degrees exact")
            return
        if len(off) > 1 or cert.exception is None or cert.exception[0] != off[0]:
            raise PreconditionError(f"near factor may deviate at one vertex, got {off}")
        v, plus = cert.exception
        want = f[v] + 1 if plus else f[v] - 1
        if degs[v] != want:
            raise PreconditionError(f"exception vertex {v} has degree {degs[v]}, wanted {want}")


# ---------------------------------------------------------------------------
# Criterion sweeps
# ---------------------------------------------------------------------------


def omega_gf(g: MultiGraph, A, B, g_fn: VertexFn, f_fn: VertexFn) -> int:
    """Components C of G-(A+B) with g = f on C and sum_C f of the wrong parity
    against the edge count from C into B."""
    from .graphs import mask_of

    a_mask = mask_of(A)
    b_mask = mask_of(B)
    if a_mask & b_mask:
        raise PreconditionError("A and B must be disjoint")
    fi = f_fn.as_ints()
    gi = g_fn.as_ints()
    keep = g.full_mask & ~(a_mask | b_mask)
    count = 0
    for comp in g.component_masks(keep):
        if any(gi[v] != fi[v] for v in bits(comp)):
            continue
        sum_f = sum(fi[v] for v in bits(comp))
        boundary = sum(g.within_degree(v, b_mask) for v in bits(comp))
        if (sum_f - boundary) % 2 != 0:
            count += 1
    return count


class _PairSweep:
    """Shared 3^n enumeration machinery over disjoint (A, B) pairs."""

    def __init__(self, g: MultiGraph, budgets: Budgets):
        if g.n > budgets.pair_n_cap:
            raise ScaleExceeded(
                f"criterion sweep: n={g.n} exceeds the 3^n cap {budgets.pair_n_cap}"
            )
        self.g = g
        n = g.n
        size = 1 << n
        # sum-over-mask tables, one DP step per mask
        self.e_in = e_in = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            v = low.bit_length() - 1
            rest = mask ^ low
            e_in[mask] = e_in[rest] + g.within_degree(v, rest)

    def table_for(self, weights) -> list[int]:
        size = 1 << self.g.n
        tab = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            tab[mask] = tab[mask ^ low] + weights[low.bit_length() - 1]
        return tab

    def removal_components(self, u_mask: int):
        """(parity-of-sum-f per component is computed by callers) -> list of
        (comp_mask, odd_boundary_mask) where odd_boundary_mask marks removed
        vertices with an odd number of edge slots into the component."""
        g = self.g
        comps = []
        for comp in g.component_masks(g.full_mask & ~u_mask):
            odd_mask = 0
            for u in bits(u_mask):
                if g.within_degree(u, comp) % 2 == 1:
                    odd_mask |= 1 << u
            comps.append((comp, odd_mask))
        return comps


def check_near_f_criterion(
    g: MultiGraph,
    f: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """Near-f-factor criterion: for all disjoint A, B,

        omega_f(G,A,B) <= sum_A f + sum_B (d_{G-A}(v) - f(v)) + 1,

    the bound raised by one more when sum f is odd.  None when it holds;
    the first violating pair otherwise.
    """
    fi = f.as_ints()
    sweep = _PairSweep(g, budgets)
    sum_f = sweep.table_for(fi)
    sum_deg = sweep.table_for(g.deg)
    e_in = sweep.e_in
    slack = 1 + (sum(fi) % 2)
    full = g.full_mask
    for u_mask in range(full + 1):
        comps = sweep.removal_components(u_mask)
        parities = [(sum(fi[v] for v in bits(c)) & 1, odd) for c, odd in comps]
        b = u_mask
        while True:
            a = u_mask ^ b
            lhs = 0
            for f_par, odd_mask in parities:
                if f_par != ((b & odd_mask).bit_count() & 1):
                    lhs += 1
            rhs = sum_f[a] + sum_deg[b] - sum_f[b] - (e_in[u_mask] - e_in[a] - e_in[b]) + slack
            if lhs > rhs:
                return CriterionWitness(
                    A=frozenset(bits(a)), B=frozenset(bits(b)),
                    lhs=Fraction(lhs), rhs=Fraction(rhs),
                    condition="omega_f(G,A,B)<=sum_A f+sum_B(d_{G-A}-f)+slack",
                )
            if b == 0:
                break
            b = (b - 1) & u_mask
    return None


def check_gf_criterion(
    g: MultiGraph,
    g_fn: VertexFn,
    f_fn: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """(g,f)-factor criterion: for all disjoint A, B,

        omega_{g,f}(G,A,B) <= sum_A f + sum_B (d_{G-A}(v) - g(v)).
    """
    fi = f_fn.as_ints()
    gi = g_fn.as_ints()
    if any(a > b for a, b in zip(gi, fi)):
        raise PreconditionError("need g <= f pointwise")
    sweep = _PairSweep(g, budgets)
    sum_f = sweep.table_for(fi)
    sum_g = sweep.table_for(gi)
    sum_deg = sweep.table_for(g.deg)
    e_in = sweep.e_in
    full = g.full_mask
    eq_mask = 0
    for v in range(g.n):
        if gi[v] == fi[v]:
            eq_mask |= 1 << v
    for u_mask in range(full + 1):
        comps = []
        for comp, odd_mask in sweep.removal_components(u_mask):
            if comp & ~eq_mask:
                continue  # g < f somewhere on the component: never counted
            comps.append(((sum(fi[v] for v in bits(comp)) & 1), odd_mask))
        b = u_mask
        while True:
            a = u_mask ^ b
            lhs = 0
            for f_par, odd_mask in comps:
                if f_par != ((b & odd_mask).bit_count() & 1):
                    lhs += 1
            rhs = sum_f[a] + sum_deg[b] - sum_g[b] - (e_in[u_mask] - e_in[a] - e_in[b])
            if lhs > rhs:
                return CriterionWitness(
                    A=frozenset(bits(a)), B=frozenset(bits(b)),
                    lhs=Fraction(lhs), rhs=Fraction(rhs),
                    condition="omega_gf(G,A,B)<=sum_A f+sum_B(d_{G-A}-g)",
                )
            if b == 0:
                break
            b = (b - 1) & u_mask
    return None


def check_restricted_component_criterion(
    g: MultiGraph,
    f: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """Sufficient near-f condition over restricted pairs only: disjoint A, B
    where every v in B has d_{G[B]}(v) <= f(v)-2 and d_{G-A}(v) <= 2f(v)-1
    must satisfy

        omega(G-(A+B)) <= sum_A f + sum_B (d_{G-A}(v) - f(v)) + 1  (+1, sum f odd).
    """
    fi = f.as_ints()
    sweep = _PairSweep(g, budgets)
    sum_f = sweep.table_for(fi)
    slack = 1 + (sum(fi) % 2)
    full = g.full_mask
    for u_mask in range(full + 1):
        omega = len(g.component_masks(full & ~u_mask))
        b = u_mask
        while True:
            a = u_mask ^ b
            ok_pair = True
            rhs = sum_f[a] + slack
            for v in bits(b):
                d_in_b = g.within_degree(v, b)
                d_minus_a = g.deg[v] - g.within_degree(v, a)
                if d_in_b > fi[v] - 2 or d_minus_a > 2 * fi[v] - 1:
                    ok_pair = False
                    break
                rhs += d_minus_a - fi[v]
            if ok_pair and omega > rhs:
                return CriterionWitness(
                    A=frozenset(bits(a)), B=frozenset(bits(b)),
                    lhs=Fraction(omega), rhs=Fraction(rhs),
                    condition="restricted omega(G-(A+B)) bound",
                )
            if b == 0:
                break
            b = (b - 1) & u_mask
    return None


def check_critical_criterion(
    g: MultiGraph,
    f: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """Strict criterion giving a near-f-factor whose exception sits at any
    prescribed vertex (requires sum f odd and G connected): for all disjoint
    A, B with A+B nonempty,

        omega_f(G,A,B) <= sum_A f + sum_B (d_{G-A}(v) - f(v)).
    """
    fi = f.as_ints()
    sweep = _PairSweep(g, budgets)
    sum_f = sweep.table_for(fi)
    sum_deg = sweep.table_for(g.deg)
    e_in = sweep.e_in
    full = g.full_mask
    for u_mask in range(1, full + 1):
        comps = sweep.removal_components(u_mask)
        parities = [(sum(fi[v] for v in bits(c)) & 1, odd) for c, odd in comps]
        b = u_mask
        while True:
            a = u_mask ^ b
            lhs = 0
            for f_par, odd_mask in parities:
                if f_par != ((b & odd_mask).bit_count() & 1):
                    lhs += 1
            rhs = sum_f[a] + sum_deg[b] - sum_f[b] - (e_in[u_mask] - e_in[a] - e_in[b])
            if lhs > rhs:
                return CriterionWitness(
                    A=frozenset(bits(a)), B=frozenset(bits(b)),
                    lhs=Fraction(lhs), rhs=Fraction(rhs),
                    condition="omega_f(G,A,B)<=sum_A f+sum_B(d_{G-A}-f), A+B nonempty",
                )
            if b == 0:
                break
            b = (b - 1) & u_mask
    return None


def check_one_factor(
    g: MultiGraph,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """Perfect-matching criterion: odd(G-S) <= |S| for all S."""
    if g.n > budgets.subset_n_cap:
        raise ScaleExceeded(f"one-factor check: n={g.n} exceeds cap {budgets.subset_n_cap}")
    full = g.full_mask
    for s_mask in range(full + 1):
        odd = sum(1 for c in g.component_masks(full & ~s_mask) if c.bit_count() % 2)
        if odd > s_mask.bit_count():
            return set_witness(s_mask, odd, s_mask.bit_count(), "odd(G-S)<=|S|")
    return None


def check_one_f_factor(
    g: MultiGraph,
    f: VertexFn,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[CriterionWitness]:
    """(1,f)-factor criterion for f >= 2: iso(G-S) <= sum_S f for all S.

    Runs over independent sets (weights charged on the neighborhood side),
    which is sound and complete for the same reason as the iso-toughness
    reformulation.
    """
    fi = f.as_ints()
    if any(x < 2 for x in fi):
        raise PreconditionError("this criterion requires f >= 2")
    from .resilience import _independent_sets

    full = g.full_mask
    # S = empty: violated iff G already has an isolated vertex.
    for v in range(g.n):
        if g.adj[v] == 0:
            return set_witness(0, 1, 0, "iso(G-S)<=sum_S f")
    for ind in _independent_sets(g, budgets.indep_budget):
        s_mask = 0
        for v in bits(ind):
            s_mask |= g.adj[v]
        keep = full & ~s_mask
        iso = sum(1 for v in bits(keep) if g.adj[v] & keep == 0)
        bound = sum(fi[u] for u in bits(s_mask))
        if iso > bound:
            return set_witness(s_mask, iso, bound, "iso(G-S)<=sum_S f")
    return None


# ---------------------------------------------------------------------------
# Constructive finders
# ---------------------------------------------------------------------------


def find_f_factor(g: MultiGraph, f: VertexFn) -> Optional[FactorCertificate]:
    """Exact f-factor via the edge/core gadget and maximum matching.

    Gadget: each edge copy contributes a pair of external nodes joined to each
    other; each vertex contributes deg-f core nodes joined to all of its
    external nodes.  Perfect matchings correspond exactly to f-factors (an
    edge is selected iff its external pair is matched to itself).
    """
    fi = f.as_ints()
    if any(x < 0 or x > g.deg[v] for v, x in enumerate(fi)):
        return None
    if sum(fi) % 2 == 1:
        return None
    # node layout: externals first (two per edge copy), then cores per vertex
    num_ext = 2 * len(g.edges)
    ext_of_edge = [(2 * eid, 2 * eid + 1) for eid in range(len(g.edges))]
    ext_at_vertex: list[list[int]] = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        ext_at_vertex[u].append(2 * eid)
        ext_at_vertex[v].append(2 * eid + 1)
    core_base = []
    total = num_ext
    for v in range(g.n):
        core_base.append(total)
        total += g.deg[v] - fi[v]
    adj: list[list[int]] = [[] for _ in range(total)]
    for eid in range(len(g.edges)):
        a, b = ext_of_edge[eid]
        adj[a].append(b)
        adj[b].append(a)
    for v in range(g.n):
        cores = range(core_base[v], core_base[v] + g.deg[v] - fi[v])
        for x in ext_at_vertex[v]:
            for c in cores:
                adj[x].append(c)
                adj[c].append(x)
    mate = maximum_matching_adj(total, adj)
    if any(m == -1 for m in mate):
        return None
    chosen = [eid for eid, (a, b) in enumerate(ext_of_edge) if mate[a] == b]
    cert = certificate_from_ids(g, chosen)
    assert cert.degree_audit == tuple(fi)
    return cert


def find_near_f_factor(
    g: MultiGraph,
    f: VertexFn,
    forced_vertex: Optional[int] = None,
) -> Optional[FactorCertificate]:
    """Near f-factor: exact degrees except at most one vertex off by one.

    Even total: identical to an exact f-factor.  Odd total: one exception is
    forced by parity; candidate vertices are tried in ascending index, first
    raised to f+1, then (when no raise works anywhere) lowered to f-1.  With
    ``forced_vertex`` the exception must sit at that vertex at f+1.
    """
    fi = list(f.as_ints())
    odd = sum(fi) % 2 == 1
    if forced_vertex is not None:
        if not 0 <= forced_vertex < g.n:
            raise PreconditionError(f"forced vertex {forced_vertex} out of range")
        if not odd:
            raise PreconditionError("a forced exception vertex requires odd total degree")
        bumped = list(fi)
        bumped[forced_vertex] += 1
        cert = find_f_factor(g, VertexFn.of(bumped))
        if cert is None:
            return None
        return FactorCertificate(cert.edge_ids, cert.pairs, cert.degree_audit,
                                 (forced_vertex, True))
    if not odd:
        return find_f_factor(g, f)
    for u in range(g.n):
        bumped = list(fi)
        bumped[u] += 1
        cert = find_f_factor(g, VertexFn.of(bumped))
        if cert is not None:
            return FactorCertificate(cert.edge_ids, cert.pairs, cert.degree_audit, (u, True))
    for u in range(g.n):
        if fi[u] == 0:
            continue
        lowered = list(fi)
        lowered[u] -= 1
        cert = find_f_factor(g, VertexFn.of(lowered))
        if cert is not None:
            return FactorCertificate(cert.edge_ids, cert.pairs, cert.degree_audit, (u, False))
    return None


def find_gf_factor(
    g: MultiGraph,
    g_fn: VertexFn,
    f_fn: VertexFn,
) -> Optional[FactorCertificate]:
    """(g,f)-factor via symmetrization: duplicate the graph, link the two
    copies of each vertex v by f(v)-g(v) parallel slack edges, and look for an
    exact factor with target f on both copies.  Its restriction to one copy
    has degrees between g and f, and any (g,f)-factor lifts back, so the
    reduction is exact."""
    gi = list(g_fn.as_ints())
    fi = list(f_fn.as_ints())
    if any(a > b for a, b in zip(gi, fi)):
        raise PreconditionError("need g <= f pointwise")
    if any(x < 0 for x in gi):
        gi = [max(x, 0) for x in gi]
    fi = [min(x, g.deg[v]) for v, x in enumerate(fi)]
    if any(a > b for a, b in zip(gi, fi)):
        return None
    if gi == fi:
        return find_f_factor(g, VertexFn.of(fi))
    n = g.n
    doubled = []
    doubled.extend(g.edges)
    doubled.extend((u + n, v + n) for u, v in g.edges)
    for v in range(n):
        doubled.extend((v, v + n) for _ in range(fi[v] - gi[v]))
    big = MultiGraph(2 * n, doubled)
    target = VertexFn.of(fi + fi)
    cert = find_f_factor(big, target)
    if cert is None:
        return None
    copy1_ids = [i for i, (u, v) in enumerate(big.edges) if u < n and v < n]
    rank = {big_id: orig_id for orig_id, big_id in enumerate(copy1_ids)}
    chosen = [rank[eid] for eid in cert.edge_ids if eid in rank]
    out = certificate_from_ids(g, chosen)
    assert all(gi[v] <= out.degree_audit[v] <= fi[v] for v in range(n))
    return out
