"""Spanning-tree packing with partition certificates, m-tree-connected
components and Omega_m, extremal-set search, bounded-degree tree-connected
factor searches, spanning Eulerian subgraphs, and connected {2,4}-factors.

Packing runs matroid-union augmentation over m forests.  When a packing does
not exist the refuting partition comes from contracting failure clumps (the
vertex sets spanned by the exchange-reachability closure of an uninsertable
edge, which always induce m-tree-connected subgraphs): once every surviving
crossing edge inserts cleanly but some forest still fails to span, the current
parts form a partition P with e(P) < m(|P|-1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import DEFAULT_BUDGETS, Budgets, FactorLabError, PreconditionError, ScaleExceeded
from .factors import FactorCertificate, certificate_from_ids
from .graphs import MultiGraph, bits


class _MatroidForests:
    """m edge-disjoint forests over nodes 0..k-1 with augmenting insertion."""

    def __init__(self, k: int, m: int):
        self.k = k
        self.m = m
        self.fadj: list[dict[int, list[tuple[int, int]]]] = [dict() for _ in range(m)]
        self.owner: dict[int, int] = {}
        self.ends: dict[int, tuple[int, int]] = {}
        self.sizes = [0] * m

    def _add(self, i: int, eid: int) -> None:
        u, v = self.ends[eid]
        self.fadj[i].setdefault(u, []).append((v, eid))
        self.fadj[i].setdefault(v, []).append((u, eid))
        self.owner[eid] = i
        self.sizes[i] += 1

    def _remove(self, i: int, eid: int) -> None:
        u, v = self.ends[eid]
        self.fadj[i][u].remove((v, eid))
        self.fadj[i][v].remove((u, eid))
        del self.owner[eid]
        self.sizes[i] -= 1

    def _path(self, i: int, src: int, dst: int) -> Optional[list[int]]:
        """Edge ids along the forest-i path src..dst, or None if disconnected."""
        if src == dst:
            return []
        adj = self.fadj[i]
        prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y, eid in adj.get(x, ()):
                if y in prev:
                    continue
                prev[y] = (x, eid)
                if y == dst:
                    path = []
                    cur = dst
                    while cur != src:
                        x0, e0 = prev[cur]
                        path.append(e0)
                        cur = x0
                    return path
                queue.append(y)
        return None

    def connected(self, i: int, u: int, v: int) -> bool:
        return self._path(i, u, v) is not None

    def insert(self, eid: int, u: int, v: int):
        """True on success; on failure the dict of labeled edges (the clump)."""
        self.ends[eid] = (u, v)
        for i in range(self.m):
            if not self.connected(i, u, v):
                self._add(i, eid)
                return True
        label: dict[int, Optional[tuple[int, int]]] = {eid: None}
        queue = deque([eid])
        while queue:
            e = queue.popleft()
            x, y = self.ends[e]
            target = None
            for j in range(self.m):
                if not self.connected(j, x, y):
                    target = j
                    break
            if target is not None:
                cur, dest = e, target
                while True:
                    lab = label[cur]
                    if lab is None:
                        self._add(dest, cur)
                        return True
                    parent, i = lab
                    self._remove(i, cur)
                    self._add(dest, cur)
                    cur, dest = parent, i
            for i in range(self.m):
                path = self._path(i, x, y)
                for f in path:
                    if f not in label:
                        label[f] = (e, i)
                        queue.append(f)
        del self.ends[eid]
        return label


def _pack_feasible(k: int, edge_iter, m: int):
    """Insert-or-skip all edges; return forests when all span, else None."""
    mf = _MatroidForests(k, m)
    for eid, u, v in edge_iter:
        mf.insert(eid, u, v)
    if all(size == k - 1 for size in mf.sizes) or k <= 1:
        forests = [[] for _ in range(m)]
        for eid, i in mf.owner.items():
            forests[i].append(eid)
        return [sorted(f) for f in forests]
    return None


def is_m_tree_connected(g: MultiGraph, m: int) -> bool:
    """Does g contain m pairwise edge-disjoint spanning trees?"""
    if m < 1:
        raise PreconditionError("m must be positive")
    if g.n <= 1:
        return True
    if len(g.edges) < m * (g.n - 1):
        return False
    return _pack_feasible(g.n, ((i, u, v) for i, (u, v) in enumerate(g.edges)), m) is not None


@dataclass(frozen=True)
class TreePacking:
    trees: tuple[tuple[int, ...], ...]   # edge ids per tree

    def to_json(self) -> dict:
        return {"trees": [list(t) for t in self.trees]}


@dataclass(frozen=True)
class PartitionCertificate:
    """A partition P with e_G(P) < m(|P|-1): no m edge-disjoint spanning trees."""

    parts: tuple[frozenset[int], ...]
    crossing: int
    m: int

    def to_json(self) -> dict:
        return {"parts": [sorted(p) for p in self.parts], "crossing": self.crossing, "m": self.m}


@dataclass(frozen=True)
class MtcPartition:
    """The unique partition into maximal m-tree-connected induced subgraphs."""

    part_masks: tuple[int, ...]
    omega_m: Fraction
    m: int

    @property
    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bits(p)) for p in self.part_masks)

    def to_json(self) -> dict:
        from .core import fmt_rational

        return {
            "parts": [sorted(bits(p)) for p in self.part_masks],
            "omega_m": fmt_rational(self.omega_m),
            "m": self.m,
        }


def _validate_packing(g: MultiGraph, m: int, forests: list[list[int]]) -> TreePacking:
    seen: set[int] = set()
    for tree in forests:
        if len(tree) != g.n - 1 and g.n > 0:
            raise FactorLabError("internal: forest is not spanning")
        for eid in tree:
            if eid in seen:
                raise FactorLabError("internal: forests share an edge")
            seen.add(eid)
        sub = MultiGraph(g.n, [g.edges[eid] for eid in tree])
        if not sub.is_connected():
            raise FactorLabError("internal: forest is not connected")
    return TreePacking(tuple(tuple(sorted(t)) for t in forests))


def tree_packing(g: MultiGraph, m: int):
    """Either m edge-disjoint spanning trees or a refuting partition;
    exactly one of the two."""
    if m < 1:
        raise PreconditionError("m must be positive")
    if g.n == 0:
        return TreePacking(tuple(tuple() for _ in range(m)))
    forests = _pack_feasible(g.n, ((i, u, v) for i, (u, v) in enumerate(g.edges)), m)
    if forests is not None:
        return _validate_packing(g, m, forests)

    part_id = list(range(g.n))
    while True:
        ids = sorted(set(part_id))
        node_of = {pid: i for i, pid in enumerate(ids)}
        k = len(ids)
        cedges = [
            (eid, node_of[part_id[u]], node_of[part_id[v]])
            for eid, (u, v) in enumerate(g.edges)
            if part_id[u] != part_id[v]
        ]
        mf = _MatroidForests(k, m)
        clump = None
        for eid, cu, cv in cedges:
            res = mf.insert(eid, cu, cv)
            if res is not True:
                clump = res
                break
        if clump is None:
            if k == 1 or all(size == k - 1 for size in mf.sizes):
                raise FactorLabError("internal: packing feasibility disagreed with itself")
            parts = []
            for pid in ids:
                parts.append(frozenset(v for v in range(g.n) if part_id[v] == pid))
            crossing = len(cedges)
            if crossing >= m * (k - 1):
                raise FactorLabError("internal: refuting partition fails its own inequality")
            return PartitionCertificate(tuple(parts), crossing, m)
        touched = set()
        for eid in clump:
            cu, cv = mf.ends.get(eid, (None, None))
            if cu is None:
                u, v = g.edges[eid]
                cu, cv = node_of[part_id[u]], node_of[part_id[v]]
            touched.add(cu)
            touched.add(cv)
        merged_pids = {ids[c] for c in touched}
        new_pid = min(merged_pids)
        for v in range(g.n):
            if part_id[v] in merged_pids:
                part_id[v] = new_pid


class MtcIndex:
    """Per-graph cache of m-tree-connected induced vertex masks.

    Because two overlapping m-tree-connected vertex sets have an
    m-tree-connected union, the maximal such masks inside any surviving set W
    are pairwise disjoint and form exactly the m-tree-connected component
    partition of G[W]; a single descending-size greedy scan recovers them.
    """

    _TABLE_CAP = 20  # 2^n tables beyond this are not worth holding

    def __init__(self, g: MultiGraph, m: int, budgets: Budgets = DEFAULT_BUDGETS):
        if g.n > min(budgets.subset_n_cap, self._TABLE_CAP):
            raise ScaleExceeded(f"mtc index: n={g.n} exceeds table cap")
        self.g = g
        self.m = m
        n = g.n
        size = 1 << n
        e_in = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            v = low.bit_length() - 1
            rest = mask ^ low
            e_in[mask] = e_in[rest] + g.within_degree(v, rest)
        self.e_in = e_in
        self._memo: dict[int, bool] = {}
        if m > 1:
            masks = [mask for mask in range(1, size) if self.is_mtc(mask)]
            masks.sort(key=lambda mk: (-mk.bit_count(), mk))
            self.masks_desc = masks
        else:
            self.masks_desc = []

    def is_mtc(self, mask: int) -> bool:
        got = self._memo.get(mask)
        if got is not None:
            return got
        g, m = self.g, self.m
        k = mask.bit_count()
        if k <= 1:
            res = True
        else:
            e = self.e_in[mask]
            if e < m * (k - 1):
                res = False
            elif k == 2:
                res = True  # e >= m parallel edges between the two vertices
            elif g.simple and m == 2 and k == 4:
                res = e == 6  # only K_4 reaches the count, and K_4 packs
            elif m == 1:
                res = len(g.component_masks(mask)) == 1
            else:
                idx = {v: i for i, v in enumerate(bits(mask))}
                edge_iter = (
                    (eid, idx[u], idx[v])
                    for eid, (u, v) in enumerate(g.edges)
                    if (mask >> u) & 1 and (mask >> v) & 1
                )
                res = _pack_feasible(k, edge_iter, m) is not None
        self._memo[mask] = res
        return res

    def partition(self, w_mask: int) -> list[int]:
        """m-tree-connected component masks of G[W]."""
        if w_mask == 0:
            return []
        if self.m == 1:
            return self.g.component_masks(w_mask)
        parts = []
        covered = 0
        for mask in self.masks_desc:
            if mask & ~w_mask or mask & covered:
                continue
            parts.append(mask)
            covered |= mask
            if covered == w_mask:
                break
        return parts

    def omega_m_times_m(self, w_mask: int) -> int:
        """m * Omega_m(G[W]) as an integer."""
        parts = self.partition(w_mask)
        crossing = self.e_in[w_mask] - sum(self.e_in[p] for p in parts)
        return self.m * len(parts) - crossing


def mtc_components(
    g: MultiGraph,
    m: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> MtcPartition:
    """Merging fixed point: start from singletons, keep replacing any family
    of parts whose union induces an m-tree-connected subgraph (scanned in
    increasing union-cardinality order) until no family merges."""
    if m < 1:
        raise PreconditionError("m must be positive")
    checker = _MaskChecker(g, m)
    parts = [1 << v for v in range(g.n)]
    spent = 0
    while len(parts) > 1:
        candidates = []
        for size in range(2, len(parts) + 1):
            for combo in combinations(range(len(parts)), size):
                union = 0
                for i in combo:
                    union |= parts[i]
                candidates.append((union.bit_count(), union, combo))
                spent += 1
                if spent > budgets.mtc_union_budget:
                    raise ScaleExceeded("mtc component merge budget exhausted")
        candidates.sort(key=lambda t: (t[0], t[1]))
        merged = False
        for _, union, combo in candidates:
            if checker.is_mtc(union):
                keep = [p for i, p in enumerate(parts) if i not in combo]
                keep.append(union)
                parts = keep
                merged = True
                break
        if not merged:
            break
    parts.sort()
    crossing = len(g.edges) - sum(g.edges_inside(p) for p in parts)
    omega = len(parts) - Fraction(crossing, m)
    return MtcPartition(tuple(parts), omega, m)


class _MaskChecker:
    """Memoized m-tree-connectivity of induced vertex masks (no 2^n tables)."""

    def __init__(self, g: MultiGraph, m: int):
        self.g = g
        self.m = m
        self._memo: dict[int, bool] = {}

    def is_mtc(self, mask: int) -> bool:
        got = self._memo.get(mask)
        if got is not None:
            return got
        g, m = self.g, self.m
        k = mask.bit_count()
        if k <= 1:
            res = True
        else:
            e = g.edges_inside(mask)
            if e < m * (k - 1):
                res = False
            elif k == 2:
                res = True
            elif m == 1:
                res = len(g.component_masks(mask)) == 1
            else:
                idx = {v: i for i, v in enumerate(bits(mask))}
                edge_iter = (
                    (eid, idx[u], idx[v])
                    for eid, (u, v) in enumerate(g.edges)
                    if (mask >> u) & 1 and (mask >> v) & 1
                )
                res = _pack_feasible(k, edge_iter, m) is not None
        self._memo[mask] = res
        return res


def omega_after_removal(
    g: MultiGraph,
    m: int,
    S,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Fraction:
    """Omega_m of G minus the vertex set S."""
    from .graphs import delete_set

    sub, _ = delete_set(g, S)
    return mtc_components(sub, m, budgets).omega_m


@dataclass(frozen=True)
class WorstOmegaReport:
    S: frozenset[int]
    value: Fraction                     # Omega_m(G-S)
    maximal_flag: bool                  # |S| maximal among the score maximizers
    component_audit: tuple[tuple[frozenset[int], str], ...]  # per component: "mtc" | "smalldeg" | "neither"

    def audit_ok(self) -> bool:
        return all(tag != "neither" for _, tag in self.component_audit)

    def to_json(self) -> dict:
        from .core import fmt_rational

        return {
            "S": sorted(self.S),
            "value": fmt_rational(self.value),
            "maximal": self.maximal_flag,
            "components": [[sorted(c), tag] for c, tag in self.component_audit],
        }


def worst_omega_set(
    g: MultiGraph,
    m: int,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> WorstOmegaReport:
    """Exhaustive max of Omega_m(G-S) - |S|/m, ties to the largest |S| and then
    the lexicographically first set; audits each component of G-S as
    m-tree-connected or max degree <= m."""
    if g.n > budgets.subset_n_cap:
        raise ScaleExceeded(f"worst_omega_set: n={g.n} exceeds cap {budgets.subset_n_cap}")
    index = MtcIndex(g, m, budgets)
    full = g.full_mask
    best_key = None
    best = None
    for s_mask in range(full + 1):
        w = full & ~s_mask
        num = index.omega_m_times_m(w)          # m * Omega_m
        size = s_mask.bit_count()
        key = (num - size, size, -s_mask)       # m*(Omega_m - |S|/m), then |S|
        if best_key is None or key > best_key:
            best_key = key
            best = (s_mask, num)
    s_mask, num = best
    audit = []
    for comp in g.component_masks(full & ~s_mask):
        if index.is_mtc(comp):
            tag = "mtc"
        elif all(g.within_degree(v, comp) <= m for v in bits(comp)):
            tag = "smalldeg"
        else:
            tag = "neither"
        audit.append((frozenset(bits(comp)), tag))
    return WorstOmegaReport(
        S=frozenset(bits(s_mask)),
        value=Fraction(num, m),
        maximal_flag=True,
        component_audit=tuple(audit),
    )


# ---------------------------------------------------------------------------
# Bounded-degree tree-connected factors (exhaustive searches)
# ---------------------------------------------------------------------------


def _factor_is_mtc(g: MultiGraph, edge_ids, m: int) -> bool:
    if g.n <= 1:
        return True
    edge_iter = ((eid, *g.edges[eid]) for eid in edge_ids)
    return _pack_feasible(g.n, edge_iter, m) is not None


def bounded_mtc_factor(
    g: MultiGraph,
    m: int,
    u: Optional[int] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[FactorCertificate]:
    """Spanning m-tree-connected factor with max degree <= 2m+1 (and degree at
    most m+1 at ``u`` when given); None only after exhausting the search.

    Any qualifying factor contains a union of m edge-disjoint spanning trees
    with exactly m(n-1) edges and no larger degrees, so the branch-and-bound
    only visits candidate sets of that exact size.
    """
    n = g.n
    if n == 0 or n == 1:
        return certificate_from_ids(g, [])
    need = m * (n - 1)
    edges = g.edges
    E = len(edges)
    if E < need:
        return None
    caps = [2 * m + 1] * n
    if u is not None:
        caps[u] = m + 1
    if any(d < m for d in g.deg):
        return None
    degs = [0] * n
    rem = list(g.deg)
    chosen: list[int] = []
    nodes_budget = budgets.search_budget
    visited = 0

    def dfs(i: int) -> Optional[list[int]]:
        nonlocal visited
        visited += 1
        if visited > nodes_budget:
            raise ScaleExceeded("bounded mtc factor search budget exhausted")
        if len(chosen) == need:
            return list(chosen) if _factor_is_mtc(g, chosen, m) else None
        if len(chosen) + (E - i) < need:
            return None
        if i == E:
            return None
        uu, vv = edges[i]
        rem[uu] -= 1
        rem[vv] -= 1
        got = None
        # take edge i
        if degs[uu] < caps[uu] and degs[vv] < caps[vv]:
            degs[uu] += 1
            degs[vv] += 1
            chosen.append(i)
            if degs[uu] + rem[uu] >= m and degs[vv] + rem[vv] >= m:
                got = dfs(i + 1)
            chosen.pop()
            degs[uu] -= 1
            degs[vv] -= 1
        # skip edge i
        if got is None and degs[uu] + rem[uu] >= m and degs[vv] + rem[vv] >= m:
            got = dfs(i + 1)
        rem[uu] += 1
        rem[vv] += 1
        return got

    found = dfs(0)
    return certificate_from_ids(g, found) if found is not None else None


def augment_factor(
    g: MultiGraph,
    factor: FactorCertificate,
    m: int,
    u: Optional[int] = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[FactorCertificate]:
    """Extend a factor F to an m-tree-connected factor H with d_H <= d_F + 1
    everywhere and d_H(u) = d_F(u); exhaustive over the candidate extensions.

    Stated for simple graphs: parallel edges are collapsed first.  The extra
    edges form a matching avoiding u, so the search walks matchings of the
    non-factor edges.
    """
    pair_to_id: dict[tuple[int, int], int] = {}
    for eid, pr in enumerate(g.edges):
        pair_to_id.setdefault(pr, eid)
    f_pairs = set()
    for eid in factor.edge_ids:
        pr = g.edges[eid]
        if pr in f_pairs:
            raise PreconditionError("factor must be simple for augmentation")
        f_pairs.add(pr)
    base_ids = [pair_to_id[pr] for pr in sorted(f_pairs)]
    candidates = [
        pair_to_id[pr]
        for pr in sorted(set(g.edges) - f_pairs)
        if u is None or (u not in pr)
    ]
    taken = [False] * g.n
    if u is not None:
        taken[u] = True
    extra: list[int] = []
    visited = 0
    budget = budgets.search_budget

    def dfs(i: int) -> Optional[list[int]]:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise ScaleExceeded("augmentation search budget exhausted")
        if _factor_is_mtc(g, base_ids + extra, m):
            return base_ids + list(extra)
        for j in range(i, len(candidates)):
            a, b = g.edges[candidates[j]]
            if taken[a] or taken[b]:
                continue
            taken[a] = taken[b] = True
            extra.append(candidates[j])
            got = dfs(j + 1)
            extra.pop()
            taken[a] = taken[b] = False
            if got is not None:
                return got
        return None

    found = dfs(0)
    return certificate_from_ids(g, found) if found is not None else None


# ---------------------------------------------------------------------------
# Spanning Eulerian subgraphs and connected {2,4}-factors
# ---------------------------------------------------------------------------


def cycle_space_dimension(g: MultiGraph) -> int:
    return len(g.edges) - g.n + len(g.component_masks())


def _tree_t_join(g: MultiGraph, tree_ids: list[int], odd_mask: int) -> list[int]:
    """The unique edge set of a spanning tree whose odd-degree set equals the
    prescribed (even-sized) vertex set: root the tree and push parity up."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid in tree_ids:
        a, b = g.edges[eid]
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    parent = [(-1, -1)] * g.n
    order = []
    seen = [False] * g.n
    stack = [0]
    seen[0] = True
    while stack:
        x = stack.pop()
        order.append(x)
        for y, eid in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = (x, eid)
                stack.append(y)
    need = [bool((odd_mask >> v) & 1) for v in range(g.n)]
    join = []
    for x in reversed(order):
        px, eid = parent[x]
        if px < 0:
            continue
        if need[x]:
            join.append(eid)
            need[px] = not need[px]
    if need[0]:
        raise FactorLabError("internal: odd set had odd size")
    return join


def spanning_eulerian(
    g: MultiGraph,
    mode: str = "construct",
    budgets: Budgets = DEFAULT_BUDGETS,
    max_degree: Optional[int] = None,
) -> Optional[FactorCertificate]:
    """Connected spanning subgraph with all degrees even (hence >= 2).

    construct: pack two spanning trees T1, T2; add to T1 the unique T2 edge
    set whose odd-degree set matches T1's odd vertices.  exhaustive: walk the
    whole cycle space (exactly the even subgraphs) and filter for spanning and
    connected; exhaustion certifies nonexistence.
    """
    if g.n <= 1:
        return None
    if mode == "construct":
        packing = tree_packing(g, 2)
        if isinstance(packing, PartitionCertificate):
            raise PreconditionError("construct mode requires a 2-tree-connected graph")
        t1, t2 = list(packing.trees[0]), list(packing.trees[1])
        odd_mask = 0
        degs = [0] * g.n
        for eid in t1:
            a, b = g.edges[eid]
            degs[a] += 1
            degs[b] += 1
        for v in range(g.n):
            if degs[v] % 2 == 1:
                odd_mask |= 1 << v
        join = _tree_t_join(g, t2, odd_mask)
        cert = certificate_from_ids(g, t1 + join)
        if any(d % 2 or d < 2 for d in cert.degree_audit):
            raise FactorLabError("internal: join construction broke parity")
        return cert
    if mode != "exhaustive":
        raise PreconditionError(f"unknown mode {mode!r}")

    comps = g.component_masks()
    if len(comps) != 1:
        return None
    dim = len(g.edges) - g.n + 1
    if dim > budgets.cycle_dim_cap:
        raise ScaleExceeded(f"cycle-space dimension {dim} exceeds cap {budgets.cycle_dim_cap}")
    # spanning tree via scan insertion
    part = list(range(g.n))

    def find(x):
        while part[x] != x:
            part[x] = part[part[x]]
            x = part[x]
        return x

    tree_ids = []
    non_tree = []
    for eid, (a, b) in enumerate(g.edges):
        ra, rb = find(a), find(b)
        if ra == rb:
            non_tree.append(eid)
        else:
            part[ra] = rb
            tree_ids.append(eid)
    # fundamental cycle of each non-tree edge, as an edge bitmask
    tadj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid in tree_ids:
        a, b = g.edges[eid]
        tadj[a].append((b, eid))
        tadj[b].append((a, eid))

    def tree_path_mask(a: int, b: int) -> int:
        prev = {a: (-1, -1)}
        dq = deque([a])
        while dq:
            x = dq.popleft()
            if x == b:
                break
            for y, eid in tadj[x]:
                if y not in prev:
                    prev[y] = (x, eid)
                    dq.append(y)
        mask = 0
        cur = b
        while cur != a:
            x0, e0 = prev[cur]
            mask |= 1 << e0
            cur = x0
        return mask

    cyc_masks = []
    for eid in non_tree:
        a, b = g.edges[eid]
        cyc_masks.append((1 << eid) | tree_path_mask(a, b))

    end_masks = [ (1 << u) | (1 << v) for u, v in g.edges ]
    full_v = g.full_mask
    current = 0
    for i in range(1, 1 << dim):
        flip = (i & -i).bit_length() - 1
        current ^= cyc_masks[flip]
        cand = _even_subgraph_ok(g, current, end_masks, full_v, max_degree)
        if cand is not None:
            return cand
    return None


def _even_subgraph_ok(g, edge_mask, end_masks, full_v, max_degree):
    covered = 0
    em = edge_mask
    while em:
        low = em & -em
        covered |= end_masks[low.bit_length() - 1]
        em ^= low
    if covered != full_v:
        return None
    ids = list(bits(edge_mask))
    degs = [0] * g.n
    adj = [0] * g.n
    for eid in ids:
        a, b = g.edges[eid]
        degs[a] += 1
        degs[b] += 1
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    if max_degree is not None and any(d > max_degree for d in degs):
        return None
    # connectivity over the chosen edges
    comp = 1
    frontier = 1
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj[low.bit_length() - 1]
            f ^= low
        frontier = grow & ~comp
        comp |= frontier
    if comp != full_v:
        return None
    return certificate_from_ids(g, ids)


def connected_24_factor(
    g: MultiGraph,
    mode: str = "construct",
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Optional[FactorCertificate]:
    """Connected spanning subgraph with every degree in {2, 4}.

    construct: 2-tree-connected factor with max degree <= 5, then a spanning
    Eulerian subgraph of it.  exhaustive: cycle-space search with a degree cap
    of 4 (complete; exhaustion certifies nonexistence).
    """
    if mode == "exhaustive":
        return spanning_eulerian(g, "exhaustive", budgets, max_degree=4)
    if mode != "construct":
        raise PreconditionError(f"unknown mode {mode!r}")
    h0 = bounded_mtc_factor(g, 2, None, budgets)
    if h0 is None:
        return None
    sub_ids = list(h0.edge_ids)
    sub = MultiGraph(g.n, [g.edges[eid] for eid in sub_ids])
    # sub.edges sorts the same multiset, so position k maps back to sub_ids[k]
    sorted_ids = sorted(sub_ids, key=lambda eid: g.edges[eid])
    euler = spanning_eulerian(sub, "construct", budgets)
    if euler is None:
        return None
    back = [sorted_ids[k] for k in euler.edge_ids]
    cert = certificate_from_ids(g, back)
    if any(d not in (2, 4) for d in cert.degree_audit):
        raise FactorLabError("internal: pipeline degrees escaped {2,4}")
    return cert
