"""Deliberately naive reference implementations, kept independent of the
library's bitmask machinery: plain sets, plain BFS, full enumerations."""

from fractions import Fraction
from itertools import combinations


def components_of(n, edges, removed=frozenset()):
    alive = [v for v in range(n) if v not in removed]
    adj = {v: set() for v in alive}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].add(v)
            adj[v].add(u)
    seen = set()
    comps = []
    for v in alive:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def brute_toughness(n, edges):
    """min |S|/omega(G-S) over omega >= 2, or None when no cut qualifies."""
    best = None
    for k in range(n + 1):
        for S in combinations(range(n), k):
            comps = components_of(n, edges, frozenset(S))
            if len(comps) >= 2:
                ratio = Fraction(k, len(comps))
                if best is None or ratio < best:
                    best = ratio
    return best


def brute_iso_toughness(n, edges):
    """min |S|/iso(G-S) over iso >= 1, or None."""
    best = None
    for k in range(n + 1):
        for S in combinations(range(n), k):
            comps = components_of(n, edges, frozenset(S))
            iso = sum(1 for c in comps if len(c) == 1)
            if iso >= 1:
                ratio = Fraction(k, iso)
                if best is None or ratio < best:
                    best = ratio
    return best


def brute_check_iso_tough(n, edges, t_values):
    """Direct 2^n check of: sum of t over isolated vertices of G-S <= |S|."""
    for k in range(n + 1):
        for S in combinations(range(n), k):
            comps = components_of(n, edges, frozenset(S))
            total = sum((t_values[next(iter(c))] for c in comps if len(c) == 1), Fraction(0))
            if total > k:
                return False
    return True


def brute_max_matching(n, edges):
    best = 0

    def rec(i, used, cnt):
        nonlocal best
        best = max(best, cnt)
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                rec(j + 1, used | {u, v}, cnt + 1)

    rec(0, set(), 0)
    return best


def brute_independence_number(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = 0
    for k in range(n, 0, -1):
        for S in combinations(range(n), k):
            ss = set(S)
            if all(not (adj[v] & ss) for v in S):
                return k
    return best


def brute_near_factor_exists(n, edges, f_values):
    """Spanning subgraph with degrees f except at most one vertex off by one."""
    E = len(edges)
    for mask in range(1 << E):
        degs = [0] * n
        for eid in range(E):
            if (mask >> eid) & 1:
                u, v = edges[eid]
                degs[u] += 1
                degs[v] += 1
        off = [v for v in range(n) if degs[v] != f_values[v]]
        if not off:
            return True
        if len(off) == 1 and abs(degs[off[0]] - f_values[off[0]]) == 1:
            return True
    return False


def brute_gf_factor_exists(n, edges, g_values, f_values):
    E = len(edges)
    for mask in range(1 << E):
        degs = [0] * n
        for eid in range(E):
            if (mask >> eid) & 1:
                u, v = edges[eid]
                degs[u] += 1
                degs[v] += 1
        if all(g_values[v] <= degs[v] <= f_values[v] for v in range(n)):
            return True
    return False


def brute_spanning_trees(n, edges):
    """All spanning trees as edge-id tuples (tiny graphs only)."""
    from itertools import combinations as comb

    out = []
    if n <= 1:
        return [tuple()]
    for ids in comb(range(len(edges)), n - 1):
        chosen = [edges[i] for i in ids]
        if len(components_of(n, chosen)) == 1:
            out.append(ids)
    return out


def _set_partitions(items):
    """All partitions of a list (restricted-growth enumeration)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_tree_packing_feasible(n, edges, m):
    """Tutte/Nash-Williams: m edge-disjoint spanning trees exist iff every
    partition P of the vertices has at least m(|P|-1) crossing edges."""
    if n <= 1:
        return True
    for part in _set_partitions(list(range(n))):
        if len(part) < 2:
            continue
        where = {}
        for i, block in enumerate(part):
            for v in block:
                where[v] = i
        crossing = sum(1 for u, v in edges if where[u] != where[v])
        if crossing < m * (len(part) - 1):
            return False
    return True
