"""Maximum-cardinality matching in general graphs: augmenting paths with
odd-cycle (blossom) contraction, O(V^3).  The engine behind the factor
finders' gadget reductions."""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .graphs import MultiGraph, bits


def maximum_matching_adj(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Return mate[] with mate[v] = partner of v or -1.

    ``adj`` is a simple adjacency-list view; parallel edges add nothing to a
    matching and should be collapsed by the caller.
    """
    mate = [-1] * n
    # Greedy seed keeps the number of augmentation phases small.
    for v in range(n):
        if mate[v] == -1:
            for u in adj[v]:
                if mate[u] == -1:
                    mate[v] = u
                    mate[u] = v
                    break

    parent = [-1] * n
    base = list(range(n))

    def find_common_ancestor(a: int, b: int) -> int:
        used_path = [False] * n
        while True:
            a = base[a]
            used_path[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if used_path[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, ancestor: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != ancestor:
            in_blossom[base[v]] = True
            in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def augment_from(root: int) -> bool:
        nonlocal parent, base
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    # Odd cycle: contract the blossom up to the common ancestor.
                    ancestor = find_common_ancestor(v, to)
                    in_blossom = [False] * n
                    mark_path(v, ancestor, to, in_blossom)
                    mark_path(to, ancestor, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = ancestor
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        # Augment along the alternating path ending here.
                        while to != -1:
                            prev = parent[to]
                            nxt = mate[prev]
                            mate[to] = prev
                            mate[prev] = to
                            to = nxt
                        return True
                    used[mate[to]] = True
                    queue.append(mate[to])
        return False

    for v in range(n):
        if mate[v] == -1:
            augment_from(v)
    return mate


def max_matching(g: MultiGraph) -> list[tuple[int, int]]:
    """Maximum-cardinality matching of a multigraph (parallel edges collapse)."""
    adj = [sorted(bits(g.adj[v])) for v in range(g.n)]
    mate = maximum_matching_adj(g.n, adj)
    return [(v, mate[v]) for v in range(g.n) if mate[v] > v]
