"""Named graphs, clique blowups, the blowup lower-bound family, and seeded
random corpora.

The connected-graph enumerator grows graphs one vertex at a time and
deduplicates through a small individualization-refinement canonical form, so
corpora are exact (one representative per isomorphism class) up to 8 vertices.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .core import FormatError, PreconditionError
from .graphs import MultiGraph, bits, parse_graph


def petersen() -> MultiGraph:
    """The Petersen graph: outer 5-cycle, inner pentagram, five spokes."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return MultiGraph(10, outer + inner + spokes)


def complete(k: int) -> MultiGraph:
    return MultiGraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def cycle(k: int) -> MultiGraph:
    if k < 3:
        raise PreconditionError("cycles need at least 3 vertices")
    return MultiGraph(k, [(i, (i + 1) % k) for i in range(k)])


def path(k: int) -> MultiGraph:
    return MultiGraph(k, [(i, i + 1) for i in range(k - 1)])


def star(leaves: int) -> MultiGraph:
    return MultiGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def named_graph(name: str) -> MultiGraph:
    name = name.strip().lower()
    if name == "petersen":
        return petersen()
    m = re.fullmatch(r"k(\d+)", name)
    if m:
        return complete(int(m.group(1)))
    m = re.fullmatch(r"c(\d+)", name)
    if m:
        return cycle(int(m.group(1)))
    m = re.fullmatch(r"p(\d+)", name)
    if m:
        return path(int(m.group(1)))
    m = re.fullmatch(r"k1,(\d+)", name)
    if m:
        return star(int(m.group(1)))
    raise FormatError(f"unknown named graph {name!r}")


# ---------------------------------------------------------------------------
# Clique blowups and the lower-bound family
# ---------------------------------------------------------------------------


def clique_blowup(g: MultiGraph, h: int) -> tuple[MultiGraph, tuple[tuple[int, ...], ...]]:
    """Replace every vertex of a simple 3-regular graph by K_{h+1}; each
    original edge becomes one edge between distinct clique vertices of its two
    endpoints (lexicographic attachment), so no clique vertex receives more
    than one external edge.  Needs h >= 2 so the three edge ends at a vertex
    land on three distinct clique vertices."""
    if h < 2:
        raise PreconditionError("blowup needs h >= 2")
    if not g.simple or any(d != 3 for d in g.deg):
        raise PreconditionError("blowup input must be simple and 3-regular")
    k = h + 1
    clique_map = tuple(tuple(range(v * k, (v + 1) * k)) for v in range(g.n))
    edges: list[tuple[int, int]] = []
    for v in range(g.n):
        c = clique_map[v]
        edges.extend((c[i], c[j]) for i in range(k) for j in range(i + 1, k))
    slot = [0] * g.n
    for u, v in g.edges:
        edges.append((clique_map[u][slot[u]], clique_map[v][slot[v]]))
        slot[u] += 1
        slot[v] += 1
    return MultiGraph(g.n * k, edges), clique_map


@dataclass(frozen=True)
class BlowupSpec:
    """Provenance of a lower-bound family graph: p = 2nr+1 blowup copies of
    the Petersen graph (cliques of size h+1), a designated clique U_i per
    copy, pairwise complete joins between the U_i, and an apex K_n joined to
    every copy vertex."""

    r: int
    h: int
    n: int
    p: int
    apex: tuple[int, ...]
    clique_map: tuple[tuple[tuple[int, ...], ...], ...]   # [copy][base vertex] -> vertices
    u_sets: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "h": self.h,
            "n": self.n,
            "p": self.p,
            "apex": list(self.apex),
            "clique_map": [[list(c) for c in copy] for copy in self.clique_map],
            "u_sets": [list(u) for u in self.u_sets],
        }


def lowerbound_family(r: int, h: int, n: int) -> tuple[MultiGraph, BlowupSpec]:
    """Assemble the 5/3-toughness lower-bound family member for (r, h, n)."""
    if r < 1 or n < 1:
        raise PreconditionError("r and n must be positive")
    if h < 2:
        raise PreconditionError("needs h >= 2")
    p = 2 * n * r + 1
    base = petersen()
    blown, cmap = clique_blowup(base, h)
    copy_size = blown.n
    total = n + p * copy_size
    edges: list[tuple[int, int]] = []
    apex = tuple(range(n))
    edges.extend((i, j) for i in range(n) for j in range(i + 1, n))
    clique_map = []
    u_sets = []
    for i in range(p):
        base_ofs = n + i * copy_size
        edges.extend((u + base_ofs, v + base_ofs) for u, v in blown.edges)
        clique_map.append(tuple(tuple(x + base_ofs for x in c) for c in cmap))
        u_sets.append(tuple(x + base_ofs for x in cmap[0]))
    for i in range(p):
        for j in range(i + 1, p):
            edges.extend((a, b) for a in u_sets[i] for b in u_sets[j])
    for a in apex:
        edges.extend((a, v) for v in range(n, total))
    labels = {a: "apex" for a in apex}
    for i in range(p):
        for v in range(n + i * copy_size, n + (i + 1) * copy_size):
            labels[v] = f"copy{i}"
        for v in u_sets[i]:
            labels[v] = f"copy{i}:U"
    spec = BlowupSpec(r, h, n, p, apex, tuple(clique_map), tuple(u_sets))
    return MultiGraph(total, edges, labels=labels), spec


def verify_family_metadata(g: MultiGraph, spec: BlowupSpec) -> list[str]:
    """Check every closed-form count the construction promises; [] when clean."""
    problems = []
    k = spec.h + 1
    p, n = spec.p, spec.n
    if p != 2 * n * spec.r + 1:
        problems.append(f"p={p} but 2nr+1={2 * n * spec.r + 1}")
    expect_v = n + 10 * k * p
    if g.n != expect_v:
        problems.append(f"|V|={g.n}, expected {expect_v}")
    expect_e = (
        n * (n - 1) // 2
        + n * 10 * k * p
        + p * (10 * (k * (k - 1) // 2) + 15)
        + (p * (p - 1) // 2) * k * k
    )
    if len(g.edges) != expect_e:
        problems.append(f"|E|={len(g.edges)}, expected {expect_e}")
    for a in spec.apex:
        if g.deg[a] != g.n - 1:
            problems.append(f"apex {a} has degree {g.deg[a]}, expected {g.n - 1}")
    u_all = {v for u in spec.u_sets for v in u}
    for i, copy in enumerate(spec.clique_map):
        attach = 0
        for base_v, clique in enumerate(copy):
            if len(clique) != k:
                problems.append(f"copy {i} clique {base_v} has size {len(clique)}")
            for v in clique:
                expect = spec.h + n + (k * (p - 1) if v in u_all else 0)
                d = g.deg[v] - expect
                if d not in (0, 1):
                    problems.append(f"vertex {v} degree {g.deg[v]} off expectation {expect}")
                attach += d
        if attach != 30:
            problems.append(f"copy {i} has {attach} attachment ends, expected 30")
    return problems


# ---------------------------------------------------------------------------
# Canonical forms and exhaustive corpora
# ---------------------------------------------------------------------------


def _refine(adj: tuple[int, ...], colors: tuple[int, ...]) -> tuple[int, ...]:
    n = len(adj)
    while True:
        sigs = []
        for v in range(n):
            sigs.append((colors[v], tuple(sorted(colors[u] for u in bits(adj[v])))))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = tuple(ranking[s] for s in sigs)
        if new == colors:
            return colors
        colors = new


def _canon_search(n: int, adj: tuple[int, ...], colors: tuple[int, ...]):
    colors = _refine(adj, colors)
    cell = None
    for c in sorted(set(colors)):
        members = [v for v in range(n) if colors[v] == c]
        if len(members) > 1:
            cell = members
            break
    if cell is None:
        pos = colors  # discrete: color ranks are the positions
        out = []
        for u in range(n):
            for v in bits(adj[u]):
                if v > u:
                    a, b = pos[u], pos[v]
                    out.append((a, b) if a < b else (b, a))
        return tuple(sorted(out))
    best = None
    for v in cell:
        trial = list(colors)
        trial[v] = -1
        key = _canon_search(n, adj, tuple(trial))
        if best is None or key < best:
            best = key
    return best


def canonical_edges(g: MultiGraph) -> tuple[tuple[int, int], ...]:
    """Isomorphism-invariant edge tuple of a simple graph (small n only)."""
    if not g.simple:
        raise PreconditionError("canonical form implemented for simple graphs")
    n = g.n
    m = len(g.edges)
    if m == 0 or m == n * (n - 1) // 2:
        return g.edges  # empty and complete graphs are already canonical
    return _canon_search(n, g.adj, tuple([0] * n))


@lru_cache(maxsize=None)
def _graphs_exactly(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Canonical edge tuples of all simple graphs on exactly n vertices."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if n == 1:
        return (tuple(),)
    out = set()
    for edges in _graphs_exactly(n - 1):
        for attach in range(1 << (n - 1)):
            new_edges = list(edges) + [(i, n - 1) for i in bits(attach)]
            out.add(canonical_edges(MultiGraph(n, new_edges)))
    return tuple(sorted(out))


def all_connected(n_max: int) -> list[MultiGraph]:
    """One representative per isomorphism class of connected simple graphs on
    1..n_max vertices, in a deterministic order."""
    if n_max > 8:
        raise PreconditionError("exhaustive enumeration is supported up to 8 vertices")
    graphs = []
    for n in range(1, n_max + 1):
        for edges in _graphs_exactly(n):
            g = MultiGraph(n, edges)
            if g.is_connected():
                graphs.append(g)
    return graphs


# ---------------------------------------------------------------------------
# Seeded random corpora
# ---------------------------------------------------------------------------


def gnp(n: int, prob: Fraction, count: int, seed: int) -> Iterator[MultiGraph]:
    """Erdos-Renyi G(n, p) stream, deterministic for a fixed seed."""
    rng = random.Random(f"gnp:{n}:{prob}:{seed}")
    pf = float(prob)
    for _ in range(count):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < pf
        ]
        yield MultiGraph(n, edges)


def random_regular(n: int, d: int, count: int, seed: int) -> Iterator[MultiGraph]:
    """Random simple d-regular graphs by pairing stubs and rejecting clashes."""
    if (n * d) % 2 == 1:
        raise PreconditionError(f"no {d}-regular graph on {n} vertices: nd is odd")
    if d >= n:
        raise PreconditionError("regular degree must be below n")
    rng = random.Random(f"regular:{n}:{d}:{seed}")
    produced = 0
    while produced < count:
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        seen = set()
        ok = True
        for u, v in pairs:
            if u == v or (min(u, v), max(u, v)) in seen:
                ok = False
                break
            seen.add((min(u, v), max(u, v)))
        if ok:
            produced += 1
            yield MultiGraph(n, pairs)


def random_multigraph(rng: random.Random, max_n: int = 8, max_extra: int = 3) -> MultiGraph:
    """A small random multigraph (used by self-audit corpora)."""
    n = rng.randint(1, max_n)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.45:
                edges.append((u, v))
                for _ in range(max_extra):
                    if rng.random() < 0.15:
                        edges.append((u, v))
    return MultiGraph(n, edges)


def corpus(spec: str, seed: Optional[int] = None) -> Iterator[tuple[str, MultiGraph]]:
    """Materialize a corpus spec into (graph_id, graph) pairs.

    Grammar: all_connected:N | gnp:N:P:COUNT | regular:N:D:COUNT |
    named:NAME[,NAME...] | g6file:PATH
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    if kind == "all_connected":
        n_max = int(rest)
        for i, g in enumerate(all_connected(n_max)):
            yield f"all_connected:{n_max}#{i}", g
        return
    if kind == "gnp":
        parts = rest.split(":")
        if len(parts) != 3:
            raise FormatError("gnp spec is gnp:N:P:COUNT")
        try:
            n, prob, count = int(parts[0]), Fraction(parts[1]), int(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad gnp spec {spec!r}") from exc
        if seed is None:
            raise PreconditionError("random corpora require a seed")
        for i, g in enumerate(gnp(n, prob, count, seed)):
            yield f"gnp:{n}:{prob}:{seed}#{i}", g
        return
    if kind == "regular":
        parts = rest.split(":")
        if len(parts) != 3:
            raise FormatError("regular spec is regular:N:D:COUNT")
        try:
            n, d, count = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise FormatError(f"bad regular spec {spec!r}") from exc
        if seed is None:
            raise PreconditionError("random corpora require a seed")
        for i, g in enumerate(random_regular(n, d, count, seed)):
            yield f"regular:{n}:{d}:{seed}#{i}", g
        return
    if kind == "named":
        for name in rest.split(","):
            yield name.strip(), named_graph(name)
        return
    if kind == "g6file":
        with open(rest) as fh:
            for i, line in enumerate(fh):
                line = line.strip()
                if line:
                    yield f"{rest}#{i}", parse_graph(line, "graph6")
        return
    raise FormatError(f"unknown corpus spec {spec!r}")
