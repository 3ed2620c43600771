"""Loopless multigraphs over dense vertex indices, with component analytics.

The representation is built for exhaustive subset sweeps: every vertex set is
a bitmask, adjacency is a tuple of neighbor bitmasks, and multiplicities live
in per-vertex dicts.  Graphs are immutable after construction and safe to
share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import FormatError, PreconditionError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int):
    """Iterate set-bit indices of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class MultiGraph:
    """Loopless multigraph: ``n`` vertices ``0..n-1`` plus an edge multiset.

    Edges are stored sorted (canonical equality/hashing); parallel copies are
    separate entries.  ``labels`` carries optional per-vertex annotations such
    as blowup provenance.
    """

    __slots__ = ("n", "edges", "labels", "adj", "deg", "mult", "simple", "full_mask", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Optional[dict] = None):
        if n < 0:
            raise FormatError("vertex count must be nonnegative")
        norm = []
        for u, v in edges:
            if u == v:
                raise FormatError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge ({u},{v}) out of range for n={n}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        self.labels = labels
        adj = [0] * n
        deg = [0] * n
        mult: list[dict[int, int]] = [dict() for _ in range(n)]
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            mult[u][v] = mult[u].get(v, 0) + 1
            mult[v][u] = mult[v].get(u, 0) + 1
        self.adj = tuple(adj)
        self.deg = tuple(deg)
        self.mult = tuple(mult)
        self.simple = all(c == 1 for row in mult for c in row.values())
        self.full_mask = (1 << n) - 1
        self._hash = hash((n, self.edges))

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, MultiGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MultiGraph(n={self.n}, m={len(self.edges)})"

    # -- basic queries ----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.deg[v]

    def max_degree(self) -> int:
        return max(self.deg, default=0)

    def multiplicity(self, u: int, v: int) -> int:
        return self.mult[u].get(v, 0)

    def edges_inside(self, mask: int) -> int:
        """Number of edge slots with both ends in ``mask``."""
        count = 0
        for u, v in self.edges:
            if (mask >> u) & 1 and (mask >> v) & 1:
                count += 1
        return count

    def crossing_count(self, part_masks: Sequence[int]) -> int:
        """Edges joining different parts of a partition (given as masks)."""
        inside = sum(self.edges_inside(p) for p in part_masks)
        covered = 0
        for p in part_masks:
            covered |= p
        return self.edges_inside(covered) - inside

    def neighborhood_mask(self, mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    # -- components -------------------------------------------------------

    def component_masks(self, keep: Optional[int] = None) -> list[int]:
        """Connected components of the induced subgraph on ``keep`` (a mask)."""
        keep = self.full_mask if keep is None else keep
        adj = self.adj
        comps = []
        pool = keep
        while pool:
            seed = pool & -pool
            comp = seed
            frontier = seed
            while frontier:
                grow = 0
                f = frontier
                while f:
                    low = f & -f
                    grow |= adj[low.bit_length() - 1]
                    f ^= low
                frontier = grow & keep & ~comp
                comp |= frontier
            comps.append(comp)
            pool &= ~comp
        return comps

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(self.component_masks()) == 1

    def within_degree(self, v: int, mask: int) -> int:
        """Degree of v counting only edge slots into ``mask``."""
        row = self.mult[v]
        total = 0
        for u in bits(self.adj[v] & mask):
            total += row[u]
        return total


@dataclass(frozen=True)
class VertexFn:
    """Per-vertex exact rationals; integer contexts reject non-integers."""

    values: tuple[Fraction, ...]

    @classmethod
    def constant(cls, n: int, value) -> "VertexFn":
        return cls(tuple([Fraction(value)] * n))

    @classmethod
    def of(cls, values: Iterable) -> "VertexFn":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_lines(cls, text: str, n: Optional[int] = None) -> "VertexFn":
        try:
            vals = [Fraction(tok) for tok in text.split()]
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad vertex-function entry: {exc}") from exc
        if n is not None and len(vals) != n:
            raise FormatError(f"expected {n} vertex values, got {len(vals)}")
        return cls(tuple(vals))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def is_integer_valued(self) -> bool:
        return all(q.denominator == 1 for q in self.values)

    def as_ints(self) -> tuple[int, ...]:
        if not self.is_integer_valued():
            raise PreconditionError("integer-valued vertex function required")
        return tuple(int(q) for q in self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def mask_sum(self, mask: int) -> Fraction:
        return sum((self.values[v] for v in bits(mask)), Fraction(0))


@dataclass(frozen=True)
class ComponentStats:
    """Components of G minus an optional removal set B, with star analytics.

    A component is a star iff at most one of its vertices has within-component
    degree greater than one; singletons and single-edge components are stars.
    Admissible centers: a singleton is its own center, a single-edge star has
    both endpoints, a larger star has its unique hub.
    """

    parts: tuple[int, ...]            # component masks
    omega: int
    iso: int
    odd: int
    stars: tuple[tuple[int, int], ...]  # (component mask, admissible-center mask)
    boundary: tuple[int, ...]         # d_G(C, B) per component, multiplicity-counted


def _star_centers(g: MultiGraph, comp: int) -> int:
    """Admissible-center mask if ``comp`` is a star component, else 0."""
    size = comp.bit_count()
    if size == 1:
        return comp
    heavy = 0
    heavy_count = 0
    for v in bits(comp):
        if g.within_degree(v, comp) > 1:
            heavy |= 1 << v
            heavy_count += 1
            if heavy_count > 1:
                return 0
    if heavy_count == 0:
        # connected, no vertex of degree > 1: a single edge; both ends qualify
        return comp
    return heavy


def components(g: MultiGraph, B: Optional[Iterable[int]] = None) -> ComponentStats:
    """Full component statistics of ``g`` minus ``B`` with boundary counts to B."""
    b_mask = mask_of(B) if B is not None else 0
    keep = g.full_mask & ~b_mask
    parts = g.component_masks(keep)
    iso = 0
    odd = 0
    stars = []
    boundary = []
    for comp in parts:
        size = comp.bit_count()
        if size == 1:
            iso += 1
        if size % 2 == 1:
            odd += 1
        centers = _star_centers(g, comp)
        if centers:
            stars.append((comp, centers))
        boundary.append(sum(g.within_degree(v, b_mask) for v in bits(comp)))
    return ComponentStats(
        parts=tuple(parts),
        omega=len(parts),
        iso=iso,
        odd=odd,
        stars=tuple(stars),
        boundary=tuple(boundary),
    )


def delete_set(g: MultiGraph, S: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """Induced subgraph on V minus S plus the old->new relabeling map."""
    s_mask = mask_of(S)
    survivors = [v for v in range(g.n) if not (s_mask >> v) & 1]
    relabel = {old: new for new, old in enumerate(survivors)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if not ((s_mask >> u) & 1 or (s_mask >> v) & 1)
    ]
    return MultiGraph(len(survivors), edges), relabel


def induced(g: MultiGraph, S: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """Induced subgraph on S plus the old->new relabeling map."""
    s_mask = mask_of(S)
    complement = [v for v in range(g.n) if not (s_mask >> v) & 1]
    return delete_set(g, complement)


# -- serialization ---------------------------------------------------------

_G6_MAX = 258047


def parse_graph(text: str, format: str) -> MultiGraph:
    """Parse graph6 (simple graphs) or edgelist text (may carry multiplicity)."""
    if format == "graph6":
        return _parse_graph6(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise FormatError(f"unknown graph format {format!r}")


def emit_graph(g: MultiGraph, format: str) -> str:
    """Inverse of parse_graph; graph6 is refused for multigraphs."""
    if format == "graph6":
        if not g.simple:
            raise FormatError("graph6 cannot encode multigraphs")
        return _emit_graph6(g)
    if format == "edgelist":
        lines = [f"{g.n} {len(g.edges)}"]
        lines.extend(f"{u} {v}" for u, v in g.edges)
        return "\n".join(lines) + "\n"
    raise FormatError(f"unknown graph format {format!r}")


def _parse_edgelist(text: str) -> MultiGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty edgelist")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"edgelist header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError(f"bad edgelist header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        edges.append((u, v))
    return MultiGraph(n, edges)


def _g6_decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise FormatError("graph6 size header too large or truncated")
        n = 0
        for b in data[1:4]:
            if not 63 <= b <= 126:
                raise FormatError("invalid graph6 size byte")
            n = (n << 6) | (b - 63)
        return n, 4
    b = data[0]
    if not 63 <= b <= 126:
        raise FormatError("invalid graph6 header byte")
    return b - 63, 1


def _parse_graph6(text: str) -> MultiGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    data = s.encode("ascii", errors="strict") if s.isascii() else None
    if data is None:
        raise FormatError("graph6 must be ASCII")
    n, ofs = _g6_decode_size(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[ofs:]
    if len(body) != need:
        raise FormatError(f"graph6 body length {len(body)}, expected {need}")
    bits_acc = 0
    bitbuf = []
    for b in body:
        if not 63 <= b <= 126:
            raise FormatError("invalid graph6 data byte")
        bits_acc = b - 63
        for k in range(5, -1, -1):
            bitbuf.append((bits_acc >> k) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bitbuf[idx]:
                edges.append((i, j))
            idx += 1
    return MultiGraph(n, edges)


def _emit_graph6(g: MultiGraph) -> str:
    n = g.n
    if n > _G6_MAX:
        raise FormatError(f"graph6 supports at most {_G6_MAX} vertices here")
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    else:
        out.append(126)
        out.append(((n >> 12) & 63) + 63)
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    bitbuf = []
    for j in range(1, n):
        for i in range(j):
            bitbuf.append(1 if (g.adj[i] >> j) & 1 else 0)
    while len(bitbuf) % 6:
        bitbuf.append(0)
    for k in range(0, len(bitbuf), 6):
        val = 0
        for bit in bitbuf[k:k + 6]:
            val = (val << 1) | bit
        out.append(val + 63)
    return out.decode("ascii")
