"""Immutable bitset-backed graphs plus oriented cycles and paths.

Vertices are dense integers 0..n-1 and every vertex set is a plain Python
int used as a bit vector (bit v set <=> vertex v present).  Python ints are
arbitrary precision, so the same representation covers n > 64 without a
separate chunked path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


class OutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class NotAdjacent(GraphError):
    pass


class Overlap(GraphError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_count(mask: int) -> int:
    return mask.bit_count()


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Undirected simple graph, immutable after construction."""

    __slots__ = ("n", "adj", "_edge_count")

    def __init__(self, n: int, adj: tuple[int, ...]):
        self.n = n
        self.adj = adj
        self._edge_count = sum(a.bit_count() for a in adj) // 2

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def m(self) -> int:
        return self._edge_count

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def is_complete(self) -> bool:
        return all(self.adj[v] == self.full_mask ^ (1 << v) for v in range(self.n))

    def restricted_neighborhood(self, s: int, h: int) -> int:
        """N_G(S) intersected with H, for vertex-set masks s and h."""
        nbrs = 0
        for v in bits(s):
            nbrs |= self.adj[v]
        return nbrs & h

    def non_neighborhood(self, s: int, h: int) -> int:
        """The part of h that no vertex of s sees."""
        return h & ~self.restricted_neighborhood(s, h)

    def components(self, subset: int | None = None) -> list[int]:
        """Connected components of the induced subgraph on subset (mask)."""
        remaining = self.full_mask if subset is None else subset
        comps = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= self.adj[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            remaining &= ~comp
        return comps

    def delete_vertex(self, x: int) -> "Graph":
        """Graph on n-1 vertices with x removed; vertices above x shift down."""
        low = (1 << x) - 1
        adj = []
        for v in range(self.n):
            if v == x:
                continue
            a = self.adj[v]
            adj.append((a & low) | ((a >> (x + 1)) << x))
        return Graph(self.n - 1, tuple(adj))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class OrientedPath:
    """A path as an explicit vertex sequence; consecutive pairs adjacent."""

    vertices: tuple[int, ...]

    @classmethod
    def checked(cls, g: Graph, vertices: Iterable[int]) -> "OrientedPath":
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            dup = next(v for v in vs if vs.count(v) > 1)
            raise Overlap(f"repeated vertex {dup}")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise NotAdjacent(f"{a} and {b} are not adjacent")
        return cls(vs)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def reversed(self) -> "OrientedPath":
        return OrientedPath(self.vertices[::-1])

    def __len__(self) -> int:
        return len(self.vertices)


class OrientedCycle:
    """Cycle with a fixed orientation given by its vertex sequence."""

    __slots__ = ("vertices", "_succ", "_pred", "vertex_mask")

    def __init__(self, vertices: tuple[int, ...]):
        if len(vertices) < 3:
            raise GraphError(f"cycle needs >= 3 vertices, got {len(vertices)}")
        if len(set(vertices)) != len(vertices):
            dup = next(v for v in vertices if vertices.count(v) > 1)
            raise Overlap(f"repeated vertex {dup}")
        self.vertices = vertices
        self._succ = {}
        self._pred = {}
        for i, v in enumerate(vertices):
            w = vertices[(i + 1) % len(vertices)]
            self._succ[v] = w
            self._pred[w] = v
        self.vertex_mask = mask_of(vertices)

    @classmethod
    def checked(cls, g: Graph, vertices: Iterable[int]) -> "OrientedCycle":
        c = cls(tuple(vertices))
        vs = c.vertices
        for i, v in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            if not g.has_edge(v, w):
                raise NotAdjacent(f"{v} and {w} are not adjacent")
        return c

    def succ(self, v: int) -> int:
        return self._succ[v]

    def pred(self, v: int) -> int:
        return self._pred[v]

    def __contains__(self, v: int) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedCycle):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def canonical(self) -> tuple[int, ...]:
        """Rotation starting at the minimum vertex (orientation preserved)."""
        i = self.vertices.index(min(self.vertices))
        return self.vertices[i:] + self.vertices[:i]

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle(self.vertices[::-1])

    def forward_path(self, u: int, v: int) -> OrientedPath:
        """The u -> v path along the orientation."""
        seq = [u]
        w = u
        while w != v:
            w = self._succ[w]
            seq.append(w)
        return OrientedPath(tuple(seq))

    def backward_path(self, u: int, v: int) -> OrientedPath:
        """The u -> v path against the orientation."""
        seq = [u]
        w = u
        while w != v:
            w = self._pred[w]
            seq.append(w)
        return OrientedPath(tuple(seq))

    def __repr__(self) -> str:
        return f"OrientedCycle{self.vertices}"


def splice_cycle(g: Graph, segments: list[OrientedPath]) -> OrientedCycle:
    """Join vertex-disjoint paths into one cycle.

    The last vertex of each segment must be adjacent to the first vertex of
    the next (cyclically).
    """
    seen = 0
    seq: list[int] = []
    for seg in segments:
        if seen & mask_of(seg.vertices):
            dup = next(v for v in seg.vertices if seen >> v & 1)
            raise Overlap(f"repeated vertex {dup}")
        seen |= mask_of(seg.vertices)
        seq.extend(seg.vertices)
    for i, seg in enumerate(segments):
        nxt = segments[(i + 1) % len(segments)]
        if not g.has_edge(seg.end, nxt.start):
            raise NotAdjacent(f"junction {seg.end}-{nxt.start} is not an edge")
    return OrientedCycle.checked(g, seq)


def parse_graph(text: str) -> Graph:
    """Parse the plain-text format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in text.splitlines()]
    header_idx = None
    for i, ln in enumerate(lines):
        if ln.strip():
            header_idx = i
            break
    if header_idx is None:
        raise GraphError("empty graph file")
    parts = lines[header_idx].split()
    if len(parts) != 2:
        raise GraphError(f"line {header_idx + 1}: expected 'n m'")
    n, m = int(parts[0]), int(parts[1])
    edges = []
    count = 0
    for i in range(header_idx + 1, len(lines)):
        ln = lines[i].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {i + 1}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
        count += 1
        if count == m:
            break
    if count != m:
        raise GraphError(f"expected {m} edges, found {count}")
    return Graph.from_edge_list(n, edges)


def write_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    for u, v in sorted(g.edges()):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
