"""2-factors: the degree-constrained-subgraph reduction to perfect matching,
plus the vertex-reinsertion move on a factor of G - x.

The reduction replaces each vertex v of degree d by d edge-slot vertices and
d - 2 core vertices joined completely to the slots; an original edge uv
becomes a slot-slot edge.  Perfect matchings of the gadget biject with
2-factors of the original graph: each core consumes one slot, leaving
exactly two slots per vertex to be matched across original edges.
"""

from __future__ import annotations

from .graph import Graph, OrientedCycle, bits, mask_of


class InvalidFactor(ValueError):
    pass


class TwoFactor:
    """Vertex-disjoint oriented cycles covering V(G), or V(G) minus one
    vertex when ``omit`` is given (a 2-factor of G - omit kept in G's
    labels)."""

    __slots__ = ("owner", "cycles", "omit", "_cycle_of")

    def __init__(self, owner: Graph, cycles: list[OrientedCycle], omit: int | None = None):
        self.owner = owner
        self.cycles = list(cycles)
        self.omit = omit
        self._cycle_of = {}
        for c in self.cycles:
            for v in c:
                self._cycle_of[v] = c

    @property
    def omega(self) -> int:
        return len(self.cycles)

    def cycle_of(self, v: int) -> OrientedCycle:
        return self._cycle_of[v]

    def succ(self, v: int) -> int:
        return self._cycle_of[v].succ(v)

    def pred(self, v: int) -> int:
        return self._cycle_of[v].pred(v)

    def covered_mask(self) -> int:
        m = 0
        for c in self.cycles:
            m |= c.vertex_mask
        return m

    def check(self) -> str | None:
        """Return a violation description, or None when valid."""
        g = self.owner
        expected = g.full_mask
        if self.omit is not None:
            expected &= ~(1 << self.omit)
        seen = 0
        for c in self.cycles:
            if len(c) < 3:
                return f"cycle {c.vertices} shorter than 3"
            if seen & c.vertex_mask:
                v = next(v for v in c if seen >> v & 1)
                return f"vertex {v} on two cycles"
            seen |= c.vertex_mask
            for v in c:
                if not g.has_edge(v, c.succ(v)):
                    return f"factor edge {v}-{c.succ(v)} missing in graph"
        if seen != expected:
            missing = expected & ~seen
            if missing:
                v = next(bits(missing))
                return f"vertex {v} uncovered"
            v = next(bits(seen & ~expected))
            return f"vertex {v} should not be covered"
        return None

    def require_valid(self) -> None:
        reason = self.check()
        if reason is not None:
            raise InvalidFactor(reason)

    def __repr__(self) -> str:
        tail = f", omit={self.omit}" if self.omit is not None else ""
        return f"TwoFactor(omega={self.omega}{tail})"


def _max_matching(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum cardinality matching by augmenting paths with blossom
    contraction.  Deterministic: free vertices and neighbors are scanned in
    ascending index order.  Returns match[v] = partner or -1.
    """
    match = [-1] * n
    parent = [0] * n
    base = [0] * n
    q: list[int] = []
    used = [False] * n
    blossom = [False] * n

    def lca(a: int, b: int) -> int:
        path = [False] * n
        while True:
            a = base[a]
            path[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if path[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        nonlocal q
        for i in range(n):
            used[i] = False
            parent[i] = -1
            base[i] = i
        used[root] = True
        q = [root]
        qi = 0
        while qi < len(q):
            v = q[qi]
            qi += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, cur, to)
                    mark_path(to, cur, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    # greedy seed: pairs off most vertices so only a few augmentations run
    for v in range(n):
        if match[v] == -1:
            for to in adj[v]:
                if match[to] == -1:
                    match[v] = to
                    match[to] = v
                    break

    for v in range(n):
        if match[v] == -1:
            u = find_path(v)
            while u != -1:
                pv = parent[u]
                ppv = match[pv]
                match[u] = pv
                match[pv] = u
                u = ppv
    return match


def _orient_cycles(g: Graph, factor_adj: list[list[int]]) -> list[OrientedCycle]:
    """Assemble cycles from a 2-regular edge selection.

    Each cycle starts at its minimum vertex and runs toward that vertex's
    smaller-indexed factor-neighbor.
    """
    seen = [False] * g.n
    cycles = []
    for start in range(g.n):
        if seen[start] or not factor_adj[start]:
            continue
        seq = [start]
        seen[start] = True
        prev = start
        cur = min(factor_adj[start])
        while cur != start:
            seq.append(cur)
            seen[cur] = True
            a, b = factor_adj[cur]
            nxt = b if a == prev else a
            prev, cur = cur, nxt
        cycles.append(OrientedCycle.checked(g, seq))
    return cycles


def find_two_factor(g: Graph) -> TwoFactor | None:
    """A 2-factor of g via the gadget reduction, or None if none exists."""
    if g.n < 3:
        return None
    degs = [g.degree(v) for v in range(g.n)]
    if min(degs) < 2:
        return None

    # gadget vertex layout: per original vertex, its slots then its cores
    slot_id: dict[tuple[int, int], int] = {}  # (v, neighbor) -> gadget vertex
    total = 0
    for v in range(g.n):
        for w in bits(g.adj[v]):
            slot_id[(v, w)] = total
            total += 1
        total += degs[v] - 2

    gadget_adj: list[list[int]] = [[] for _ in range(total)]
    for v in range(g.n):
        nbrs = list(bits(g.adj[v]))
        slots = [slot_id[(v, w)] for w in nbrs]
        first_core = slots[-1] + 1
        for c in range(degs[v] - 2):
            core = first_core + c
            for s in slots:
                gadget_adj[s].append(core)
                gadget_adj[core].append(s)
    for u, v in g.edges():
        a, b = slot_id[(u, v)], slot_id[(v, u)]
        gadget_adj[a].append(b)
        gadget_adj[b].append(a)
    for lst in gadget_adj:
        lst.sort()

    match = _max_matching(total, gadget_adj)
    if any(m == -1 for m in match):
        return None

    slot_owner = {s: (v, w) for (v, w), s in slot_id.items()}
    factor_adj: list[list[int]] = [[] for _ in range(g.n)]
    for (v, w), s in slot_id.items():
        partner = match[s]
        if partner in slot_owner and v < w:
            # matched slot-slot: the original edge vw is in the factor
            assert slot_owner[partner] == (w, v)
            factor_adj[v].append(w)
            factor_adj[w].append(v)
    for v in range(g.n):
        assert len(factor_adj[v]) == 2, "gadget matching is not 2-regular"
        factor_adj[v].sort()

    f = TwoFactor(g, _orient_cycles(g, factor_adj))
    f.require_valid()
    return f


def reinsert_vertex(g: Graph, x: int, f_minus: TwoFactor) -> TwoFactor | None:
    """Insert x into a 2-factor of g - x without increasing the cycle count.

    Succeeds exactly when N(x)^+ union {x} is not independent (successors
    taken in f_minus): either x sits between some y and y^+ directly, or an
    edge y^+ z^+ with y, z in N(x) lets the cycle(s) reroute through x.
    Returns None when that set is independent.
    """
    if f_minus.omit != x:
        raise InvalidFactor(f"factor omits {f_minus.omit}, expected {x}")
    f_minus.require_valid()
    nbrs = [y for y in bits(g.adj[x]) if y != x]

    # (i) x adjacent to consecutive y, y+: insert x between them
    for y in nbrs:
        yp = f_minus.succ(y)
        if g.has_edge(x, yp):
            cyc = f_minus.cycle_of(y)
            seq = list(cyc.forward_path(yp, y).vertices)  # all of cyc, y last
            seq.append(x)
            new_cycles = [c for c in f_minus.cycles if c is not cyc]
            new_cycles.append(OrientedCycle.checked(g, seq))
            out = TwoFactor(g, new_cycles)
            out.require_valid()
            return out

    # (ii) y+ z+ in E for y, z in N(x): reroute through x
    for y in nbrs:
        yp = f_minus.succ(y)
        cy = f_minus.cycle_of(y)
        for z in nbrs:
            if z == y:
                continue
            zp = f_minus.succ(z)
            if zp == y or not g.has_edge(yp, zp):
                continue
            cz = f_minus.cycle_of(z)
            if cy is cz:
                # y x z <-C- y+ z+ -C-> y
                seq = [y, x]
                seq += cy.backward_path(z, yp).vertices
                seq += cy.forward_path(zp, y).vertices[:-1]
            else:
                # merge: y x, all of cz backward from z to z+, jump to y+,
                # rest of cy forward back to y
                seq = [y, x]
                seq += cz.backward_path(z, zp).vertices
                seq += cy.forward_path(yp, y).vertices[:-1]
            new_cycles = [c for c in f_minus.cycles if c is not cy and c is not cz]
            new_cycles.append(OrientedCycle.checked(g, seq))
            out = TwoFactor(g, new_cycles)
            out.require_valid()
            return out

    # contract: N(x)+ union {x} must now be independent
    closure = mask_of(f_minus.succ(y) for y in nbrs) | (1 << x)
    for v in bits(closure):
        assert not (g.adj[v] & closure), "reinsertion missed a usable edge"
    return None
