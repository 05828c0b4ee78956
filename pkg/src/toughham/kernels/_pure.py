"""Pure-Python kernels.

Same call surface as the compiled module; used as the import-time fallback
and as the reference side of the kernel-agreement tests.  All functions take
a vertex count plus a sequence of adjacency bitmasks.
"""

from __future__ import annotations

COMPILED = False


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _component_count(n, adj, removed):
    remaining = ((1 << n) - 1) & ~removed
    count = 0
    while remaining:
        comp = remaining & -remaining
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        count += 1
        remaining &= ~comp
    return count


def toughness(n, adj):
    """Exact toughness by enumerating all vertex subsets.

    Returns (size, omega, witness_mask) for the minimizing cutset, or None
    when the graph is complete (toughness infinite).  Ratios compare by
    cross-multiplication; the witness is the first strict minimizer in
    ascending subset order.
    """
    full = (1 << n) - 1
    best = None  # (size, omega, mask)
    for s in range(1 << n):
        if s == full:
            continue
        omega = _component_count(n, adj, s)
        if omega <= 1:
            continue
        size = s.bit_count()
        if best is None or size * best[1] < best[0] * omega:
            best = (size, omega, s)
    return best


def is_2k2_free(n, adj):
    """Scan all pairs of disjoint edges; return an inducing 4-tuple or None.

    The witness (a, b, c, d) has edges ab and cd with no edge between
    {a, b} and {c, d}; it is the lexicographically first such pair found by
    an ascending edge scan.
    """
    full = (1 << n) - 1
    for a in range(n):
        for b in _bits(adj[a] >> (a + 1) << (a + 1)):
            far = full & ~adj[a] & ~adj[b] & ~(1 << a) & ~(1 << b)
            for c in _bits(far):
                inner = adj[c] & far & ~((1 << (c + 1)) - 1)
                if inner:
                    d = (inner & -inner).bit_length() - 1
                    return (a, b, c, d)
    return None


def max_independent_set(n, adj):
    """A maximum independent set (as a mask) by branch and bound."""
    best = [0, 0]  # size, mask

    def grow(candidates, cur_mask, cur_size):
        if cur_size + candidates.bit_count() <= best[0]:
            return
        if not candidates:
            best[0] = cur_size
            best[1] = cur_mask
            return
        # branch on the candidate with most candidate-neighbors
        pivot = -1
        pivot_deg = -1
        for v in _bits(candidates):
            d = (adj[v] & candidates).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = v, d
        bit = 1 << pivot
        grow(candidates & ~bit & ~adj[pivot], cur_mask | bit, cur_size + 1)
        grow(candidates & ~bit, cur_mask, cur_size)

    grow((1 << n) - 1, 0, 0)
    return best[1]


def hamiltonian_cycle(n, adj):
    """A Hamiltonian cycle as a vertex tuple starting at 0, or None.

    Backtracking over ascending neighbor order, anchored at vertex 0.
    """
    if n < 3:
        return None
    full = (1 << n) - 1
    for v in range(n):
        if adj[v].bit_count() < 2:
            return None
    path = [0]
    visited = 1

    def extend(v, visited):
        if len(path) == n:
            return bool(adj[v] & 1)
        # every unvisited vertex must keep >= 2 usable attachment points
        remaining = full & ~visited
        for w in _bits(remaining):
            free = adj[w] & (remaining | (1 << v) | 1)
            if free.bit_count() < 2:
                return False
        for w in _bits(adj[v] & ~visited):
            path.append(w)
            if extend(w, visited | (1 << w)):
                return True
            path.pop()
        return False

    if extend(0, visited):
        return tuple(path)
    return None


def exists_cycle_cover(n, adj):
    """True iff the vertices partition into vertex-disjoint cycles (>= 3),
    i.e. a 2-factor exists.  Subset DP: for each subset, spanning paths are
    grown from the subset's lowest vertex, closing into cycles; then the
    cover table composes disjoint cycles lowest-vertex-first.
    """
    if n < 3:
        return False
    size = 1 << n
    # ends[mask] = bitmask of vertices v such that some path starting at the
    # lowest vertex of mask, spanning mask, finishes at v
    ends = [0] * size
    cyc = bytearray(size)
    for mask in range(1, size):
        root = (mask & -mask).bit_length() - 1
        if mask == 1 << root:
            ends[mask] = mask
            continue
        e = 0
        rest = mask & ~(1 << root)
        for v in _bits(rest):
            if adj[v] & ends[mask & ~(1 << v)]:
                e |= 1 << v
        ends[mask] = e
        if mask.bit_count() >= 3 and e & adj[root]:
            cyc[mask] = 1
    cover = bytearray(size)
    cover[0] = 1
    for mask in range(1, size):
        root_bit = mask & -mask
        sub = mask
        while sub:
            if sub & root_bit and cyc[sub] and cover[mask & ~sub]:
                cover[mask] = 1
                break
            sub = (sub - 1) & mask
    return bool(cover[size - 1])


def _new_vertex_keeps_2k2_free(v, adj):
    # check only induced 2K2s that involve the freshly added vertex v
    below = (1 << v) - 1
    universe = below | (1 << v)
    for a in _bits(adj[v] & below):
        far = universe & ~adj[v] & ~adj[a] & ~(1 << v) & ~(1 << a)
        for b in _bits(far):
            if adj[b] & far & ((1 << b) - 1):
                return False
    return True


def sweep_2k2_free(n, lo_num, lo_den, hi_num=0, hi_den=0,
                   collect_survivors=False, check_ham=False):
    """Exhaustively enumerate labeled 2K2-free graphs on n vertices.

    Enumeration adds one vertex row at a time and prunes any subtree whose
    partial graph already contains an induced 2K2 (induced subgraphs of
    2K2-free graphs are 2K2-free, so the pruning is exact).

    Filters each complete graph by exact toughness: keep t >= lo_num/lo_den
    and, when hi_den > 0, t < hi_num/hi_den (complete graphs have t = inf
    and only pass when there is no upper bound).  Returns a dict of counts;
    survivor edge-masks use bit v*(v-1)/2 + u for the pair u < v.
    """
    adj = [0] * n
    rows = [0] * n
    counts = {
        "enumerated": 0,
        "tough_pass": 0,
        "ham_pass": 0,
        "non_hamiltonian": [],
        "survivors": [] if collect_survivors else None,
    }
    unbounded = hi_den == 0

    full = (1 << n) - 1

    def band_toughness():
        """(size, omega) of the minimizing cutset, None for complete graphs,
        or False as soon as some cutset already beats the lower bound."""
        best = None
        for s in range(1 << n):
            if s == full:
                continue
            omega = _component_count(n, adj, s)
            if omega <= 1:
                continue
            size = s.bit_count()
            if size * lo_den < lo_num * omega:
                return False
            if best is None or size * best[1] < best[0] * omega:
                best = (size, omega)
        return best

    def finish():
        counts["enumerated"] += 1
        complete = all(adj[v] == full ^ (1 << v) for v in range(n))
        if not complete:
            # toughness of a non-complete graph is at most half the min degree
            delta = min(a.bit_count() for a in adj)
            if delta * lo_den < 2 * lo_num:
                return
        t = band_toughness()
        if t is False:
            return
        if t is None:
            if not unbounded:
                return
        else:
            size, omega = t
            if not unbounded and size * hi_den >= hi_num * omega:
                return
        counts["tough_pass"] += 1
        if collect_survivors:
            mask = 0
            for v in range(n):
                mask |= rows[v] << (v * (v - 1) // 2)
            counts["survivors"].append(mask)
        if check_ham:
            cyc = hamiltonian_cycle(n, adj)
            if cyc is not None:
                counts["ham_pass"] += 1
            else:
                mask = 0
                for v in range(n):
                    mask |= rows[v] << (v * (v - 1) // 2)
                counts["non_hamiltonian"].append(mask)

    def recurse(v):
        if v == n:
            finish()
            return
        for row in range(1 << v):
            rows[v] = row
            adj[v] = row
            for u in _bits(row):
                adj[u] |= 1 << v
            if _new_vertex_keeps_2k2_free(v, adj):
                recurse(v + 1)
            for u in _bits(row):
                adj[u] &= ~(1 << v)
        rows[v] = 0
        adj[v] = 0

    recurse(0)
    return counts
