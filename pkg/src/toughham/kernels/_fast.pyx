# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over uint64 adjacency bitmasks.

Mirrors the pure-Python module exactly, including every tie-break: first
strict minimizer in ascending subset order, lexicographically first induced
pair, lowest-index pivot among maximum-degree candidates, ascending
neighbor order in the cycle search.  Inputs with more than 62 vertices are
delegated to the pure implementation.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

from . import _pure

cdef extern from *:
    """
    #include <stdint.h>
    static inline int th_popcount(uint64_t x) { return __builtin_popcountll(x); }
    static inline int th_ctz(uint64_t x) { return __builtin_ctzll(x); }
    """
    int th_popcount(uint64_t x) noexcept nogil
    int th_ctz(uint64_t x) noexcept nogil

COMPILED = True

DEF MAXN = 62


cdef int _load(n, adj, uint64_t *out) except -1:
    cdef int i
    for i in range(n):
        out[i] = adj[i]
    return 0


cdef int _component_count(int n, uint64_t *adj, uint64_t removed) noexcept nogil:
    cdef uint64_t full = ((<uint64_t> 1) << n) - 1
    cdef uint64_t remaining = full & ~removed
    cdef uint64_t comp, frontier, nxt, m
    cdef int count = 0, v
    while remaining:
        comp = remaining & (~remaining + 1)
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                v = th_ctz(m)
                nxt |= adj[v]
                m &= m - 1
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        count += 1
        remaining &= ~comp
    return count


def toughness(n, adj):
    """(size, omega, witness_mask) of the minimizing cutset, or None."""
    if n > MAXN:
        return _pure.toughness(n, adj)
    cdef uint64_t a[MAXN]
    cdef int nn = n
    _load(nn, adj, a)
    cdef uint64_t full = ((<uint64_t> 1) << nn) - 1
    cdef uint64_t s, best_mask = 0
    cdef long best_size = -1, best_omega = 0
    cdef int omega, size
    with nogil:
        for s in range(full + 1):
            if s == full:
                continue
            omega = _component_count(nn, a, s)
            if omega <= 1:
                continue
            size = th_popcount(s)
            if best_size < 0 or size * best_omega < best_size * omega:
                best_size = size
                best_omega = omega
                best_mask = s
    if best_size < 0:
        return None
    return (int(best_size), int(best_omega), int(best_mask))


def exists_cycle_cover(n, adj):
    """True iff a 2-factor exists (partition into cycles >= 3); subset DP."""
    if n > 24:
        return _pure.exists_cycle_cover(n, adj)
    if n < 3:
        return False
    cdef uint64_t a[MAXN]
    cdef int nn = n
    _load(nn, adj, a)
    cdef uint64_t size = (<uint64_t> 1) << nn
    cdef uint64_t *ends = <uint64_t *> malloc(size * sizeof(uint64_t))
    cdef char *cyc = <char *> malloc(size)
    cdef char *cover = <char *> malloc(size)
    if ends == NULL or cyc == NULL or cover == NULL:
        free(ends); free(cyc); free(cover)
        raise MemoryError()
    cdef uint64_t mask, rest, m, sub, root_bit, e
    cdef int root, v, found = 0
    with nogil:
        ends[0] = 0
        for mask in range(1, size):
            root = th_ctz(mask)
            cyc[mask] = 0
            if mask == (<uint64_t> 1) << root:
                ends[mask] = mask
                continue
            e = 0
            rest = mask & ~((<uint64_t> 1) << root)
            m = rest
            while m:
                v = th_ctz(m)
                if a[v] & ends[mask & ~((<uint64_t> 1) << v)]:
                    e |= (<uint64_t> 1) << v
                m &= m - 1
            ends[mask] = e
            if th_popcount(mask) >= 3 and (e & a[root]):
                cyc[mask] = 1
        cover[0] = 1
        for mask in range(1, size):
            cover[mask] = 0
            root_bit = mask & (~mask + 1)
            sub = mask
            while sub:
                if (sub & root_bit) and cyc[sub] and cover[mask & ~sub]:
                    cover[mask] = 1
                    break
                sub = (sub - 1) & mask
        found = cover[size - 1]
    free(ends); free(cyc); free(cover)
    return bool(found)


def is_2k2_free(n, adj):
    """Lexicographically first induced disjoint edge pair, or None."""
    if n > MAXN:
        return _pure.is_2k2_free(n, adj)
    cdef uint64_t a_[MAXN]
    cdef int nn = n
    _load(nn, adj, a_)
    cdef uint64_t full = ((<uint64_t> 1) << nn) - 1
    cdef uint64_t upper, far, inner, m
    cdef int a, b, c, d
    for a in range(nn):
        upper = a_[a] >> (a + 1) << (a + 1)
        m = upper
        while m:
            b = th_ctz(m)
            m &= m - 1
            far = full & ~a_[a] & ~a_[b]
            far &= ~((<uint64_t> 1) << a) & ~((<uint64_t> 1) << b)
            inner = far
            while inner:
                c = th_ctz(inner)
                inner &= inner - 1
                if a_[c] & far & ~((((<uint64_t> 1) << (c + 1))) - 1):
                    d = th_ctz(a_[c] & far & ~((((<uint64_t> 1) << (c + 1))) - 1))
                    return (a, b, c, d)
    return None


cdef void _mis_grow(int n, uint64_t *adj, uint64_t candidates, uint64_t cur_mask,
                    int cur_size, int *best_size, uint64_t *best_mask) nogil:
    cdef uint64_t m, bit
    cdef int v, d, pivot, pivot_deg
    if cur_size + th_popcount(candidates) <= best_size[0]:
        return
    if not candidates:
        best_size[0] = cur_size
        best_mask[0] = cur_mask
        return
    pivot = -1
    pivot_deg = -1
    m = candidates
    while m:
        v = th_ctz(m)
        m &= m - 1
        d = th_popcount(adj[v] & candidates)
        if d > pivot_deg:
            pivot = v
            pivot_deg = d
    bit = (<uint64_t> 1) << pivot
    _mis_grow(n, adj, candidates & ~bit & ~adj[pivot], cur_mask | bit,
              cur_size + 1, best_size, best_mask)
    _mis_grow(n, adj, candidates & ~bit, cur_mask, cur_size, best_size, best_mask)


def max_independent_set(n, adj):
    if n > MAXN:
        return _pure.max_independent_set(n, adj)
    cdef uint64_t a[MAXN]
    cdef int nn = n
    _load(nn, adj, a)
    cdef int best_size = 0
    cdef uint64_t best_mask = 0
    with nogil:
        _mis_grow(nn, a, ((<uint64_t> 1) << nn) - 1, 0, 0, &best_size, &best_mask)
    return int(best_mask)


cdef bint _ham_extend(int n, uint64_t *adj, int *path, int depth, int v,
                      uint64_t visited) noexcept nogil:
    cdef uint64_t full = ((<uint64_t> 1) << n) - 1
    cdef uint64_t remaining, free, m
    cdef int w
    if depth == n:
        return (adj[v] & 1) != 0
    remaining = full & ~visited
    m = remaining
    while m:
        w = th_ctz(m)
        m &= m - 1
        free = adj[w] & (remaining | ((<uint64_t> 1) << v) | 1)
        if th_popcount(free) < 2:
            return False
    m = adj[v] & ~visited
    while m:
        w = th_ctz(m)
        m &= m - 1
        path[depth] = w
        if _ham_extend(n, adj, path, depth + 1, w, visited | ((<uint64_t> 1) << w)):
            return True
    return False


def hamiltonian_cycle(n, adj):
    """A Hamiltonian cycle as a vertex tuple starting at 0, or None."""
    if n > MAXN:
        return _pure.hamiltonian_cycle(n, adj)
    if n < 3:
        return None
    cdef uint64_t a[MAXN]
    cdef int path[MAXN]
    cdef int v
    cdef int nn = n
    _load(nn, adj, a)
    for v in range(nn):
        if th_popcount(a[v]) < 2:
            return None
    path[0] = 0
    cdef bint found
    with nogil:
        found = _ham_extend(nn, a, path, 1, 0, 1)
    if not found:
        return None
    return tuple(path[v] for v in range(nn))


cdef bint _new_vertex_keeps_2k2_free(int v, uint64_t *adj) noexcept nogil:
    cdef uint64_t below = ((<uint64_t> 1) << v) - 1
    cdef uint64_t universe = below | ((<uint64_t> 1) << v)
    cdef uint64_t far, m, inner
    cdef int a, b
    m = adj[v] & below
    while m:
        a = th_ctz(m)
        m &= m - 1
        far = universe & ~adj[v] & ~adj[a]
        far &= ~((<uint64_t> 1) << v) & ~((<uint64_t> 1) << a)
        inner = far
        while inner:
            b = th_ctz(inner)
            inner &= inner - 1
            if adj[b] & far & ((((<uint64_t> 1) << b)) - 1):
                return False
    return True


cdef class _Sweep:
    cdef int n
    cdef uint64_t adj[MAXN]
    cdef uint64_t rows[MAXN]
    cdef long enumerated, tough_pass, ham_pass
    cdef long lo_num, lo_den, hi_num, hi_den
    cdef bint unbounded, collect, check_ham
    cdef list survivors, non_ham

    cdef object edge_mask(self):
        mask = 0
        cdef int v
        for v in range(self.n):
            mask |= int(self.rows[v]) << (v * (v - 1) // 2)
        return mask

    cdef int finish(self) except -1:
        cdef int n = self.n
        cdef uint64_t full = ((<uint64_t> 1) << n) - 1
        cdef uint64_t s
        cdef long best_size = -1, best_omega = 0
        cdef long lo_num = self.lo_num, lo_den = self.lo_den
        cdef int omega, size, v, delta, sp
        cdef uint64_t t_mask, cand, nb
        cdef uint64_t stack_t[MAXN + 2]
        cdef uint64_t stack_c[MAXN + 2]
        cdef uint64_t stack_nb[MAXN + 2]
        cdef int path[MAXN]
        cdef bint found, complete, below
        self.enumerated += 1
        complete = True
        delta = n
        with nogil:
            for v in range(n):
                if self.adj[v] != (full ^ ((<uint64_t> 1) << v)):
                    complete = False
                size = th_popcount(self.adj[v])
                if size < delta:
                    delta = size
        if not complete:
            # toughness of a non-complete graph is at most half the min degree
            if delta * lo_den < 2 * lo_num:
                return 0
        below = False
        with nogil:
            # Every separator here leaves at most one component with an edge
            # (two such components would induce the forbidden pair), so the
            # optimum is attained at S = N(T) for an independent set T: the
            # singleton components of the optimal cut.  Enumerating the
            # independent sets is far cheaper than all vertex subsets once
            # the degree filter has fired.
            sp = 1
            stack_t[0] = 0
            stack_c[0] = full
            stack_nb[0] = 0
            while sp:
                sp -= 1
                t_mask = stack_t[sp]
                cand = stack_c[sp]
                nb = stack_nb[sp]
                v = th_ctz(cand)
                cand &= cand - 1
                if cand:
                    stack_t[sp] = t_mask
                    stack_c[sp] = cand
                    stack_nb[sp] = nb
                    sp += 1
                t_mask |= (<uint64_t> 1) << v
                nb |= self.adj[v]
                s = nb
                omega = _component_count(n, self.adj, s)
                if omega >= 2:
                    size = th_popcount(s)
                    if size * lo_den < lo_num * omega:
                        below = True
                        break
                    if best_size < 0 or size * best_omega < best_size * omega:
                        best_size = size
                        best_omega = omega
                cand &= ~self.adj[v]
                if cand:
                    stack_t[sp] = t_mask
                    stack_c[sp] = cand
                    stack_nb[sp] = nb
                    sp += 1
        if below:
            return 0
        if best_size < 0:
            # complete graph, toughness infinite
            if not self.unbounded:
                return 0
        else:
            if not self.unbounded and best_size * self.hi_den >= self.hi_num * best_omega:
                return 0
        self.tough_pass += 1
        if self.collect:
            self.survivors.append(self.edge_mask())
        if self.check_ham:
            found = False
            if n >= 3:
                path[0] = 0
                with nogil:
                    found = _ham_extend(n, self.adj, path, 1, 0, 1)
            if found:
                self.ham_pass += 1
            else:
                self.non_ham.append(self.edge_mask())
        return 0

    cdef int recurse(self, int v) except -1:
        cdef uint64_t row, m
        cdef int u
        if v == self.n:
            return self.finish()
        for row in range((<uint64_t> 1) << v):
            self.rows[v] = row
            self.adj[v] = row
            m = row
            while m:
                u = th_ctz(m)
                m &= m - 1
                self.adj[u] |= (<uint64_t> 1) << v
            if _new_vertex_keeps_2k2_free(v, self.adj):
                self.recurse(v + 1)
            m = row
            while m:
                u = th_ctz(m)
                m &= m - 1
                self.adj[u] &= ~((<uint64_t> 1) << v)
        self.rows[v] = 0
        self.adj[v] = 0
        return 0


def sweep_2k2_free(n, lo_num, lo_den, hi_num=0, hi_den=0,
                   collect_survivors=False, check_ham=False):
    """Exhaustive pruned enumeration of labeled 2K2-free graphs; see the
    pure module for the contract."""
    if n > MAXN:
        return _pure.sweep_2k2_free(n, lo_num, lo_den, hi_num, hi_den,
                                    collect_survivors, check_ham)
    cdef _Sweep sw = _Sweep()
    sw.n = n
    sw.lo_num = lo_num
    sw.lo_den = lo_den
    sw.hi_num = hi_num
    sw.hi_den = hi_den
    sw.unbounded = hi_den == 0
    sw.collect = collect_survivors
    sw.check_ham = check_ham
    sw.survivors = []
    sw.non_ham = []
    cdef int v
    for v in range(MAXN):
        sw.adj[v] = 0
        sw.rows[v] = 0
    sw.recurse(0)
    return {
        "enumerated": int(sw.enumerated),
        "tough_pass": int(sw.tough_pass),
        "ham_pass": int(sw.ham_pass),
        "non_hamiltonian": sw.non_ham,
        "survivors": sw.survivors if collect_survivors else None,
    }
