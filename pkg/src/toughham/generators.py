"""Reproducible graph families for the test and search suites.

All randomness flows through a splitmix-style 64-bit stream so that a
(family, parameters, seed) triple pins down the generated graph exactly,
independent of interpreter version or platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph
from .oracles import is_2k2_free, toughness, DEFAULT_LIMITS
from .two_factor import find_two_factor

MASK64 = (1 << 64) - 1


class Exhausted(Exception):
    """Rejection sampling gave up after the configured number of retries."""


class ConstructionUnvalidated(Exception):
    """A hard-coded family failed its defining oracle checks."""


class SplitMix64:
    """The splitmix64 stream (Steele, Lea & Flood): state advances by the
    golden-gamma constant and each output is a bijective scramble of the
    state.  Chosen because it is trivial to reimplement bit-exactly in any
    language with 64-bit integers.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection to avoid modulo bias."""
        assert n > 0
        limit = MASK64 + 1 - (MASK64 + 1) % n
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def chance(self, p: float) -> bool:
        if p >= 1.0:
            return True
        if p <= 0.0:
            return False
        return self.u64() < int(p * (MASK64 + 1))


@dataclass(frozen=True)
class GenSpec:
    """Everything needed to regenerate a graph: family tag, size parameters,
    edge probability (where the family uses one), and the 64-bit seed."""

    family: str
    params: tuple[int, ...]
    p: float | None
    seed: int

    def filename(self) -> str:
        size = "x".join(str(q) for q in self.params)
        prob = "" if self.p is None else f"-p{self.p:g}".replace(".", "_")
        return f"{self.family}-{size}{prob}-s{self.seed}.graph"


def _from_adj(n: int, adj: list[int]) -> Graph:
    return Graph(n, tuple(adj))


def random_split_graph(n_clique: int, n_indep: int, p: float, seed: int) -> Graph:
    """Clique on the first n_clique vertices, independent set on the rest,
    each cross pair kept with probability p."""
    rng = SplitMix64(seed)
    n = n_clique + n_indep
    adj = [0] * n
    for u in range(n_clique):
        for v in range(u):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    for v in range(n_clique, n):
        for u in range(n_clique):
            if rng.chance(p):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return _from_adj(n, adj)


def _delete_edge(adj: list[int], u: int, v: int) -> None:
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)


def random_2k2_free(n: int, p: float, seed: int, max_retries: int = 100) -> Graph:
    """Draw G(n, p) and repair: while some induced pair of independent edges
    remains, delete the lower-indexed edge of the reported witness.  The
    repair rule is arbitrary but fixed, so the output is a pure function of
    (n, p, seed)."""
    rng = SplitMix64(seed)
    adj = [0] * n
    for u in range(n):
        for v in range(u):
            if rng.chance(p):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    for _ in range(max_retries * max(1, n * n)):
        ok, witness = is_2k2_free(_from_adj(n, adj))
        if ok:
            return _from_adj(n, adj)
        a, b, c, d = witness
        first = (min(a, b), max(a, b))
        second = (min(c, d), max(c, d))
        u, v = min(first, second)
        assert adj[u] >> v & 1
        _delete_edge(adj, u, v)
    raise Exhausted(f"random_2k2_free(n={n}, p={p}, seed={seed})")


def perturb(g: Graph, k: int, seed: int) -> Graph:
    """Flip k uniformly chosen vertex pairs (edge <-> non-edge).  No
    structural guarantee survives; callers re-check what they need."""
    rng = SplitMix64(seed)
    adj = list(g.adj)
    for _ in range(k):
        u = rng.below(g.n)
        v = rng.below(g.n - 1)
        if v >= u:
            v += 1
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
    return _from_adj(g.n, adj)


def _split_from_rows(n_clique: int, rows: list[int]) -> Graph:
    n = n_clique + len(rows)
    adj = [0] * n
    for u in range(n_clique):
        for v in range(u):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    for j, row in enumerate(rows):
        v = n_clique + j
        adj[v] = row
        for u in range(n_clique):
            if row >> u & 1:
                adj[u] |= 1 << v
    return _from_adj(n, adj)


def _toughness_family_rows(l: int) -> tuple[int, list[int]]:
    """Split-graph pattern whose toughness equals 3l/(2l+1) exactly.

    The clique holds a hub set S of size s, one pendant vertex per
    independent vertex (some pendants shared by two), and a single
    remainder vertex.  Each of the b = 2s+1 independent vertices sees all
    of S plus its pendant, so deleting S leaves them with degree one and
    the parity argument rules out a 2-factor, while every cut that
    isolates k of them costs at least (6l/(2l+1))(k+1)/2 vertices.  The
    smallest hub size making the pendant count

        w = (4ls + 6l - s) / (2l + 1)

    an integer pins the cheapest cut (all of S and the pendants) at the
    target ratio; p = 2s+1-w pendants are doubled up.
    """
    assert l >= 1
    for s in range(1, 12 * l + 12):
        num = 4 * l * s + 6 * l - s
        if num % (2 * l + 1):
            continue
        w = num // (2 * l + 1)
        b = 2 * s + 1
        p = b - w
        if w < 1 or p < 0:
            continue
        # a shared pendant makes the pair cut (s+1)/3 available
        if p > 0 and (s + 1) * (2 * l + 1) < 9 * l:
            continue
        smask = (1 << s) - 1
        rows = []
        for j in range(b):
            widx = j // 2 if j < 2 * p else p + (j - 2 * p)
            rows.append(smask | (1 << (s + widx)))
        return s + w + 1, rows
    raise ConstructionUnvalidated(f"no hub size found for l={l}")


_CHVATAL_CACHE: dict[int, Graph] = {}


def chvatal_family(l: int) -> Graph:
    """Split graph with toughness exactly 3l/(2l+1) and no 2-factor.

    The construction is only served after both defining properties have been
    confirmed by the independent oracles; a transcription slip therefore
    raises instead of silently feeding the suites a wrong graph.
    """
    assert l >= 1
    if l in _CHVATAL_CACHE:
        return _CHVATAL_CACHE[l]
    n_clique, rows = _toughness_family_rows(l)
    g = _split_from_rows(n_clique, rows)
    target = Fraction(3 * l, 2 * l + 1)
    if g.n <= DEFAULT_LIMITS.toughness:
        rep = toughness(g)
        if rep.value != target:
            raise ConstructionUnvalidated(
                f"l={l}: toughness {rep} instead of {target}")
        if find_two_factor(g) is not None:
            raise ConstructionUnvalidated(f"l={l}: graph has a 2-factor")
    _CHVATAL_CACHE[l] = g
    return g


def generate(spec: GenSpec) -> Graph:
    if spec.family == "split":
        c, i = spec.params
        return random_split_graph(c, i, spec.p, spec.seed)
    if spec.family == "2k2free":
        (n,) = spec.params
        return random_2k2_free(n, spec.p, spec.seed)
    if spec.family == "chvatal":
        (l,) = spec.params
        return chvatal_family(l)
    raise ValueError(f"unknown family {spec.family!r}")


def write_corpus(directory, specs) -> list[str]:
    """One graph per file in the plain-text format; the filename encodes the
    GenSpec so a corpus can be regenerated or audited without side files."""
    import os
    from .graph import write_graph

    written = []
    os.makedirs(directory, exist_ok=True)
    for spec in specs:
        g = generate(spec)
        path = os.path.join(directory, spec.filename())
        with open(path, "w") as fh:
            fh.write(write_graph(g))
        written.append(path)
    return written
