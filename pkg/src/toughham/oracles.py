"""Exact brute-force oracles and certificate verifiers.

Every verdict that involves a toughness value uses Fraction; floating point
never decides anything here.  All procedures are desk-scale: enumeration
bounds are configuration, not constants.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import kernels
from .certificates import (
    Certificate,
    HamiltonianCycle,
    IndependentSetWitness,
    SmallerTwoFactor,
    ToughnessWitness,
)
from .graph import Graph, OrientedCycle, bits, mask_of
from .two_factor import TwoFactor


class SizeLimit(Exception):
    def __init__(self, what: str, n: int, bound: int):
        super().__init__(f"{what}: n={n} exceeds bound {bound}")
        self.what, self.n, self.bound = what, n, bound


@dataclass
class Limits:
    toughness: int = 24
    independence: int = 40
    hamiltonian: int = 20
    exhaustive_two_factor: int = 12

    @classmethod
    def from_env(cls) -> "Limits":
        override = os.environ.get("TOUGHHAM_SIZE_LIMIT")
        if override is None:
            return cls()
        b = int(override)
        return cls(toughness=b, independence=b, hamiltonian=b, exhaustive_two_factor=b)


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class ToughnessReport:
    value: Fraction | None  # None means infinite (complete graph)
    witness: int | None  # minimizing cutset mask, absent when infinite

    @property
    def infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        return f"{self.value.numerator}/{self.value.denominator}"


def toughness(g: Graph, limits: Limits = DEFAULT_LIMITS) -> ToughnessReport:
    if g.n > limits.toughness:
        raise SizeLimit("toughness", g.n, limits.toughness)
    best = kernels.toughness(g.n, g.adj)
    if best is None:
        return ToughnessReport(None, None)
    size, omega, witness = best
    # soundness re-check on an independent path: re-count components
    assert len(g.components(g.full_mask & ~witness)) == omega
    return ToughnessReport(Fraction(size, omega), witness)


def is_t_tough(g: Graph, t: Fraction, limits: Limits = DEFAULT_LIMITS) -> tuple[bool, int | None]:
    if t < 0:
        raise ValueError("t must be nonnegative")
    rep = toughness(g, limits)
    if rep.infinite or rep.value >= t:
        return True, None
    return False, rep.witness


def is_2k2_free(g: Graph) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Pair-scan recognition (algorithm a): test all disjoint edge pairs."""
    witness = kernels.is_2k2_free(g.n, g.adj)
    if witness is None:
        return True, None
    return False, witness


def is_2k2_free_obs1(g: Graph) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Non-neighborhood recognition (algorithm b): a graph is 2K2-free iff
    for every edge xy the set of vertices seeing neither endpoint is
    independent."""
    for x, y in g.edges():
        far = g.full_mask & ~g.adj[x] & ~g.adj[y] & ~(1 << x) & ~(1 << y)
        for c in bits(far):
            inner = g.adj[c] & far & ~((1 << (c + 1)) - 1)
            if inner:
                d = next(bits(inner))
                return False, (x, y, c, d)
    return True, None


def independence_number(g: Graph, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    if g.n > limits.independence:
        raise SizeLimit("independence_number", g.n, limits.independence)
    mask = kernels.max_independent_set(g.n, g.adj)
    assert not any(g.adj[v] & mask for v in bits(mask)), "oracle produced a non-independent set"
    return mask.bit_count(), mask


def independence_number_enum(g: Graph) -> int:
    """Full subset enumeration; cross-check oracle for small n only."""
    best = 0
    for s in range(1 << g.n):
        if s.bit_count() <= best:
            continue
        if not any(g.adj[v] & s for v in bits(s)):
            best = s.bit_count()
    return best


def hamiltonian_cycle_bruteforce(g: Graph, limits: Limits = DEFAULT_LIMITS) -> OrientedCycle | None:
    if g.n > limits.hamiltonian:
        raise SizeLimit("hamiltonian_cycle_bruteforce", g.n, limits.hamiltonian)
    if g.n < 3:
        return None
    seq = kernels.hamiltonian_cycle(g.n, g.adj)
    if seq is None:
        return None
    return OrientedCycle.checked(g, seq)


def minimum_component_two_factor(
    g: Graph, limits: Limits = DEFAULT_LIMITS
) -> tuple[TwoFactor, int] | None:
    """A 2-factor with the fewest cycles, by exhaustive cycle-cover search."""
    if g.n > limits.exhaustive_two_factor:
        raise SizeLimit("minimum_component_two_factor", g.n, limits.exhaustive_two_factor)
    if g.n < 3:
        return None
    best: list[list[tuple[int, ...]]] = []
    best_count = [g.n + 1]

    def cycles_through(v: int, allowed: int):
        """All cycles through v inside `allowed`, v minimal on the cycle."""
        out = []

        def walk(path: list[int], visited: int):
            cur = path[-1]
            # each cycle appears once: second vertex below last vertex
            if len(path) >= 3 and path[1] < cur and g.has_edge(cur, v):
                out.append(tuple(path))
            for w in bits(g.adj[cur] & allowed & ~visited):
                path.append(w)
                walk(path, visited | (1 << w))
                path.pop()

        for w in bits(g.adj[v] & allowed):
            walk([v, w], (1 << w))
        return out

    def cover(remaining: int, acc: list[tuple[int, ...]]):
        if len(acc) >= best_count[0]:
            return
        if not remaining:
            best_count[0] = len(acc)
            best.clear()
            best.append(list(acc))
            return
        v = next(bits(remaining))
        for cyc in cycles_through(v, remaining & ~(1 << v)):
            acc.append(cyc)
            cover(remaining & ~mask_of(cyc), acc)
            acc.pop()

    cover(g.full_mask, [])
    if not best:
        return None
    cycles = [OrientedCycle.checked(g, c) for c in best[0]]
    f = TwoFactor(g, cycles)
    f.require_valid()
    return f, f.omega


def has_smaller_two_factor_without(g: Graph, x: int, omega: int,
                                   limits: Limits = DEFAULT_LIMITS) -> bool:
    """Brute-force co-absorbability of x relative to a factor with `omega`
    cycles: does G - x have a 2-factor with fewer cycles?  Test-side oracle."""
    h = g.delete_vertex(x)
    res = minimum_component_two_factor(h, limits)
    return res is not None and res[1] < omega


def check_certificate(g: Graph, cert: Certificate, context: TwoFactor | None = None) -> str | None:
    """Return a violation description, or None when the certificate holds."""
    if isinstance(cert, HamiltonianCycle):
        c = cert.cycle
        if c.vertex_mask != g.full_mask:
            return "cycle is not spanning"
        for v in c:
            if not g.has_edge(v, c.succ(v)):
                return f"cycle edge {v}-{c.succ(v)} missing in graph"
        return None
    if isinstance(cert, SmallerTwoFactor):
        f = TwoFactor(g, list(cert.cycles))
        reason = f.check()
        if reason is not None:
            return reason
        if context is None:
            return "smaller-two-factor certificate needs a context factor"
        if f.omega >= context.omega:
            return f"omega {f.omega} not below context omega {context.omega}"
        return None
    if isinstance(cert, ToughnessWitness):
        s = cert.cut
        if s & ~g.full_mask:
            return "cutset contains out-of-range vertices"
        omega = len(g.components(g.full_mask & ~s))
        if omega <= 1:
            return f"G - S has {omega} component(s), need > 1"
        if s.bit_count() >= 2 * omega:
            return f"|S| = {s.bit_count()} not below 2 * omega = {2 * omega}"
        return None
    if isinstance(cert, IndependentSetWitness):
        i = cert.vertices
        if i & ~g.full_mask:
            return "set contains out-of-range vertices"
        for v in bits(i):
            if g.adj[v] & i:
                w = next(bits(g.adj[v] & i))
                return f"set is not independent: edge {v}-{w}"
        if 3 * i.bit_count() <= g.n:
            return f"|I| = {i.bit_count()} not above n/3 = {g.n}/3"
        # conversion must itself verify: S = V \ I is a toughness witness
        return check_certificate(g, cert.to_toughness_witness(g))
    return f"unknown certificate type {type(cert).__name__}"


def verify_certificate(g: Graph, cert: Certificate, context: TwoFactor | None = None) -> bool:
    return check_certificate(g, cert, context) is None


def co_absorbable_vertices_bruteforce(g: Graph, f: TwoFactor,
                                      limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """All vertices x such that G - x has a 2-factor with fewer cycles than
    f.  Exhaustive; for lemma-level property tests only."""
    return [x for x in range(g.n)
            if has_smaller_two_factor_without(g, x, f.omega, limits)]


def all_graphs(n: int):
    """Every labeled graph on n vertices, by edge subset."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edge_list(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
