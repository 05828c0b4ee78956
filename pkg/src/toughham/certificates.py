"""Certificate objects emitted by the engine, each independently checkable."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, OrientedCycle, bits


@dataclass(frozen=True)
class HamiltonianCycle:
    cycle: OrientedCycle

    tag = "hamiltonian"


@dataclass(frozen=True)
class SmallerTwoFactor:
    """A 2-factor of the host graph with strictly fewer cycles than context."""

    cycles: tuple[OrientedCycle, ...]

    tag = "smaller_two_factor"


@dataclass(frozen=True)
class ToughnessWitness:
    """A cutset S with |S| < 2 * omega(G - S), disproving 2-toughness."""

    cut: int  # vertex-set mask

    tag = "toughness_witness"

    def ratio(self, g: Graph) -> Fraction:
        omega = len(g.components(g.full_mask & ~self.cut))
        return Fraction(self.cut.bit_count(), omega)


@dataclass(frozen=True)
class IndependentSetWitness:
    """An independent set I with |I| > n/3, disproving 2-toughness.

    Converts to ToughnessWitness(V \\ I): deleting everything outside I
    leaves |I| isolated vertices, so the ratio is (n - |I|)/|I| < 2.
    """

    vertices: int  # vertex-set mask

    tag = "independent_set_witness"

    def to_toughness_witness(self, g: Graph) -> ToughnessWitness:
        return ToughnessWitness(g.full_mask & ~self.vertices)


Certificate = HamiltonianCycle | SmallerTwoFactor | ToughnessWitness | IndependentSetWitness


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, HamiltonianCycle):
        return {"tag": cert.tag, "cycle": list(cert.cycle.vertices)}
    if isinstance(cert, SmallerTwoFactor):
        return {"tag": cert.tag, "cycles": [list(c.vertices) for c in cert.cycles]}
    if isinstance(cert, ToughnessWitness):
        return {"tag": cert.tag, "cut": sorted(bits(cert.cut))}
    if isinstance(cert, IndependentSetWitness):
        return {"tag": cert.tag, "vertices": sorted(bits(cert.vertices))}
    raise TypeError(f"not a certificate: {cert!r}")
