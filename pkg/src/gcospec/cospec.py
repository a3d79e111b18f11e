"""Exact cospectrality predicates: plain, generalized, and rooted-generalized.

Every decision compares integer characteristic polynomials; no floating-point
spectral data is consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .exact import IntPolynomial, int_charpoly
from .graph import Graph, RootedGraph, complement, cone, delete_vertex


class Level(str, Enum):
    NOT_COSPECTRAL = "not_cospectral"
    COSPECTRAL = "cospectral"
    GENERALIZED = "generalized_cospectral"


@lru_cache(maxsize=None)
def charpoly(g: Graph) -> IntPolynomial:
    return int_charpoly(g.adjacency())


def is_cospectral(g: Graph, h: Graph) -> bool:
    return g.n == h.n and charpoly(g) == charpoly(h)


def is_generalized_cospectral(g: Graph, h: Graph) -> bool:
    return is_cospectral(g, h) and is_cospectral(complement(g), complement(h))


def is_generalized_cospectral_via_cone(g: Graph, h: Graph) -> bool:
    """Same decision through the cones ``G + e`` and ``H + e`` instead of complements."""
    return is_cospectral(g, h) and is_cospectral(cone(g), cone(h))


def cospectrality_level(g: Graph, h: Graph) -> Level:
    if not is_cospectral(g, h):
        return Level.NOT_COSPECTRAL
    if is_cospectral(complement(g), complement(h)):
        return Level.GENERALIZED
    return Level.COSPECTRAL


@dataclass(frozen=True)
class CospectralityReport:
    level: Level
    rooted_generalized: bool | None = None
    witness_polys: dict[str, tuple[IntPolynomial, IntPolynomial]] = field(default_factory=dict)

    @property
    def cospectral(self) -> bool:
        return self.level != Level.NOT_COSPECTRAL

    @property
    def generalized(self) -> bool:
        return self.level == Level.GENERALIZED

    def to_dict(self) -> dict:
        return {
            "level": self.level.value,
            "rooted_generalized": self.rooted_generalized,
            "witness_polys": {k: [list(a.coeffs), list(b.coeffs)] for k, (a, b) in self.witness_polys.items()},
        }


def _witnesses(pairs: dict[str, tuple[Graph, Graph]]) -> dict[str, tuple[IntPolynomial, IntPolynomial]]:
    return {k: (charpoly(a), charpoly(b)) for k, (a, b) in pairs.items()}


def compare(g: Graph, h: Graph) -> CospectralityReport:
    pairs = {"G": (g, h), "complement": (complement(g), complement(h))}
    return CospectralityReport(cospectrality_level(g, h), None, _witnesses(pairs))


def is_rooted_generalized_cospectral(rg: RootedGraph, rh: RootedGraph) -> CospectralityReport:
    """Compare G, co-G, G-u, co-(G-u) against H, co-H, H-v, co-(H-v)."""
    g, h = rg.graph, rh.graph
    g1, h1 = delete_vertex(g, rg.root), delete_vertex(h, rh.root)
    pairs = {
        "G": (g, h),
        "complement": (complement(g), complement(h)),
        "deleted": (g1, h1),
        "deleted_complement": (complement(g1), complement(h1)),
    }
    level = cospectrality_level(g, h)
    rooted = g.n == h.n and level == Level.GENERALIZED and is_generalized_cospectral(g1, h1)
    return CospectralityReport(level, rooted, _witnesses(pairs))


def rooted_signature(rg: RootedGraph) -> tuple[IntPolynomial, ...]:
    """The four characteristic polynomials that decide rooted-generalized cospectrality."""
    g = rg.graph
    g1 = delete_vertex(g, rg.root)
    return (charpoly(g), charpoly(complement(g)), charpoly(g1), charpoly(complement(g1)))
