"""Walk matrices, controllability, the Householder involution Q0 and
reconstructibility certificates built from almost controllable cards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations

import numpy as np

from .exact import RationalMatrix, integer_kernel_vector, rank_exact
from .graph import MAX_CANONICAL_VERTICES, Graph, delete_vertex
from .spectral import graph_decomposition, spectral_profile

MAIN_ANGLE_TOL = 1e-6


class NotAlmostControllableError(ValueError):
    pass


class Controllability(str, Enum):
    CONTROLLABLE = "controllable"
    ALMOST_CONTROLLABLE = "almost_controllable"
    NEITHER = "neither"


class Clause(str, Enum):
    HS = "Hs"
    HA = "Ha_with_Q0b_excluded"
    CONTROLLABLE_CARD = "controllable_card"
    NONE = "none"


@dataclass(frozen=True)
class WalkMatrixData:
    W: tuple[tuple[int, ...], ...]  # row-major, column j is A^j e
    rank: int

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.W)


def walk_matrix(g: Graph) -> WalkMatrixData:
    if g.n < 1:
        raise ValueError("walk matrix of the empty graph")
    n = g.n
    adj = g.adjacency()
    cols = [[1] * n]
    for _ in range(n - 1):
        prev = cols[-1]
        cols.append([sum(prev[j] for j in range(n) if adj[i][j]) for i in range(n)])
    w = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return WalkMatrixData(w, rank_exact(w))


def main_eigenvalue_count(g: Graph) -> int:
    return walk_matrix(g).rank


def numeric_main_eigenvalue_count(g: Graph, tol: float = MAIN_ANGLE_TOL) -> int:
    """Clusters whose eigenspace is not orthogonal to e, counted in floating point."""
    d = graph_decomposition(g)
    return int(np.sum(spectral_profile(d, np.zeros(g.n)).mu > tol))


def classify_controllability(g: Graph) -> Controllability:
    r = main_eigenvalue_count(g)
    if r == g.n:
        return Controllability.CONTROLLABLE
    if r == g.n - 1:
        return Controllability.ALMOST_CONTROLLABLE
    return Controllability.NEITHER


def householder(xi) -> RationalMatrix:
    """I - 2 xi xi^T / (xi^T xi), exactly."""
    n = len(xi)
    norm2 = sum(Fraction(x) * x for x in xi)
    if norm2 == 0:
        raise ValueError("zero vector")
    return RationalMatrix.from_rows(
        [[int(i == j) - 2 * Fraction(xi[i]) * xi[j] / norm2 for j in range(n)] for i in range(n)], n)


def _is_permutation(q: RationalMatrix) -> bool:
    # an orthogonal 0/1 matrix is a permutation matrix
    return all(x in (0, 1) for r in q.rows for x in r)


@dataclass(frozen=True)
class Q0Certificate:
    xi: tuple[int, ...]
    Q0: RationalMatrix
    is_permutation: bool

    @property
    def symmetry_class(self) -> str:
        return "Hs" if self.is_permutation else "Ha"

    def to_dict(self) -> dict:
        return {
            "xi": list(self.xi),
            "Q0": [[str(x) for x in r] for r in self.Q0.rows],
            "is_permutation": self.is_permutation,
            "symmetry_class": self.symmetry_class,
        }


def compute_q0(g: Graph) -> Q0Certificate:
    wd = walk_matrix(g)
    if wd.rank != g.n - 1:
        raise NotAlmostControllableError(f"walk matrix has rank {wd.rank}, graph is not almost controllable")
    xi = integer_kernel_vector(RationalMatrix.from_rows(wd.W).T)
    q0 = householder(xi)
    n = g.n
    a = RationalMatrix.from_rows(g.adjacency(), n)
    eye = RationalMatrix.identity(n)
    checks = {
        "symmetric": q0.T == q0,
        "involution": q0 @ q0 == eye,
        "regular": q0.apply([1] * n) == (1,) * n,
        "commutes": q0.T @ a @ q0 == a,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise ArithmeticError(f"Q0 invariants failed: {failed}")
    return Q0Certificate(xi, q0, _is_permutation(q0))


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations ``p`` (vertex i -> p[i]) preserving adjacency."""
    n = g.n
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"brute-force automorphisms limited to n <= {MAX_CANONICAL_VERTICES}")
    out: list[tuple[int, ...]] = []
    degs = [g.degree(v) for v in range(n)]

    def extend(p: list[int], used: int):
        i = len(p)
        if i == n:
            out.append(tuple(p))
            return
        for v in range(n):
            if (used >> v) & 1 or degs[v] != degs[i]:
                continue
            if all(g.has_edge(i, j) == g.has_edge(v, p[j]) for j in range(i)):
                p.append(v)
                extend(p, used | (1 << v))
                p.pop()

    extend([], 0)
    return out


def permutation_matrix(p: tuple[int, ...]) -> RationalMatrix:
    """Matrix with ``P[i][p[i]] = 1``; P^T A P = A exactly when ``p`` is an automorphism."""
    n = len(p)
    return RationalMatrix.from_rows([[int(p[i] == j) for j in range(n)] for i in range(n)], n)


def permutation_solutions(g: Graph) -> list[RationalMatrix]:
    """Permutation matrices P with P^T A P = A, i.e. the automorphism group."""
    return [permutation_matrix(p) for p in automorphisms(g)]


def brute_force_permutation_solutions(g: Graph) -> list[RationalMatrix]:
    """Same as :func:`permutation_solutions` by testing all n! matrices."""
    n = g.n
    a = RationalMatrix.from_rows(g.adjacency(), n)
    out = []
    for p in permutations(range(n)):
        pm = permutation_matrix(p)
        if pm.T @ a @ pm == a:
            out.append(pm)
    return out


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ReconstructibilityCertificate:
    certified: bool
    witness_vertex: int | None = None
    clause: Clause = Clause.NONE
    xi: tuple[int, ...] | None = None
    q0_b: tuple[Fraction, ...] | None = None
    b: tuple[int, ...] | None = None
    card_classes: tuple[str, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "witness_vertex": self.witness_vertex,
            "clause": self.clause.value,
            "xi": None if self.xi is None else list(self.xi),
            "q0_b": None if self.q0_b is None else [_frac_str(x) for x in self.q0_b],
            "b": None if self.b is None else list(self.b),
        }


def reconstructibility_certificate(g: Graph) -> ReconstructibilityCertificate:
    """Scan cards G - u in vertex order and return the first that certifies G.

    A card certifies when it is controllable, when its Q0 is a permutation,
    or when Q0 b is not a 0/1 vector other than b (b the neighborhood of u).
    """
    if g.n < 3:
        raise ValueError("reconstructibility certificates need n >= 3")
    seen = []
    for u in range(g.n):
        card = delete_vertex(g, u)
        cls = classify_controllability(card)
        seen.append(cls.value)
        b = tuple(int(g.has_edge(u, v)) for v in range(g.n) if v != u)
        if cls == Controllability.CONTROLLABLE:
            return ReconstructibilityCertificate(True, u, Clause.CONTROLLABLE_CARD, b=b, card_classes=tuple(seen))
        if cls != Controllability.ALMOST_CONTROLLABLE:
            continue
        cert = compute_q0(card)
        q0b = cert.Q0.apply(b)
        if cert.is_permutation:
            return ReconstructibilityCertificate(True, u, Clause.HS, cert.xi, q0b, b, tuple(seen))
        binary = all(x in (0, 1) for x in q0b)
        if not (binary and q0b != b):
            return ReconstructibilityCertificate(True, u, Clause.HA, cert.xi, q0b, b, tuple(seen))
    return ReconstructibilityCertificate(False, card_classes=tuple(seen))
