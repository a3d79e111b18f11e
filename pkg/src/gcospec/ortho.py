"""Construction and certification of regular orthogonal conjugators.

Given generalized cospectral graphs G, H and neighborhood vectors b, c such
that G + b and H + c are generalized cospectral too, :func:`construct_q`
builds an orthogonal Q with Q^T A(G) Q = A(H), Q^T e = e and Q^T b = c. The
matrix is assembled eigenspace by eigenspace: inside every eigenspace a small
orthogonal map carries the pair (P^T b, P^T e) onto (R^T c, R^T e), and the
blocks are glued as Q = sum_i P_i Q_i^T R_i^T.

Certificates are numeric, but acceptance also demands that rounding
Q^T A(G) Q entrywise reproduces A(H) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cospec import is_generalized_cospectral, is_rooted_generalized_cospectral
from .graph import Graph, RootedGraph, overgraph, split_root
from .spectral import graph_decomposition

CERT_TOL = 1e-7
GRAM_TOL = 1e-6
DEGENERATE_TOL = 1e-9


class PreconditionError(ValueError):
    pass


class GramMismatchError(ValueError):
    pass


def _maxabs(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _extend(frame: list[np.ndarray], v: np.ndarray) -> np.ndarray:
    # two passes of classical Gram-Schmidt
    r = v.astype(float).copy()
    for _ in range(2):
        for u in frame:
            r -= (u @ r) * u
    return r


def _complete(frame: list[np.ndarray], k: int) -> np.ndarray:
    frame = list(frame)
    for j in range(k):
        if len(frame) == k:
            break
        r = _extend(frame, np.eye(k)[j])
        nr = np.linalg.norm(r)
        if nr > DEGENERATE_TOL:
            frame.append(r / nr)
    if len(frame) != k:
        raise ArithmeticError("could not complete the frame to an orthonormal basis")
    return np.column_stack(frame) if k else np.zeros((0, 0))


def align_frames(x1, x2, y1, y2, gram_tol: float = CERT_TOL) -> np.ndarray:
    """Orthogonal M with M x1 = y1 and M x2 = y2.

    Requires the Gram matrices of (x1, x2) and (y1, y2) to agree within
    ``gram_tol``. Directions whose Gram-Schmidt residual is at most 1e-9 are
    dropped, and both frames are completed with standard basis vectors in
    index order.
    """
    xs = [np.asarray(x1, dtype=float), np.asarray(x2, dtype=float)]
    ys = [np.asarray(y1, dtype=float), np.asarray(y2, dtype=float)]
    k = xs[0].shape[0]
    if any(v.shape != (k,) for v in xs + ys):
        raise ValueError("all four vectors must have the same dimension")
    gx = np.array([[a @ b for b in xs] for a in xs])
    gy = np.array([[a @ b for b in ys] for a in ys])
    if _maxabs(gx - gy) > gram_tol:
        raise GramMismatchError(f"Gram matrices differ by {_maxabs(gx - gy):.3g} > {gram_tol:g}")
    u: list[np.ndarray] = []
    v: list[np.ndarray] = []
    for x, y in zip(xs, ys):
        rx, ry = _extend(u, x), _extend(v, y)
        nx, ny = np.linalg.norm(rx), np.linalg.norm(ry)
        if min(nx, ny) > DEGENERATE_TOL:
            u.append(rx / nx)
            v.append(ry / ny)
    return _complete(v, k) @ _complete(u, k).T


@dataclass(frozen=True)
class OrthogonalCertificate:
    Q: np.ndarray
    residual_orth: float
    residual_conj: float
    residual_e: float
    residual_b: float | None
    rounded_exact: bool
    verified: bool
    tol: float = CERT_TOL

    @property
    def residuals(self) -> dict[str, float | None]:
        return {
            "orth": self.residual_orth,
            "conj": self.residual_conj,
            "e": self.residual_e,
            "b": self.residual_b,
        }

    def to_dict(self) -> dict:
        return {
            "Q": [[_fmt(x) for x in row] for row in self.Q],
            "residuals": {k: (None if r is None else _fmt(r)) for k, r in self.residuals.items()},
            "rounded_exact": self.rounded_exact,
            "verified": self.verified,
            "tol": _fmt(self.tol),
        }


def certify(q, a_g, a_h, b=None, c=None, tol: float = CERT_TOL) -> OrthogonalCertificate:
    """Compute all residuals of ``q`` from scratch and decide acceptance."""
    q = np.asarray(q, dtype=float)
    a_g = np.asarray(a_g, dtype=float)
    a_h = np.asarray(a_h, dtype=float)
    n = a_g.shape[0]
    if q.shape != (n, n) or a_h.shape != (n, n):
        raise ValueError(f"dimension mismatch: Q {q.shape}, A(G) {a_g.shape}, A(H) {a_h.shape}")
    conj = q.T @ a_g @ q
    e = np.ones(n)
    r_orth = _maxabs(q.T @ q - np.eye(n))
    r_conj = _maxabs(conj - a_h)
    r_e = _maxabs(q.T @ e - e)
    r_b = None
    if b is not None or c is not None:
        if b is None or c is None:
            raise ValueError("b and c must be given together")
        b = np.asarray(b, dtype=float)
        c = np.asarray(c, dtype=float)
        if b.shape != (n,) or c.shape != (n,):
            raise ValueError(f"b and c must have dimension {n}")
        r_b = _maxabs(q.T @ b - c)
    rounded = bool(np.array_equal(np.rint(conj), a_h)) if n else True
    ok = rounded and all(r <= tol for r in (r_orth, r_conj, r_e, r_b) if r is not None)
    return OrthogonalCertificate(q, r_orth, r_conj, r_e, r_b, rounded, ok, tol)


def verify_certificate(cert: OrthogonalCertificate, a_g, a_h, b=None, c=None, tol: float | None = None) -> bool:
    return certify(cert.Q, a_g, a_h, b, c, cert.tol if tol is None else tol).verified


def _assemble(g: Graph, h: Graph, b: np.ndarray, c: np.ndarray, gram_tol: float) -> np.ndarray:
    dg, dh = graph_decomposition(g), graph_decomposition(h)
    if dg.multiplicities != dh.multiplicities or _maxabs(dg.values - dh.values) > gram_tol:
        raise GramMismatchError("numerical eigenvalue clusters of G and H do not line up")
    n = g.n
    e = np.ones(n)
    q = np.zeros((n, n))
    for cg, ch in zip(dg.clusters, dh.clusters):
        p, r = cg.basis, ch.basis
        qi = align_frames(p.T @ b, p.T @ e, r.T @ c, r.T @ e, gram_tol)
        q += p @ qi.T @ r.T
    return q


def construct_q(g: Graph, h: Graph, b: Sequence[int] | None = None, c: Sequence[int] | None = None,
                tol: float = CERT_TOL, gram_tol: float = GRAM_TOL) -> OrthogonalCertificate:
    """Regular orthogonal Q with Q^T A(g) Q = A(h) and Q^T b = c.

    ``b`` and ``c`` default to zero vectors, in which case only generalized
    cospectrality of ``g`` and ``h`` is required.
    """
    if g.n != h.n:
        raise PreconditionError("graphs have different orders")
    b = tuple(b) if b is not None else (0,) * g.n
    c = tuple(c) if c is not None else (0,) * h.n
    if len(b) != g.n or len(c) != h.n:
        raise ValueError(f"b and c must have dimension {g.n}")
    if not is_generalized_cospectral(g, h):
        raise PreconditionError("G and H are not generalized cospectral")
    if not is_generalized_cospectral(overgraph(g, b), overgraph(h, c)):
        raise PreconditionError("G + b and H + c are not generalized cospectral")
    bv, cv = np.array(b, dtype=float), np.array(c, dtype=float)
    q = _assemble(g, h, bv, cv, gram_tol)
    return certify(q, g.to_numpy(), h.to_numpy(), bv, cv, tol)


@dataclass(frozen=True)
class BlockCertificate:
    """diag(Q, 1) conjugating the root-last relabelings of two rooted graphs."""

    inner: OrthogonalCertificate
    full: np.ndarray
    outer: OrthogonalCertificate
    graph_a: Graph
    graph_b: Graph

    @property
    def verified(self) -> bool:
        return self.inner.verified and self.outer.verified

    def to_dict(self) -> dict:
        return {
            "inner": self.inner.to_dict(),
            "full": self.outer.to_dict(),
            "verified": self.verified,
        }


def construct_block_q(rg: RootedGraph, rh: RootedGraph, tol: float = CERT_TOL,
                      gram_tol: float = GRAM_TOL) -> BlockCertificate:
    if not is_rooted_generalized_cospectral(rg, rh).rooted_generalized:
        raise PreconditionError("rooted graphs are not rooted-generalized cospectral")
    ga, gb = rg.root_last().graph, rh.root_last().graph
    g1, b = split_root(rg)
    h1, c = split_root(rh)
    inner = construct_q(g1, h1, b, c, tol, gram_tol)
    n = ga.n
    full = np.eye(n)
    full[:n - 1, :n - 1] = inner.Q
    outer = certify(full, ga.to_numpy(), gb.to_numpy(), tol=tol)
    return BlockCertificate(inner, full, outer, ga, gb)
