"""Floating-point spectral data of symmetric matrices.

Eigenpairs come from a cyclic Jacobi iteration and are grouped into clusters
of numerically equal eigenvalues, each carrying an orthonormal basis of its
eigenspace. On top of that sit the main-angle profiles of a vector ``b`` and
the all-ones vector, and polynomial evaluators for the characteristic
polynomials of overgraphs and complements expressed through those profiles.

All rational-function identities are turned into polynomials by synthetic
division of the characteristic polynomial by ``(x - lambda_i)``; nothing is
ever evaluated pointwise near a pole.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exact import IntPolynomial
from .graph import Graph

MAX_SWEEPS = 100
CONVERGENCE_TOL = 1e-12
CLUSTER_TOL = 1e-7


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Cluster:
    value: float
    multiplicity: int
    basis: np.ndarray  # n x multiplicity, orthonormal columns

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


@dataclass(frozen=True)
class SpectralDecomp:
    clusters: tuple[Cluster, ...]
    order: int

    @property
    def values(self) -> np.ndarray:
        return np.array([c.value for c in self.clusters])

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.multiplicity for c in self.clusters)

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.order, self.order))
        for c in self.clusters:
            out += c.value * c.projector
        return out

    def eigenvalue_polynomial(self) -> np.ndarray:
        """Coefficients (ascending) of prod_i (x - lambda_i)^k_i."""
        roots = [c.value for c in self.clusters for _ in range(c.multiplicity)]
        return np.polynomial.polynomial.polyfromroots(roots) if roots else np.array([1.0])


@dataclass(frozen=True)
class SpectralProfile:
    """Per-cluster ``beta = |P^T b|^2``, ``mu = |P^T e|^2``, ``gamma = <P^T b, P^T e>``."""

    beta: np.ndarray
    mu: np.ndarray
    gamma: np.ndarray

    def max_difference(self, other: SpectralProfile) -> float:
        if len(self.beta) != len(other.beta):
            raise ValueError("profiles have different cluster counts")
        if not len(self.beta):
            return 0.0
        return float(max(np.max(np.abs(self.beta - other.beta)),
                         np.max(np.abs(self.mu - other.mu)),
                         np.max(np.abs(self.gamma - other.gamma))))


def jacobi_eigh(a: np.ndarray, tol: float = CONVERGENCE_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues and orthonormal eigenvectors of a symmetric matrix.

    Cyclic-by-row Jacobi rotations until the off-diagonal Frobenius norm is at
    most ``tol * ||a||_F``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n and np.max(np.abs(a - a.T)) > 1e-12:
        raise ValueError("matrix is not symmetric")
    v = np.eye(n)
    target = tol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def eigendecompose(a, tol: float = CONVERGENCE_TOL, cluster_tol: float = CLUSTER_TOL) -> SpectralDecomp:
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    vals, vecs = jacobi_eigh(a, tol)
    idx = np.argsort(vals, kind="stable")
    vals, vecs = vals[idx], vecs[:, idx]
    gap = cluster_tol * max(1.0, float(np.max(np.sum(np.abs(a), axis=1))) if n else 1.0)
    groups: list[list[int]] = []
    for k in range(n):
        if groups and vals[k] - vals[groups[-1][-1]] <= gap:
            groups[-1].append(k)
        else:
            groups.append([k])
    clusters = tuple(Cluster(float(np.mean(vals[g])), len(g), vecs[:, g]) for g in groups)
    return SpectralDecomp(clusters, n)


@lru_cache(maxsize=4096)
def graph_decomposition(g: Graph) -> SpectralDecomp:
    return eigendecompose(g.to_numpy())


def spectral_profile(d: SpectralDecomp, b: Sequence[float], e: Sequence[float] | None = None) -> SpectralProfile:
    b = np.asarray(b, dtype=float)
    e = np.ones(d.order) if e is None else np.asarray(e, dtype=float)
    if b.shape != (d.order,) or e.shape != (d.order,):
        raise ValueError(f"vectors must have dimension {d.order}")
    pb = [c.basis.T @ b for c in d.clusters]
    pe = [c.basis.T @ e for c in d.clusters]
    return SpectralProfile(
        beta=np.array([x @ x for x in pb]),
        mu=np.array([y @ y for y in pe]),
        gamma=np.array([x @ y for x, y in zip(pb, pe)]),
    )


def synthetic_divide(coeffs: np.ndarray, root: float) -> np.ndarray:
    """Quotient of the ascending-coefficient polynomial by ``(x - root)``.

    The remainder is discarded; callers divide only at (numerical) roots.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    deg = len(coeffs) - 1
    q = np.zeros(deg)
    acc = 0.0
    for k in range(deg, 0, -1):
        acc = coeffs[k] + acc * root
        q[k - 1] = acc
    return q


def _shift_x(coeffs: np.ndarray) -> np.ndarray:
    return np.concatenate([[0.0], coeffs])


def _pad(p: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros(length)
    out[:len(p)] = p
    return out


def _as_float(chi) -> np.ndarray:
    return np.array(chi.coeffs if isinstance(chi, IntPolynomial) else chi, dtype=float)


def charpoly_overgraph_spectral(d: SpectralDecomp, b: Sequence[int], chi) -> np.ndarray:
    """chi(G + b; x) = x chi(G; x) - sum_i beta_i chi(G; x) / (x - lambda_i)."""
    if any(x not in (0, 1) for x in b):
        raise ValueError("b must be a 0/1 vector")
    chi = _as_float(chi)
    prof = spectral_profile(d, b)
    out = _shift_x(chi)
    for c, beta in zip(d.clusters, prof.beta):
        out -= _pad(beta * synthetic_divide(chi, c.value), len(out))
    return out


def charpoly_complement_spectral(d: SpectralDecomp, chi) -> np.ndarray:
    """chi(co-G; x) = (-1)^n chi(G; -x-1) (1 - sum_i mu_i / (x + 1 + lambda_i))."""
    chi = _as_float(chi)
    n = d.order
    # p(x) = (-1)^n chi(-x - 1), whose roots are -1 - lambda_i
    P = np.polynomial.Polynomial
    p = _pad(P(chi)(P([-1.0, -1.0])).coef, n + 1) * (-1) ** n
    prof = spectral_profile(d, np.zeros(n))
    out = _pad(p, n + 1)
    for c, mu in zip(d.clusters, prof.mu):
        out -= _pad(mu * synthetic_divide(p, -1.0 - c.value), n + 1)
    return out


def charpoly_double_overgraph_spectral(d: SpectralDecomp, profile: SpectralProfile, chi) -> np.ndarray:
    """chi((G + b) + e; x) from the 2x2 determinant in the main-angle data.

    With F_s = sum_i s_i / (x - lambda_i) the polynomial is
    chi * [(x - F_beta)(x - F_mu) - (1 + F_gamma)^2]. Cross terms i != j use
    chi / ((x - lambda_i)(x - lambda_j)); the diagonal term carries
    beta_i mu_i - gamma_i^2, which vanishes for simple eigenvalues, and
    otherwise chi is divisible by (x - lambda_i)^2.
    """
    if len(profile.beta) != len(d.clusters):
        raise ValueError("profile and decomposition have different cluster counts")
    chi = _as_float(chi)
    n = d.order
    length = n + 3
    lam = [c.value for c in d.clusters]
    q1 = [synthetic_divide(chi, l) for l in lam]
    beta, mu, gamma = profile.beta, profile.mu, profile.gamma

    out = _pad(_shift_x(_shift_x(chi)), length)
    out -= _pad(chi, length)
    for i in range(len(lam)):
        out -= _pad(_shift_x((beta[i] + mu[i]) * q1[i]), length)
        out -= _pad(2.0 * gamma[i] * q1[i], length)
    for i in range(len(lam)):
        for j in range(len(lam)):
            w = beta[i] * mu[j] - gamma[i] * gamma[j]
            if i == j and d.clusters[i].multiplicity == 1:
                continue
            out += _pad(w * synthetic_divide(q1[i], lam[j]), length)
    return out
