"""Affine-chart projection and streaming PCA with a cyclic Jacobi eigensolver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class AllPointsDiscarded(ValueError):
    pass


class TooFewPoints(ValueError):
    pass


def auto_chart(seed: np.ndarray) -> np.ndarray:
    """Coordinate functional of the largest-magnitude component of the seed."""
    ell = np.zeros(len(seed))
    ell[int(np.argmax(np.abs(seed)))] = 1.0
    return ell


def project_chart(points: np.ndarray, ell, cutoff: float = 1e-3, require_nonempty: bool = True):
    """Map v -> v / ell(v) for |ell(v)| >= cutoff.

    Returns (projected points, boolean mask of kept rows).
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be > 0")
    ell = np.asarray(ell, dtype=np.float64)
    points = np.atleast_2d(points)
    lv = points @ ell
    keep = np.abs(lv) >= cutoff
    if require_nonempty and not keep.any():
        raise AllPointsDiscarded("every point is within the cutoff of the chart's hyperplane at infinity")
    return points[keep] / lv[keep][:, None], keep


def jacobi_eigh(S: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvectors as columns).  Sweeps stop
    when the off-diagonal Frobenius norm is below ``tol`` times the total.
    """
    A = np.array(S, dtype=np.float64)
    n = A.shape[0]
    V = np.eye(n)
    total = np.sqrt(np.sum(A * A))
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum((A - np.diag(np.diag(A))) ** 2))
        if off <= tol * total or total == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    # hypot avoids overflow of theta**2 for tiny apq
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                J = np.eye(n)
                J[p, p] = J[q, q] = c
                J[p, q] = s
                J[q, p] = -s
                A = J.T @ A @ J
                V = V @ J
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]
    # deterministic sign: largest-magnitude coordinate positive
    for k in range(n):
        i = int(np.argmax(np.abs(V[:, k])))
        if V[i, k] < 0:
            V[:, k] = -V[:, k]
    return w, V


@dataclass
class PcaResult:
    mean: np.ndarray
    components: np.ndarray   # (3, n), rows orthonormal
    variances: np.ndarray    # (3,), nonincreasing
    all_variances: np.ndarray
    count: int

    def project(self, points: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(points) - self.mean) @ self.components.T


class StreamingPCA:
    """Single-pass mean and covariance, merged batch by batch (Chan et al.)."""

    def __init__(self, dim: int):
        self.n = 0
        self.mean = np.zeros(dim)
        self.m2 = np.zeros((dim, dim))

    def update(self, X: np.ndarray) -> None:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        k = len(X)
        if k == 0:
            return
        bm = X.mean(axis=0)
        D = X - bm
        bm2 = D.T @ D
        delta = bm - self.mean
        tot = self.n + k
        self.m2 = self.m2 + bm2 + np.outer(delta, delta) * (self.n * k / tot)
        self.mean = self.mean + delta * (k / tot)
        self.n = tot

    def covariance(self) -> np.ndarray:
        return self.m2 / self.n

    def result(self, k: int = 3) -> PcaResult:
        if self.n < 4:
            raise TooFewPoints(f"need at least 4 points for PCA, got {self.n}")
        w, V = jacobi_eigh(self.covariance())
        return PcaResult(self.mean.copy(), V[:, :k].T.copy(), w[:k].copy(), w, self.n)


def pca_top3(points: np.ndarray) -> PcaResult:
    points = np.atleast_2d(points)
    acc = StreamingPCA(points.shape[1])
    acc.update(points)
    return acc.result(3)
