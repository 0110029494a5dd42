"""Power iteration and the exact-polynomial spectral-gap check."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..exactmath import ExactMatrix, char_poly, mat_mul


class NoConvergence(RuntimeError):
    pass


class DominantNotRealSimple(ValueError):
    pass


class PowerIteration(NamedTuple):
    vector: np.ndarray
    eigenvalue: float
    iterations: int


class SpectralGap(NamedTuple):
    lambda1: float
    ratio: float
    roots: np.ndarray


def to_float(M: ExactMatrix) -> np.ndarray:
    return np.array([[float(e) for e in M.row(i)] for i in range(M.rows)], dtype=np.float64)


def eta_matrix(case) -> ExactMatrix:
    """T B T with T = A^{-1} B, the loxodromic element used for the seed."""
    T = mat_mul(case.a, case.B)
    return mat_mul(mat_mul(T, case.B), T)


def _sign_align(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def dominant_eigenvector(M, tol: float = 1e-12, max_iter: int = 200, seed: int = 0) -> PowerIteration:
    """Normalized power iteration from a seeded random start.

    Converged when successive sign-aligned iterates differ by less than
    ``tol`` in max norm.
    """
    M = to_float(M) if isinstance(M, ExactMatrix) else np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v = _sign_align(v / np.linalg.norm(v))
    for k in range(1, max_iter + 1):
        w = M @ v
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            raise NoConvergence("iterate collapsed to zero or overflowed")
        w = _sign_align(w / nw)
        if np.max(np.abs(w - v)) < tol:
            lam = float(w @ (M @ w))
            return PowerIteration(w, lam, k)
        v = w
    raise NoConvergence(f"power iteration did not converge in {max_iter} steps "
                        "(no real simple dominant eigenvalue?)")


def aberth_roots(coeffs, tol: float = 1e-12, max_iter: int = 1000) -> np.ndarray:
    """All complex roots of a polynomial by Aberth-Ehrlich iteration.

    ``coeffs`` are low degree first.  Converged when every correction is
    below ``tol`` relative to the root magnitude (absolute near zero).
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=np.complex128)
    c = c / c[-1]
    # exact zero roots are split off so the iteration only sees nonzero ones
    nz = 0
    while nz < n and c[nz] == 0:
        nz += 1
    c = c[nz:]
    m = n - nz
    zeros = np.zeros(nz, dtype=np.complex128)
    if m == 0:
        return zeros
    p = c[::-1]  # high degree first for np.polyval
    dp = np.polyder(p)
    radius = 1 + np.max(np.abs(c[:-1]))
    angles = 2 * np.pi * np.arange(m) / m + 0.4
    z = 0.5 * radius * np.exp(1j * angles)
    for _ in range(max_iter):
        pz = np.polyval(p, z)
        dpz = np.polyval(dp, z)
        ratio = np.where(dpz != 0, pz / np.where(dpz != 0, dpz, 1), 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        s = np.sum(1 / diff, axis=1) - 1  # minus the filled diagonal
        denom = 1 - ratio * s
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1), ratio)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            return np.concatenate([z, zeros])
    raise NoConvergence(f"root finder did not converge in {max_iter} iterations")


def spectral_gap(M: ExactMatrix, tol: float = 1e-12) -> SpectralGap:
    """Dominant eigenvalue and |lambda1 / lambda2| from the exact characteristic polynomial."""
    poly = char_poly(M)
    roots = aberth_roots(poly.coeffs, tol=tol)
    order = np.argsort(-np.abs(roots), kind="stable")
    roots = roots[order]
    l1 = roots[0]
    scale = max(1.0, abs(l1))
    if abs(l1.imag) > 1e-8 * scale:
        raise DominantNotRealSimple(f"dominant root {l1} is not real")
    if len(roots) > 1 and abs(l1) - abs(roots[1]) <= 1e-8 * scale:
        raise DominantNotRealSimple(f"dominant modulus {abs(l1)} is not simple")
    l2 = abs(roots[1]) if len(roots) > 1 else 0.0
    ratio = float("inf") if l2 == 0 else abs(l1) / l2
    return SpectralGap(float(l1.real), ratio, roots)
