"""Spectral data of eta = T B T for the builtin cases.

Prints the eigenvalue moduli, the gap |lambda1/lambda2| and the number of
power-iteration steps needed at several tolerances.
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from hypermono.limitset import NoConvergence, dominant_eigenvector, eta_matrix, spectral_gap
from hypermono.registry import builtin_case, builtin_labels


@dataclass
class Config:
    tolerances: list = field(default_factory=lambda: [1e-6, 1e-9, 1e-12])
    max_iter: int = 200


def run(cfg: Config):
    rows = []
    for label in builtin_labels():
        eta = eta_matrix(builtin_case(label))
        gap = spectral_gap(eta)
        steps = []
        for tol in cfg.tolerances:
            try:
                steps.append(dominant_eigenvector(eta, tol=tol, max_iter=cfg.max_iter).iterations)
            except NoConvergence:
                steps.append(None)
        moduli = np.sort(np.abs(gap.roots))[::-1]
        rows.append((label, gap.lambda1, gap.ratio, steps))
        print(f"{label}: lambda1 = {gap.lambda1:.12g}, |lambda1/lambda2| = {gap.ratio:.6f}")
        print("  moduli: " + " ".join(f"{m:.6g}" for m in moduli))
        print("  iterations: " + ", ".join(f"tol {t:g} -> {s}" for t, s in zip(cfg.tolerances, steps)))
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, nargs="+", default=None)
    ap.add_argument("--max-iter", type=int, default=Config.max_iter)
    a = ap.parse_args()
    cfg = Config(max_iter=a.max_iter)
    if a.tol:
        cfg.tolerances = a.tol
    run(cfg)
