"""Render limit-set pictures for the builtin cases at a range of depths.

Writes one PNG per (case, depth) into the output directory and prints the
point counts, chart losses, top PCA variances and wall time.
"""

import argparse
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

from hypermono.limitset import Canvas, OrbitConfig, run_pipeline
from hypermono.registry import builtin_case, builtin_labels


@dataclass
class Config:
    out_dir: Path = Path("renders")
    depths: list = field(default_factory=lambda: [8, 10, 12])
    size: int = 1024
    blend: float = 0.15
    threads: int = os.cpu_count() or 1
    cutoff: float = 1e-3


def run(cfg: Config):
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for label in builtin_labels():
        case = builtin_case(label)
        for depth in cfg.depths:
            png = cfg.out_dir / f"{label}_N{depth}.png"
            t0 = time.perf_counter()
            res = run_pipeline(OrbitConfig(case, depth, cutoff=cfg.cutoff, threads=cfg.threads),
                               image_out=png, canvas=Canvas(cfg.size, cfg.size, alpha=cfg.blend))
            dt = time.perf_counter() - t0
            var = " ".join(f"{v:.3g}" for v in res.pca.variances)
            print(f"{label} N={depth}: {res.emitted} points, {res.emitted - res.kept} off-chart, "
                  f"variances {var}, {dt:.1f} s -> {png}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    ap.add_argument("--depths", type=int, nargs="+", default=None)
    ap.add_argument("--size", type=int, default=Config.size)
    ap.add_argument("--threads", type=int, default=None)
    a = ap.parse_args()
    cfg = Config(out_dir=a.out_dir, size=a.size)
    if a.depths:
        cfg.depths = a.depths
    if a.threads:
        cfg.threads = a.threads
    run(cfg)
