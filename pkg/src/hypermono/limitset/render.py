"""Additive-alpha scatter rendering of colored orbit projections to PNG."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from PIL import Image

# indexed by tag code: seed, a, A, b, B
COLORS = np.array([
    (128, 128, 128),  # seed: gray
    (230, 30, 30),    # a: red
    (245, 220, 30),   # A: yellow
    (30, 190, 60),    # b: green
    (40, 90, 255),    # B: blue
], dtype=np.float64)


@dataclass
class Canvas:
    width: int = 1024
    height: int = 1024
    window: tuple | None = None   # (xmin, xmax, ymin, ymax) in projected coordinates
    alpha: float = 0.15
    axes: tuple = (0, 1)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("canvas must be at least 1x1")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must be in (0, 1]")
        if self.window is not None:
            xmin, xmax, ymin, ymax = self.window
            if not (xmax > xmin and ymax > ymin):
                raise ValueError("window must satisfy xmin < xmax and ymin < ymax")


def auto_window(xy: np.ndarray, lo: float = 0.005, hi: float = 0.995, margin: float = 0.05) -> tuple:
    """Quantile box around a sample of 2D points; unit box around a lone point."""
    xy = np.atleast_2d(xy)
    if len(xy) == 0:
        raise ValueError("cannot choose a window for an empty sample")
    box = []
    for k in range(2):
        a, b = np.quantile(xy[:, k], [lo, hi])
        if b - a <= 1e-12 * max(1.0, abs(a), abs(b)):
            c = 0.5 * (a + b)
            a, b = c - 1.0, c + 1.0
        pad = margin * (b - a)
        box += [a - pad, b + pad]
    return tuple(float(v) for v in box)


class Rasterizer:
    """Per-color hit counts on a pixel grid; fixed input order gives fixed output."""

    def __init__(self, canvas: Canvas, window: tuple):
        self.canvas = canvas
        self.window = tuple(float(v) for v in window)
        self.counts = np.zeros((len(COLORS), canvas.height, canvas.width), dtype=np.int64)
        self.total = 0

    def add(self, xy: np.ndarray, tags: np.ndarray) -> None:
        xy = np.atleast_2d(xy)
        if len(xy) == 0:
            return
        self.total += len(xy)
        W, H = self.canvas.width, self.canvas.height
        xmin, xmax, ymin, ymax = self.window
        col = np.floor((xy[:, 0] - xmin) / (xmax - xmin) * W).astype(np.int64)
        row = np.floor((ymax - xy[:, 1]) / (ymax - ymin) * H).astype(np.int64)
        ok = (col >= 0) & (col < W) & (row >= 0) & (row < H)
        flat = tags[ok].astype(np.int64) * (H * W) + row[ok] * W + col[ok]
        self.counts += np.bincount(flat, minlength=self.counts.size).reshape(self.counts.shape)

    def image(self) -> np.ndarray:
        counts = self.counts.astype(np.float64)
        total = counts.sum(axis=0)
        opacity = 1.0 - (1.0 - self.canvas.alpha) ** total
        safe = np.where(total > 0, total, 1.0)
        mix = np.einsum("khw,kc->hwc", counts, COLORS) / safe[..., None]
        return np.clip(np.rint(mix * opacity[..., None]), 0, 255).astype(np.uint8)

    def save(self, path) -> None:
        if self.total == 0:
            raise ValueError("nothing to render")
        Image.fromarray(self.image(), mode="RGB").save(path, format="PNG")


def render_scatter(xy: np.ndarray, tags: np.ndarray, out, canvas: Canvas | None = None) -> tuple:
    """Render projected points (already reduced to the two plotted axes).

    Returns the window used.
    """
    canvas = canvas or Canvas()
    xy = np.atleast_2d(np.asarray(xy, dtype=np.float64))
    if xy.size == 0:
        raise ValueError("empty point stream")
    window = canvas.window or auto_window(xy)
    r = Rasterizer(canvas, window)
    r.add(xy, np.asarray(tags))
    r.save(out)
    return window
