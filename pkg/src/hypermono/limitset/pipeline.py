"""enumerate -> chart -> PCA -> export/render, streamed in two passes.

Pass one accumulates the PCA statistics and a strided sample of chart
points (for the render window).  Pass two re-enumerates, which is cheap and
bit-identical, projects onto the top principal components and writes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .export import CloudWriter
from .orbit import TAG_NAMES, OrbitConfig, attracting_vector, enumerate_orbit, orbit_size
from .pca import AllPointsDiscarded, PcaResult, StreamingPCA, auto_chart, project_chart
from .render import Canvas, Rasterizer, auto_window

log = logging.getLogger(__name__)

SAMPLE_TARGET = 200_000


@dataclass
class PipelineResult:
    emitted: int
    kept: int
    chart: np.ndarray
    seed: np.ndarray
    pca: PcaResult
    window: tuple | None = None
    tag_counts: dict | None = None


def _resolve(config: OrbitConfig) -> OrbitConfig:
    if config.seed_vector is None:
        config.seed_vector = attracting_vector(config.case)
    return config


def chart_functional(config: OrbitConfig) -> np.ndarray:
    if isinstance(config.chart, str):
        if config.chart != "auto":
            raise ValueError(f"unknown chart {config.chart!r}")
        return auto_chart(config.seed_vector)
    ell = np.asarray(config.chart, dtype=np.float64)
    if ell.shape != (len(config.seed_vector),):
        raise ValueError(f"chart functional needs {len(config.seed_vector)} coefficients")
    return ell


def run_pipeline(config: OrbitConfig, cloud_out=None, cloud_format: str = "text",
                 image_out=None, canvas: Canvas | None = None) -> PipelineResult:
    config = _resolve(config)
    ell = chart_functional(config)
    stride = max(1, orbit_size(config.depth) // SAMPLE_TARGET)

    acc = StreamingPCA(len(ell))
    emitted = kept = 0
    sample = []
    for chunk in enumerate_orbit(config):
        emitted += len(chunk)
        P, keep = project_chart(chunk.points, ell, config.cutoff, require_nonempty=False)
        acc.update(P)
        # global index stride keeps the sample independent of chunk boundaries
        take = ((kept + np.arange(len(P))) % stride) == 0
        sample.append(P[take])
        kept += len(P)
    if kept == 0:
        raise AllPointsDiscarded("no orbit point survived the chart cutoff")
    log.info("enumerated %d points, %d in chart", emitted, kept)
    pca = acc.result(3)
    result = PipelineResult(emitted, kept, ell, config.seed_vector, pca)

    if cloud_out is None and image_out is None:
        return result

    canvas = canvas or Canvas()
    raster = None
    if image_out is not None:
        ax = list(canvas.axes)
        window = canvas.window
        if window is None:
            window = auto_window(pca.project(np.concatenate(sample))[:, ax])
        raster = Rasterizer(canvas, window)
        result.window = window

    writer = CloudWriter(cloud_out, cloud_format) if cloud_out is not None else None
    counts = np.zeros(5, dtype=np.int64)
    try:
        for chunk in enumerate_orbit(config):
            P, keep = project_chart(chunk.points, ell, config.cutoff, require_nonempty=False)
            if len(P) == 0:
                continue
            xyz = pca.project(P)
            tags = chunk.tags[keep]
            counts += np.bincount(tags, minlength=5)
            if writer is not None:
                writer.write(xyz, tags, chunk.lengths[keep])
            if raster is not None:
                raster.add(xyz[:, list(canvas.axes)], tags)
    finally:
        if writer is not None:
            writer.close()
    if raster is not None:
        raster.save(image_out)
    result.tag_counts = {TAG_NAMES[i]: int(c) for i, c in enumerate(counts)}
    return result
