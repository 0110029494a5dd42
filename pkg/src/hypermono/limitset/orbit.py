"""Enumeration of the partial orbit of the attracting line under all freely
reduced words of bounded length.

A word w = w' s gets the representative M(s) v(w') / |M(s) v(w')|.  Every
matrix-vector product and norm is done with elementwise numpy operations in
a fixed order, so a point's value depends only on its word and never on the
batch it was computed in or on which worker computed it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .spectral import dominant_eigenvector, eta_matrix, to_float

# tag codes; 0 is the seed which has no final generator
TAG_NAMES = ("seed", "a", "A", "b", "B")
LETTERS = "aAbB"
TAG_OF = {ch: i + 1 for i, ch in enumerate(LETTERS)}
INVERSE_TAG = np.array([0, 2, 1, 4, 3], dtype=np.uint8)

# levels expanded in one vectorized batch below each work item
BATCH_LEVELS = 8


def orbit_size(depth: int) -> int:
    """Number of freely reduced words of length <= depth: 2 * 3^N - 1."""
    return 1 if depth == 0 else 2 * 3 ** depth - 1


@dataclass
class OrbitChunk:
    points: np.ndarray   # (k, n) unit vectors
    tags: np.ndarray     # (k,) uint8 codes into TAG_NAMES
    lengths: np.ndarray  # (k,) uint8 word lengths
    words: list | None = None

    def __len__(self):
        return len(self.tags)


@dataclass(frozen=True)
class OrbitPoint:
    vector: np.ndarray
    tag: str
    length: int
    word: str | None = None


@dataclass
class OrbitConfig:
    case: object
    depth: int
    chart: Sequence[float] | str = "auto"
    cutoff: float = 1e-3
    threads: int = 1
    with_words: bool = False
    batch_levels: int = BATCH_LEVELS
    seed_vector: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if not self.cutoff > 0:
            raise ValueError("cutoff must be > 0")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


def attracting_vector(case) -> np.ndarray:
    return dominant_eigenvector(eta_matrix(case)).vector


def generator_floats(case) -> np.ndarray:
    """Float generators indexed by tag code (index 0 unused)."""
    n = case.A.rows
    gens = np.zeros((5, n, n))
    for ch, t in TAG_OF.items():
        gens[t] = to_float(case.generator(ch))
    return gens


def apply_normalized(M: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Rows of V mapped by M and rescaled to unit norm, batch-size independent."""
    n = M.shape[0]
    out = np.empty_like(V)
    for i in range(n):
        acc = M[i, 0] * V[:, 0]
        for j in range(1, n):
            acc = acc + M[i, j] * V[:, j]
        out[:, i] = acc
    sq = out[:, 0] * out[:, 0]
    for i in range(1, n):
        sq = sq + out[:, i] * out[:, i]
    return out / np.sqrt(sq)[:, None]


def _expand(gens, root: np.ndarray, root_tag: int, root_len: int, levels: int,
            root_word: str | None) -> OrbitChunk:
    """The subtree of depth ``levels`` below one node, root included."""
    V = root[None, :]
    tags = np.array([root_tag], dtype=np.uint8)
    lens = [np.full(1, root_len, dtype=np.uint8)]
    all_V, all_tags = [V], [tags]
    words = [root_word] if root_word is not None else None
    cur_words = words
    for lev in range(1, levels + 1):
        newV, newT, newW = [], [], []
        for t in range(1, 5):
            sel = tags != INVERSE_TAG[t]
            if not sel.any():
                continue
            newV.append(apply_normalized(gens[t], V[sel]))
            newT.append(np.full(int(sel.sum()), t, dtype=np.uint8))
            if words is not None:
                ch = LETTERS[t - 1]
                newW.extend(w + ch for w, s in zip(cur_words, sel) if s)
        V = np.concatenate(newV)
        tags = np.concatenate(newT)
        all_V.append(V)
        all_tags.append(tags)
        lens.append(np.full(len(tags), root_len + lev, dtype=np.uint8))
        if words is not None:
            cur_words = newW
            words = words + newW
    return OrbitChunk(np.concatenate(all_V), np.concatenate(all_tags), np.concatenate(lens), words)


def _prefix_words(length: int) -> list:
    """Freely reduced words of exactly ``length`` in depth-first order."""
    out = [""]
    for _ in range(length):
        out = [w + ch for w in out for ch in LETTERS
               if not w or TAG_OF[w[-1]] != INVERSE_TAG[TAG_OF[ch]]]
    return out


def _walk(gens, seed: np.ndarray, word: str) -> np.ndarray:
    v = seed[None, :]
    for ch in word:
        v = apply_normalized(gens[TAG_OF[ch]], v)
    return v[0]


def enumerate_orbit(config: OrbitConfig) -> Iterator[OrbitChunk]:
    """Stream every node of the reduced-word tree up to ``config.depth``.

    The top of the tree is expanded in one batch; each node at the split
    depth is an independent work item that recomputes its representative
    from the seed, so the output (including its order) is the same for any
    thread count.
    """
    case = config.case
    gens = generator_floats(case)
    seed = config.seed_vector if config.seed_vector is not None else attracting_vector(case)
    seed = np.asarray(seed, dtype=np.float64)
    seed = seed / np.sqrt(np.sum(seed * seed))
    N = config.depth
    split = max(2, N - config.batch_levels)
    if N < split:
        yield _expand(gens, seed, 0, 0, N, "" if config.with_words else None)
        return
    yield _expand(gens, seed, 0, 0, split - 1, "" if config.with_words else None)

    levels = N - split

    def task(word):
        root = _walk(gens, seed, word)
        return _expand(gens, root, TAG_OF[word[-1]], len(word), levels,
                       word if config.with_words else None)

    prefixes = _prefix_words(split)
    if config.threads == 1:
        for w in prefixes:
            yield task(w)
        return
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        window = 4 * config.threads
        pending = [pool.submit(task, w) for w in prefixes[:window]]
        nxt = window
        while pending:
            chunk = pending.pop(0).result()
            if nxt < len(prefixes):
                pending.append(pool.submit(task, prefixes[nxt]))
                nxt += 1
            yield chunk


def iter_points(chunks) -> Iterator[OrbitPoint]:
    for c in chunks:
        for i in range(len(c)):
            yield OrbitPoint(c.points[i], TAG_NAMES[c.tags[i]], int(c.lengths[i]),
                             None if c.words is None else c.words[i])


def collect(chunks) -> OrbitChunk:
    chunks = list(chunks)
    words = None
    if chunks and chunks[0].words is not None:
        words = [w for c in chunks for w in c.words]
    return OrbitChunk(np.concatenate([c.points for c in chunks]),
                      np.concatenate([c.tags for c in chunks]),
                      np.concatenate([c.lengths for c in chunks]), words)
