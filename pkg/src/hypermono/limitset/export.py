"""Point-cloud export.

Text: one point per line, ``x y z tag len`` with tag in {seed, a, A, b, B}.

Binary (little-endian):
    header  8 bytes  magic b"HMCLOUD1"
            2 bytes  uint16 record size (26)
            8 bytes  uint64 record count
    record  3 x float64 (x, y, z), uint8 tag code, uint8 word length

Tag codes: 0 seed, 1 a, 2 A, 3 b, 4 B.
"""

from __future__ import annotations

import struct

import numpy as np

from .orbit import TAG_NAMES

MAGIC = b"HMCLOUD1"
HEADER = struct.Struct("<8sHQ")
RECORD = np.dtype([("x", "<f8"), ("y", "<f8"), ("z", "<f8"), ("tag", "u1"), ("len", "u1")])
assert RECORD.itemsize == 26


class CloudWriter:
    def __init__(self, path, fmt: str = "text"):
        if fmt not in ("text", "binary"):
            raise ValueError(f"unknown cloud format {fmt!r}")
        self.fmt = fmt
        self.count = 0
        self._fh = open(path, "w" if fmt == "text" else "wb")
        if fmt == "binary":
            self._fh.write(HEADER.pack(MAGIC, RECORD.itemsize, 0))

    def write(self, xyz: np.ndarray, tags: np.ndarray, lengths: np.ndarray) -> None:
        xyz = np.atleast_2d(xyz)
        if self.fmt == "text":
            names = [TAG_NAMES[t] for t in tags]
            self._fh.writelines(
                f"{p[0]:.17g} {p[1]:.17g} {p[2]:.17g} {t} {n}\n"
                for p, t, n in zip(xyz.tolist(), names, lengths.tolist()))
        else:
            rec = np.empty(len(xyz), dtype=RECORD)
            rec["x"], rec["y"], rec["z"] = xyz[:, 0], xyz[:, 1], xyz[:, 2]
            rec["tag"], rec["len"] = tags, lengths
            self._fh.write(rec.tobytes())
        self.count += len(xyz)

    def close(self) -> None:
        if self.fmt == "binary":
            self._fh.seek(0)
            self._fh.write(HEADER.pack(MAGIC, RECORD.itemsize, self.count))
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_binary(path) -> np.ndarray:
    with open(path, "rb") as fh:
        magic, size, count = HEADER.unpack(fh.read(HEADER.size))
        if magic != MAGIC or size != RECORD.itemsize:
            raise ValueError(f"{path}: not a point-cloud file")
        data = np.frombuffer(fh.read(), dtype=RECORD)
    if len(data) != count:
        raise ValueError(f"{path}: header says {count} records, found {len(data)}")
    return data


def read_text(path):
    """(xyz array, tag names, lengths) from a text export."""
    xyz, tags, lens = [], [], []
    with open(path) as fh:
        for line in fh:
            x, y, z, t, n = line.split()
            xyz.append((float(x), float(y), float(z)))
            tags.append(t)
            lens.append(int(n))
    return np.array(xyz).reshape(-1, 3), tags, np.array(lens, dtype=int)
