"""Builtin cases C-47 and C-55 and certificate file loading."""

from __future__ import annotations

import hashlib
from pathlib import Path

from .certificate_data import BUILTIN_DATA
from .certify import Certificate, Expected
from .exactmath import ExactMatrix, ExactVector
from .hypergeo import HyperCase, ParameterMultiset, build_case


class UnknownCase(KeyError):
    pass


def word_checksum(word: str) -> str:
    return hashlib.sha256(word.encode("ascii")).hexdigest()


def _check_transcription(label: str, entry: dict) -> None:
    if word_checksum(entry["word"]) != entry["sha256"]:
        raise RuntimeError(f"builtin witness word for {label} is corrupted")


def builtin_labels() -> list:
    return list(BUILTIN_DATA)


def builtin_certificate(label: str, pin_omega: bool = True) -> Certificate:
    """Certificate with the published data; ``pin_omega`` embeds the form."""
    try:
        e = BUILTIN_DATA[label]
    except KeyError:
        raise UnknownCase(f"unknown case {label!r}; builtin cases: {', '.join(BUILTIN_DATA)}") from None
    _check_transcription(label, e)
    omega = ExactMatrix.from_rows(e["omega"])
    expected = Expected(
        det_omega=e["det_omega"],
        x1=ExactVector(tuple(e["x1"])),
        x2=ExactVector(tuple(e["x2"])),
        omega=omega,
    )
    return Certificate(
        label=label,
        alpha=ParameterMultiset.parse(e["alpha"]),
        beta=ParameterMultiset.parse(e["beta"]),
        word=e["word"],
        omega=omega if pin_omega else None,
        expected=expected,
    )


def builtin_case(label: str) -> HyperCase:
    cert = builtin_certificate(label, pin_omega=False)
    return build_case(label, cert.alpha, cert.beta)


def load_certificate(path) -> Certificate:
    return Certificate.loads(Path(path).read_text())


def save_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(cert.dumps())


def resolve_case(label: str | None = None, alpha: str | None = None,
                 beta: str | None = None) -> HyperCase:
    """Builtin case by label, or a user case from parameter text."""
    if alpha is not None or beta is not None:
        if alpha is None or beta is None:
            raise ValueError("both --alpha and --beta are required for a user case")
        return build_case(label or "user", alpha, beta)
    if label is None:
        raise ValueError("no case given")
    return builtin_case(label)
