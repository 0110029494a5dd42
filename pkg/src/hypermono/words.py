"""Freely reduced words over {A, B, a, b} and their exact evaluation.

A word l_1 l_2 ... l_k acts on column vectors letter by letter from the
left end, so its matrix is M(l_k) ... M(l_2) M(l_1).
"""

from __future__ import annotations

from .exactmath import ExactMatrix, mat_mul

ALPHABET = "ABab"
INVERSE_LETTER = {"A": "a", "a": "A", "B": "b", "b": "B"}


class InvalidWord(ValueError):
    pass


def free_reduce(letters: str) -> str:
    out = []
    for ch in letters:
        if out and out[-1] == INVERSE_LETTER[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


class Word:
    """Immutable freely reduced word."""

    __slots__ = ("letters",)

    def __init__(self, text: str = ""):
        bad = sorted({ch for ch in text if ch not in INVERSE_LETTER})
        if bad:
            raise InvalidWord(f"invalid letters {bad!r}; words use only A, B, a, b")
        self.letters = free_reduce(text)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return self.letters

    def __repr__(self):
        return f"Word({self.letters!r})"

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(("Word", self.letters))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return invert(self)


def parse_and_reduce(text: str) -> Word:
    """Strip whitespace, validate the alphabet and cancel inverse pairs."""
    return Word("".join(text.split()))


def invert(w: Word) -> Word:
    return Word("".join(INVERSE_LETTER[ch] for ch in reversed(w.letters)))


def evaluate(w: Word | str, case) -> ExactMatrix:
    """Matrix of ``w`` in ``case`` (anything with a ``generator(letter)`` method)."""
    if isinstance(w, str):
        w = parse_and_reduce(w)
    acc = ExactMatrix.identity(case.A.rows)
    for ch in w.letters:
        acc = mat_mul(case.generator(ch), acc)
    return acc


def reduced_words(length: int, alphabet: str = ALPHABET):
    """All freely reduced words of exactly ``length``, in shortlex order on ``alphabet``."""
    if length == 0:
        yield ""
        return
    for prefix in reduced_words(length - 1, alphabet):
        for ch in alphabet:
            if not prefix or prefix[-1] != INVERSE_LETTER[ch]:
                yield prefix + ch
