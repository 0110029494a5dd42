import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermono.exactmath import ExactMatrix, det, mat_inverse, mat_mul
from hypermono.words import InvalidWord, Word, evaluate, free_reduce, invert, parse_and_reduce, reduced_words
from published_values import W47, W55

I6 = ExactMatrix.identity(6)
letters = st.text(alphabet="ABab", max_size=12)


def test_cancellation():
    assert len(parse_and_reduce("Aa")) == 0
    assert len(parse_and_reduce("ABba")) == 0
    assert str(parse_and_reduce("AbBBa")) == "ABa"


def test_invalid_letter():
    with pytest.raises(InvalidWord):
        parse_and_reduce("ABx")


def test_builtin_word_lengths():
    assert len(parse_and_reduce(W47)) == 93
    assert len(parse_and_reduce(W55)) == 49
    # already freely reduced
    assert str(parse_and_reduce(W47)) == W47
    assert str(parse_and_reduce(W55)) == W55


def test_whitespace_in_listing():
    # the published listing wraps the 93-letter word across two lines
    assert str(parse_and_reduce(W47[:86] + "\n" + W47[86:])) == W47


def test_invert():
    assert str(invert(Word("AB"))) == "ba"
    assert str(invert(Word(""))) == ""
    w = parse_and_reduce(W47)
    assert invert(invert(w)) == w


def test_evaluation_convention(c47):
    assert evaluate(Word(""), c47) == I6
    # "Ba": B acts first, then a, so M = A^-1 B = T
    assert evaluate("Ba", c47) == mat_mul(mat_inverse(c47.A), c47.B)
    assert evaluate("Ba", c47) == c47.T
    assert evaluate("AB", c47) == mat_mul(c47.B, c47.A)


@settings(max_examples=40, deadline=None)
@given(letters)
def test_reduction_idempotent_and_reduced(text):
    r = free_reduce(text)
    assert free_reduce(r) == r
    assert not any(a != b and a.lower() == b.lower() for a, b in zip(r, r[1:]))
    # same parity and never longer: each cancellation removes two letters
    assert len(r) <= len(text) and (len(text) - len(r)) % 2 == 0


def test_anti_homomorphism_1000_words(c47):
    rng = random.Random(1234)
    for _ in range(1000):
        u = Word("".join(rng.choice("ABab") for _ in range(rng.randint(0, 4))))
        v = Word("".join(rng.choice("ABab") for _ in range(rng.randint(0, 4))))
        assert evaluate(u + v, c47) == mat_mul(evaluate(v, c47), evaluate(u, c47))


@settings(max_examples=50, deadline=None)
@given(letters)
def test_inverse_evaluates_to_inverse(c55, text):
    w = Word(text)
    M = evaluate(w, c55)
    assert mat_mul(evaluate(invert(w), c55), M) == I6
    assert M.is_integral()
    assert det(M) in (1, -1)


def test_reduced_word_counts():
    for n in range(6):
        words = list(reduced_words(n))
        assert len(words) == (1 if n == 0 else 4 * 3 ** (n - 1))
        assert all(free_reduce(w) == w for w in words)
