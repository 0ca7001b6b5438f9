import pytest

from logcy2.sampling import random_word
from logcy2.words import (
    Elementary,
    Linear,
    Word,
    WordSyntaxError,
    linear_from_literal,
    parse_word,
    word_to_text,
)


def test_parse_single_elementary():
    w = parse_word("E")
    assert w.letters == ((Elementary((0, 1)), 1),)


def test_free_reduction_cancels():
    assert parse_word("E * E^-1").is_empty()
    assert parse_word("A[1,1;0,1] * A[1,1;0,1]^-1").is_empty()


def test_grammar_roundtrip_with_powers():
    w = parse_word("A[1,0;1,1] * E[0,1]^2")
    assert len(w.letters) == 3
    assert word_to_text(w) == "A[1,0;1,1] * E^2"
    assert parse_word(word_to_text(w)) == w


def test_literal_convention():
    gen = linear_from_literal(1, 0, 1, 1)
    # action (x,y) -> (x^1 y^1, x^0 y^1): rays move by the transpose
    assert gen.mat == ((1, 1), (0, 1))


def test_parentheses_and_id():
    assert parse_word("id").is_empty()
    assert parse_word("(E * P)^-1") == (parse_word("E") * parse_word("P")).inverse()


def test_negative_exponents_and_powers():
    assert parse_word("E^-2") == parse_word("E^2").inverse()
    assert parse_word("E^0").is_empty()


def test_syntax_error_reports_position():
    with pytest.raises(WordSyntaxError):
        parse_word("E * * E")
    with pytest.raises(WordSyntaxError):
        parse_word("Q")
    with pytest.raises(WordSyntaxError):
        parse_word("E[1,2")


def test_nonunimodular_literal_rejected():
    with pytest.raises(WordSyntaxError):
        parse_word("A[1,2;3,4]")


def test_imprimitive_elementary_rejected():
    with pytest.raises(WordSyntaxError):
        parse_word("E[2,4]")


def test_macros_parse():
    assert len(parse_word("P").letters) == 2
    for name in ("r1", "r2", "r3"):
        assert not parse_word(name).is_empty()


def test_word_multiplication_reduces_at_seam():
    w1 = parse_word("A[0,1;1,0] * E")
    w2 = parse_word("E^-1 * A[0,1;1,0]")
    assert len((w1 * w2).letters) == 2


def test_inverse_is_involution(srng):
    for _ in range(20):
        w = random_word(srng, 4)
        assert w.inverse().inverse() == w
        assert (w * w.inverse()).is_empty()


def test_text_roundtrip_random(srng):
    for _ in range(30):
        w = random_word(srng, 5)
        assert parse_word(word_to_text(w)) == w
