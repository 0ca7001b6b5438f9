from fractions import Fraction

import pytest

from logcy2.birmap import (
    BirationalMap,
    NotVolumePreservingError,
    boundary_limit,
    character_from_letters,
    compose,
    elementary_realization,
    equal,
    realize,
    tropicalize,
    volume_character,
)
from logcy2.lattice import pl_apply, pl_compose, pl_elementary, PLMap
from logcy2.polyrat import Poly2, RatFunc2, normalize
from logcy2.sampling import random_primitive, random_word
from logcy2.words import Word, parse_word

X, Y, ONE = Poly2.x(), Poly2.y(), Poly2.const(1)


def test_realize_elementary():
    m = realize(parse_word("E"))
    assert m == BirationalMap(RatFunc2.x(), normalize(Y, ONE + X))


def test_realize_inversion_letter():
    m = realize(parse_word("A[-1,0;0,1]"))
    assert m == BirationalMap(normalize(ONE, X), RatFunc2.y())


def test_realize_pentagon():
    m = realize(parse_word("P"))
    assert m == BirationalMap(RatFunc2.y(), normalize(ONE + Y, X))


def test_realize_conjugated_elementary():
    m = realize(parse_word("E[0,-1]"))
    assert m == BirationalMap(RatFunc2.x(), normalize(Y * (ONE + X), X))


def test_equal_trivial_and_pentagon():
    assert equal(parse_word("E * E^-1"), Word())
    assert equal(parse_word("P^5"), Word())
    for k in range(1, 5):
        assert not equal(parse_word(f"P^{k}"), Word())


def test_oracle_soundness(srng):
    for _ in range(20):
        w1, w2 = random_word(srng, 2), random_word(srng, 2)
        assert equal(w1 * w2.inverse(), Word()) == equal(w1, w2)


def test_realize_is_homomorphism(srng):
    for _ in range(15):
        w1, w2 = random_word(srng, 2), random_word(srng, 2)
        assert realize(w1 * w2) == compose(realize(w1), realize(w2))


def test_conjugation_identity_holds_as_stated():
    lhs = parse_word("A[-1,0;0,1] * E * A[-1,0;0,1]")
    rhs = parse_word("A[1,1;0,1] * E")
    assert equal(lhs, rhs)


def test_volume_character_examples():
    assert volume_character(parse_word("E")) == 1
    assert volume_character(parse_word("A[-1,0;0,1]")) == -1
    assert volume_character(Word()) == 1


def test_volume_character_multiplicative(srng):
    for _ in range(25):
        w = random_word(srng, 6)
        assert volume_character(w) == character_from_letters(w)
        w2 = random_word(srng, 2)
        assert volume_character(w * w2) == volume_character(w) * volume_character(w2)


def test_elementary_realization_complement_independent(srng):
    for _ in range(25):
        n = random_primitive(srng, 4)
        from logcy2.lattice import complement_matrix

        cc, dd = complement_matrix(n)[1]
        k = srng.randint(-3, 3)
        alt = (cc + k * n[1], dd - k * n[0])
        assert elementary_realization(n) == elementary_realization(n, second_row=alt)


def test_elementary_realization_rejects_bad_row():
    with pytest.raises(ValueError):
        elementary_realization((0, 1), second_row=(1, 2))


# --- tropicalization -------------------------------------------------------------


def test_tropicalize_elementary():
    t = tropicalize(parse_word("E"))
    assert pl_apply(t, (-1, 0)) == (-1, 1)
    assert pl_apply(t, (0, 1)) == (0, 1)


def test_tropicalize_matches_manual_composition():
    w = parse_word("A[0,-1;1,0] * E")
    t = tropicalize(w)
    manual = pl_compose(tropicalize(parse_word("A[0,-1;1,0]")), pl_elementary())
    assert t == manual
    # spot-check three vectors against the exact boundary computation
    for n in ((1, 0), (-2, 1), (0, -1)):
        assert pl_apply(t, n) == boundary_limit(w, n).ray


def test_tropicalize_functorial(srng):
    for _ in range(25):
        w1, w2 = random_word(srng, 2), random_word(srng, 2)
        combined = tropicalize(w1 * w2)
        composed = pl_compose(tropicalize(w1), tropicalize(w2))
        for _ in range(10):
            v = (srng.randint(-9, 9), srng.randint(-9, 9))
            assert pl_apply(combined, v) == pl_apply(composed, v)


def test_tropicalize_linear_is_ray_action():
    t = tropicalize(parse_word("A[1,1;0,1]"))
    # (x,y) -> (x y, y): rays move by the transpose of the literal
    assert t == PLMap.linear(((1, 0), (1, 1)))


def test_tropicalization_is_bijection_on_lattice(srng):
    w = parse_word("E[1,0] * A[1,1;0,1] * E^-1 * A[0,-1;1,0]")
    forward = tropicalize(w)
    backward = tropicalize(w.inverse())
    for _ in range(100):
        v = (srng.randint(-25, 25), srng.randint(-25, 25))
        assert pl_apply(backward, pl_apply(forward, v)) == v


# --- boundary limits --------------------------------------------------------------


def test_boundary_limit_identity(srng):
    for _ in range(10):
        n = random_primitive(srng, 5)
        act = boundary_limit(Word(), n)
        assert act.ray == n
        assert act.coeff == 1 and act.exponent == 1


def test_boundary_limit_elementary_fixed_ray():
    act = boundary_limit(parse_word("E"), (0, 1))
    assert act.ray == (0, 1)
    assert act.apply(Fraction(-1)) == -1


def test_boundary_limit_elementary_moved_ray():
    act = boundary_limit(parse_word("E"), (-1, 0))
    assert act.ray == (-1, 1)
    assert act.apply(Fraction(-1)) == -1


def test_boundary_limit_matches_tropicalization(srng):
    for _ in range(25):
        w = random_word(srng, 3)
        n = random_primitive(srng, 3)
        assert boundary_limit(w, n).ray == pl_apply(tropicalize(w), n)


def test_generators_fix_distinguished_points(srng):
    gens = [
        parse_word("E"),
        parse_word("E^-1"),
        parse_word("E[1,0]"),
        parse_word("E[0,-1]"),
        parse_word("E[1,-1]"),
        parse_word("A[0,-1;1,0]"),
        parse_word("A[-1,0;0,1]"),
        parse_word("A[1,1;0,1]"),
    ]
    rays = [random_primitive(srng, 4) for _ in range(20)]
    for g in gens:
        for n in rays:
            assert boundary_limit(g, n).fixes_distinguished_point()
