import math

import pytest
from hypothesis import given, strategies as st

from logcy2.lattice import (
    MAT_ID,
    NonPrimitiveError,
    PLMap,
    complement_matrix,
    mat_det,
    mat_mul,
    mat_vec,
    pl_apply,
    pl_compose,
    pl_elementary,
    pl_inverse,
    pl_validate,
)

primitive_vectors = st.tuples(
    st.integers(-50, 50), st.integers(-50, 50)
).filter(lambda v: math.gcd(v[0], v[1]) == 1)


def test_complement_fixed_point():
    assert complement_matrix((0, 1)) == MAT_ID


def test_complement_derived_examples():
    assert complement_matrix((1, 0)) == ((0, -1), (1, 0))
    assert complement_matrix((2, 3)) == ((3, -2), (-1, 1))


def test_complement_rejects_imprimitive():
    with pytest.raises(NonPrimitiveError):
        complement_matrix((2, 4))
    with pytest.raises(NonPrimitiveError):
        complement_matrix((0, 0))


@given(primitive_vectors)
def test_complement_property(n):
    a = complement_matrix(n)
    assert mat_vec(a, n) == (0, 1)
    assert mat_det(a) == 1


def test_pl_identity():
    assert pl_apply(PLMap.identity(), (5, -7)) == (5, -7)


def test_elementary_trop_examples():
    t = pl_elementary()
    assert pl_apply(t, (-1, 0)) == (-1, 1)
    assert pl_apply(t, (0, 1)) == (0, 1)
    assert pl_apply(t, (1, 5)) == (1, 5)
    pl_validate(t)


def test_compose_with_identity_is_canonical():
    t = pl_elementary()
    assert pl_compose(t, PLMap.identity()) == t
    assert pl_compose(PLMap.identity(), t) == t


def test_shear_and_inverse_cancel():
    t = pl_elementary()
    assert pl_compose(t, pl_inverse(t)) == PLMap.identity()
    assert pl_compose(pl_inverse(t), t) == PLMap.identity()


def test_linear_pieces_multiply():
    a = ((1, 1), (0, 1))
    b = ((0, -1), (1, 0))
    assert pl_compose(PLMap.linear(a), PLMap.linear(b)) == PLMap.linear(mat_mul(a, b))


def test_compose_associates_pointwise(srng):
    maps = [
        pl_elementary(),
        pl_elementary((1, 0)),
        pl_inverse(pl_elementary((1, 2))),
        PLMap.linear(((0, -1), (1, 0))),
        PLMap.linear(((1, 0), (0, -1))),
    ]
    for _ in range(50):
        p = srng.choice(maps)
        q = srng.choice(maps)
        pq = pl_compose(p, q)
        v = (srng.randint(-20, 20), srng.randint(-20, 20))
        assert pl_apply(pq, v) == pl_apply(p, pl_apply(q, v))


def test_bijection_via_inverse(srng):
    m = pl_compose(pl_elementary((1, 1)), pl_compose(PLMap.linear(((1, 1), (0, 1))), pl_elementary()))
    inv = pl_inverse(m)
    for _ in range(100):
        v = (srng.randint(-30, 30), srng.randint(-30, 30))
        assert pl_apply(inv, pl_apply(m, v)) == v
        assert pl_apply(m, pl_apply(inv, v)) == v


def test_validate_catches_discontinuity():
    broken = PLMap(((0, 1), (0, -1)), (((1, 1), (0, 1)), MAT_ID))
    with pytest.raises(AssertionError):
        pl_validate(broken)
