"""Exact lattice linear algebra in rank two.

Vectors are plain ``(x, y)`` tuples of Python ints; matrices are row-major
``((a, b), (c, d))`` tuples with determinant +1 or -1.  All arithmetic is
exact integer arithmetic.

The main structured object is :class:`PLMap`, a piecewise-linear self-map
of the plane: unimodular matrices on a fan of closed sectors, agreeing on
shared boundary rays.  These record which boundary ray a boundary ray is
carried to by a birational map of the torus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key

Vec = tuple[int, int]
Mat = tuple[tuple[int, int], tuple[int, int]]

MAT_ID: Mat = ((1, 0), (0, 1))

# Shear fixing the vertical axis pointwise, pushing the left half-plane up:
# (-1, 0) goes to (-1, 1).  This is the nontrivial piece of the
# tropicalization of the elementary map E, and the inverse of the nodal
# monodromy shear for direction (0, 1).
SHEAR_LEFT_UP: Mat = ((1, 0), (-1, 1))


class NonPrimitiveError(ValueError):
    """A vector required to be primitive has a common factor (or is zero)."""


class NonUnimodularError(ValueError):
    """A matrix required to lie in GL2(Z) has determinant outside {+1, -1}."""


def is_primitive(v: Vec) -> bool:
    return math.gcd(v[0], v[1]) == 1


def require_primitive(v: Vec) -> Vec:
    if not is_primitive(v):
        raise NonPrimitiveError(f"vector {v} is not primitive")
    return v


def primitive_part(v: Vec) -> Vec:
    """v divided by the gcd of its entries (v must be nonzero)."""
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise NonPrimitiveError("zero vector has no primitive part")
    return (v[0] // g, v[1] // g)


def neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def vadd(u: Vec, v: Vec) -> Vec:
    return (u[0] + v[0], u[1] + v[1])


def cross(u: Vec, v: Vec) -> int:
    """Determinant of the 2x2 matrix with rows u, v."""
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1]


def rot90(v: Vec) -> Vec:
    """Counterclockwise quarter turn."""
    return (-v[1], v[0])


def mat_det(m: Mat) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def require_unimodular(m: Mat) -> Mat:
    if mat_det(m) not in (1, -1):
        raise NonUnimodularError(f"matrix {m} has determinant {mat_det(m)}")
    return m


def mat_mul(m: Mat, n: Mat) -> Mat:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def mat_inv(m: Mat) -> Mat:
    """Exact inverse of a unimodular matrix (1/det = det)."""
    d = mat_det(m)
    if d not in (1, -1):
        raise NonUnimodularError(f"matrix {m} has determinant {d}")
    return ((m[1][1] * d, -m[0][1] * d), (-m[1][0] * d, m[0][0] * d))


def mat_transpose(m: Mat) -> Mat:
    return ((m[0][0], m[1][0]), (m[0][1], m[1][1]))


def complement_matrix(n: Vec) -> Mat:
    """The canonical A in SL2(Z) with A n = (0, 1).

    First row is (n2, -n1); the second row (c, d) solves c n1 + d n2 = 1
    with |c| minimal (ties broken by c >= 0, then |d| minimal, d >= 0).
    """
    require_primitive(n)
    n1, n2 = n
    if n2 == 0:
        # c is forced to 1/n1 = n1; d is free, pinned to 0.
        c, d = n1, 0
    else:
        g, c0, d0 = _xgcd(n1, n2)
        assert g == 1
        # General solution: (c0 + k n2, d0 - k n1).  |c| is minimized within
        # one step of k = -c0/n2, so scanning a small window suffices.
        kf = -c0 // n2
        candidates = [(c0 + k * n2, d0 - k * n1) for k in range(kf - 1, kf + 3)]
        c, d = min(candidates, key=lambda cd: (abs(cd[0]), cd[0] < 0, abs(cd[1]), cd[1] < 0))
    a = ((n2, -n1), (c, d))
    assert mat_det(a) == 1 and mat_vec(a, n) == (0, 1)
    return a


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# --- angular order ----------------------------------------------------------

def _half(v: Vec) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2pi), measured from (1, 0)."""
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def angle_cmp(u: Vec, v: Vec) -> int:
    """Compare directions counterclockwise from (1, 0).  0 iff parallel, same side."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    return 0 if c == 0 else (-1 if c > 0 else 1)


def ccw_sorted(vecs: list[Vec]) -> list[Vec]:
    return sorted(vecs, key=cmp_to_key(angle_cmp))


def in_sector(a: Vec, b: Vec, v: Vec) -> bool:
    """True iff v lies in the closed-open sector [a, b) swept ccw from a to b.

    a and b must be non-parallel-equal directions; v = 0 counts as inside.
    """
    if v == (0, 0):
        return True
    # Position of a direction w relative to a: 0 on a itself, then strictly
    # increasing counterclockwise.
    def key(w: Vec) -> tuple[int, int]:
        c = cross(a, w)
        if c == 0:
            return (0, 0) if dot(a, w) > 0 else (2, 0)
        return (1, 0) if c > 0 else (3, 0)

    kv, kb = key(v), key(b)
    if kv == kb and kv[0] in (1, 3):
        c = cross(v, b)
        return c > 0
    return kv < kb


@dataclass(frozen=True)
class PLMap:
    """Piecewise-linear self-map of the plane.

    ``rays`` is a ccw-ordered tuple of primitive boundary rays; piece i is the
    sector from rays[i] ccw to rays[i+1] (cyclically) with matrix mats[i].
    A globally linear map has ``rays == ()`` and a single matrix.
    Continuity: consecutive matrices agree on the shared boundary ray.
    """

    rays: tuple[Vec, ...]
    mats: tuple[Mat, ...]

    def __post_init__(self) -> None:
        if self.rays:
            if len(self.rays) < 2 or len(self.rays) != len(self.mats):
                raise ValueError("piece count mismatch")
        elif len(self.mats) != 1:
            raise ValueError("linear map must carry exactly one matrix")

    @staticmethod
    def linear(m: Mat) -> "PLMap":
        return PLMap((), (require_unimodular(m),))

    @staticmethod
    def identity() -> "PLMap":
        return PLMap((), (MAT_ID,))

    def is_linear(self) -> bool:
        return not self.rays

    def piece_index(self, v: Vec) -> int:
        if not self.rays:
            return 0
        k = len(self.rays)
        for i in range(k):
            if in_sector(self.rays[i], self.rays[(i + 1) % k], v):
                return i
        raise AssertionError(f"sectors of {self} do not cover {v}")

    def matrix_at(self, v: Vec) -> Mat:
        return self.mats[self.piece_index(v)]


def pl_validate(p: PLMap) -> None:
    """Assert the structural invariants: ccw rays, continuity, uniform det sign."""
    dets = {mat_det(m) for m in p.mats}
    assert dets <= {1} or dets <= {-1}, f"mixed determinant signs: {dets}"
    k = len(p.rays)
    for i in range(k):
        require_primitive(p.rays[i])
        assert angle_cmp(p.rays[i], p.rays[(i + 1) % k]) != 0, "repeated ray"
        prev = p.mats[i - 1]
        here = p.mats[i]
        assert mat_vec(prev, p.rays[i]) == mat_vec(here, p.rays[i]), (
            f"discontinuous at ray {p.rays[i]}"
        )
    if k:
        order = ccw_sorted(list(p.rays))
        start = order.index(p.rays[0])
        assert list(p.rays) == order[start:] + order[:start], "rays not ccw"


def pl_apply(p: PLMap, v: Vec) -> Vec:
    """Image of v under the unique piece whose sector contains it."""
    return mat_vec(p.matrix_at(v), v)


def _canonical(pairs: list[tuple[Vec, Mat]]) -> PLMap:
    """Build a PLMap from (boundary ray, matrix-of-following-sector) pairs.

    Merges sectors with equal matrices and rotates the ray list so it starts
    at the angularly least ray, making structural equality canonical.
    """
    pairs = sorted(pairs, key=cmp_to_key(lambda p, q: angle_cmp(p[0], q[0])))
    k = len(pairs)
    kept = [i for i in range(k) if pairs[i - 1][1] != pairs[i][1]]
    if not kept:
        return PLMap.linear(pairs[0][1])
    if len(kept) == 1:
        # A single surviving breakpoint cannot bound a sector; this only
        # happens if all matrices were equal, handled above.
        raise AssertionError("degenerate piece structure")
    return PLMap(tuple(pairs[i][0] for i in kept), tuple(pairs[i][1] for i in kept))


def _sector_probe(a: Vec, b: Vec) -> Vec:
    """An integer direction strictly inside the sector [a, b)."""
    if cross(a, b) > 0:
        return vadd(a, b)
    return rot90(a)


def pl_compose(p: PLMap, q: PLMap) -> PLMap:
    """The composite p after q, with sectors refined and then re-merged."""
    if p.is_linear() and q.is_linear():
        return PLMap.linear(mat_mul(p.mats[0], q.mats[0]))
    rays: list[Vec] = list(q.rays)
    # Preimages under q of p's breakpoints are the other potential breakpoints.
    for r in p.rays:
        if q.is_linear():
            rays.append(primitive_part(mat_vec(mat_inv(q.mats[0]), r)))
        else:
            kq = len(q.rays)
            for i in range(kq):
                w = mat_vec(mat_inv(q.mats[i]), r)
                if in_sector(q.rays[i], q.rays[(i + 1) % kq], w):
                    rays.append(primitive_part(w))
    unique: list[Vec] = []
    for r in ccw_sorted(rays):
        if not unique or angle_cmp(unique[-1], r) != 0:
            unique.append(r)
    pairs = []
    k = len(unique)
    for i in range(k):
        t = _sector_probe(unique[i], unique[(i + 1) % k])
        mq = q.matrix_at(t)
        m = mat_mul(p.matrix_at(mat_vec(mq, t)), mq)
        pairs.append((unique[i], m))
    return _canonical(pairs)


def pl_inverse(p: PLMap) -> PLMap:
    """The inverse piecewise-linear bijection."""
    if p.is_linear():
        return PLMap.linear(mat_inv(p.mats[0]))
    pairs = []
    k = len(p.rays)
    for i in range(k):
        image_ray = primitive_part(mat_vec(p.mats[i], p.rays[i]))
        pairs.append((image_ray, mat_inv(p.mats[i])))
    return _canonical(pairs)


def pl_elementary(n: Vec = (0, 1)) -> PLMap:
    """Tropicalization of the elementary map at ray n.

    For n = (0, 1): identity on the closed right half-plane, the shear
    (1,0;-1,1) on the left, so (-1, 0) goes to (-1, 1).  For general n,
    the conjugate by the canonical complement matrix.
    """
    base = _canonical([((0, 1), SHEAR_LEFT_UP), ((0, -1), MAT_ID)])
    if n == (0, 1):
        return base
    c = complement_matrix(n)
    return pl_compose(PLMap.linear(mat_inv(c)), pl_compose(base, PLMap.linear(c)))
