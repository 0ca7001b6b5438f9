"""Realizing words as exact birational maps of the torus.

The generators act on torus coordinates by

    E            (x, y) -> (x, y (1 + x)^-1)
    Linear(B)    (x, y) -> (x^B11 y^B12, x^B21 y^B22)

so a Linear generator moves boundary rays by its matrix B, and the
elementary transformation at ray n is the conjugate of E by the canonical
complement of n.  Words realize to reduced rational-function pairs, where
structural equality of canonical forms decides the word problem.

``boundary_limit`` computes the induced map between boundary components:
substituting the arc x = lambda^p t^n1, y = lambda^q t^n2 (with p n2 - q n1
= 1, so lambda is the boundary coordinate; the distinguished point sits at
lambda = -1) and extracting leading terms in t yields the image ray together
with the coordinate action lambda -> c lambda^(+-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .lattice import (
    Mat,
    PLMap,
    Vec,
    complement_matrix,
    mat_inv,
    pl_apply,
    pl_compose,
    pl_elementary,
    pl_inverse,
    require_primitive,
)
from .polyrat import Poly2, RatFunc2, normalize, substitute
from .words import Elementary, Generator, Letter, Linear, Word, generator_determinant


class NotVolumePreservingError(ArithmeticError):
    """The Jacobian character came out non-constant; indicates an internal bug."""


class NonGenericArcError(ArithmeticError):
    """A boundary-limit leading coefficient failed to be a monomial in lambda."""


@dataclass(frozen=True)
class BirationalMap:
    """A pair of reduced rational functions: the semantic group element."""

    f: RatFunc2
    g: RatFunc2

    def as_pair(self) -> tuple[RatFunc2, RatFunc2]:
        return (self.f, self.g)

    def __str__(self) -> str:
        return f"({self.f}, {self.g})"


IDENTITY_MAP = BirationalMap(RatFunc2.x(), RatFunc2.y())


def compose(outer: BirationalMap, inner: BirationalMap) -> BirationalMap:
    """outer after inner."""
    return BirationalMap(
        substitute(outer.f, inner.f, inner.g),
        substitute(outer.g, inner.f, inner.g),
    )


def monomial_map(mat: Mat) -> BirationalMap:
    """The torus map acting on boundary rays by ``mat``."""

    def coord(row: tuple[int, int]) -> RatFunc2:
        num, den = Poly2.const(1), Poly2.const(1)
        for e, mono in zip(row, (Poly2.x(), Poly2.y())):
            if e > 0:
                num = num * mono**e
            elif e < 0:
                den = den * mono ** (-e)
        return normalize(num, den)

    return BirationalMap(coord(mat[0]), coord(mat[1]))


_E_PLUS = BirationalMap(
    RatFunc2.x(),
    normalize(Poly2.y(), Poly2.const(1) + Poly2.x()),
)
_E_MINUS = BirationalMap(
    RatFunc2.x(),
    normalize(Poly2.y() * (Poly2.const(1) + Poly2.x()), Poly2.const(1)),
)


def elementary_realization(n: Vec, exponent: int = 1, second_row: tuple[int, int] | None = None) -> BirationalMap:
    """The elementary transformation at ray n as a torus map.

    ``second_row`` overrides the canonical complement's second row, for
    probing whether the conjugate depends on the complement choice; it must
    satisfy c n1 + d n2 = 1.
    """
    require_primitive(n)
    base = _E_PLUS if exponent == 1 else _E_MINUS
    if n == (0, 1) and second_row is None:
        return base
    c = complement_matrix(n)
    if second_row is not None:
        cc, dd = second_row
        if cc * n[0] + dd * n[1] != 1:
            raise ValueError(f"row {second_row} does not complement {n}")
        c = ((n[1], -n[0]), (cc, dd))
    return compose(monomial_map(mat_inv(c)), compose(base, monomial_map(c)))


@lru_cache(maxsize=None)
def _letter_map(letter: Letter) -> BirationalMap:
    gen, e = letter
    if isinstance(gen, Linear):
        return monomial_map(gen.mat if e == 1 else mat_inv(gen.mat))
    return elementary_realization(gen.n, e)


@lru_cache(maxsize=None)
def realize(w: Word) -> BirationalMap:
    """Compose the letter realizations, leftmost letter applied last."""
    acc = IDENTITY_MAP
    for letter in reversed(w.letters):
        acc = compose(_letter_map(letter), acc)
    return acc


def equal(w1: Word, w2: Word) -> bool:
    """The word-problem oracle: equality of canonical rational components."""
    return realize(w1) == realize(w2)


def volume_character(w: Word) -> int:
    """The constant +-1 scaling the form dlog x ^ dlog y.

    The Jacobian is assembled as a single unreduced fraction and constancy is
    decided by direct proportionality of numerator and denominator, which
    avoids reducing a fraction that cancels completely.  Every word must come
    out exactly +1 or -1; anything else raises NotVolumePreservingError.
    """
    m = realize(w)
    fn, fd = m.f.num, m.f.den
    gn, gd = m.g.num, m.g.den
    fx_num = fn.derivative("x") * fd - fn * fd.derivative("x")
    fy_num = fn.derivative("y") * fd - fn * fd.derivative("y")
    gx_num = gn.derivative("x") * gd - gn * gd.derivative("x")
    gy_num = gn.derivative("y") * gd - gn * gd.derivative("y")
    # (x y / (f g)) * (f_x g_y - f_y g_x), with one power of fd gd cancelled.
    num = Poly2.x() * Poly2.y() * (fx_num * gy_num - fy_num * gx_num)
    den = fn * gn * fd * gd
    value = _constant_ratio(num, den)
    if value is None:
        raise NotVolumePreservingError(f"character of {w} is non-constant")
    if value not in (1, -1):
        raise NotVolumePreservingError(f"character of {w} is {value}")
    return int(value)


def _constant_ratio(num: Poly2, den: Poly2):
    """c with num = c * den, or None if the ratio is non-constant."""
    if den.is_zero():
        return None
    if num.is_zero():
        return Fraction(0)
    t, dc = den.leading_term()
    nc = num.terms.get(t)
    if nc is None:
        return None
    c = nc / dc
    return c if num == den.scale(c) else None


def character_from_letters(w: Word) -> int:
    """Product of linear determinants; the cheap prediction for the character."""
    return reduce(lambda s, l: s * generator_determinant(l[0]), w.letters, 1)


@lru_cache(maxsize=None)
def _letter_trop(letter: Letter) -> PLMap:
    gen, e = letter
    if isinstance(gen, Linear):
        return PLMap.linear(gen.mat if e == 1 else mat_inv(gen.mat))
    base = pl_elementary(gen.n)
    return base if e == 1 else pl_inverse(base)


@lru_cache(maxsize=None)
def tropicalize(w: Word) -> PLMap:
    """The piecewise-linear shadow: which boundary ray goes where."""
    acc = PLMap.identity()
    for letter in reversed(w.letters):
        acc = pl_compose(_letter_trop(letter), acc)
    return acc


# --- boundary limits ----------------------------------------------------------


@dataclass(frozen=True)
class BoundaryAction:
    """Image ray plus the induced boundary-coordinate map lambda -> c lambda^e."""

    ray: Vec
    coeff: Fraction
    exponent: int

    def apply(self, lam: Fraction) -> Fraction:
        lam = Fraction(lam)
        return self.coeff * (lam if self.exponent == 1 else 1 / lam)

    def fixes_distinguished_point(self) -> bool:
        return self.apply(Fraction(-1)) == Fraction(-1)


LPoly = dict[tuple[int, int], Fraction]  # Laurent polynomial in (lambda, t)


def _arc_substitute(p: Poly2, pexp: int, qexp: int, n: Vec) -> LPoly:
    out: LPoly = {}
    for (i, j), c in p.terms.items():
        key = (pexp * i + qexp * j, n[0] * i + n[1] * j)
        assert key not in out  # exponent map is unimodular, no collisions
        out[key] = c
    return out


def _leading(lp: LPoly) -> tuple[int, dict[int, Fraction]]:
    """(t-order, coefficient Laurent polynomial in lambda)."""
    t0 = min(e[1] for e in lp)
    return t0, {e[0]: c for e, c in lp.items() if e[1] == t0}


def _lam_reduce(num: dict[int, Fraction], den: dict[int, Fraction]) -> tuple[Fraction, int] | None:
    """Reduce a Laurent fraction in lambda; (c, e) if it equals c*lambda^e."""
    shift = min(num) - min(den)
    nun = {e - min(num): c for e, c in num.items()}
    nde = {e - min(den): c for e, c in den.items()}
    scale_n = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), nun.values(), 1)
    scale_d = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), nde.values(), 1)
    from .polyrat import _yp_divexact, _yp_gcd

    ni = {e: int(c * scale_n) for e, c in nun.items()}
    di = {e: int(c * scale_d) for e, c in nde.items()}
    g = _yp_gcd(ni, di)
    ni = _yp_divexact(ni, g)
    di = _yp_divexact(di, g)
    if len(ni) != 1 or len(di) != 1:
        return None
    (en, cn), (ed, cd) = next(iter(ni.items())), next(iter(di.items()))
    coeff = Fraction(cn * scale_d, cd * scale_n)
    return coeff, shift + en - ed


def _lam_pow(base_num, base_den, k: int):
    """(num, den) of (base_num/base_den)^k for k of either sign."""
    if k < 0:
        base_num, base_den, k = base_den, base_num, -k
    num = {0: Fraction(1)}
    den = {0: Fraction(1)}
    for _ in range(k):
        num = _lam_mul(num, base_num)
        den = _lam_mul(den, base_den)
    return num, den


def _lam_mul(p: dict[int, Fraction], q: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            s = out.get(e1 + e2, 0) + c1 * c2
            if s:
                out[e1 + e2] = s
            else:
                out.pop(e1 + e2, None)
    return out


def boundary_limit(w: Word, n: Vec) -> BoundaryAction:
    """Leading-order image of the boundary arc at ray n.

    The returned ray always agrees with the tropicalization; the coordinate
    action is exact and, for every group element, fixes the distinguished
    point lambda = -1 whenever it has coefficient 1.
    """
    require_primitive(n)
    m = realize(w)
    cc, dd = complement_matrix(n)[1]
    pexp, qexp = dd, -cc  # x = lam^p t^n1, y = lam^q t^n2, with p n2 - q n1 = 1

    def leading_pair(r: RatFunc2) -> tuple[int, dict[int, Fraction], dict[int, Fraction]]:
        tn, ln = _leading(_arc_substitute(r.num, pexp, qexp, n))
        td, ld = _leading(_arc_substitute(r.den, pexp, qexp, n))
        return tn - td, ln, ld

    a, fnum, fden = leading_pair(m.f)
    b, gnum, gden = leading_pair(m.g)
    ray = (a, b)
    if math.gcd(a, b) != 1:
        raise NonGenericArcError(f"image exponents {ray} of {w} at {n} are imprimitive")
    assert ray == pl_apply(tropicalize(w), n), "boundary limit disagrees with tropicalization"
    # lambda' equals the transverse monomial x'^{b} y'^{-a} at leading order.
    fn, fd = _lam_pow(fnum, fden, b)
    gn, gd = _lam_pow(gnum, gden, -a)
    result = _lam_reduce(_lam_mul(fn, gn), _lam_mul(fd, gd))
    if result is None:
        raise NonGenericArcError(f"boundary action of {w} at {n} is not monomial")
    coeff, expo = result
    if expo not in (1, -1):
        raise NonGenericArcError(f"boundary action of {w} at {n} has degree {expo}")
    return BoundaryAction(ray, coeff, expo)
