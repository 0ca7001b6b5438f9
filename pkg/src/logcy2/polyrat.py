"""Exact sparse bivariate polynomials and rational functions over Q.

A polynomial is a map from exponent pairs (i, j), both nonnegative, to
nonzero Fraction coefficients; the zero polynomial is the empty map.
A rational function is a reduced fraction of two such polynomials whose
denominator is monic in the graded-lexicographic leading term (total degree
first, then x-degree).  That canonical form makes structural equality a
valid equality test for rational functions, which is what the word-problem
oracle relies on.

GCDs are computed by a primitive-part pseudo-remainder sequence in x with
content recursion over y, entirely in integer arithmetic.  Negative powers
never appear: monomial maps with negative exponents are represented with
explicit denominators.

Textual form (round-trip parseable):

    poly     := "0" | term (" + " term)*          terms in descending grlex
    term     := coeff | coeff "*" factors | factors
    factors  := varpow ("*" varpow)*
    varpow   := ("x" | "y") ("^" digits)?         exponent >= 2 when printed
    coeff    := digits | "(" "-"? digits ("/" digits)? ")"

A positive integer coefficient prints bare, 1 is omitted before variables,
anything negative or fractional is parenthesized: ``(-1)*x^2*y + 3*x``.
A rational function prints as ``num`` when the denominator is 1, otherwise
``(num) / (den)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

Term = tuple[int, int]

# --- Poly2 -------------------------------------------------------------------


class Poly2:
    """Sparse bivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[Term, Fraction] | None = None):
        clean: dict[Term, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                c = Fraction(c)
                if c:
                    clean[(i, j)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @staticmethod
    def _raw(terms: dict[Term, Fraction]) -> "Poly2":
        """Internal constructor: terms already coerced and zero-free."""
        p = object.__new__(Poly2)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # Construction helpers.

    @staticmethod
    def zero() -> "Poly2":
        return Poly2()

    @staticmethod
    def const(c) -> "Poly2":
        return Poly2({(0, 0): Fraction(c)})

    @staticmethod
    def monomial(i: int, j: int, c=1) -> "Poly2":
        return Poly2({(i, j): Fraction(c)})

    @staticmethod
    def x() -> "Poly2":
        return Poly2.monomial(1, 0)

    @staticmethod
    def y() -> "Poly2":
        return Poly2.monomial(0, 1)

    # Structure.

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0, 0), Fraction(0))

    def leading_term(self) -> tuple[Term, Fraction]:
        """Greatest term in graded-lex order (total degree, then x-degree)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = max(self.terms, key=lambda t: (t[0] + t[1], t[0]))
        return key, self.terms[key]

    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    # Arithmetic.

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.terms)
        for t, c in other.terms.items():
            cur = out.get(t)
            if cur is None:
                out[t] = c
            else:
                s = cur + c
                if s:
                    out[t] = s
                else:
                    del out[t]
        return Poly2._raw(out)

    def __neg__(self) -> "Poly2":
        return Poly2._raw({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def _is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __mul__(self, other: "Poly2") -> "Poly2":
        # Plain-int accumulation is several times faster than Fraction
        # arithmetic and covers almost everything this library multiplies.
        if self._is_integral() and other._is_integral():
            iout: dict[Term, int] = {}
            a = [(i, j, c.numerator) for (i, j), c in self.terms.items()]
            b = [(i, j, c.numerator) for (i, j), c in other.terms.items()]
            for i1, j1, c1 in a:
                for i2, j2, c2 in b:
                    t = (i1 + i2, j1 + j2)
                    iout[t] = iout.get(t, 0) + c1 * c2
            return Poly2._raw({t: Fraction(c) for t, c in iout.items() if c})
        out: dict[Term, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                t = (i1 + i2, j1 + j2)
                cur = out.get(t)
                prod = c1 * c2
                if cur is None:
                    out[t] = prod
                else:
                    s = cur + prod
                    if s:
                        out[t] = s
                    else:
                        del out[t]
        return Poly2._raw(out)

    def scale(self, c) -> "Poly2":
        c = Fraction(c)
        return Poly2._raw({t: v * c for t, v in self.terms.items()}) if c else Poly2._raw({})

    def __pow__(self, k: int) -> "Poly2":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def derivative(self, var: str) -> "Poly2":
        if var not in ("x", "y"):
            raise ValueError("var must be 'x' or 'y'")
        out: dict[Term, Fraction] = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                out[(i - 1, j)] = c * i
            elif var == "y" and j:
                out[(i, j - 1)] = c * j
        return Poly2._raw(out)

    def evaluate(self, a, b) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        return sum((c * a**i * b**j for (i, j), c in self.terms.items()), Fraction(0))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly2({format_poly(self)!r})"


# --- integer-level gcd machinery ---------------------------------------------
#
# During gcd computation polynomials are plain dicts with int coefficients:
#   ypoly:  dict[j -> int]       an element of Z[y]
#   ipoly:  dict[(i, j) -> int]  an element of Z[x, y]


def _yp_degree(p: dict[int, int]) -> int:
    return max(p, default=-1)


def _yp_mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for j1, c1 in p.items():
        for j2, c2 in q.items():
            t = j1 + j2
            s = out.get(t, 0) + c1 * c2
            if s:
                out[t] = s
            else:
                out.pop(t, None)
    return out


def _yp_sub(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out = dict(p)
    for j, c in q.items():
        s = out.get(j, 0) - c
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def _yp_content(p: dict[int, int]) -> int:
    return reduce(math.gcd, p.values(), 0)


def _yp_primitive(p: dict[int, int]) -> dict[int, int]:
    """Divide out the integer content; make the leading coefficient positive."""
    if not p:
        return {}
    g = _yp_content(p)
    if p[_yp_degree(p)] < 0:
        g = -g
    return {j: c // g for j, c in p.items()}


def _yp_shift_mul(p: dict[int, int], c: int, k: int) -> dict[int, int]:
    return {j + k: v * c for j, v in p.items()} if c else {}


def _yp_gcd(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    """Gcd in Z[y], primitive with positive leading coefficient.

    Primitive PRS with the content stripped after every reduction step,
    which keeps intermediate coefficients near-minimal.
    """
    if not p:
        return _yp_primitive(q)
    if not q:
        return _yp_primitive(p)
    cont = math.gcd(_yp_content(p), _yp_content(q))
    f, g = _yp_primitive(p), _yp_primitive(q)
    if _yp_degree(f) < _yp_degree(g):
        f, g = g, f
    while g:
        r = dict(f)
        dg = _yp_degree(g)
        lg = g[dg]
        while r and _yp_degree(r) >= dg:
            dr = _yp_degree(r)
            lr = r[dr]
            s = math.gcd(lg, lr)
            r = _yp_sub(_yp_shift_mul(r, lg // s, 0), _yp_shift_mul(g, lr // s, dr - dg))
            r = _yp_primitive(r)
        f, g = g, r
    return {j: c * cont for j, c in f.items()}


def _yp_divexact(p: dict[int, int], d: dict[int, int]) -> dict[int, int]:
    """Exact division in Z[y]; asserts exactness."""
    if not d:
        raise ZeroDivisionError
    out: dict[int, int] = {}
    r = dict(p)
    dd, ld = _yp_degree(d), d[_yp_degree(d)]
    while r:
        dr = _yp_degree(r)
        q, rem = divmod(r[dr], ld)
        assert dr >= dd and rem == 0, "inexact division in Z[y]"
        out[dr - dd] = q
        r = _yp_sub(r, _yp_shift_mul(d, q, dr - dd))
    return out


def _ip_to_x(p: dict[Term, int]) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for (i, j), c in p.items():
        out.setdefault(i, {})[j] = c
    return out


def _x_to_ip(p: dict[int, dict[int, int]]) -> dict[Term, int]:
    return {(i, j): c for i, yp in p.items() for j, c in yp.items() if c}


def _xp_degree(p: dict[int, dict[int, int]]) -> int:
    return max((i for i, yp in p.items() if yp), default=-1)


def _xp_content(p: dict[int, dict[int, int]]) -> dict[int, int]:
    g: dict[int, int] = {}
    for yp in p.values():
        g = _yp_gcd(g, yp)
    return g


def _xp_scale(p, yc: dict[int, int]) -> dict[int, dict[int, int]]:
    return {i: _yp_mul(yp, yc) for i, yp in p.items()}


def _xp_divexact_y(p, yc: dict[int, int]) -> dict[int, dict[int, int]]:
    return {i: _yp_divexact(yp, yc) for i, yp in p.items()}


def _xp_primitive(p) -> dict[int, dict[int, int]]:
    p = {i: yp for i, yp in p.items() if yp}
    if not p:
        return {}
    c = _xp_content(p)
    return _xp_divexact_y(p, c)


def _xp_sub(p, q) -> dict[int, dict[int, int]]:
    out = {i: dict(yp) for i, yp in p.items()}
    for i, yp in q.items():
        out[i] = _yp_sub(out.get(i, {}), yp)
        if not out[i]:
            del out[i]
    return out


def _xp_reduce(f, g) -> dict[int, dict[int, int]]:
    """Remainder of f by g in x over Z[y], valid for gcd purposes.

    Each step subtracts a Z[y]-scaled shift of g and re-primitivizes, so it
    differs from the textbook pseudo-remainder only by y-content, which the
    primitive PRS strips anyway; this keeps both the y-degrees and the
    integer coefficients of the intermediates from compounding.
    """
    dg = _xp_degree(g)
    lg = g[dg]
    r = {i: dict(yp) for i, yp in f.items()}
    while r and _xp_degree(r) >= dg:
        dr = _xp_degree(r)
        lr = r[dr]
        s = _yp_gcd(lg, lr)
        a = _yp_divexact(lg, s)
        b = _yp_divexact(lr, s)
        scaled_r = _xp_scale(r, a)
        shift_g = {i + dr - dg: _yp_mul(yp, b) for i, yp in g.items()}
        r = _xp_sub(scaled_r, shift_g)
        r = _xp_primitive(r)
    return r


def _ip_univariate_in_x(p: dict[Term, int]) -> dict[int, int]:
    return {i: c for (i, j), c in p.items()}


def _specialized_coprime_x(fp, gp) -> bool:
    """True if specializing y proves the gcd has x-degree zero.

    Valid whenever the x-leading coefficients of both inputs survive the
    specialization; returns False (inconclusive) otherwise.
    """
    df, dg = _xp_degree(fp), _xp_degree(gp)
    for y0 in (1, -1, 2, -2, 3, 5):
        lf = sum(c * y0**j for j, c in fp[df].items())
        lg = sum(c * y0**j for j, c in gp[dg].items())
        if lf == 0 or lg == 0:
            continue
        uf = {i: sum(c * y0**j for j, c in yp.items()) for i, yp in fp.items()}
        ug = {i: sum(c * y0**j for j, c in yp.items()) for i, yp in gp.items()}
        uf = {i: c for i, c in uf.items() if c}
        ug = {i: c for i, c in ug.items() if c}
        g = _yp_gcd(uf, ug)  # same routine works for Z[x] dicts
        return _yp_degree(g) == 0
    return False


def _ip_swap(p: dict[Term, int]) -> dict[Term, int]:
    return {(j, i): c for (i, j), c in p.items()}


def _grlex_max(p: dict[Term, int]) -> Term:
    return max(p, key=lambda t: (t[0] + t[1], t[0]))


def _ip_divexact_or_none(p: dict[Term, int], g: dict[Term, int]) -> dict[Term, int] | None:
    """Quotient p/g over Z if the division is exact, else None."""
    gt = _grlex_max(g)
    gc = g[gt]
    r = dict(p)
    out: dict[Term, int] = {}
    while r:
        rt = _grlex_max(r)
        i, j = rt[0] - gt[0], rt[1] - gt[1]
        if i < 0 or j < 0 or r[rt] % gc:
            return None
        qc = r[rt] // gc
        out[(i, j)] = qc
        for (gi, gj), c in g.items():
            t = (gi + i, gj + j)
            s = r.get(t, 0) - qc * c
            if s:
                r[t] = s
            else:
                r.pop(t, None)
    return out


def _balanced_digits(value: int, xi: int):
    """Digits of value in balanced base xi (each in (-xi/2, xi/2])."""
    k = 0
    while value:
        digit = value % xi
        if 2 * digit > xi:
            digit -= xi
        yield k, digit
        value = (value - digit) // xi
        k += 1


def _ip_gcd_heuristic(p: dict[Term, int], q: dict[Term, int]) -> dict[Term, int] | None:
    """Evaluation-reconstruction gcd in Z[x, y] (verified, so always sound).

    Evaluates y at a large integer, takes the univariate gcd, reconstructs a
    bivariate candidate from balanced base-xi digits and accepts it only if
    it exactly divides both inputs.  Returns None when no attempt verifies;
    the caller falls back to the remainder-sequence path.
    """
    height = min(max(abs(c) for c in p.values()), max(abs(c) for c in q.values()))
    xi = 2 * height + 29
    for _ in range(6):
        if xi.bit_length() * (1 + max(j for _, j in list(p) + list(q))) > 60000:
            return None
        pe: dict[int, int] = {}
        for (i, j), c in p.items():
            pe[i] = pe.get(i, 0) + c * xi**j
        qe: dict[int, int] = {}
        for (i, j), c in q.items():
            qe[i] = qe.get(i, 0) + c * xi**j
        pe = {i: c for i, c in pe.items() if c}
        qe = {i: c for i, c in qe.items() if c}
        if pe and qe:
            gamma = _yp_gcd(pe, qe)
            cand: dict[Term, int] = {}
            for i, a in gamma.items():
                for k, digit in _balanced_digits(a, xi):
                    cand[(i, k)] = digit
            cont = reduce(math.gcd, cand.values())
            cand = {t: c // cont for t, c in cand.items()}
            if _ip_divexact_or_none(p, cand) is not None and _ip_divexact_or_none(q, cand) is not None:
                return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _ip_gcd(p: dict[Term, int], q: dict[Term, int]) -> dict[Term, int]:
    """Gcd in Z[x, y], primitive, positive grlex-leading coefficient.

    The remainder sequence runs in whichever variable gives the shorter
    chain; the other variable is handled by content recursion.
    """
    if not p:
        return q
    if not q:
        return p
    degx = max(max(i for i, _ in p), max(i for i, _ in q))
    degy = max(max(j for _, j in p), max(j for _, j in q))
    swapped = degy < degx
    if swapped:
        p, q = _ip_swap(p), _ip_swap(q)
    fp, gp = _ip_to_x(p), _ip_to_x(q)
    if _xp_degree(fp) == 0 and _xp_degree(gp) == 0:
        result = {(0, j): c for j, c in _yp_gcd(fp[0], gp[0]).items()}
        return _ip_swap(result) if swapped else result
    cont = _yp_gcd(_xp_content(fp), _xp_content(gp))
    f, g = _xp_primitive(fp), _xp_primitive(gp)
    if _xp_degree(f) == 0 or _xp_degree(g) == 0 or _specialized_coprime_x(f, g):
        main: dict[int, dict[int, int]] = {0: {0: 1}}
    else:
        heuristic = _ip_gcd_heuristic(_x_to_ip(f), _x_to_ip(g))
        if heuristic is not None:
            main = _ip_to_x(heuristic)
        else:
            if _xp_degree(f) < _xp_degree(g):
                f, g = g, f
            while g and _xp_degree(g) > 0:
                r = _xp_reduce(f, g)
                f, g = g, r
            main = {0: {0: 1}} if g else f
    result = _x_to_ip(_xp_scale(main, cont))
    if swapped:
        result = _ip_swap(result)
    lead = max(result, key=lambda t: (t[0] + t[1], t[0]))
    if result[lead] < 0:
        result = {t: -c for t, c in result.items()}
    return result


def _poly_to_int(p: Poly2) -> dict[Term, int]:
    """Clear denominators and the integer content (unit-normalize over Z)."""
    if p.is_zero():
        return {}
    lcm = 1
    for c in p.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = {t: int(c * lcm) for t, c in p.terms.items()}
    g = reduce(math.gcd, ints.values())
    return {t: c // g for t, c in ints.items()}


def _int_to_poly(p: dict[Term, int]) -> Poly2:
    return Poly2({t: Fraction(c) for t, c in p.items()})


def poly_gcd(p: Poly2, q: Poly2) -> Poly2:
    """Gcd up to units, returned primitive over Z with positive leading coeff."""
    ip, iq = _poly_to_int(p), _poly_to_int(q)
    if not ip:
        return _int_to_poly(iq)
    if not iq:
        return _int_to_poly(ip)
    if len(ip) == 1 or len(iq) == 1:
        mono, other = (ip, iq) if len(ip) == 1 else (iq, ip)
        (mi, mj), mc = next(iter(mono.items()))
        gi = min([mi] + [i for i, _ in other])
        gj = min([mj] + [j for _, j in other])
        gc = reduce(math.gcd, other.values(), abs(mc))
        return _int_to_poly({(gi, gj): gc})
    return _int_to_poly(_ip_gcd(ip, iq))


def poly_divexact(p: Poly2, d: Poly2) -> Poly2:
    """Exact division p/d by grlex leading-term reduction; asserts exactness."""
    if d.is_zero():
        raise ZeroDivisionError
    (di, dj), dc = d.leading_term()
    out: dict[Term, Fraction] = {}
    r = p
    while r.terms:
        (ri, rj), rc = r.leading_term()
        i, j = ri - di, rj - dj
        assert i >= 0 and j >= 0, "inexact polynomial division"
        c = rc / dc
        out[(i, j)] = c
        r = r - d * Poly2.monomial(i, j, c)
    return Poly2(out)


# --- RatFunc2 ----------------------------------------------------------------


class ZeroDenominatorError(ZeroDivisionError):
    pass


class IdenticallySingularError(ZeroDivisionError):
    """Substitution produced an identically vanishing denominator."""


class PoleAtPointError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class RatFunc2:
    """Reduced fraction of bivariate polynomials, denominator grlex-monic.

    Use :func:`normalize` (or the arithmetic operators) to construct values;
    the constructor trusts its inputs.
    """

    num: Poly2
    den: Poly2

    @staticmethod
    def from_poly(p: Poly2) -> "RatFunc2":
        return RatFunc2(p, Poly2.const(1))

    @staticmethod
    def const(c) -> "RatFunc2":
        return RatFunc2.from_poly(Poly2.const(c))

    @staticmethod
    def x() -> "RatFunc2":
        return RatFunc2.from_poly(Poly2.x())

    @staticmethod
    def y() -> "RatFunc2":
        return RatFunc2.from_poly(Poly2.y())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def __add__(self, other: "RatFunc2") -> "RatFunc2":
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc2") -> "RatFunc2":
        return normalize(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc2") -> "RatFunc2":
        return normalize(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc2") -> "RatFunc2":
        return normalize(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "RatFunc2":
        return RatFunc2(-self.num, self.den)

    def reciprocal(self) -> "RatFunc2":
        return normalize(self.den, self.num)

    def __str__(self) -> str:
        return format_ratfunc(self)

    def __repr__(self) -> str:
        return f"RatFunc2({format_ratfunc(self)!r})"


def normalize(num: Poly2, den: Poly2) -> RatFunc2:
    """Reduced canonical fraction num/den."""
    if den.is_zero():
        raise ZeroDenominatorError("denominator is identically zero")
    if num.is_zero():
        return RatFunc2(Poly2.zero(), Poly2.const(1))
    g = poly_gcd(num, den)
    if g.total_degree() > 0 or g.leading_term()[1] != 1:
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
    _, lc = den.leading_term()
    if lc != 1:
        num = num.scale(Fraction(1) / lc)
        den = den.scale(Fraction(1) / lc)
    return RatFunc2(num, den)


class _Powers:
    """Lazy powers of a polynomial, square-and-multiply with memoization.

    Monomial words drive exponents into the hundreds; computing only the
    requested powers keeps composition cost proportional to the sparse data.
    """

    def __init__(self, base: Poly2):
        self.cache = {0: Poly2.const(1), 1: base}

    def __getitem__(self, k: int) -> Poly2:
        if k not in self.cache:
            half = self[k // 2]
            self.cache[k] = half * half if k % 2 == 0 else half * half * self.cache[1]
        return self.cache[k]


def _compose_cleared(p: Poly2, dx: int, dy: int, fn, fd, gn, gd, gprod: dict) -> Poly2:
    """p(f, g) times the clearing factor fd^dx gd^dy.

    Terms are grouped by x-exponent so only one large product is taken per
    distinct exponent; the y-factor products are shared via ``gprod``.
    """
    by_i: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), c in p.terms.items():
        by_i.setdefault(i, []).append((j, c))
    total = Poly2.zero()
    for i, row in by_i.items():
        inner = Poly2.zero()
        for j, c in row:
            if j not in gprod:
                gprod[j] = gn[j] * gd[dy - j]
            inner = inner + gprod[j].scale(c)
        total = total + fn[i] * (fd[dx - i] * inner)
    return total


def substitute(r: RatFunc2, f: RatFunc2, g: RatFunc2) -> RatFunc2:
    """r(f, g) in canonical form."""
    if r.num.is_zero():
        return RatFunc2(Poly2.zero(), Poly2.const(1))
    fn, fd = _Powers(f.num), _Powers(f.den)
    gn, gd = _Powers(g.num), _Powers(g.den)
    gprod: dict[int, Poly2] = {}
    dx = max(i for i, _ in list(r.num.terms) + list(r.den.terms))
    dy = max(j for _, j in list(r.num.terms) + list(r.den.terms))
    # A common clearing factor fd^dx gd^dy multiplies top and bottom,
    # so the fraction below is r(f, g) on the nose.
    num = _compose_cleared(r.num, dx, dy, fn, fd, gn, gd, gprod)
    den = _compose_cleared(r.den, dx, dy, fn, fd, gn, gd, gprod)
    if den.is_zero():
        raise IdenticallySingularError("denominator vanishes identically under substitution")
    return normalize(num, den)


def partial_derivative(r: RatFunc2, var: str) -> RatFunc2:
    """Exact quotient-rule derivative."""
    n, d = r.num, r.den
    return normalize(n.derivative(var) * d - n * d.derivative(var), d * d)


def evaluate(r: RatFunc2, point) -> Fraction:
    a, b = point
    dv = r.den.evaluate(a, b)
    if dv == 0:
        raise PoleAtPointError(f"pole at ({a}, {b})")
    return r.num.evaluate(a, b) / dv


# --- textual form -------------------------------------------------------------


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1 and c >= 0:
        return str(c.numerator)
    return f"({c})"


def format_poly(p: Poly2) -> str:
    if p.is_zero():
        return "0"
    keys = sorted(p.terms, key=lambda t: (t[0] + t[1], t[0]), reverse=True)
    parts = []
    for i, j in keys:
        c = p.terms[(i, j)]
        factors = []
        if i:
            factors.append("x" if i == 1 else f"x^{i}")
        if j:
            factors.append("y" if j == 1 else f"y^{j}")
        if not factors or c != 1:
            factors.insert(0, _format_coeff(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


def format_ratfunc(r: RatFunc2) -> str:
    if r.den == Poly2.const(1):
        return format_poly(r.num)
    return f"({format_poly(r.num)}) / ({format_poly(r.den)})"


_TOKEN = re.compile(r"\s*(\d+|[xy]|\^|\*|\+|\(|\)|/|-)")


class PolyParseError(ValueError):
    pass


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise PolyParseError(f"bad character at position {pos}: {text[pos:]!r}")
            self.toks.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        if self.i >= len(self.toks):
            raise PolyParseError("unexpected end of input")
        t = self.toks[self.i]
        if expected is not None and t != expected:
            raise PolyParseError(f"expected {expected!r}, got {t!r}")
        self.i += 1
        return t


def _parse_varpow(tk: _Tokens) -> Poly2:
    v = tk.take()
    if v not in ("x", "y"):
        raise PolyParseError(f"expected variable, got {v!r}")
    e = 1
    if tk.peek() == "^":
        tk.take()
        e = int(tk.take())
    return Poly2.monomial(e, 0) if v == "x" else Poly2.monomial(0, e)


def _parse_term(tk: _Tokens) -> Poly2:
    t = tk.peek()
    if t == "(":
        tk.take()
        sign = 1
        if tk.peek() == "-":
            tk.take()
            sign = -1
        numer = int(tk.take())
        denom = 1
        if tk.peek() == "/":
            tk.take()
            denom = int(tk.take())
        tk.take(")")
        acc = Poly2.const(Fraction(sign * numer, denom))
    elif t is not None and t.isdigit():
        acc = Poly2.const(int(tk.take()))
    else:
        acc = _parse_varpow(tk)
    while tk.peek() == "*":
        tk.take()
        acc = acc * _parse_varpow(tk)
    return acc


def parse_poly(text: str) -> Poly2:
    tk = _Tokens(text)
    acc = _parse_term(tk)
    while tk.peek() == "+":
        tk.take()
        acc = acc + _parse_term(tk)
    if tk.peek() is not None:
        raise PolyParseError(f"trailing input: {tk.toks[tk.i:]}")
    return acc


def parse_ratfunc(text: str) -> RatFunc2:
    text = text.strip()
    m = re.fullmatch(r"\((?P<num>.*)\)\s*/\s*\((?P<den>.*)\)", text, re.DOTALL)
    if m:
        return normalize(parse_poly(m.group("num")), parse_poly(m.group("den")))
    return normalize(parse_poly(text), Poly2.const(1))
