"""Certified real algebraic numbers: Sturm isolation, refinement, comparison.

An AlgebraicReal is a square-free primitive integer polynomial together with
an open rational interval containing exactly one of its real roots; the count
is certified by a Sturm sequence, never by floating point.  Every comparison
in the package that feeds a certificate goes through the exact machinery
here: interval refinement decides strict inequalities, and exact ties are
settled through gcds of defining polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rationals import RationalLike, as_rational, rat_to_str
from .unipoly import UniPoly

_MAX_REFINE_ROUNDS = 256


def sturm_chain(f: UniPoly) -> list[UniPoly]:
    """Sturm sequence of the square-free part of f."""
    f = f.square_free_part()
    chain = [f, f.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(values: list[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sign_variations_at(chain: Sequence[UniPoly], x: RationalLike) -> int:
    x = as_rational(x)
    return _variations([p(x) for p in chain])


def count_roots_in(f: UniPoly, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of f in the half-open interval (lo, hi]."""
    lo, hi = as_rational(lo), as_rational(hi)
    if lo > hi:
        raise ValueError("empty interval")
    chain = sturm_chain(f)
    return sign_variations_at(chain, lo) - sign_variations_at(chain, hi)


def cauchy_root_bound(f: UniPoly) -> Fraction:
    """B with every complex root of f satisfying |z| <= B (Cauchy bound)."""
    if f.degree < 1:
        raise ValueError("constant polynomial has no roots")
    lead = abs(f.leading())
    return 1 + max(abs(c) / lead for c in f.coeffs[:-1])


class AlgebraicReal:
    """One real root of a square-free integer polynomial, isolated exactly.

    Invariants checked at construction: lo < hi, neither endpoint is a root,
    and the Sturm count of roots in (lo, hi) is exactly one.
    """

    __slots__ = ("poly", "lo", "hi", "_chain")

    def __init__(self, poly: UniPoly, lo: RationalLike, hi: RationalLike):
        lo, hi = as_rational(lo), as_rational(hi)
        content, prim = poly.content_and_primitive()
        if content == 0:
            raise ValueError("zero polynomial")
        prim_sf = prim.square_free_part().primitive()
        if prim_sf != prim:
            raise ValueError("defining polynomial must be square-free")
        if lo >= hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        if prim(lo) == 0 or prim(hi) == 0:
            raise ValueError("interval endpoints must not be roots")
        if count_roots_in(prim, lo, hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        self.poly = prim
        self.lo = lo
        self.hi = hi
        self._chain: list[UniPoly] | None = None

    @classmethod
    def from_rational(cls, q: RationalLike) -> "AlgebraicReal":
        q = as_rational(q)
        poly = UniPoly((-q.numerator, q.denominator))
        return cls(poly, q - 1, q + 1)

    # -- queries ---------------------------------------------------------------

    def width(self) -> Fraction:
        return self.hi - self.lo

    def chain(self) -> list[UniPoly]:
        if self._chain is None:
            self._chain = sturm_chain(self.poly)
        return self._chain

    def rational_value(self) -> Fraction | None:
        """The root itself when it is rational, else None."""
        if self.poly.degree == 1:
            a, b = self.poly.coeff(0), self.poly.coeff(1)
            return -a / b
        from .factor import rational_roots

        for q in rational_roots(self.poly):
            if self.lo < q < self.hi:
                return q
        return None

    def contains_rational(self, q: RationalLike) -> bool:
        """Whether the represented root equals the given rational exactly."""
        q = as_rational(q)
        return self.lo < q < self.hi and self.poly(q) == 0

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        # display only; never used in certificates
        return float(self.midpoint())

    def __repr__(self) -> str:
        return (
            f"AlgebraicReal({self.poly.format()} on "
            f"({rat_to_str(self.lo)}, {rat_to_str(self.hi)}))"
        )

    # -- refinement --------------------------------------------------------------

    def _bisect_once(self) -> "AlgebraicReal":
        mid = self.midpoint()
        if self.poly(mid) == 0:
            # the unique root is mid itself; shrink symmetrically around it,
            # nudging endpoints off the remaining roots of the polynomial
            delta = min(mid - self.lo, self.hi - mid) / 4
            while self.poly(mid - delta) == 0 or self.poly(mid + delta) == 0:
                delta /= 2
            return AlgebraicReal(self.poly, mid - delta, mid + delta)
        if count_roots_in(self.poly, self.lo, mid) == 1:
            return AlgebraicReal(self.poly, self.lo, mid)
        return AlgebraicReal(self.poly, mid, self.hi)

    def refined(self, eps: RationalLike) -> "AlgebraicReal":
        """Same root, interval width < eps, by exact bisection."""
        eps = as_rational(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        cur = self
        while cur.width() >= eps:
            cur = cur._bisect_once()
        return cur

    def decimal_enclosure(self, digits: int) -> tuple[str, str]:
        """Decimal strings (lo, hi) enclosing the root, width < 10^-digits."""
        a = self.refined(Fraction(1, 10**digits))
        scale = 10**digits
        lo_i = _floor_div(a.lo.numerator * scale, a.lo.denominator)
        hi_i = -_floor_div(-a.hi.numerator * scale, a.hi.denominator)
        return _dec(lo_i, digits), _dec(hi_i, digits)


def refine(a: AlgebraicReal, eps: RationalLike) -> AlgebraicReal:
    return a.refined(eps)


def _floor_div(a: int, b: int) -> int:
    return a // b


def _dec(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{str(frac).zfill(digits)}"


def isolate_real_roots(p: UniPoly) -> list[AlgebraicReal]:
    """One AlgebraicReal per distinct real root of p, sorted ascending.

    Intervals are pairwise disjoint and each is certified by a Sturm count
    of one on the square-free part of p.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    sf = p.square_free_part().primitive()
    if sf.degree < 1:
        return []
    bound = cauchy_root_bound(sf)
    lo, hi = -bound - 1, bound + 1
    while sf(lo) == 0:
        lo -= 1
    while sf(hi) == 0:
        hi += 1
    total = count_roots_in(sf, lo, hi)
    out: list[AlgebraicReal] = []

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append(AlgebraicReal(sf, a, b))
            return
        mid = (a + b) / 2
        while sf(mid) == 0:
            mid = (a + mid) / 2
        left = count_roots_in(sf, a, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(lo, hi, total)
    out.sort(key=lambda r: r.lo)
    return out


# -- exact comparison ------------------------------------------------------------


def algebraic_equal(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    """Exact equality of the represented roots via gcd of defining polynomials.

    A common root must be a root of g = gcd(a.poly, b.poly); a root of g
    lying strictly inside both isolating intervals is necessarily the root
    of a and of b at once.  Interval endpoints are never roots of the
    defining polynomials, so refinement always decides membership.
    """
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    g = a.poly.gcd(b.poly)
    if g.degree < 1:
        return False
    for r in isolate_real_roots(g):
        rr = r
        for _ in range(_MAX_REFINE_ROUNDS):
            if lo < rr.lo and rr.hi < hi:
                return True
            if rr.hi <= lo or hi <= rr.lo:
                break
            rr = rr._bisect_once()
        else:
            raise ArithmeticError("root membership did not resolve")
    return False


def algebraic_cmp(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """-1, 0 or 1 comparing the represented roots exactly."""
    if algebraic_equal(a, b):
        return 0
    x, y = a, b
    for _ in range(_MAX_REFINE_ROUNDS):
        if x.hi <= y.lo:
            return -1
        if y.hi <= x.lo:
            return 1
        x = x._bisect_once()
        y = y._bisect_once()
    raise ArithmeticError("comparison did not separate (distinct roots expected)")


def cmp_with_rational(a: AlgebraicReal, q: RationalLike) -> int:
    q = as_rational(q)
    if a.contains_rational(q):
        return 0
    x = a
    for _ in range(_MAX_REFINE_ROUNDS):
        if x.hi <= q:
            return -1
        if q <= x.lo:
            return 1
        x = x._bisect_once()
    raise ArithmeticError("comparison with rational did not separate")


def abs_cmp(a: AlgebraicReal, b: AlgebraicReal) -> int:
    """Compare |a| and |b| exactly."""
    sa = cmp_with_rational(a, 0)
    sb = cmp_with_rational(b, 0)
    aa = a if sa >= 0 else _negate(a)
    bb = b if sb >= 0 else _negate(b)
    return algebraic_cmp(aa, bb)


def _negate(a: AlgebraicReal) -> AlgebraicReal:
    poly = UniPoly(
        (-1) ** i * c for i, c in enumerate(a.poly.coeffs)
    )
    return AlgebraicReal(poly, -a.hi, -a.lo)
