"""Factorization over the rationals up to a documented degree bound.

Pipeline: square-free decomposition (Yun), stripping of the x^k content and
of all rational roots, then a bounded exhaustive search for integer factors
of the remaining square-free core in the style of Kronecker: a factor of
degree d is pinned down by its values at d+1 integer points, each of which
must divide the corresponding value of the polynomial, so enumerating divisor
combinations and interpolating finds every factor of degree <= deg/2.
Interpolated candidates are pruned with a Mignotte-style coefficient bound
before the exact trial division.

The search is exhaustive and certifiably correct but exponential in
principle, hence the hard degree bound (default 8; everything this package
factors has degree <= 6).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

from .unipoly import UniPoly

DEGREE_BOUND = 8


def factor_over_rationals(
    p: UniPoly, max_degree: int = DEGREE_BOUND
) -> list[tuple[UniPoly, int]]:
    """Irreducible monic-free factorization: p = const * prod f_i^{m_i}.

    Each returned factor is a primitive integer polynomial with positive
    leading coefficient, irreducible over the rationals; multiplicities are
    positive.  Factors are sorted by degree, then coefficients.  Raises on
    the zero polynomial and on degree above the implementation bound.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > max_degree:
        raise ValueError(
            f"degree {p.degree} exceeds the factorization bound {max_degree}"
        )
    factors: dict[UniPoly, int] = {}

    def add(f: UniPoly, mult: int) -> None:
        f = f.primitive()
        factors[f] = factors.get(f, 0) + mult

    for sf, mult in p.square_free_decomposition():
        for g in _factor_square_free(sf.primitive()):
            add(g, mult)
    return sorted(factors.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs))


def _factor_square_free(h: UniPoly) -> list[UniPoly]:
    """Irreducible factors of a primitive square-free integer polynomial."""
    out: list[UniPoly] = []
    # x^k content
    k = 0
    while h.coeff(0) == 0 and h.degree > 0:
        h = h // UniPoly.x()
        k += 1
    out.extend([UniPoly.x()] * k)
    # rational roots -> linear factors
    for root in rational_roots(h):
        lin = UniPoly((-root.numerator, root.denominator)).primitive()
        h = (h // UniPoly((-root, 1))).primitive()
        out.append(lin)
    if h.degree <= 0:
        return out
    if h.degree <= 3:
        # square-free, no rational roots, degree 2 or 3: irreducible
        out.append(h)
        return out
    out.extend(_kronecker_split(h))
    return out


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of a nonzero integer polynomial (each listed once,
    multiplicity ignored), by the rational root theorem."""
    p = p.primitive()
    if p.degree <= 0:
        return []
    a0 = int(p.coeff(0))
    an = int(p.leading())
    if a0 == 0:
        roots = rational_roots(p // UniPoly.x())
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        return sorted(roots)
    found = []
    for num in _divisors(abs(a0)):
        for den in _divisors(abs(an)):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if p(cand) == 0 and cand not in found:
                    found.append(cand)
    return sorted(found)


def _divisors(n: int) -> list[int]:
    ds = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            ds.add(d)
            ds.add(n // d)
    return sorted(ds)


def _mignotte_bound(h: UniPoly, d: int) -> int:
    """Coefficient bound for any degree-d integer factor of h."""
    norm_sq = sum(int(c) * int(c) for c in h.coeffs)
    return (2**d) * (isqrt(norm_sq) + 1) * abs(int(h.leading()))


def _kronecker_split(h: UniPoly) -> list[UniPoly]:
    """Fully factor a primitive square-free integer polynomial of degree >= 4
    with no rational roots, by exhaustive divisor interpolation."""
    n = h.degree
    for d in range(2, n // 2 + 1):
        g = _find_factor_of_degree(h, d)
        if g is not None:
            rest = (h // g).primitive()
            return _kronecker_split_or_atom(g) + _kronecker_split_or_atom(rest)
    return [h]


def _kronecker_split_or_atom(h: UniPoly) -> list[UniPoly]:
    if h.degree <= 3:
        # any rational roots were already stripped upstream, but a freshly
        # split factor of degree 2 or 3 may still have them
        out = []
        g = h
        for root in rational_roots(g):
            out.append(UniPoly((-root.numerator, root.denominator)).primitive())
            g = (g // UniPoly((-root, 1))).primitive()
        if g.degree > 0:
            out.append(g)
        return out
    return _kronecker_split(h)


def _find_factor_of_degree(h: UniPoly, d: int) -> UniPoly | None:
    points = _sample_points(d + 1)
    values = [int(h(x)) for x in points]
    if any(v == 0 for v in values):  # a rational root survived: handled upstream
        raise AssertionError("unexpected integer root during Kronecker search")
    bound = _mignotte_bound(h, d)
    divisor_lists: list[list[int]] = []
    for i, v in enumerate(values):
        ds = _divisors(abs(v))
        # sign of the factor is normalized at the first point
        divisor_lists.append(ds if i == 0 else [x for d_ in ds for x in (d_, -d_)])
    for combo in product(*divisor_lists):
        g = _interpolate_integer(points, combo, d)
        if g is None or g.degree < 1:
            continue
        if any(abs(int(c)) > bound for c in g.coeffs):
            continue
        q, r = h.divmod(g)
        if r.is_zero() and q.degree >= 1:
            return g.primitive()
    return None


def _sample_points(k: int) -> list[int]:
    pts = [0]
    v = 1
    while len(pts) < k:
        pts.append(v)
        if len(pts) < k:
            pts.append(-v)
        v += 1
    return pts[:k]


def _interpolate_integer(
    xs: list[int], ys: tuple[int, ...], max_degree: int
) -> UniPoly | None:
    """Lagrange interpolation; None unless the result has integer coefficients
    and degree <= max_degree."""
    total = UniPoly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = UniPoly.one()
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly((-xj, 1))
                denom *= xi - xj
        total = total + basis.scale(Fraction(yi, denom))
    if total.degree > max_degree or not total.is_integer():
        return None
    return total
