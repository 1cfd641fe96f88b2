import random
from fractions import Fraction

import pytest

from refdyn.core import (
    AlgebraicReal,
    UniPoly,
    abs_cmp,
    algebraic_cmp,
    algebraic_equal,
    cmp_with_rational,
    count_roots_in,
    isolate_real_roots,
    poly_from_roots,
    refine,
)


def P(*c):
    return UniPoly(c)


def test_isolate_quadratic_dominant_root():
    roots = isolate_real_roots(P(-2, -5, 1))  # x^2 - 5x - 2
    assert len(roots) == 2
    big = roots[-1]
    # quadratic formula oracle: (5 + sqrt(33)) / 2 = 5.372281323269014...
    # the enclosure must overlap the 1e-12 oracle bracket around the root
    big = big.refined(Fraction(1, 10**11))
    assert big.lo < Fraction(5372281323270, 10**12)
    assert big.hi > Fraction(5372281323269, 10**12)


def test_isolate_no_real_roots():
    assert isolate_real_roots(P(1, 0, 1)) == []


def test_isolate_golden_cube_root():
    roots = isolate_real_roots(P(-1, -4, 1))  # x^2 - 4x - 1
    big = roots[-1].refined(Fraction(1, 10**11))
    # quadratic formula oracle: 2 + sqrt(5) = 4.236067977499789...
    assert big.lo < Fraction(4236067977500, 10**12)
    assert big.hi > Fraction(4236067977499, 10**12)


def test_isolate_with_rational_roots_and_order():
    f = poly_from_roots([-2, 0, Fraction(1, 2)]) * P(-2, 0, 1)
    roots = isolate_real_roots(f)
    assert len(roots) == 5
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo or a.lo < b.lo  # sorted, disjoint isolated
        assert algebraic_cmp(a, b) == -1
    values = [r.rational_value() for r in roots]
    assert Fraction(-2) in values and Fraction(0) in values


def test_isolate_rejects_zero():
    with pytest.raises(ValueError):
        isolate_real_roots(UniPoly.zero())


def test_refine_sqrt2():
    a = isolate_real_roots(P(-2, 0, 1))[-1]
    b = refine(a, Fraction(1, 10**6))
    assert b.width() < Fraction(1, 10**6)
    assert b.lo < Fraction(1414214, 10**6) < b.hi  # sqrt(2) = 1.41421356...
    # the defining polynomial changes sign over the refined interval
    assert b.poly(b.lo) * b.poly(b.hi) < 0


def test_refine_rational_root():
    a = AlgebraicReal.from_rational(Fraction(3, 7))
    b = refine(a, Fraction(1, 10**9))
    assert b.width() < Fraction(1, 10**9)
    assert b.contains_rational(Fraction(3, 7))


def test_refinement_preserves_root_randomized():
    rng = random.Random(12345)
    for _ in range(10):
        roots = rng.sample(range(-8, 9), 3)
        f = poly_from_roots(roots)
        for a in isolate_real_roots(f):
            fine = a.refined(Fraction(1, 10**4))
            target = next(r for r in roots if a.lo < r < a.hi)
            assert fine.contains_rational(target)
            # endpoints are never roots, and the sign flips across them
            assert fine.poly(fine.lo) * fine.poly(fine.hi) < 0


def test_interval_constructor_validation():
    f = P(-2, 0, 1)
    with pytest.raises(ValueError):
        AlgebraicReal(f, 2, 1)
    with pytest.raises(ValueError):
        AlgebraicReal(f, -2, 2)  # two roots inside
    with pytest.raises(ValueError):
        AlgebraicReal(P(-1, 1) ** 2, 0, 2)  # not square-free


def test_count_roots_in():
    f = poly_from_roots([1, 2, 3])
    assert count_roots_in(f, 0, 10) == 3
    assert count_roots_in(f, Fraction(3, 2), Fraction(5, 2)) == 1
    assert count_roots_in(f, 1, 3) == 2  # half-open (1, 3]


def test_algebraic_equal_and_cmp():
    r1 = isolate_real_roots(P(-2, 0, 1))[-1]
    r2 = isolate_real_roots(P(-2, 0, 1) * P(-1, 1))[-1]  # same sqrt(2)... roots: 1, ±sqrt2
    assert algebraic_equal(r1, r2)
    assert algebraic_cmp(r1, r2) == 0
    one = AlgebraicReal.from_rational(1)
    assert algebraic_cmp(one, r1) == -1
    assert cmp_with_rational(r1, 1) == 1
    assert cmp_with_rational(r1, 2) == -1
    assert cmp_with_rational(one, 1) == 0


def test_abs_cmp():
    roots = isolate_real_roots(P(-2, -5, 1))  # (5±sqrt33)/2: one negative small root
    small, big = roots
    assert cmp_with_rational(small, 0) == -1
    assert abs_cmp(big, small) == 1
    minus2 = AlgebraicReal.from_rational(-2)
    two = AlgebraicReal.from_rational(2)
    assert abs_cmp(minus2, two) == 0


def test_decimal_enclosure():
    a = isolate_real_roots(P(-2, -5, 1))[-1]
    lo, hi = a.decimal_enclosure(9)
    assert float(lo) <= 5.372281323269014 <= float(hi)
    # printed width: true width (< 1e-9) plus one outward rounding on each side
    assert float(hi) - float(lo) < 3e-9
