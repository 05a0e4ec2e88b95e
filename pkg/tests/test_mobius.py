import random
from fractions import Fraction

import mpmath
import pytest

from helpers import random_loxodromic, random_matrix
from hypfree.errors import NotLoxodromic
from hypfree.mobius import (
    HalfPlanePoint,
    MobiusMap,
    apply_boundary,
    classify,
    cosh_distance,
    fixed_points,
    gromov_product,
    parse_mobius,
)
from hypfree.surd import INFINITY, ProjectivePoint, QuadraticSurd

mpmath.mp.dps = 40


def test_normalization():
    m = MobiusMap(Fraction(1, 2), 0, 0, Fraction(1, 8))
    assert (m.p, m.q, m.r, m.s) == (4, 0, 0, 1)
    m2 = MobiusMap(-2, 0, -1, -1)
    assert m2.p > 0 and (m2.p, m2.q, m2.r, m2.s) == (2, 0, 1, 1)
    # normalizing a normalized map is the identity
    again = MobiusMap(m.p, m.q, m.r, m.s)
    assert again == m
    with pytest.raises(ValueError):
        MobiusMap(1, 0, 0, -1)  # negative determinant
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)  # singular


def test_classify_examples():
    assert classify(parse_mobius("2 0 0 1")).kind == "loxodromic"
    cls = classify(parse_mobius("2 0 0 1"))
    assert cls.plus == INFINITY and cls.minus == ProjectivePoint.finite(0)
    par = classify(parse_mobius("1 1 0 1"))
    assert par.kind == "parabolic" and par.fixed == INFINITY
    assert classify(parse_mobius("0 -1 1 0")).kind == "elliptic"
    assert classify(MobiusMap.identity()).kind == "identity"
    assert classify(parse_mobius("3 0 0 3")).kind == "identity"


def test_classify_golden_ratio():
    m = parse_mobius("2 1 1 1")
    cls = classify(m)
    assert cls.kind == "loxodromic"
    # independent oracle: iterate z -> (2z+1)/(z+1) from z=1 numerically
    z = mpmath.mpf(1)
    for _ in range(80):
        z = (2 * z + 1) / (z + 1)
    iv = cls.plus.value.enclosure(45)
    assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= z <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
    # and the exact root check of z^2 - z - 1
    phi = cls.plus.value
    assert phi * phi - phi - 1 == QuadraticSurd(0)


def test_classification_scale_invariance():
    rng = random.Random(11)
    for _ in range(50):
        m = random_matrix(rng)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        scaled = MobiusMap(lam * m.p, lam * m.q, lam * m.r, lam * m.s)
        assert classify(scaled).kind == classify(m).kind


def test_fixed_points_examples():
    plus, minus = fixed_points(parse_mobius("2 0 0 1/2"))
    assert plus == INFINITY and minus == ProjectivePoint.finite(0)
    plus, minus = fixed_points(parse_mobius("1/2 0 0 2"))
    assert plus == ProjectivePoint.finite(0) and minus == INFINITY
    f = parse_mobius("2 0 0 1/2")
    h = parse_mobius("1 1 1 2")
    plus, minus = fixed_points(h * f * h.inverse())
    assert plus == ProjectivePoint.finite(1)
    assert minus == ProjectivePoint.finite(Fraction(1, 2))
    with pytest.raises(NotLoxodromic):
        fixed_points(parse_mobius("1 1 0 1"))


def test_fixed_points_are_fixed():
    rng = random.Random(5)
    for _ in range(40):
        m = random_loxodromic(rng)
        plus, minus = fixed_points(m)
        assert apply_boundary(m, plus) == plus
        assert apply_boundary(m, minus) == minus
        assert plus != minus


def test_apply_boundary_examples():
    assert apply_boundary(parse_mobius("1 1 0 1"), ProjectivePoint.finite(0)) == ProjectivePoint.finite(1)
    assert apply_boundary(parse_mobius("2 0 0 1/2"), INFINITY) == INFINITY
    assert apply_boundary(parse_mobius("1 1 1 2"), ProjectivePoint.finite(0)) == ProjectivePoint.finite(
        Fraction(1, 2)
    )
    # pole goes to infinity
    assert apply_boundary(parse_mobius("1 1 1 2"), ProjectivePoint.finite(-2)) == INFINITY


def test_conjugation_covariance():
    rng = random.Random(20240810)
    for _ in range(50):
        f = random_loxodromic(rng)
        h = random_matrix(rng)
        plus, minus = fixed_points(f)
        cplus, cminus = fixed_points(h * f * h.inverse())
        assert cplus == apply_boundary(h, plus)
        assert cminus == apply_boundary(h, minus)


def test_cosh_distance():
    i = HalfPlanePoint(0, 1)
    assert cosh_distance(i, i) == 1
    assert cosh_distance(i, HalfPlanePoint(0, 2)) == Fraction(5, 4)
    w = HalfPlanePoint(1, 1)
    assert cosh_distance(i, w) == Fraction(3, 2)
    assert cosh_distance(w, i) == Fraction(3, 2)
    # arccosh(5/4) should be ln 2
    assert abs(float(mpmath.acosh(1.25)) - float(mpmath.log(2))) < 1e-12
    with pytest.raises(ValueError):
        HalfPlanePoint(0, 0)


def test_gromov_product():
    x = HalfPlanePoint(0, 1)
    y = HalfPlanePoint(0, 4)
    z = HalfPlanePoint(0, 2)
    for precision in (10, 24, 40):
        gp = gromov_product(x, y, z, precision)
        assert gp.width <= Fraction(1, 2**precision)
        assert gp.lo <= 0 <= gp.hi  # collinear: ln2 + ln2 - ln4 = 0
    gp = gromov_product(x, x, z, 30)
    ln2 = mpmath.log(2)
    assert mpmath.mpf(gp.lo.numerator) / gp.lo.denominator <= ln2 <= mpmath.mpf(gp.hi.numerator) / gp.hi.denominator
    gp = gromov_product(x, y, x, 30)
    assert gp.lo <= 0 <= gp.hi
