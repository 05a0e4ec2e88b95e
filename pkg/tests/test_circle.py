import random
from fractions import Fraction

import pytest

from helpers import random_loxodromic, random_matrix
from hypfree.circle import (
    CircularInterval,
    RegionRP1,
    circle_distance,
    image_interval,
    intervals_intersect,
    ord3,
    parse_region,
    region_complement,
    region_contains,
    region_disjoint,
    region_image,
    region_subset,
    region_union,
)
from hypfree.mobius import apply_boundary, parse_mobius
from hypfree.surd import INFINITY, ProjectivePoint

P = ProjectivePoint.finite


def interval(lo, hi, closed=False):
    a = INFINITY if lo == "inf" else P(Fraction(lo))
    b = INFINITY if hi == "inf" else P(Fraction(hi))
    return CircularInterval(a, b, closed)


def test_ord3():
    assert ord3(P(0), P(1), P(2))
    assert not ord3(P(0), P(2), P(1))
    assert ord3(P(1), INFINITY, P(0))
    assert ord3(INFINITY, P(-5), P(3))
    assert ord3(P(2), P(5), INFINITY)
    assert not ord3(P(2), INFINITY, P(5))


def test_interval_contains():
    i = interval(0, 1)
    assert i.contains(P(Fraction(1, 2)))
    assert not i.contains(P(0)) and not i.contains(P(1))
    assert interval(0, 1, closed=True).contains(P(1))
    wrap = interval("inf", 0)
    assert wrap.contains(P(-1))
    assert not wrap.contains(P(1))


def test_intersection_cases():
    assert intervals_intersect(interval(0, 10), interval(2, 3))
    assert intervals_intersect(interval(0, 10), interval(5, 15))
    assert not intervals_intersect(interval(0, 1), interval(2, 3))
    assert not intervals_intersect(interval(0, 5), interval(5, 0))
    assert intervals_intersect(interval(0, 5, True), interval(5, 8, True))
    assert not intervals_intersect(interval(0, 5, True), interval(5, 8, False))
    assert not intervals_intersect(interval(0, 5, False), interval(5, 0, True))
    assert intervals_intersect(interval(0, 5), interval(0, 5, True))
    assert intervals_intersect(interval(5, 2), interval(1, 0))  # both wrap


def test_region_examples():
    r = RegionRP1([interval(2, "inf", closed=True)])
    comp = region_complement(r)
    assert len(comp.intervals) == 1
    gap = comp.intervals[0]
    assert gap.lo == INFINITY and gap.hi == P(2) and not gap.closed
    assert region_contains(RegionRP1([interval("inf", 0)]), P(-1))
    assert region_disjoint(RegionRP1([interval(0, 1)]), RegionRP1([interval(2, 3)]))
    # complement of nothing is everything and vice versa
    assert region_complement(RegionRP1.empty()).full
    assert region_complement(RegionRP1.everything()).is_empty


def test_region_rejects_overlap():
    with pytest.raises(ValueError):
        RegionRP1([interval(0, 2), interval(1, 3)])


def test_image_interval_examples():
    m = parse_mobius("2 0 0 1/2")  # z -> 4z
    img = image_interval(m, interval(1, 2))
    assert img.lo == P(4) and img.hi == P(8)
    ident = parse_mobius("1 0 0 1")
    i = interval(3, 7, closed=True)
    assert image_interval(ident, i) == i
    flip = parse_mobius("0 -1 1 0")  # z -> -1/z
    img = image_interval(flip, interval(0, "inf"))
    assert img.lo == INFINITY and img.hi == P(0)
    # sampling oracle: three rational interior points land inside the image
    for sample in (Fraction(1), Fraction(2), Fraction(7, 3)):
        assert img.contains(apply_boundary(flip, P(sample)))


def test_order_preservation():
    rng = random.Random(321)
    samples = [P(Fraction(n, d)) for n in range(-6, 7) for d in (1, 2, 3)] + [INFINITY]
    for _ in range(25):
        m = random_matrix(rng)
        i = interval(rng.randint(-9, 0), rng.randint(1, 9), closed=bool(rng.randint(0, 1)))
        img = image_interval(m, i)
        for p in samples:
            assert img.contains(apply_boundary(m, p)) == i.contains(p)


def test_region_union_subset_image():
    a = RegionRP1([interval(0, 1, True)])
    b = RegionRP1([interval(2, 3, True)])
    u = region_union(a, b)
    assert len(u.intervals) == 2
    assert region_subset(a, u) and region_subset(b, u)
    assert not region_subset(u, a)
    m = random_loxodromic(random.Random(7))
    img = region_image(m, u)
    assert len(img.intervals) == 2
    with pytest.raises(ValueError):
        region_union(a, RegionRP1([interval(Fraction(1, 2), 4)]))


def test_region_parse_roundtrip():
    r = RegionRP1([interval(0, 1, True), interval(5, "inf", True)])
    assert parse_region(str(r)) == r
    assert parse_region("all").full
    assert parse_region("{}").is_empty


def test_circle_distance():
    d = circle_distance(P(0), INFINITY, 30)
    assert d.lo <= Fraction(1, 2) <= d.hi  # quarter turn each side: antipodal
    d = circle_distance(P(0), P(0), 30)
    assert d.hi == 0
    near = circle_distance(P(Fraction(10**6)), INFINITY, 30)
    assert near.hi < Fraction(1, 1000)
    quarter = circle_distance(P(0), P(1), 30)
    assert quarter.lo <= Fraction(1, 4) <= quarter.hi  # atan(1)/pi = 1/4 turn
