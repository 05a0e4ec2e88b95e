"""Exact interval algebra on the projective line viewed as a circle.

The positive cyclic order runs through increasing reals and wraps through
infinity.  A CircularInterval (lo, hi) denotes the points strictly between
lo and hi in that order, plus the endpoints when closed; a RegionRP1 is a
finite union of pairwise disjoint intervals (or the full circle).
Orientation-preserving Moebius maps act as cyclic-order-preserving circle
homeomorphisms, so the image of an interval is the interval of the mapped
endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .enclosure import RatInterval, atan_interval, pi_interval
from .mobius import MobiusMap, apply_boundary
from .surd import ProjectivePoint, point_compare


def ord3(a: ProjectivePoint, b: ProjectivePoint, c: ProjectivePoint) -> bool:
    """True iff the distinct points a, b, c occur in positive cyclic order."""
    if a == b or b == c or a == c:
        raise ValueError("ord3 needs distinct points")
    if a.is_infinity:
        return b.value.compare(c.value) < 0
    if b.is_infinity:
        return c.value.compare(a.value) < 0
    if c.is_infinity:
        return a.value.compare(b.value) < 0
    ab = a.value.compare(b.value)
    bc = b.value.compare(c.value)
    ca = c.value.compare(a.value)
    # exactly one "wrap" is allowed among consecutive comparisons
    return (ab < 0 and bc < 0) or (bc < 0 and ca < 0) or (ca < 0 and ab < 0)


@dataclass(frozen=True)
class CircularInterval:
    lo: ProjectivePoint
    hi: ProjectivePoint
    closed: bool

    def __post_init__(self):
        if self.lo == self.hi:
            raise ValueError("degenerate interval")

    def contains(self, p: ProjectivePoint) -> bool:
        if p == self.lo or p == self.hi:
            return self.closed
        return ord3(self.lo, p, self.hi)

    def complement(self) -> "CircularInterval":
        return CircularInterval(self.hi, self.lo, not self.closed)

    def __str__(self):
        from .surd import format_point

        left, right = ("[", "]") if self.closed else ("(", ")")
        return f"{left}{format_point(self.lo)},{format_point(self.hi)}{right}"


def intervals_intersect(i: CircularInterval, j: CircularInterval) -> bool:
    # an endpoint strictly inside the other interval forces interior overlap
    for p in (j.lo, j.hi):
        if p != i.lo and p != i.hi and i.contains(p):
            return True
    for p in (i.lo, i.hi):
        if p != j.lo and p != j.hi and j.contains(p):
            return True
    if i.lo == j.lo and i.hi == j.hi:
        return True  # identical spans; interiors are nonempty
    # interiors disjoint: only a shared endpoint owned by both sides remains
    if i.closed and j.closed:
        return i.lo in (j.lo, j.hi) or i.hi in (j.lo, j.hi)
    return False


def image_interval(m: MobiusMap, interval: CircularInterval) -> CircularInterval:
    return CircularInterval(
        apply_boundary(m, interval.lo), apply_boundary(m, interval.hi), interval.closed
    )


class RegionRP1:
    """Canonical finite union of pairwise disjoint circular intervals."""

    __slots__ = ("intervals", "full")

    def __init__(self, intervals=(), full: bool = False):
        intervals = tuple(intervals)
        if full and intervals:
            raise ValueError("full region carries no interval list")
        for a in range(len(intervals)):
            for b in range(a + 1, len(intervals)):
                if intervals_intersect(intervals[a], intervals[b]):
                    raise ValueError(f"overlapping intervals {intervals[a]} and {intervals[b]}")
        key = cmp_to_key(lambda i, j: point_compare(i.lo, j.lo))
        object.__setattr__(self, "intervals", tuple(sorted(intervals, key=key)))
        object.__setattr__(self, "full", full)

    def __setattr__(self, name, value):
        raise AttributeError("RegionRP1 is immutable")

    @classmethod
    def empty(cls) -> "RegionRP1":
        return cls()

    @classmethod
    def everything(cls) -> "RegionRP1":
        return cls(full=True)

    @property
    def is_empty(self) -> bool:
        return not self.full and not self.intervals

    def contains(self, p: ProjectivePoint) -> bool:
        if self.full:
            return True
        return any(i.contains(p) for i in self.intervals)

    def __eq__(self, other):
        if not isinstance(other, RegionRP1):
            return NotImplemented
        return self.full == other.full and self.intervals == other.intervals

    def __hash__(self):
        return hash((self.full, self.intervals))

    def __str__(self):
        if self.full:
            return "all"
        if not self.intervals:
            return "{}"
        return "; ".join(str(i) for i in self.intervals)


def region_union(*regions: RegionRP1) -> RegionRP1:
    """Union of pairwise disjoint regions (mixed-closure overlaps are rejected)."""
    if any(r.full for r in regions):
        if any(not q.full and q.intervals for q in regions):
            raise ValueError("cannot union the full circle with more intervals")
        return RegionRP1.everything()
    intervals = [i for r in regions for i in r.intervals]
    return RegionRP1(intervals)


def region_complement(region: RegionRP1) -> RegionRP1:
    if region.full:
        return RegionRP1.empty()
    if not region.intervals:
        return RegionRP1.everything()
    ivs = region.intervals  # sorted by lo = cyclic arrangement, since disjoint
    out = []
    for idx, cur in enumerate(ivs):
        nxt = ivs[(idx + 1) % len(ivs)]
        if cur.closed != nxt.closed:
            raise ValueError("complement of a mixed-closure region is not representable")
        if cur.hi == nxt.lo:
            # both open (closed neighbours would intersect): the gap is one point
            raise ValueError("single-point complement gap is not representable")
        out.append(CircularInterval(cur.hi, nxt.lo, not cur.closed))
    return RegionRP1(out)


def region_contains(region: RegionRP1, p: ProjectivePoint) -> bool:
    return region.contains(p)


def region_disjoint(r1: RegionRP1, r2: RegionRP1) -> bool:
    if r1.full:
        return r2.is_empty
    if r2.full:
        return r1.is_empty
    return not any(intervals_intersect(a, b) for a in r1.intervals for b in r2.intervals)


def region_subset(r1: RegionRP1, r2: RegionRP1) -> bool:
    return region_disjoint(r1, region_complement(r2))


def region_image(m: MobiusMap, region: RegionRP1) -> RegionRP1:
    if region.full:
        return region
    return RegionRP1(image_interval(m, i) for i in region.intervals)


def parse_interval(text: str) -> CircularInterval:
    from .surd import parse_point

    text = text.strip()
    if len(text) < 2 or text[0] not in "[(" or text[-1] not in "])":
        raise ValueError(f"bad interval {text!r}")
    closed = text[0] == "["
    if closed != (text[-1] == "]"):
        raise ValueError(f"mismatched interval brackets in {text!r}")
    body = text[1:-1].split(",")
    if len(body) != 2:
        raise ValueError(f"bad interval body {text!r}")
    return CircularInterval(parse_point(body[0]), parse_point(body[1]), closed)


def parse_region(text: str) -> RegionRP1:
    text = text.strip()
    if text == "all":
        return RegionRP1.everything()
    if text == "{}":
        return RegionRP1.empty()
    return RegionRP1(parse_interval(part) for part in text.split(";"))


def circle_position(p: ProjectivePoint, bits: int) -> RatInterval:
    """Enclosure of the circle coordinate atan(x)/pi in [-1/2, 1/2]."""
    if p.is_infinity:
        half = Fraction(1, 2)
        return RatInterval(half, half)
    work = bits + 4
    while True:
        x = p.value.enclosure(work)
        lo = atan_interval(x.lo, work).lo
        hi = atan_interval(x.hi, work).hi
        u = RatInterval(lo, hi).divide_by_positive(pi_interval(work))
        if u.width <= Fraction(1, 2**bits):
            return u
        work += 8


def circle_distance(p: ProjectivePoint, q: ProjectivePoint, bits: int) -> RatInterval:
    """Enclosure of the cyclic distance (fraction of a full turn, in [0, 1/2])."""
    if p == q:
        return RatInterval(Fraction(0), Fraction(0))
    u = circle_position(p, bits + 2)
    v = circle_position(q, bits + 2)
    delta = u - v

    def cd(x: Fraction) -> Fraction:
        ax = abs(x)
        return min(ax, 1 - ax)

    lo = min(cd(delta.lo), cd(delta.hi))
    hi = max(cd(delta.lo), cd(delta.hi))
    if delta.lo <= 0 <= delta.hi:
        lo = Fraction(0)
    for brk in (Fraction(1, 2), Fraction(-1, 2)):
        if delta.lo <= brk <= delta.hi:
            hi = Fraction(1, 2)
    return RatInterval(lo, hi)
