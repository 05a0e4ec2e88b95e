"""Orientation-preserving rational Moebius maps acting on the projective
line, their trichotomy, exact fixed points, and the hyperbolic-plane
metric quantities used by the boundary machinery.

A map is stored as an integer matrix [[p, q], [r, s]] with positive
determinant, scaled to coprime entries with the first nonzero entry
positive, so equal projective maps have identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .enclosure import RatInterval, acosh_interval
from .errors import NotLoxodromic
from .surd import INFINITY, ProjectivePoint, QuadraticSurd, parse_rational, squarefree_decompose


class MobiusMap:
    """z -> (p*z + q) / (r*z + s) with ps - qr > 0, in normalized integer form."""

    __slots__ = ("p", "q", "r", "s")

    def __init__(self, p, q, r, s):
        entries = [Fraction(v) for v in (p, q, r, s)]
        lcm = 1
        for v in entries:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        ints = [int(v * lcm) for v in entries]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            raise ValueError("zero matrix")
        ints = [v // g for v in ints]
        for v in ints:
            if v != 0:
                if v < 0:
                    ints = [-w for w in ints]
                break
        p, q, r, s = ints
        if p * s - q * r <= 0:
            raise ValueError("determinant must be positive")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    def __setattr__(self, name, value):
        raise AttributeError("MobiusMap is immutable")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def trace(self) -> int:
        return self.p + self.s

    def is_identity(self) -> bool:
        return (self.p, self.q, self.r, self.s) == (1, 0, 0, 1)

    def __mul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.s, -self.q, -self.r, self.p)

    def __pow__(self, n: int) -> "MobiusMap":
        if n < 0:
            return self.inverse() ** (-n)
        result = MobiusMap.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return (self.p, self.q, self.r, self.s) == (other.p, other.q, other.r, other.s)

    def __hash__(self):
        return hash((self.p, self.q, self.r, self.s))

    def __repr__(self):
        return f"MobiusMap({self.p}, {self.q}, {self.r}, {self.s})"

    def __str__(self):
        return f"{self.p} {self.q} {self.r} {self.s}"


def parse_mobius(text: str) -> MobiusMap:
    parts = text.split()
    if len(parts) != 4:
        raise ValueError(f"expected 4 rationals 'p q r s', got {text!r}")
    return MobiusMap(*(parse_rational(t) for t in parts))


@dataclass(frozen=True)
class IsometryClass:
    kind: str  # "identity" | "elliptic" | "parabolic" | "loxodromic"
    fixed: ProjectivePoint | None = None
    plus: ProjectivePoint | None = None
    minus: ProjectivePoint | None = None

    def __str__(self):
        if self.kind == "loxodromic":
            return f"Loxodromic plus={self.plus} minus={self.minus}"
        if self.kind == "parabolic":
            return f"Parabolic fixed={self.fixed}"
        return self.kind.capitalize()


def classify(m: MobiusMap) -> IsometryClass:
    """Trichotomy by trace^2 against 4*det; scalar maps are the identity."""
    if m.q == 0 and m.r == 0 and m.p == m.s:
        return IsometryClass("identity")
    t2 = m.trace() ** 2
    d4 = 4 * m.det()
    if t2 > d4:
        plus, minus = fixed_points(m, _checked=False)
        return IsometryClass("loxodromic", plus=plus, minus=minus)
    if t2 == d4:
        return IsometryClass("parabolic", fixed=_parabolic_fixed(m))
    return IsometryClass("elliptic")


def _parabolic_fixed(m: MobiusMap) -> ProjectivePoint:
    if m.r == 0:
        return INFINITY
    # double root of r z^2 + (s - p) z - q
    return ProjectivePoint.finite(Fraction(m.p - m.s, 2 * m.r))


def fixed_points(m: MobiusMap, _checked: bool = True) -> tuple[ProjectivePoint, ProjectivePoint]:
    """Attracting and repelling boundary fixed points of a loxodromic map.

    The attracting point carries the eigenvalue of larger modulus; with
    trace^2 > 4 det both eigenvalues are real of equal sign, so the label
    is decided by the sign of the trace.
    """
    t2 = m.trace() ** 2
    d4 = 4 * m.det()
    if _checked and t2 <= d4:
        raise NotLoxodromic(f"{m} is not loxodromic")
    if m.r == 0:
        # fixed points are infinity (eigenvalue p) and q/(s-p) (eigenvalue s)
        finite = ProjectivePoint.finite(Fraction(m.q, m.s - m.p))
        if abs(m.p) > abs(m.s):
            return INFINITY, finite
        return finite, INFINITY
    disc = t2 - d4
    k, d = squarefree_decompose(disc)
    eps = 1 if m.trace() > 0 else -1
    half = Fraction(1, 2 * m.r)
    a = Fraction(m.p - m.s, 2 * m.r)
    plus = ProjectivePoint.finite(QuadraticSurd(a, eps * k * half, d))
    minus = ProjectivePoint.finite(QuadraticSurd(a, -eps * k * half, d))
    return plus, minus


def apply_boundary(m: MobiusMap, z: ProjectivePoint) -> ProjectivePoint:
    """Extend z -> (pz+q)/(rz+s) projectively; exact in the surd field of z."""
    if z.is_infinity:
        if m.r == 0:
            return INFINITY
        return ProjectivePoint.finite(Fraction(m.p, m.r))
    v = z.value
    num = v * m.p + Fraction(m.q)
    den = v * m.r + Fraction(m.s)
    if den.sign() == 0:
        return INFINITY
    return ProjectivePoint.finite(num / den)


@dataclass(frozen=True)
class HalfPlanePoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.y <= 0:
            raise ValueError("point must lie in the open upper half-plane")

    def __str__(self):
        return f"{self.x} {self.y}"


def cosh_distance(z: HalfPlanePoint, w: HalfPlanePoint) -> Fraction:
    """cosh of the hyperbolic distance: 1 + |z-w|^2 / (2 Im z Im w)."""
    sq = (z.x - w.x) ** 2 + (z.y - w.y) ** 2
    return 1 + sq / (2 * z.y * w.y)


def gromov_product(
    x: HalfPlanePoint, y: HalfPlanePoint, z: HalfPlanePoint, precision: int
) -> RatInterval:
    """Enclosure of (d(x,z) + d(y,z) - d(x,y)) / 2 of width <= 2**-precision."""
    bits = precision + 3
    dxz = acosh_interval(cosh_distance(x, z), bits)
    dyz = acosh_interval(cosh_distance(y, z), bits)
    dxy = acosh_interval(cosh_distance(x, y), bits)
    out = (dxz + dyz - dxy).scale(Fraction(1, 2))
    assert out.width <= Fraction(1, 2**precision)
    return out
