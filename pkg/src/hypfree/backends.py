"""One capability surface over both geometries for the ping-pong engine.

A backend bundles exact isometry arithmetic, loxodromic classification
with fixed boundary points, and a region algebra closed under complement,
union, isometry image, containment and disjointness.  Everything is exact
and deterministic; values are immutable.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction

from . import circle, mobius
from .errors import ParseError
from .freeprod import FreeProduct, Word, format_presentation, parse_presentation
from .surd import INFINITY, ProjectivePoint, format_point, parse_point


class GeometryBackend(ABC):
    name: str

    # isometries
    @abstractmethod
    def identity(self): ...

    @abstractmethod
    def multiply(self, a, b): ...

    @abstractmethod
    def inverse(self, a): ...

    def is_identity(self, a) -> bool:
        return a == self.identity()

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inverse(a), -n)
        out = self.identity()
        base = a
        while n:
            if n & 1:
                out = self.multiply(out, base)
            base = self.multiply(base, base)
            n >>= 1
        return out

    def conjugate(self, h, g):
        """h g h^-1."""
        return self.multiply(self.multiply(h, g), self.inverse(h))

    # boundary dynamics
    @abstractmethod
    def is_loxodromic(self, a) -> bool: ...

    @abstractmethod
    def fixed_pair(self, a): ...

    @abstractmethod
    def boundary_apply(self, a, point): ...

    # region algebra (regions are closed basic neighborhoods or unions thereof)
    @abstractmethod
    def basic_region(self, center, level: int): ...

    @abstractmethod
    def region_empty(self): ...

    @abstractmethod
    def region_union(self, regions): ...

    @abstractmethod
    def region_complement(self, region): ...

    @abstractmethod
    def region_contains(self, region, point) -> bool: ...

    @abstractmethod
    def region_disjoint(self, r1, r2) -> bool: ...

    def region_subset(self, r1, r2) -> bool:
        return self.region_disjoint(r1, self.region_complement(r2))

    @abstractmethod
    def region_image(self, a, region): ...

    # serialization
    @abstractmethod
    def format_isometry(self, a) -> str: ...

    @abstractmethod
    def parse_isometry(self, text: str): ...

    @abstractmethod
    def format_point(self, p) -> str: ...

    @abstractmethod
    def parse_point(self, text: str): ...

    @abstractmethod
    def format_region(self, region) -> str: ...

    @abstractmethod
    def parse_region(self, text: str): ...


class MobiusBackend(GeometryBackend):
    """Rational Moebius maps on the projective line."""

    name = "mobius"

    def identity(self):
        return mobius.MobiusMap.identity()

    def multiply(self, a, b):
        return a * b

    def inverse(self, a):
        return a.inverse()

    def power(self, a, n: int):
        return a**n

    def is_loxodromic(self, a) -> bool:
        return mobius.classify(a).kind == "loxodromic"

    def fixed_pair(self, a):
        return mobius.fixed_points(a)

    def boundary_apply(self, a, point):
        return mobius.apply_boundary(a, point)

    def basic_region(self, center: ProjectivePoint, level: int):
        """Closed interval of radius 2**-level around the center (a tail
        interval [2**level, -2**level] through infinity for center = inf)."""
        if level < 1:
            raise ValueError("level must be at least 1")
        if center.is_infinity:
            bound = Fraction(2**level)
            lo = ProjectivePoint.finite(bound)
            hi = ProjectivePoint.finite(-bound)
            return circle.RegionRP1([circle.CircularInterval(lo, hi, True)])
        rad = Fraction(1, 2**level)
        lo = ProjectivePoint.finite(center.value - rad)
        hi = ProjectivePoint.finite(center.value + rad)
        return circle.RegionRP1([circle.CircularInterval(lo, hi, True)])

    def region_empty(self):
        return circle.RegionRP1.empty()

    def region_union(self, regions):
        return circle.region_union(*regions)

    def region_complement(self, region):
        return circle.region_complement(region)

    def region_contains(self, region, point) -> bool:
        return circle.region_contains(region, point)

    def region_disjoint(self, r1, r2) -> bool:
        return circle.region_disjoint(r1, r2)

    def region_image(self, a, region):
        return circle.region_image(a, region)

    def format_isometry(self, a) -> str:
        return str(a)

    def parse_isometry(self, text: str):
        try:
            return mobius.parse_mobius(text)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def format_point(self, p) -> str:
        return format_point(p)

    def parse_point(self, text: str):
        try:
            return parse_point(text)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def format_region(self, region) -> str:
        return str(region)

    def parse_region(self, text: str):
        try:
            return circle.parse_region(text)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


class TreeBackend(GeometryBackend):
    """Free products of finite cyclic groups acting on their tree of ends."""

    def __init__(self, presentation: FreeProduct):
        self.presentation = presentation
        self.name = "tree " + format_presentation(presentation)

    def identity(self):
        return Word()

    def multiply(self, a, b):
        return self.presentation.multiply(a, b)

    def inverse(self, a):
        return self.presentation.inverse(a)

    def power(self, a, n: int):
        return self.presentation.power(a, n)

    def is_loxodromic(self, a) -> bool:
        return self.presentation.is_loxodromic(a)

    def fixed_pair(self, a):
        return self.presentation.fixed_ends(a)

    def boundary_apply(self, a, point):
        return self.presentation.apply_end(a, point)

    def basic_region(self, center, level: int):
        """Cylinder on the first `level` syllables of the center end."""
        if level < 1:
            raise ValueError("level must be at least 1")
        from .freeprod import Cylinder

        prefix = self.presentation.unroll(center, level)
        return self.presentation.region([Cylinder(prefix)])

    def region_empty(self):
        return self.presentation.region_empty()

    def region_union(self, regions):
        return self.presentation.region_union(*regions)

    def region_complement(self, region):
        return self.presentation.region_complement(region)

    def region_contains(self, region, point) -> bool:
        return self.presentation.region_contains(region, point)

    def region_disjoint(self, r1, r2) -> bool:
        return self.presentation.region_disjoint(r1, r2)

    def region_image(self, a, region):
        return self.presentation.region_image(a, region)

    def format_isometry(self, a) -> str:
        return self.presentation.format_word(a)

    def parse_isometry(self, text: str):
        return self.presentation.parse_word(text)

    def format_point(self, p) -> str:
        return self.presentation.format_end(p)

    def parse_point(self, text: str):
        return self.presentation.parse_end(text)

    def format_region(self, region) -> str:
        return self.presentation.format_region(region)

    def parse_region(self, text: str):
        return self.presentation.parse_region(text)


def backend_from_id(text: str) -> GeometryBackend:
    text = text.strip()
    if text == "mobius":
        return MobiusBackend()
    if text.startswith("tree"):
        return TreeBackend(parse_presentation(text[len("tree") :].strip()))
    raise ParseError(f"unknown backend id {text!r}")
