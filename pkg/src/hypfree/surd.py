"""Exact real-quadratic arithmetic: rationals, quadratic surds, and
points of the projective line over them.

A surd is stored canonically as a + b*sqrt(d) with a, b rational and d a
square-free non-negative integer; d = 0 whenever b = 0, so equal values
have identical field tuples.  Comparisons are exact: same-field signs are
decided algebraically, cross-field ones by interval refinement (which
terminates because a + b*sqrt(d1) = c + e*sqrt(d2) with d1 != d2 square-free
and b, e != 0 is impossible).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .enclosure import RatInterval, sqrt_interval

Rational = Fraction

_SMALL_PRIME_BOUND = 10_000


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [i for i in range(2, bound + 1) if sieve[i]]


_PRIMES = _small_primes(_SMALL_PRIME_BOUND)


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as k*k*d with d square-free; return (k, d)."""
    if n < 0:
        raise ValueError("negative argument")
    if n == 0:
        return 1, 0
    k, d = 1, 1
    for p in _PRIMES:
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            k *= r
        else:
            # residual has only prime factors above the trial bound
            from sympy import factorint

            for p, e in factorint(n).items():
                k *= p ** (e // 2)
                if e % 2:
                    d *= p
    return k, d


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


class QuadraticSurd:
    """Canonical a + b*sqrt(d) with d square-free, d = 0 iff b = 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("negative radicand")
        if b == 0 or d == 0:
            a += b * 0  # value of b*sqrt(0) is 0
            b = Fraction(0)
            d = 0
        else:
            k, d = squarefree_decompose(d)
            b *= k
            if d <= 1:
                a += b * d
                b = Fraction(0)
                d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    @classmethod
    def from_rational(cls, q) -> "QuadraticSurd":
        return cls(Fraction(q))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational value")
        return self.a

    def _same_field(self, other: "QuadraticSurd") -> bool:
        return self.d == other.d or self.b == 0 or other.b == 0

    def _field(self, other: "QuadraticSurd") -> int:
        return self.d if self.b != 0 else other.d

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(self.a + other, self.b, self.d)
        if isinstance(other, QuadraticSurd):
            if not self._same_field(other):
                raise ValueError("incompatible quadratic fields")
            return QuadraticSurd(self.a + other.a, self.b + other.b, self._field(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return self + (-other if isinstance(other, QuadraticSurd) else -Fraction(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(self.a * other, self.b * other, self.d)
        if isinstance(other, QuadraticSurd):
            if not self._same_field(other):
                raise ValueError("incompatible quadratic fields")
            d = self._field(other)
            a = self.a * other.a + self.b * other.b * d
            b = self.a * other.b + self.b * other.a
            return QuadraticSurd(a, b, d)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return QuadraticSurd(self.a / other, self.b / other, self.d)
        if isinstance(other, QuadraticSurd):
            if not self._same_field(other):
                raise ValueError("incompatible quadratic fields")
            d = self._field(other)
            norm = other.a * other.a - other.b * other.b * d
            if norm == 0:
                raise ZeroDivisionError
            conj = QuadraticSurd(other.a, -other.b, other.d)
            num = self * conj
            return QuadraticSurd(num.a / norm, num.b / norm, d)
        return NotImplemented

    def sign(self) -> int:
        """Exact sign of the real value: -1, 0 or 1."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if b > 0:
            if a >= 0:
                return 1
            return 1 if b * b * d > a * a else (0 if b * b * d == a * a else -1)
        if a <= 0:
            return -1
        return -1 if b * b * d > a * a else (0 if b * b * d == a * a else 1)

    def enclosure(self, bits: int) -> RatInterval:
        """Rational interval of width <= 2**-bits containing the value."""
        if self.b == 0:
            return RatInterval(self.a, self.a)
        extra = max(abs(self.b.numerator) // self.b.denominator, 1).bit_length() + 1
        s = sqrt_interval(Fraction(self.d), bits + extra)
        return s.scale(self.b) + RatInterval(self.a, self.a)

    def compare(self, other: "QuadraticSurd") -> int:
        if self._same_field(other):
            return (self - other).sign()
        # distinct irrational fields: the values cannot coincide
        bits = 16
        while True:
            x = self.enclosure(bits)
            y = other.enclosure(bits)
            if x.lo > y.hi:
                return 1
            if x.hi < y.lo:
                return -1
            bits *= 2

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticSurd):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self.compare(_coerce(other)) < 0

    def __le__(self, other):
        return self.compare(_coerce(other)) <= 0

    def __gt__(self, other):
        return self.compare(_coerce(other)) > 0

    def __ge__(self, other):
        return self.compare(_coerce(other)) >= 0

    def __repr__(self):
        return f"QuadraticSurd({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        sep = "+" if self.b > 0 else "-"
        return f"{self.a}{sep}{abs(self.b)}*sqrt({self.d})"


def _coerce(x) -> QuadraticSurd:
    if isinstance(x, QuadraticSurd):
        return x
    return QuadraticSurd(Fraction(x))


def surd_compare(x, y) -> int:
    """Exact three-way comparison of surd values: -1, 0 or 1."""
    return _coerce(x).compare(_coerce(y))


class ProjectivePoint:
    """A point of the rational-quadratic projective line: a surd, or infinity."""

    __slots__ = ("value",)

    def __init__(self, value: QuadraticSurd | None):
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    @classmethod
    def finite(cls, x) -> "ProjectivePoint":
        return cls(_coerce(x))

    @classmethod
    def infinity(cls) -> "ProjectivePoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self):
        return hash(self.value) if self.value is not None else hash("inf")

    def __repr__(self):
        return f"ProjectivePoint({self.value!r})"

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INFINITY = ProjectivePoint.infinity()


def format_point(p: ProjectivePoint) -> str:
    """Machine form: 'inf' or 'a b d' for a + b*sqrt(d)."""
    if p.is_infinity:
        return "inf"
    v = p.value
    return f"{v.a} {v.b} {v.d}"


def parse_point(text: str) -> ProjectivePoint:
    text = text.strip()
    if text == "inf":
        return INFINITY
    parts = text.split()
    if len(parts) != 3:
        raise ValueError(f"bad point {text!r}: expected 'inf' or 'a b d'")
    a, b = parse_rational(parts[0]), parse_rational(parts[1])
    try:
        d = int(parts[2])
    except ValueError as exc:
        raise ValueError(f"bad radicand {parts[2]!r}") from exc
    return ProjectivePoint.finite(QuadraticSurd(a, b, d))


def point_compare(p: ProjectivePoint, q: ProjectivePoint) -> int:
    """Total order with infinity first, then increasing real value."""
    if p.is_infinity or q.is_infinity:
        if p.is_infinity and q.is_infinity:
            return 0
        return -1 if p.is_infinity else 1
    return p.value.compare(q.value)
