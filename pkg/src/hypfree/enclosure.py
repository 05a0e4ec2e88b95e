"""Certified rational enclosures of sqrt, ln, atan, pi and arccosh.

Every function returns a RatInterval [lo, hi] that provably contains the
true value, with lo and hi exact Fractions.  No floating point is used;
truncation errors of the underlying series are bounded explicitly and
added to the upper endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

_ZERO = Fraction(0)


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("inverted interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def scale(self, c) -> "RatInterval":
        c = Fraction(c)
        if c >= 0:
            return RatInterval(self.lo * c, self.hi * c)
        return RatInterval(self.hi * c, self.lo * c)

    def shift(self, c) -> "RatInterval":
        c = Fraction(c)
        return RatInterval(self.lo + c, self.hi + c)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def divide_by_positive(self, other: "RatInterval") -> "RatInterval":
        if other.lo <= 0:
            raise ValueError("divisor interval must be positive")
        cands = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        return RatInterval(min(cands), max(cands))


def point(x) -> RatInterval:
    x = Fraction(x)
    return RatInterval(x, x)


def sqrt_interval(v: Fraction, bits: int) -> RatInterval:
    """Enclosure of sqrt(v), v >= 0, of width <= 2**-bits."""
    v = Fraction(v)
    if v < 0:
        raise ValueError("negative radicand")
    if v == 0:
        return RatInterval(_ZERO, _ZERO)
    n, den = v.numerator, v.denominator
    m = n * den  # sqrt(n/den) = sqrt(n*den)/den
    k = max(bits, 1)
    r = isqrt(m << (2 * k))
    scale = den << k
    if r * r == m << (2 * k):
        return RatInterval(Fraction(r, scale), Fraction(r, scale))
    return RatInterval(Fraction(r, scale), Fraction(r + 1, scale))


def _atanh_series(t: Fraction, err: Fraction) -> RatInterval:
    """Enclosure of atanh(t) for 0 <= t <= 1/2 with slack <= err."""
    if not 0 <= t <= Fraction(1, 2):
        raise ValueError("series argument out of range")
    if t == 0:
        return RatInterval(_ZERO, _ZERO)
    t2 = t * t
    s = _ZERO
    power = t
    j = 1
    while True:
        tail = power / (j * (1 - t2))  # sum_{i>=j, odd} t^i/i <= t^j / (j(1-t^2))
        if tail <= err:
            return RatInterval(s, s + tail)
        s += power / j
        power *= t2
        j += 2


@lru_cache(maxsize=None)
def ln2_interval(bits: int) -> RatInterval:
    return _atanh_series(Fraction(1, 3), Fraction(1, 2 ** (bits + 1))).scale(2)


def ln_interval(v: Fraction, bits: int) -> RatInterval:
    """Enclosure of ln(v), v > 0, of width <= 2**-bits."""
    v = Fraction(v)
    if v <= 0:
        raise ValueError("ln of non-positive value")
    e = 0
    m = v
    while m >= 2:
        m /= 2
        e += 1
    while m < 1:
        m *= 2
        e -= 1
    err = Fraction(1, 2 ** (bits + 2))
    body = _atanh_series((m - 1) / (m + 1), err / 2).scale(2)
    if e == 0:
        return body
    ln2_bits = bits + 2 + abs(e).bit_length()
    return body + ln2_interval(ln2_bits).scale(e)


def _atan_series(t: Fraction, err: Fraction) -> RatInterval:
    """Enclosure of atan(t) for 0 <= t <= 1/2: alternating partial sums."""
    if not 0 <= t <= Fraction(1, 2):
        raise ValueError("series argument out of range")
    if t == 0:
        return RatInterval(_ZERO, _ZERO)
    t2 = t * t
    s = _ZERO
    power = t
    j = 1
    sign = 1
    while True:
        term = power / j
        if term <= err:
            # truncation error is bounded by the next (omitted) term
            if sign > 0:
                return RatInterval(s, s + term)
            return RatInterval(s - term, s)
        s += sign * term
        power *= t2
        j += 2
        sign = -sign


@lru_cache(maxsize=None)
def pi_interval(bits: int) -> RatInterval:
    """Machin: pi = 16*atan(1/5) - 4*atan(1/239)."""
    err = Fraction(1, 2 ** (bits + 6))
    a = _atan_series(Fraction(1, 5), err).scale(16)
    b = _atan_series(Fraction(1, 239), err).scale(4)
    return a - b


def atan_interval(x: Fraction, bits: int) -> RatInterval:
    """Enclosure of atan(x) of width <= 2**-bits, any rational x."""
    x = Fraction(x)
    if x < 0:
        return -atan_interval(-x, bits)
    err = Fraction(1, 2 ** (bits + 2))
    if x > 1:
        return pi_interval(bits + 2).scale(Fraction(1, 2)) - atan_interval(1 / x, bits + 1)
    if x <= Fraction(1, 2):
        return _atan_series(x, err)
    # halve the angle: atan(x) = 2*atan(x / (1 + sqrt(1 + x^2)))
    s = sqrt_interval(1 + x * x, bits + 4)
    lo_arg = x / (1 + s.hi)
    hi_arg = x / (1 + s.lo)
    return RatInterval(_atan_series(lo_arg, err / 2).lo, _atan_series(hi_arg, err / 2).hi).scale(2)


def acosh_interval(c: Fraction, bits: int) -> RatInterval:
    """Enclosure of arccosh(c), c >= 1, of width <= 2**-bits."""
    c = Fraction(c)
    if c < 1:
        raise ValueError("arccosh needs an argument >= 1")
    if c == 1:
        return RatInterval(_ZERO, _ZERO)
    s = sqrt_interval(c * c - 1, bits + 3)
    lo = ln_interval(c + s.lo, bits + 3).lo
    hi = ln_interval(c + s.hi, bits + 3).hi
    out = RatInterval(lo, hi)
    assert out.width <= Fraction(1, 2**bits)
    return out
