from fractions import Fraction

import mpmath
import pytest

from hypfree.enclosure import (
    RatInterval,
    acosh_interval,
    atan_interval,
    ln_interval,
    pi_interval,
    sqrt_interval,
)

mpmath.mp.dps = 60


def _contains(iv: RatInterval, value) -> bool:
    lo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
    hi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
    return lo <= value <= hi


@pytest.mark.parametrize("bits", [8, 24, 48])
def test_sqrt(bits):
    for v in [Fraction(0), Fraction(2), Fraction(9), Fraction(5, 4), Fraction(1, 7), Fraction(10**12)]:
        iv = sqrt_interval(v, bits)
        assert iv.width <= Fraction(1, 2**bits)
        assert _contains(iv, mpmath.sqrt(mpmath.mpf(v.numerator) / v.denominator))
    assert sqrt_interval(Fraction(4), bits).width == 0  # exact squares collapse


@pytest.mark.parametrize("bits", [8, 24, 48])
def test_ln(bits):
    for v in [Fraction(2), Fraction(1), Fraction(1, 2), Fraction(17, 8), Fraction(4**40), Fraction(1, 10**9)]:
        iv = ln_interval(v, bits)
        assert iv.width <= Fraction(1, 2**bits)
        assert _contains(iv, mpmath.log(mpmath.mpf(v.numerator) / v.denominator))


@pytest.mark.parametrize("bits", [8, 24, 48])
def test_atan_and_pi(bits):
    for v in [Fraction(0), Fraction(1, 3), Fraction(1), Fraction(-1), Fraction(7, 8), Fraction(100), Fraction(-41, 7)]:
        iv = atan_interval(v, bits)
        assert iv.width <= Fraction(1, 2**bits)
        assert _contains(iv, mpmath.atan(mpmath.mpf(v.numerator) / v.denominator))
    assert _contains(pi_interval(bits), mpmath.pi)
    assert pi_interval(bits).width <= Fraction(1, 2**bits)


def test_acosh():
    assert acosh_interval(Fraction(1), 30).width == 0
    for c in [Fraction(5, 4), Fraction(17, 8), Fraction(3), Fraction(10**6)]:
        iv = acosh_interval(c, 40)
        assert iv.width <= Fraction(1, 2**40)
        assert _contains(iv, mpmath.acosh(mpmath.mpf(c.numerator) / c.denominator))
    with pytest.raises(ValueError):
        acosh_interval(Fraction(1, 2), 10)


def test_interval_algebra():
    a = RatInterval(Fraction(1), Fraction(2))
    b = RatInterval(Fraction(-1), Fraction(1, 2))
    assert (a + b).lo == 0 and (a + b).hi == Fraction(5, 2)
    assert (a - b).lo == Fraction(1, 2) and (a - b).hi == 3
    assert a.scale(-2).lo == -4 and a.scale(-2).hi == -2
    assert a.divide_by_positive(RatInterval(Fraction(2), Fraction(4))).lo == Fraction(1, 4)
    with pytest.raises(ValueError):
        RatInterval(Fraction(2), Fraction(1))
