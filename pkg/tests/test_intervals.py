from fractions import Fraction

import pytest

from ordlift.intervals import Interval, arccos_over_pi, cos_sin_pi, format_rational, from_iv, to_iv


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"
    assert format_rational(0) == "0"


def test_exact_interval_renders_as_a_rational():
    assert str(Interval.exact(Fraction(1, 2))) == "1/2"
    assert str(Interval(0, Fraction(1, 3))) == "[0,1/3]"


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_arithmetic():
    a = Interval(1, 2)
    b = Interval(Fraction(1, 2), 1)
    assert a + b == Interval(Fraction(3, 2), 3)
    assert a - b == Interval(0, Fraction(3, 2))
    assert -a == Interval(-2, -1)
    assert a.scale(-2) == Interval(-4, -2)
    assert a.divide(b) == Interval(1, 4)
    assert a.widen(1) == Interval(0, 3)
    assert a.intersect(Interval(Fraction(3, 2), 5)) == Interval(Fraction(3, 2), 2)


def test_divide_by_interval_containing_zero():
    with pytest.raises(ZeroDivisionError):
        Interval(1, 2).divide(Interval(-1, 1))


def test_comparisons():
    a = Interval(1, 2)
    assert a.contains(Fraction(3, 2))
    assert a.contains(Interval(1, Fraction(3, 2)))
    assert not a.contains(3)
    assert a.overlaps(Interval(2, 3))
    assert not a.overlaps(Interval(Fraction(5, 2), 3))
    assert a.strictly_above(0) and not a.strictly_above(1)
    assert a.strictly_below(3) and not a.strictly_below(2)


def test_value_requires_exactness():
    assert Interval.exact(7).value == 7
    with pytest.raises(ValueError):
        Interval(0, 1).value


def test_arccos_special_values_are_exact():
    assert arccos_over_pi(0) == Interval.exact(Fraction(1, 2))
    assert arccos_over_pi(Fraction(-1, 2)) == Interval.exact(Fraction(2, 3))


def test_arccos_enclosure_is_tight():
    value = arccos_over_pi(Fraction(1, 3))
    assert 0 < value.width < Fraction(1, 10**40)
    assert Interval(Fraction(39182, 100000), Fraction(39183, 100000)).contains(value)


def test_mpmath_bridge_keeps_the_enclosure():
    third = from_iv(to_iv(Fraction(1, 3)))
    assert third.contains(Fraction(1, 3))
    cos, sin = cos_sin_pi(Fraction(1, 6))
    assert from_iv(sin).contains(Fraction(1, 2))
