"""
Certified rational intervals
Exact values are degenerate intervals; transcendental values come from mpmath interval arithmetic
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import iv
from mpmath.libmp import to_rational

from .config import INTERVAL_PRECISION_BITS

iv.prec = INTERVAL_PRECISION_BITS

Rational = Union[int, Fraction]


def format_rational(value: Fraction) -> str:
    """Render a rational as 'p/q' or 'p'."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Rational) -> "Interval":
        return cls(Fraction(value), Fraction(value))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not exact")
        return self.lo

    def contains(self, x: Union[Rational, "Interval"]) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def widen(self, radius: Rational) -> "Interval":
        return Interval(self.lo - radius, self.hi + radius)

    def strictly_above(self, x: Rational) -> bool:
        return self.lo > x

    def strictly_below(self, x: Rational) -> bool:
        return self.hi < x

    def __add__(self, other: Union[Rational, "Interval"]) -> "Interval":
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Union[Rational, "Interval"]) -> "Interval":
        return self + (-other)

    def __rsub__(self, other: Rational) -> "Interval":
        return (-self) + other

    def scale(self, factor: Rational) -> "Interval":
        a, b = self.lo * factor, self.hi * factor
        return Interval(min(a, b), max(a, b))

    def divide(self, other: "Interval") -> "Interval":
        """Quotient with a denominator interval that excludes zero."""
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f"denominator {other} contains zero")
        corners = [a / b for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return Interval(min(corners), max(corners))

    def __str__(self) -> str:
        if self.is_exact:
            return format_rational(self.lo)
        return f"[{format_rational(self.lo)},{format_rational(self.hi)}]"


# ---------- MPMATH BRIDGE ----------

def to_iv(value: Rational):
    """Enclose a rational in an mpmath interval."""
    value = Fraction(value)
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def from_iv(x) -> Interval:
    """Convert an mpmath interval into a rational Interval without losing the enclosure."""
    lo_raw, hi_raw = x._mpi_
    return Interval(Fraction(*to_rational(lo_raw)), Fraction(*to_rational(hi_raw)))


def arccos_over_pi(t: Rational) -> Interval:
    """Certified enclosure of arccos(t)/pi for a rational t in [-1, 1]."""
    t = Fraction(t)
    if not -1 <= t <= 1:
        raise ValueError(f"arccos argument out of range: {t}")
    exact = {Fraction(1): Fraction(0), Fraction(1, 2): Fraction(1, 3),
             Fraction(0): Fraction(1, 2), Fraction(-1, 2): Fraction(2, 3),
             Fraction(-1): Fraction(1)}
    if t in exact:
        return Interval.exact(exact[t])
    x = to_iv(t)
    s = iv.sqrt(to_iv(1 - t * t))
    return from_iv(iv.atan2(s, x) / iv.pi)


def angle_over_pi(y, x) -> Interval:
    """Certified enclosure of atan2(y, x)/pi for mpmath interval arguments with y >= 0."""
    return from_iv(iv.atan2(y, x) / iv.pi)


def cos_sin_pi(r: Rational):
    """Interval enclosures of (cos(pi r), sin(pi r))."""
    arg = iv.pi * to_iv(r)
    return iv.cos(arg), iv.sin(arg)
