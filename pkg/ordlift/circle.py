"""
Exact elements of Homeo+_Z(R)
Rational piecewise-linear maps and Moebius lifts, the orders <=_q and translation numbers

The circle R/Z is identified with the projective line by sending x to the line at
angle pi*x, so lifts of PSL2 act on R commuting with integer translations.
"""
from __future__ import annotations

import logging
import math
import time
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from .config import (
    DEFAULT_TOLERANCE, PL_ORBIT_CHECKPOINT, PL_ORBIT_EXACT_BITS, PL_ORBIT_GRID_BITS,
    PL_ORBIT_STEPS, PL_PERIOD_SEARCH, SIGN_REFINEMENT_DEPTH,
)
from .errors import InconsistentOraclesError, InputError, KindMismatchError, UnresolvedSignError
from .intervals import Interval, angle_over_pi, arccos_over_pi, cos_sin_pi, format_rational, iv, to_iv
from .models import AuditReport, Comparison, ComparisonVerdict, DominanceVerdict, Witness

logger = logging.getLogger(__name__)

Point = Tuple[Fraction, Fraction]


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


# ---------- PIECEWISE-LINEAR MAPS ----------

@dataclass(frozen=True)
class PLMap:
    """
    Rational piecewise-linear lift g with g(x + 1) = g(x) + 1.

    ``nodes`` lists (breakpoint, value) pairs with breakpoints in [0, 1); the map is
    linear between consecutive nodes and extended periodically. The node list is
    kept canonical (no collinear nodes) so equality of maps is tuple equality.
    """

    nodes: Tuple[Point, ...]

    def __post_init__(self):
        nodes = tuple((_frac(x), _frac(y)) for x, y in self.nodes)
        if not nodes:
            raise InputError("piecewise-linear map needs at least one breakpoint")
        xs = [x for x, _ in nodes]
        ys = [y for _, y in nodes]
        if any(not 0 <= x < 1 for x in xs):
            raise InputError(f"breakpoints must lie in [0, 1): {xs}")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InputError(f"breakpoints must be strictly increasing: {xs}")
        if any(b <= a for a, b in zip(ys, ys[1:])) or ys[-1] >= ys[0] + 1:
            raise InputError(f"values must be strictly increasing over one period: {ys}")
        object.__setattr__(self, "nodes", _canonical_nodes(nodes))

    @classmethod
    def translation(cls, t) -> "PLMap":
        return cls(((Fraction(0), _frac(t)),))

    @classmethod
    def identity(cls) -> "PLMap":
        return cls.translation(0)

    @property
    def is_translation(self) -> bool:
        return len(self.nodes) == 1

    @property
    def breakpoints(self) -> List[Fraction]:
        return [x for x, _ in self.nodes]

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        k = math.floor(x)
        r = x - k
        xs = self.breakpoints
        m = len(self.nodes)
        i = bisect_right(xs, r) - 1
        if i == -1:
            (xl, yl), (xr, yr) = (xs[-1] - 1, self.nodes[-1][1] - 1), self.nodes[0]
        else:
            xl, yl = self.nodes[i]
            if i + 1 < m:
                xr, yr = self.nodes[i + 1]
            else:
                xr, yr = self.nodes[0][0] + 1, self.nodes[0][1] + 1
        return k + yl + (r - xl) * (yr - yl) / (xr - xl)

    def evaluate(self, x) -> Interval:
        return Interval.exact(self(x))

    def inverse(self) -> "PLMap":
        flipped = []
        for x, y in self.nodes:
            k = math.floor(y)
            flipped.append((y - k, x - k))
        return PLMap(tuple(sorted(flipped)))

    def compose(self, other: "PLMap") -> "PLMap":
        """Return self o other."""
        if not isinstance(other, PLMap):
            raise KindMismatchError("cannot compose a piecewise-linear map with a Moebius lift")
        other_inverse = other.inverse()
        candidates = {x for x, _ in other.nodes}
        for x, _ in self.nodes:
            p = other_inverse(x)
            candidates.add(p - math.floor(p))
        return PLMap(tuple((p, self(other(p))) for p in sorted(candidates)))

    def power(self, k: int) -> "PLMap":
        return _binary_power(self, k, PLMap.identity())

    def displacement_range(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """Return (min, argmin, max, argmax) of g(x) - x, attained at breakpoints."""
        values = [(y - x, x) for x, y in self.nodes]
        low = min(values, key=lambda item: (item[0], item[1]))
        high = max(values, key=lambda item: (item[0], -item[1]))
        return low[0], low[1], high[0], high[1]

    def __str__(self) -> str:
        body = ", ".join(f"({format_rational(x)}, {format_rational(y)})" for x, y in self.nodes)
        return f"pl: [{body}]"


def _canonical_nodes(nodes: Tuple[Point, ...]) -> Tuple[Point, ...]:
    m = len(nodes)
    if m == 1:
        x, y = nodes[0]
        return ((Fraction(0), y - x),)
    extended = list(nodes) + [(nodes[0][0] + 1, nodes[0][1] + 1)]
    slopes = [(extended[i + 1][1] - extended[i][1]) / (extended[i + 1][0] - extended[i][0]) for i in range(m)]
    kept = tuple(nodes[i] for i in range(m) if slopes[i - 1] != slopes[i])
    if not kept:
        x, y = nodes[0]
        return ((Fraction(0), y - x),)
    return kept


# ---------- EXACT LINE GEOMETRY ----------

def _normalize_line(u: Fraction, v: Fraction) -> Tuple[Fraction, Fraction]:
    """Representative of the line through (u, v) with v > 0, or v == 0 and u > 0."""
    if v < 0 or (v == 0 and u < 0):
        return -u, -v
    return u, v


def _line_cmp(w1, w2) -> int:
    """Sign of theta(w1) - theta(w2) for rational directions, exactly."""
    u1, v1 = _normalize_line(*w1)
    u2, v2 = _normalize_line(*w2)
    cross = u1 * v2 - v1 * u2
    return (cross < 0) - (cross > 0)


def _special_angle(u: Fraction, v: Fraction) -> Optional[Fraction]:
    u, v = _normalize_line(u, v)
    if v == 0:
        return Fraction(0)
    if u == 0:
        return Fraction(1, 2)
    if u == v:
        return Fraction(1, 4)
    if u == -v:
        return Fraction(3, 4)
    return None


def line_angle(u, v) -> Interval:
    """Angle coordinate in [0, 1) of the line through the rational vector (u, v)."""
    u, v = _normalize_line(_frac(u), _frac(v))
    special = _special_angle(u, v)
    if special is not None:
        return Interval.exact(special)
    return angle_over_pi(to_iv(v), to_iv(u))


_SPECIAL_DIRECTIONS = {
    Fraction(0): (Fraction(1), Fraction(0)),
    Fraction(1, 4): (Fraction(1), Fraction(1)),
    Fraction(1, 2): (Fraction(0), Fraction(1)),
    Fraction(3, 4): (Fraction(-1), Fraction(1)),
}


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


# ---------- MOEBIUS LIFTS ----------

@dataclass(frozen=True)
class MoebiusLift:
    """
    Element T^winding o A^ of the universal cover of PSL2(R).

    ``matrix`` is (a, b, c, d) with determinant 1, sign-normalized so the first
    nonzero entry of the first column is positive. A^ is the canonical lift of
    the projective action, normalized by A^(0) in [0, 1).
    """

    matrix: Tuple[Fraction, Fraction, Fraction, Fraction]
    winding: int = 0

    def __post_init__(self):
        if len(self.matrix) != 4:
            raise InputError(f"matrix needs four entries: {self.matrix}")
        a, b, c, d = (_frac(entry) for entry in self.matrix)
        if a * d - b * c != 1:
            raise InputError(f"matrix determinant must be 1, got {a * d - b * c}")
        if a < 0 or (a == 0 and c < 0):
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "matrix", (a, b, c, d))
        object.__setattr__(self, "winding", int(self.winding))

    @classmethod
    def identity(cls) -> "MoebiusLift":
        return cls((1, 0, 0, 1), 0)

    @classmethod
    def deck(cls, n: int) -> "MoebiusLift":
        return cls((1, 0, 0, 1), n)

    @property
    def trace(self) -> Fraction:
        return self.matrix[0] + self.matrix[3]

    @property
    def is_elliptic(self) -> bool:
        return abs(self.trace) < 2

    @property
    def is_central(self) -> bool:
        return self.matrix == (1, 0, 0, 1)

    @property
    def fixed_point_displacement(self) -> int:
        """Integer displacement of the canonical lift at projective fixed points (non-elliptic only)."""
        _, _, c, _ = self.matrix
        return 1 if c != 0 and c * self.trace < 0 else 0

    def compose(self, other: "MoebiusLift") -> "MoebiusLift":
        """Return self o other."""
        if not isinstance(other, MoebiusLift):
            raise KindMismatchError("cannot compose a Moebius lift with a piecewise-linear map")
        product = _matmul(self.matrix, other.matrix)
        return MoebiusLift(product, self.winding + other.winding + euler_cocycle(self.matrix, other.matrix))

    def inverse(self) -> "MoebiusLift":
        a, b, c, d = self.matrix
        inverse_matrix = (d, -b, -c, a)
        return MoebiusLift(inverse_matrix, -self.winding - euler_cocycle(self.matrix, inverse_matrix))

    def power(self, k: int) -> "MoebiusLift":
        return _binary_power(self, k, MoebiusLift.identity())

    def canonical_start(self) -> Interval:
        """A^(0), the angle of the image of the horizontal line."""
        a, _, c, _ = self.matrix
        return line_angle(a, c)

    def _crosses_one(self, w) -> bool:
        """Whether A^(theta(w)) >= 1 for a rational direction w."""
        _, _, c, d = self.matrix
        return c != 0 and _line_cmp(w, (d, -c)) >= 0

    def evaluate(self, x) -> Interval:
        x = _frac(x)
        k = math.floor(x)
        r = x - k
        a, b, c, d = self.matrix
        if r in _SPECIAL_DIRECTIONS:
            u, v = _SPECIAL_DIRECTIONS[r]
            image = (a * u + b * v, c * u + d * v)
            special = _special_angle(*image)
            if special is not None:
                return Interval.exact(k + self.winding + special + int(self._crosses_one((u, v))))
        if r == 0:
            return self.canonical_start() + (k + self.winding)
        cos_r, sin_r = cos_sin_pi(r)
        dot = to_iv(a * a + c * c) * cos_r + to_iv(a * b + c * d) * sin_r
        return self.canonical_start() + angle_over_pi(sin_r, dot) + (k + self.winding)

    def __call__(self, x) -> Interval:
        return self.evaluate(x)

    def __str__(self) -> str:
        a, b, c, d = (format_rational(e) for e in self.matrix)
        return f"moebius: [[{a},{b}],[{c},{d}]] winding {self.winding}"


def _matmul(m1, m2):
    a, b, c, d = m1
    e, f, g, h = m2
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def euler_cocycle(m1, m2) -> int:
    """
    Integer correction sigma(A, B) in {0, 1} with A^ o B^ = T^sigma o (AB)^.

    A^(B^(0)) lands in [1, 2) exactly when c_A != 0 and the line B e1 lies at or
    beyond the preimage of the horizontal line under A.
    """
    a_b, _, c_b, _ = m2
    _, _, c_a, d_a = m1
    if c_a == 0:
        return 0
    return 1 if _line_cmp((a_b, c_b), (d_a, -c_a)) >= 0 else 0


def cocycle_audit(triples) -> AuditReport:
    """sigma takes values in {0, 1} and satisfies sigma(A,B) + sigma(AB,C) = sigma(B,C) + sigma(A,BC)."""
    report = AuditReport(name="euler-cocycle", columns=["triples"])
    for A, B, C in triples:
        a, b, c = A.matrix, B.matrix, C.matrix
        ab = MoebiusLift(_matmul(a, b)).matrix
        bc = MoebiusLift(_matmul(b, c)).matrix
        values = (euler_cocycle(a, b), euler_cocycle(ab, c), euler_cocycle(b, c), euler_cocycle(a, bc))
        sample = f"{A} ; {B} ; {C}"
        if any(v not in (0, 1) for v in values):
            report.flag("range", sample, f"sigma values {values}")
        if values[0] + values[1] != values[2] + values[3]:
            report.flag("cocycle", sample, f"sigma values {values}")
    report.add_row(len(triples))
    return report


def _binary_power(g, k: int, identity):
    if k < 0:
        g, k = g.inverse(), -k
    result = identity
    base = g
    while k:
        if k & 1:
            result = result.compose(base)
        k >>= 1
        if k:
            base = base.compose(base)
    return result


CircleElement = Union[PLMap, MoebiusLift]


# ---------- GROUP OPERATIONS ----------

def identity_like(g: CircleElement) -> CircleElement:
    return PLMap.identity() if isinstance(g, PLMap) else MoebiusLift.identity()


def translation_like(g: CircleElement, t) -> CircleElement:
    """Translation by t in the same kind as g (integer t for Moebius lifts)."""
    if isinstance(g, PLMap):
        return PLMap.translation(t)
    t = _frac(t)
    if t.denominator != 1:
        raise KindMismatchError(f"Moebius lifts contain only integer translations, got {t}")
    return MoebiusLift.deck(int(t))


def check_same_kind(g: CircleElement, h: CircleElement) -> None:
    if type(g) is not type(h):
        raise KindMismatchError(f"mixed element kinds: {type(g).__name__} and {type(h).__name__}")


def group_op(kind: str, g: CircleElement, h: Optional[CircleElement] = None, k: int = 1) -> CircleElement:
    """Exact compose / invert / power dispatch."""
    if kind == "compose":
        if h is None:
            raise InputError("compose needs two elements")
        check_same_kind(g, h)
        return g.compose(h)
    if kind == "invert":
        return g.inverse()
    if kind == "power":
        return g.power(k)
    raise InputError(f"unknown group operation: {kind}")


def conjugate(g: CircleElement, h: CircleElement) -> CircleElement:
    """h g h^-1."""
    return h.compose(g).compose(h.inverse())


# ---------- MOEBIUS FIXED POINTS AND DISPLACEMENT SIGNS ----------

def _fixed_points(A) -> List[Witness]:
    """Projective fixed lines of a non-elliptic, non-central matrix, sorted by angle."""
    a, b, c, d = A
    t = a + d
    directions = []
    if c == 0:
        directions.append(((Fraction(1), Fraction(0)), "horizontal line"))
        if a != d:
            directions.append(((b, d - a), f"line through ({format_rational(b)}, {format_rational(d - a)})"))
    else:
        disc = t * t - 4
        root = _rational_sqrt(disc)
        if root is not None:
            for lam in sorted({(t + root) / 2, (t - root) / 2}):
                w = (lam - d, c)
                directions.append((w, f"line through ({format_rational(w[0])}, {format_rational(w[1])})"))
        else:
            sign = 1 if c > 0 else -1
            sqrt_disc = iv.sqrt(to_iv(disc))
            for branch in (1, -1):
                lam = (to_iv(t) + branch * sqrt_disc) / 2
                u = (lam - to_iv(d)) * sign
                label = "+" if branch > 0 else "-"
                descriptor = (
                    f"line through ((t{label}sqrt({format_rational(disc)}))/2 - {format_rational(d)},"
                    f" {format_rational(c)}) with t={format_rational(t)}"
                )
                directions.append(((u, to_iv(abs(c))), descriptor))
    witnesses = []
    for w, descriptor in directions:
        if isinstance(w[0], Fraction):
            enclosure = line_angle(*w)
        else:
            enclosure = angle_over_pi(w[1], w[0])
        point = enclosure.lo if enclosure.is_exact else None
        witnesses.append(Witness(point=point, enclosure=enclosure, descriptor=f"fixed point on {descriptor}"))
    return sorted(witnesses, key=lambda item: item.enclosure.lo)


def _displacement_sign_at(k: MoebiusLift, n: int, w) -> int:
    """Exact sign of k(x) - x - n at x = theta(w) for a rational, non-fixed direction w."""
    a, b, c, d = k.matrix
    image = (a * w[0] + b * w[1], c * w[0] + d * w[1])
    shift = int(k._crosses_one(w)) + k.winding - n
    if shift >= 1:
        return 1
    if shift <= -1:
        return -1
    return _line_cmp(image, w)


def _arc_samples(A, fixed: List[Witness]) -> List[Tuple[Fraction, Fraction]]:
    """One rational direction strictly inside every arc between consecutive fixed lines."""
    _, _, c, _ = A
    if len(fixed) == 1:
        return [(Fraction(1), Fraction(0)) if c != 0 else (Fraction(0), Fraction(1))]
    samples = []
    bounds = [(fixed[0].enclosure, fixed[1].enclosure, 0), (fixed[1].enclosure, fixed[0].enclosure, 1)]
    for start, end, wrap in bounds:
        low, high = start.hi, end.lo + wrap
        target = float((low + high) / 2)
        for denominator in (10**3, 10**6, 10**12):
            u = Fraction(math.cos(math.pi * target)).limit_denominator(denominator)
            v = Fraction(math.sin(math.pi * target)).limit_denominator(denominator)
            angle = line_angle(u, v)
            lifted = angle + 1 if wrap and angle.hi < start.lo else angle
            if low < lifted.lo and lifted.hi < high:
                samples.append((u, v))
                break
        else:
            raise UnresolvedSignError(f"could not separate the fixed points of {A}")
    return samples


def _moebius_exceeds(k: MoebiusLift, n: int, strict: bool) -> Tuple[bool, Optional[Witness]]:
    """Decide k(x) - x > n (strict) or >= n for all x, exactly."""
    origin = Witness(point=Fraction(0), enclosure=Interval.exact(0), descriptor="x = 0")
    if k.is_central:
        holds = k.winding > n if strict else k.winding >= n
        return holds, None if holds else origin
    if k.is_elliptic:
        holds = k.winding >= n
        return holds, None if holds else origin
    level = k.winding + k.fixed_point_displacement
    fixed = _fixed_points(k.matrix)
    if level >= n + 1:
        return True, None
    if level <= n - 1:
        return False, fixed[0]
    if strict:
        return False, fixed[0]
    for w in _arc_samples(k.matrix, fixed):
        if _displacement_sign_at(k, n, w) < 0:
            enclosure = line_angle(*w)
            return False, Witness(
                point=enclosure.lo if enclosure.is_exact else None,
                enclosure=enclosure,
                descriptor=f"line through ({format_rational(w[0])}, {format_rational(w[1])})",
            )
    return True, None


def _bisect_exceeds(g: CircleElement, h: CircleElement, q: Fraction, strict: bool) -> Tuple[bool, Optional[Witness]]:
    """Certified branch-and-bound decision of h(x) - g(x) - q > 0 (or >= 0) on one period."""
    stack = [(Fraction(0), Fraction(1), 0)]
    while stack:
        x0, x1, depth = stack.pop()
        lower = h.evaluate(x0).lo - g.evaluate(x1).hi - q
        if lower > 0 or (not strict and lower >= 0):
            continue
        xm = (x0 + x1) / 2
        value = h.evaluate(xm) - g.evaluate(xm) - q
        if value.hi < 0 or (strict and value.hi <= 0):
            return False, Witness(point=xm, enclosure=Interval.exact(xm), descriptor=f"x = {format_rational(xm)}")
        if depth >= SIGN_REFINEMENT_DEPTH:
            raise UnresolvedSignError(f"sign of the displacement near x = {format_rational(xm)} is unresolved")
        stack.append((xm, x1, depth + 1))
        stack.append((x0, xm, depth + 1))
    return True, None


def _exceeds(g: CircleElement, h: CircleElement, q: Fraction, strict: bool) -> Tuple[bool, Optional[Witness]]:
    """Decide g(x) + q < h(x) (strict) or <= h(x) for all x."""
    if isinstance(g, PLMap):
        points = {x for x, _ in g.nodes} | {x for x, _ in h.nodes}
        gap, where = min((h(x) - g(x) - q, x) for x in points)
        holds = gap > 0 if strict else gap >= 0
        if holds:
            return True, None
        return False, Witness(point=where, enclosure=Interval.exact(where), descriptor=f"x = {format_rational(where)}")
    if q.denominator == 1:
        return _moebius_exceeds(g.inverse().compose(h), int(q), strict)
    return _bisect_exceeds(g, h, q, strict)


def pointwise_compare(g: CircleElement, h: CircleElement, q=0, strict: bool = True) -> ComparisonVerdict:
    """
    Decide how g and h compare in <=_q.

    Args:
        g, h: Elements of the same kind
        q: Rational shift
        strict: Use g(x) + q < h(x) when True, g(x) + q <= h(x) otherwise

    Returns:
        ComparisonVerdict with a witness when the elements are incomparable
    """
    check_same_kind(g, h)
    q = _frac(q)
    if g == h:
        return ComparisonVerdict(verdict=Comparison.EQUAL)
    below, witness = _exceeds(g, h, q, strict)
    if below:
        return ComparisonVerdict(verdict=Comparison.BELOW)
    above, _ = _exceeds(h, g, q, strict)
    if above:
        return ComparisonVerdict(verdict=Comparison.ABOVE)
    return ComparisonVerdict(verdict=Comparison.INCOMPARABLE, witness=witness)


def dominates_pointwise(g: CircleElement, q=0, strict: bool = True) -> Tuple[bool, Optional[Witness]]:
    """Whether g(x) > x + q (or >= when not strict) for all x."""
    return _exceeds(identity_like(g), g, _frac(q), strict)


# ---------- TRANSLATION NUMBERS ----------

def translation_sign(g: CircleElement) -> int:
    """Exact sign of tau(g)."""
    if isinstance(g, PLMap):
        low, _, high, _ = g.displacement_range()
        if low > 0:
            return 1
        if high < 0:
            return -1
        return 0
    if g.is_elliptic and not g.is_central:
        return 1 if g.winding >= 0 else -1
    level = g.winding + g.fixed_point_displacement
    return (level > 0) - (level < 0)


class _GridLift:
    """g acting on the dyadic grid 2^-bits Z, with floor and ceiling rounding."""

    def __init__(self, g: PLMap, bits: int):
        self.bits = bits
        scale = 1 << bits
        nodes = list(g.nodes)
        ends = nodes[1:] + [(nodes[0][0] + 1, nodes[0][1] + 1)]
        segments = [((nodes[-1][0] - 1, nodes[-1][1] - 1), nodes[0])] + list(zip(nodes, ends))
        self.cuts = [math.ceil(x * scale) for x, _ in nodes]
        self.pieces = []
        for (xl, yl), (xr, yr) in segments:
            slope = (yr - yl) / (xr - xl)
            offset = (yl - xl * slope) * scale
            den = math.lcm(slope.denominator, offset.denominator)
            self.pieces.append((offset.numerator * (den // offset.denominator),
                                slope.numerator * (den // slope.denominator), den))

    def _scaled(self, X: int) -> Tuple[int, int, int]:
        k = X >> self.bits
        r = X - (k << self.bits)
        offset, slope, den = self.pieces[bisect_right(self.cuts, r)]
        return k << self.bits, offset + r * slope, den

    def lower(self, X: int) -> int:
        base, num, den = self._scaled(X)
        return base + num // den

    def upper(self, X: int) -> int:
        base, num, den = self._scaled(X)
        return base - (-num // den)


@lru_cache(maxsize=256)
def _grid_lift(g: PLMap) -> _GridLift:
    return _GridLift(g, PL_ORBIT_GRID_BITS)


class _Orbit:
    """
    Forward orbit of a rational point under a PL lift.

    Exact while denominators stay below PL_ORBIT_EXACT_BITS, then carried as an
    outward-rounded enclosure on the dyadic grid.
    """

    def __init__(self, g: PLMap, x: Fraction):
        self.g = g
        self.point: Optional[Fraction] = x
        self.grid: Optional[_GridLift] = None
        self.low = self.high = 0

    def step(self) -> None:
        if self.grid is not None:
            self.low, self.high = self.grid.lower(self.low), self.grid.upper(self.high)
            return
        self.point = self.g(self.point)
        if self.point.denominator.bit_length() > PL_ORBIT_EXACT_BITS:
            self.grid = _grid_lift(self.g)
            scaled = self.point * (1 << self.grid.bits)
            self.low, self.high = math.floor(scaled), math.ceil(scaled)
            self.point = None

    def floor(self) -> int:
        if self.point is not None:
            return math.floor(self.point)
        return self.low >> self.grid.bits

    def ceil(self) -> int:
        if self.point is not None:
            return math.ceil(self.point)
        return -((-self.high) >> self.grid.bits)

    def enclosure(self) -> Interval:
        if self.point is not None:
            return Interval.exact(self.point)
        scale = 1 << self.grid.bits
        return Interval(Fraction(self.low, scale), Fraction(self.high, scale))

    def fractional_part(self, bits: int = 40) -> Fraction:
        """The current point mod 1, rounded down to the grid 2^-bits."""
        value = self.point if self.point is not None else Fraction(self.low, 1 << self.grid.bits)
        value -= math.floor(value)
        return Fraction(math.floor(value * (1 << bits)), 1 << bits)


def orbit_enclosure(g: PLMap, x, n: int) -> Interval:
    """Certified enclosure of g^n(x) for n >= 0, exact while denominators stay small."""
    orbit = _Orbit(g, _frac(x))
    for _ in range(n):
        orbit.step()
    return orbit.enclosure()


def _simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of smallest denominator in [lo, hi]."""
    if math.ceil(lo) <= hi:
        return Fraction(math.ceil(lo))
    k = math.floor(lo)
    return k + 1 / _simplest_rational(1 / (hi - k), 1 / (lo - k))


def _displacement_sign(lift: _GridLift, start: Fraction, p: int, q: int) -> int:
    """Certified sign of g^q(s) - s - p at a dyadic point s; 0 when unresolved."""
    scale = 1 << lift.bits
    anchor = start.numerator * (scale // start.denominator)
    low = high = anchor
    for _ in range(q):
        low, high = lift.lower(low), lift.upper(high)
    target = anchor + p * scale
    if low > target:
        return 1
    if high < target:
        return -1
    return 0


def _certify_rational(g: PLMap, lo: Fraction, hi: Fraction, near: Fraction) -> Optional[Fraction]:
    """
    Return p/q, the simplest rational in [lo, hi], when g^q(x) - x - p takes both signs.

    ``near`` is a dyadic point close to the orbit; around an attracting periodic
    orbit the displacement changes sign.
    """
    candidate = _simplest_rational(lo, hi)
    p, q = candidate.numerator, candidate.denominator
    if q > PL_PERIOD_SEARCH:
        return None
    lift = _grid_lift(g)
    starts = [near + sign * Fraction(1, 2**e) for e in (8, 16, 24, 32) for sign in (1, -1)]
    starts += [Fraction(k, 16) for k in range(16)]
    signs = set()
    for start in starts:
        signs.add(_displacement_sign(lift, start, p, q))
        if {1, -1} <= signs:
            return candidate
    return None


def _pl_translation_number(g: PLMap, tol: Fraction) -> Interval:
    """
    Orbit of 0 with the one-sided bounds floor(g^n(0))/n <= tau <= ceil(g^n(0))/n.

    Rational values with a hyperbolic periodic orbit are certified exactly at
    doubling checkpoints by a sign change of g^q(x) - x - p.
    """
    low, _, high, _ = g.displacement_range()
    if math.ceil(low) <= math.floor(high):
        return Interval.exact(Fraction(math.ceil(low)))
    if g.is_translation:
        return Interval.exact(low)
    debug_logging = logger.isEnabledFor(logging.DEBUG)
    start = time.perf_counter() if debug_logging else 0.0
    lo, hi = low, high
    orbit = _Orbit(g, Fraction(0))
    checkpoint = PL_ORBIT_CHECKPOINT
    for n in range(1, PL_ORBIT_STEPS + 1):
        orbit.step()
        if orbit.point is not None and orbit.point.denominator == 1:
            return Interval.exact(Fraction(orbit.point.numerator, n))
        below, above = orbit.floor(), orbit.ceil()
        improved = False
        if below * lo.denominator > lo.numerator * n:
            lo, improved = Fraction(below, n), True
        if above * hi.denominator < hi.numerator * n:
            hi, improved = Fraction(above, n), True
        if improved and hi - lo <= tol:
            if debug_logging:
                logger.debug("PL translation number bracketed after %d steps in %.4fs", n, time.perf_counter() - start)
            return Interval(lo, hi)
        if n == checkpoint:
            checkpoint *= 2
            exact = _certify_rational(g, lo, hi, orbit.fractional_part())
            if exact is not None:
                if debug_logging:
                    logger.debug("Rational translation number %s certified after %d steps", exact, n)
                return Interval.exact(exact)
    logger.warning("Translation number enclosure [%s, %s] wider than tolerance %s after %d steps",
                   format_rational(lo), format_rational(hi), tol, PL_ORBIT_STEPS)
    return Interval(lo, hi)


def _moebius_translation_number(g: MoebiusLift) -> Interval:
    if not g.is_elliptic or g.is_central:
        return Interval.exact(g.winding + (0 if g.is_central else g.fixed_point_displacement))
    _, _, c, _ = g.matrix
    base = arccos_over_pi(g.trace / 2)
    if c < 0:
        base = 1 - base
    return base + g.winding


def translation_number(g: CircleElement, tol=DEFAULT_TOLERANCE) -> Interval:
    """
    Certified enclosure of tau(g) of width at most tol.

    Exact for Moebius lifts with non-elliptic projective part and for
    piecewise-linear maps with a periodic orbit of small period.
    """
    tol = _frac(tol)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive: {tol}")
    if isinstance(g, PLMap):
        return _pl_translation_number(g, tol)
    return _moebius_translation_number(g)


def is_dominant_pointwise(g: CircleElement) -> DominanceVerdict:
    """
    Decide g(x) > x for all x, cross-checked against the exact sign of tau(g).

    Raises:
        InconsistentOraclesError: if the pointwise decision and the translation number disagree
    """
    holds, witness = dominates_pointwise(g, 0, strict=True)
    sign = translation_sign(g)
    if holds != (sign > 0):
        raise InconsistentOraclesError(
            f"pointwise dominance {holds} disagrees with the sign {sign} of the translation number of {g}"
        )
    return DominanceVerdict(dominant=holds, witness=witness)
