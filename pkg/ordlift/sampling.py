"""
Seeded random elements
Piecewise-linear maps, Moebius lifts and group samples for audits
"""
import random
from fractions import Fraction
from typing import List

from .circle import CircleElement, MoebiusLift, PLMap


def random_fraction(rng: random.Random, low: int, high: int, denominator: int = 8) -> Fraction:
    """Uniform on the grid of the given denominator inside [low, high]."""
    return Fraction(rng.randint(low * denominator, high * denominator), denominator)


def random_pl_map(rng: random.Random, max_breakpoints: int = 4, shift_range: int = 2, denominator: int = 8) -> PLMap:
    """Random rational PL lift: increasing values over one period, random integer-grid shift."""
    count = rng.randint(1, max_breakpoints)
    xs = sorted(rng.sample(range(denominator), count))
    # increasing values spread inside one period
    gaps = sorted(rng.sample(range(1, denominator), count - 1)) if count > 1 else []
    base = random_fraction(rng, -shift_range, shift_range, denominator)
    ys = [base] + [base + Fraction(g, denominator) for g in gaps]
    return PLMap(tuple((Fraction(x, denominator), y) for x, y in zip(xs, ys)))


def random_matrix(rng: random.Random, entry_range: int = 3):
    """Random SL2(Z) matrix from a product of elementary generators."""
    matrix = (1, 0, 0, 1)
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(-entry_range, entry_range)
        a, b, c, d = matrix
        if rng.random() < 0.5:
            matrix = (a + k * c, b + k * d, c, d)
        else:
            matrix = (a, b, c + k * a, d + k * b)
    if rng.random() < 0.25:
        a, b, c, d = matrix
        matrix = (-c, -d, a, b)
    return matrix


def random_moebius_lift(rng: random.Random, winding_range: int = 2) -> MoebiusLift:
    return MoebiusLift(random_matrix(rng), rng.randint(-winding_range, winding_range))


def random_elements(kind: str, rng: random.Random, count: int) -> List[CircleElement]:
    if kind == "pl":
        return [random_pl_map(rng) for _ in range(count)]
    if kind == "moebius":
        return [random_moebius_lift(rng) for _ in range(count)]
    raise ValueError(f"unknown element kind: {kind}")


def random_translations(rng: random.Random, count: int, positive: bool = True) -> List[PLMap]:
    low = 1 if positive else -3
    return [PLMap.translation(Fraction(rng.randint(low, 24), 8)) for _ in range(count)]


def dominant_pairs(rng: random.Random, count: int) -> List[tuple]:
    """Pairs (g, h) of dominant translations and winding-shifted Moebius lifts."""
    pairs = []
    for index in range(count):
        if index % 2 == 0:
            g, h = random_translations(rng, 2)
        else:
            g = MoebiusLift(random_matrix(rng), rng.randint(1, 3))
            h = MoebiusLift(random_matrix(rng), rng.randint(1, 3))
        pairs.append((g, h))
    return pairs
