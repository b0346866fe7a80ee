"""
Quasimorphisms
Evaluation with certified intervals, defect accounting, homogenization and sandwich audits
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Tuple

from .circle import PLMap, dominates_pointwise, translation_like, translation_number, translation_sign
from .config import DEFAULT_POWER_CAP
from .intervals import Interval
from .models import AuditReport, Positivity
from .orders import INTEGERS, DominantSet, GroupOps, OrderOracle, circle_ops, growth_en, q_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quasimorphism:
    """
    Real-valued quasimorphism with a declared defect bound.

    ``evaluate`` returns a certified interval; ``exact_sign`` decides the sign
    exactly when the interval alone cannot. ``evaluate_power(g, N)`` computes
    f(g^N) without forming the power. ``homogenization_error`` (low, high)
    bounds f(g^N) - N f~(g) when it is sharper than the defect.
    """

    name: str
    evaluate: Callable[[Any], Interval]
    defect: Fraction
    homogeneous: bool
    ops: GroupOps
    exact_sign: Optional[Callable[[Any], int]] = None
    evaluate_power: Optional[Callable[[Any, int], Interval]] = None
    homogenization_error: Optional[Tuple[Fraction, Fraction]] = None

    def __call__(self, g) -> Interval:
        return self.evaluate(g)

    def sign(self, g) -> int:
        value = self.evaluate(g)
        if value.strictly_above(0):
            return 1
        if value.strictly_below(0):
            return -1
        if value.is_exact:
            return 0
        if self.exact_sign is None:
            raise ValueError(f"sign of {self.name}({self.ops.render(g)}) is undecided: {value}")
        return self.exact_sign(g)


def tau(kind: str = "pl", tol=None) -> Quasimorphism:
    """The translation number on piecewise-linear maps or Moebius lifts (declared defect 1)."""
    evaluate = translation_number if tol is None else (lambda g: translation_number(g, tol))
    return Quasimorphism(
        name="tau",
        evaluate=evaluate,
        defect=Fraction(1),
        homogeneous=True,
        ops=circle_ops(kind),
        exact_sign=translation_sign,
    )


def integer_identity() -> Quasimorphism:
    """f(k) = k on Z, a homomorphism."""
    return Quasimorphism(
        name="id",
        evaluate=Interval.exact,
        defect=Fraction(0),
        homogeneous=True,
        ops=INTEGERS,
        exact_sign=lambda k: (k > 0) - (k < 0),
    )


def homogenize(f: Quasimorphism, g, N: int) -> Interval:
    """f(g^N)/N widened by D_f/N, or by the declared homogenization error; contains the homogenization of f at g."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    value = f.evaluate_power(g, N) if f.evaluate_power is not None else f(f.ops.power(g, N))
    if f.homogenization_error is None:
        return value.scale(Fraction(1, N)).widen(f.defect / N)
    low, high = f.homogenization_error
    return Interval(value.lo - high, value.hi - low).scale(Fraction(1, N))


def quasimorphism_order(f: Quasimorphism, constant) -> OrderOracle:
    """{e} u {g : f(g) >= C}, a conjugation invariant submonoid when C >= defect."""
    constant = Fraction(constant)
    return OrderOracle(
        name=f"superlevel({f.name}>={constant})",
        ops=f.ops,
        test=lambda g: f(g).lo >= constant,
    ).with_sandwich(f, constant)


# ---------- AUDITS ----------

def sandwich_audit(f: Quasimorphism, C, order: OrderOracle, samples: Sequence[Any]) -> AuditReport:
    """List every sample with f(g) >= C that is not positive in the order."""
    C = Fraction(C)
    report = AuditReport(name=f"sandwich:{f.name}>={C}", columns=["sample", "f", "positive"])
    if C < f.defect:
        logger.warning("Sandwich constant %s is below the declared defect %s", C, f.defect)
    for g in samples:
        value = f(g)
        positive = order.is_positive(g)
        report.add_row(f.ops.render(g), value, positive)
        if value.lo >= C and not positive:
            report.flag("sandwich", f.ops.render(g), f"f(g) = {value} >= {C} but g is not positive")
    return report


def sandwich_chain_audit(samples: Sequence[Any]) -> AuditReport:
    """tau(g) >= 1 forces g(x) >= x everywhere, which in turn forces tau(g) >= 0."""
    report = AuditReport(name="sandwich-chain", columns=["sample", "tau>=1", "nonnegative", "tau>=0"])
    for g in samples:
        ops = circle_ops("pl" if isinstance(g, PLMap) else "moebius")
        above_one = translation_sign(ops.compose(g, translation_like(g, -1))) >= 0
        nonnegative, _ = dominates_pointwise(g, 0, strict=False)
        above_zero = translation_sign(g) >= 0
        report.add_row(ops.render(g), above_one, nonnegative, above_zero)
        if above_one and not nonnegative:
            report.flag("chain-upper", ops.render(g), "tau(g) >= 1 but g(x) < x somewhere")
        if nonnegative and not above_zero:
            report.flag("chain-lower", ops.render(g), "g(x) >= x everywhere but tau(g) < 0")
    return report


def dominant_audit(f: Quasimorphism, order: OrderOracle, dom: DominantSet, samples: Sequence[Any]) -> AuditReport:
    """Flag samples where (g in G+ and f(g) > 0) disagrees with membership in G++."""
    report = AuditReport(name=f"dominants:{f.name}", columns=["sample", "positive", "f_sign", "dominant"])
    for g in samples:
        positive = order.positivity(g) is Positivity.POSITIVE
        f_positive = f.sign(g) > 0
        dominant = dom.contains(g)
        report.add_row(f.ops.render(g), positive, f_positive, dominant)
        if (positive and f_positive) != dominant:
            report.flag("dominant-characterization", f.ops.render(g),
                        f"positive={positive}, f>0={f_positive}, dominant={dominant}")
    return report


def reconstruct_ratio_check(order: OrderOracle, f: Quasimorphism, g, h, N: int, constant=None,
                            power_cap: int = DEFAULT_POWER_CAP) -> AuditReport:
    """
    Check -D/(n f(g)) <= e_n/n - f(h)/f(g) <= (D + C + f(g))/(n f(g)) for all n <= N.

    The sandwich constant defaults to the order's declared one.
    """
    if constant is None:
        if order.sandwich is None:
            raise ValueError(f"order {order.name} carries no sandwich constant")
        constant = order.sandwich.constant
    constant = Fraction(constant)
    report = AuditReport(name="reconstruction", columns=["n", "e_n", "e_n/n", "lower", "upper", "ratio"])
    f_g, f_h = f(g), f(h)
    ratio = f_h.divide(f_g)
    for n in range(1, N + 1):
        e_n = growth_en(order, g, h, n, power_cap).e_n
        deviation = Interval.exact(Fraction(e_n, n)) - ratio
        lower = Interval.exact(-f.defect / n).divide(f_g)
        upper = (Interval.exact(f.defect + constant) + f_g).divide(f_g.scale(n))
        report.add_row(n, e_n, Interval.exact(Fraction(e_n, n)), lower, upper, ratio)
        if deviation.hi < lower.lo:
            report.flag("lower-bound", f"n={n}", f"e_n/n - ratio = {deviation} < {lower}")
        if deviation.lo > upper.hi:
            report.flag("upper-bound", f"n={n}", f"e_n/n - ratio = {deviation} > {upper}")
    return report


def defect_audit(f: Quasimorphism, samples: Sequence[Any], rng: random.Random, pairs: int) -> AuditReport:
    """|f(gh) - f(g) - f(h)| <= declared defect on seeded pairs; also records the empirical lower bound."""
    report = AuditReport(name=f"defect:{f.name}", columns=["pairs", "declared", "empirical_lower_bound"])
    empirical = Fraction(0)
    for _ in range(pairs):
        g = samples[rng.randrange(len(samples))]
        h = samples[rng.randrange(len(samples))]
        gap = f(f.ops.compose(g, h)) - f(g) - f(h)
        certain = max(gap.lo, -gap.hi, Fraction(0))
        empirical = max(empirical, certain)
        if certain > f.defect:
            report.flag("defect", f"{f.ops.render(g)} , {f.ops.render(h)}", f"|df| >= {certain} > {f.defect}")
    report.add_row(pairs, f.defect, empirical)
    return report


def homogeneity_audit(f: Quasimorphism, samples: Sequence[Any], exponents=range(-3, 4)) -> AuditReport:
    """f(g^k) = k f(g) within interval tolerance."""
    report = AuditReport(name=f"homogeneity:{f.name}", columns=["sample", "k", "f(g^k)", "k*f(g)"])
    for g in samples:
        base = f(g)
        for k in exponents:
            value = f(f.ops.power(g, k))
            expected = base.scale(k)
            report.add_row(f.ops.render(g), k, value, expected)
            if not value.overlaps(expected):
                report.flag("homogeneous", f"{f.ops.render(g)}^{k}", f"{value} vs {expected}")
    return report


def conjugation_audit(f: Quasimorphism, samples: Sequence[Any], rng: random.Random, pairs: int) -> AuditReport:
    """Homogeneous quasimorphisms are constant on conjugacy classes."""
    report = AuditReport(name=f"conjugation:{f.name}", columns=["pairs"])
    for _ in range(pairs):
        g = samples[rng.randrange(len(samples))]
        k = samples[rng.randrange(len(samples))]
        if not f(f.ops.conjugate(g, k)).overlaps(f(g)):
            report.flag("conjugation-invariant", f"{f.ops.render(g)} by {f.ops.render(k)}")
    report.add_row(pairs)
    return report


def sandwiched_q_order(q, kind: str = "pl") -> OrderOracle:
    """<=_q with its tau sandwich: tau(g) >= ceil(q) + 1 forces g(x) > x + ceil(q) everywhere."""
    return q_order(q, kind).with_sandwich(tau(kind), math.ceil(Fraction(q)) + 1)
