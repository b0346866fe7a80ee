"""
Causal covers
Minimal deck shifts iota, the quasimorphism R_x, its homogenization psi and dominance checks
over pluggable cover instances
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .circle import (
    CircleElement, MoebiusLift, PLMap, dominates_pointwise, is_dominant_pointwise, orbit_enclosure,
    translation_like, translation_number,
)
from .errors import InconsistentOraclesError, InstanceInconsistentError, UnresolvedSignError
from .intervals import Interval
from .models import AuditReport, DominanceVerdict, Witness
from .orders import GroupOps, circle_ops
from .quasimorphism import Quasimorphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CausalCoverInstance:
    """
    A causal cover: points, deck map Z, height zeta with zeta(Z x) = zeta(x) + L,
    a group action and the causal order.

    ``height`` returns a certified interval; ``leq`` must decide or raise.
    ``exact_dominance`` decides g x > x for all x when the instance can.
    ``homogenization_error`` is a pair (low, high) with
    low <= R_x(g^N) - N psi(g) <= high for every g, x and N, when sharper than 3D/L.
    """

    name: str
    length: Fraction
    spread: Fraction
    deck: Callable[[Any, int], Any]
    height: Callable[[Any], Interval]
    act: Callable[[Any, Any], Any]
    leq: Callable[[Any, Any], bool]
    ops: GroupOps
    deck_element: Callable[[int], Any]
    exact: bool = True
    exact_dominance: Optional[Callable[[Any], DominanceVerdict]] = None
    orbit: Optional[Callable[[Any, int, Any], Any]] = None
    homogenization_error: Optional[Tuple[Fraction, Fraction]] = None

    def act_power(self, g, n: int, x):
        if self.orbit is not None:
            return self.orbit(g, n, x)
        return self.act(self.ops.power(g, n), x)


# ---------- CIRCLE INSTANCE ----------

def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.exact(x)


def _circle_leq(x: Interval, y: Interval) -> bool:
    if x.hi <= y.lo:
        return True
    if x.lo > y.hi:
        return False
    raise UnresolvedSignError(f"cannot order the circle points {x} and {y}")


def _circle_act(g: CircleElement, x: Interval) -> Interval:
    if isinstance(g, MoebiusLift) and g.is_central:
        return x + g.winding
    if x.is_exact:
        return _as_interval(g.evaluate(x.value))
    return Interval(g.evaluate(x.lo).lo, g.evaluate(x.hi).hi)


def _circle_orbit(g: CircleElement, n: int, x: Interval) -> Interval:
    """g^n x, following the orbit of x for piecewise-linear maps instead of composing powers."""
    if isinstance(g, PLMap) and x.is_exact:
        return orbit_enclosure(g if n >= 0 else g.inverse(), x.value, abs(n))
    return _circle_act(circle_ops("pl" if isinstance(g, PLMap) else "moebius").power(g, n), x)


def circle_instance(kind: str = "pl", spread=1) -> CausalCoverInstance:
    """
    The real line covering the circle: Z x = x + 1, zeta = identity, L = 1.

    ``spread`` is the declared constant D; the sharp value is 1. Here
    R_x(g^N) = ceil(g^N x - x) and g^N x <= x + k forces N tau(g) <= k, so
    N tau(g) <= R_x(g^N) <= N tau(g) + 1.
    """
    identity = PLMap.identity() if kind == "pl" else MoebiusLift.identity()
    return CausalCoverInstance(
        name=f"circle[{kind}]" if spread == 1 else f"circle[{kind},D={spread}]",
        length=Fraction(1),
        spread=Fraction(spread),
        deck=lambda x, n: _as_interval(x) + n,
        height=_as_interval,
        act=lambda g, x: _circle_act(g, _as_interval(x)),
        leq=lambda x, y: _circle_leq(_as_interval(x), _as_interval(y)),
        ops=circle_ops(kind),
        deck_element=lambda n: translation_like(identity, n),
        exact=True,
        exact_dominance=is_dominant_pointwise,
        orbit=lambda g, n, x: _circle_orbit(g, n, _as_interval(x)),
        homogenization_error=(Fraction(0), Fraction(1)),
    )


# ---------- IOTA, R_x, PSI ----------

def iota(inst: CausalCoverInstance, x, y) -> int:
    """
    min{n : Z^n y >= x}, searched inside the window the constant D guarantees.

    Raises:
        InstanceInconsistentError: if the minimizer leaves the window or violates
            |L iota - (zeta(x) - zeta(y))| <= D
    """
    gap = inst.height(x) - inst.height(y)
    low = math.floor((gap.lo - inst.spread) / inst.length)
    high = math.ceil((gap.hi + inst.spread) / inst.length)
    if inst.leq(x, inst.deck(y, low)):
        raise InstanceInconsistentError(
            f"{inst.name}: Z^{low} y >= x already at the bottom of the window, declared D = {inst.spread} is too small"
        )
    for n in range(low + 1, high + 1):
        if inst.leq(x, inst.deck(y, n)):
            deviation = gap.scale(-1) + inst.length * n
            if deviation.lo > inst.spread or deviation.hi < -inst.spread:
                raise InstanceInconsistentError(
                    f"{inst.name}: |L*{n} - (zeta(x) - zeta(y))| = {deviation} exceeds declared D = {inst.spread}"
                )
            return n
    raise InstanceInconsistentError(f"{inst.name}: no deck shift in the window [{low}, {high}]")


def r_x(inst: CausalCoverInstance, g, x) -> int:
    """R_x(g) = iota(g x, x)."""
    return iota(inst, inst.act(g, x), x)


def psi_estimate(inst: CausalCoverInstance, g, N: int, x) -> Interval:
    """R_x(g^N)/N widened by 3D/(L N); contains psi(g)."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    shift = iota(inst, inst.act_power(g, N, x), x)
    return Interval.exact(Fraction(shift, N)).widen(3 * inst.spread / (inst.length * N))


def rx_quasimorphism(inst: CausalCoverInstance, x) -> Quasimorphism:
    """R_x as a quasimorphism with declared defect 3D/L; powers follow the orbit of x."""
    return Quasimorphism(
        name="R_x",
        evaluate=lambda g: Interval.exact(r_x(inst, g, x)),
        defect=3 * inst.spread / inst.length,
        homogeneous=False,
        ops=inst.ops,
        evaluate_power=lambda g, n: Interval.exact(iota(inst, inst.act_power(g, n, x), x)),
        homogenization_error=inst.homogenization_error,
    )


def causal_dominant_check(inst: CausalCoverInstance, g, samples: Sequence[Any], N: int = 100) -> DominanceVerdict:
    """
    Decide g x > x on every point (exact mode) or on the listed samples.

    Raises:
        InconsistentOraclesError: if exact mode contradicts a strictly signed psi interval
    """
    if inst.exact_dominance is not None:
        verdict = inst.exact_dominance(g)
        psi = psi_estimate(inst, g, N, samples[0] if samples else Fraction(0))
        if (psi.strictly_above(0) and not verdict.dominant) or (psi.strictly_below(0) and verdict.dominant):
            raise InconsistentOraclesError(f"{inst.name}: dominance {verdict.dominant} contradicts psi {psi}")
        return verdict
    if not samples:
        raise ValueError("sample mode needs at least one point")
    for x in samples:
        image = inst.act(g, x)
        if inst.leq(image, x):
            height = inst.height(x)
            return DominanceVerdict(
                dominant=False,
                witness=Witness(point=height.lo if height.is_exact else None, enclosure=height, descriptor=f"x = {x}"),
            )
    return DominanceVerdict(dominant=True)


# ---------- AUDITS ----------

def random_points(rng: random.Random, count: int, span: int = 2, denominator: int = 12) -> List[Fraction]:
    return [Fraction(rng.randint(-span * denominator, span * denominator), rng.randint(1, denominator))
            for _ in range(count)]


def rx_bounds_audit(inst: CausalCoverInstance, elements: Sequence[Any], points: Sequence[Any],
                       rng: random.Random, checks: int) -> AuditReport:
    """
    Seeded checks of
    R_x(Z^n) = n, 0 <= R_x(g) + R_x(g^-1) <= 2D/L,
    |R_x(gh) - R_x(g) - R_x(h)| <= 3D/L and |R_x(g) - R_y(g)| <= 4D/L.
    Window violations abort through InstanceInconsistentError.
    """
    report = AuditReport(name=f"r_x-bounds:{inst.name}", columns=["checks", "D/L"])
    ratio = inst.spread / inst.length
    for _ in range(checks):
        g = elements[rng.randrange(len(elements))]
        h = elements[rng.randrange(len(elements))]
        x = points[rng.randrange(len(points))]
        y = points[rng.randrange(len(points))]
        n = rng.randint(-5, 5)
        deck = inst.deck_element(n)
        if deck is not None and r_x(inst, deck, x) != n:
            report.flag("deck", f"n={n}, x={x}", "R_x(Z^n) != n")
        r_g = r_x(inst, g, x)
        pair = r_g + r_x(inst, inst.ops.invert(g), x)
        if not 0 <= pair <= 2 * ratio:
            report.flag("inverse", f"{inst.ops.render(g)} at x={x}", f"R_x(g) + R_x(g^-1) = {pair}")
        defect = r_x(inst, inst.ops.compose(g, h), x) - r_g - r_x(inst, h, x)
        if abs(defect) > 3 * ratio:
            report.flag("defect", f"{inst.ops.render(g)} , {inst.ops.render(h)} at x={x}", f"defect {defect}")
        drift = r_g - r_x(inst, g, y)
        if abs(drift) > 4 * ratio:
            report.flag("basepoint", f"{inst.ops.render(g)} at x={x}, y={y}", f"R_x - R_y = {drift}")
    report.add_row(checks, ratio)
    return report


def psi_sandwich_audit(inst: CausalCoverInstance, elements: Sequence[Any], N: int, x=Fraction(0)) -> AuditReport:
    """Every element with psi strictly above 5D/L must satisfy g x >= x for all x."""
    threshold = 5 * inst.spread / inst.length
    report = AuditReport(name=f"psi-sandwich:{inst.name}", columns=["element", "psi", "above_threshold", "positive"])
    for g in elements:
        psi = psi_estimate(inst, g, N, x)
        above = psi.strictly_above(threshold)
        positive = dominates_pointwise(g, 0, strict=False)[0] if above else ""
        report.add_row(inst.ops.render(g), psi, above, positive)
        if above and not positive:
            report.flag("psi-sandwich", inst.ops.render(g), f"psi = {psi} > {threshold} but g is not positive")
    return report


def psi_tau_audit(inst: CausalCoverInstance, elements: Sequence[Any], N: int, x=Fraction(0)) -> AuditReport:
    """On the circle psi is the translation number."""
    report = AuditReport(name=f"psi-tau:{inst.name}", columns=["element", "psi", "tau"])
    for g in elements:
        psi = psi_estimate(inst, g, N, x)
        tau = translation_number(g, Fraction(1, N))
        report.add_row(inst.ops.render(g), psi, tau)
        if not psi.overlaps(tau):
            report.flag("psi-tau", inst.ops.render(g), f"psi = {psi} misses tau = {tau}")
    return report


def instance_audit(inst: CausalCoverInstance, points: Sequence[Any], elements: Sequence[Any],
                   rng: random.Random, pairs: int) -> AuditReport:
    """Period relation, partial-order axioms, equivariance and monotone height on samples."""
    report = AuditReport(name=f"instance:{inst.name}", columns=["pairs"])
    for _ in range(pairs):
        x = points[rng.randrange(len(points))]
        y = points[rng.randrange(len(points))]
        z = points[rng.randrange(len(points))]
        g = elements[rng.randrange(len(elements))]
        if not (inst.height(inst.deck(x, 1)) - inst.length).overlaps(inst.height(x)):
            report.flag("period", x, "zeta(Z x) != zeta(x) + L")
        if not inst.leq(x, x):
            report.flag("reflexive", x)
        x_le_y, y_le_x = inst.leq(x, y), inst.leq(y, x)
        if x_le_y and y_le_x and not (inst.height(x).overlaps(inst.height(y))):
            report.flag("antisymmetric", f"{x} , {y}")
        if x_le_y and inst.leq(y, z) and not inst.leq(x, z):
            report.flag("transitive", f"{x} , {y} , {z}")
        if x_le_y and inst.height(x).lo > inst.height(y).hi:
            report.flag("monotone-height", f"{x} , {y}")
        if not inst.height(inst.act(g, inst.deck(x, 1))).overlaps(inst.height(inst.deck(inst.act(g, x), 1))):
            report.flag("deck-equivariant", f"{inst.ops.render(g)} at {x}")
        if x_le_y and not inst.leq(inst.act(g, x), inst.act(g, y)):
            report.flag("order-equivariant", f"{inst.ops.render(g)} at {x} , {y}")
    report.add_row(pairs)
    return report
