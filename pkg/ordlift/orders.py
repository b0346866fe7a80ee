"""
Bi-invariant order semigroups
Order oracles, dominant sets, Archimedean closure, perturbations of the pointwise
circle order and the relative growth function e_n(g, h)
"""
from __future__ import annotations

import logging
import math
import operator
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Sequence

from .circle import MoebiusLift, PLMap, dominates_pointwise, is_dominant_pointwise
from .config import DEFAULT_POWER_CAP, PROBE_POWER_LIMIT
from .errors import InconsistentOraclesError, InputError, NotPositiveError, SearchDivergedError
from .intervals import Interval
from .models import AuditReport, GrowthLimit, GrowthRecord, Positivity, ProbeOutcome, ProbeResult

if TYPE_CHECKING:
    from .quasimorphism import Quasimorphism

logger = logging.getLogger(__name__)


# ---------- GROUP PLUMBING ----------

@dataclass(frozen=True)
class GroupOps:
    """Exact group operations of the group an order lives on."""

    name: str
    compose: Callable[[Any, Any], Any]
    invert: Callable[[Any], Any]
    identity: Any
    equal: Callable[[Any, Any], bool] = operator.eq
    render: Callable[[Any], str] = str

    def power(self, g, p: int):
        if p < 0:
            g, p = self.invert(g), -p
        result, base = self.identity, g
        while p:
            if p & 1:
                result = self.compose(result, base)
            p >>= 1
            if p:
                base = self.compose(base, base)
        return result

    def conjugate(self, g, h):
        """h g h^-1."""
        return self.compose(self.compose(h, g), self.invert(h))


INTEGERS = GroupOps(
    name="integers",
    compose=operator.add,
    invert=operator.neg,
    identity=0,
)


def circle_ops(kind: str) -> GroupOps:
    """Group operations on piecewise-linear maps ('pl') or Moebius lifts ('moebius')."""
    if kind == "pl":
        identity = PLMap.identity()
    elif kind == "moebius":
        identity = MoebiusLift.identity()
    else:
        raise InputError(f"unknown circle element kind: {kind}")
    return GroupOps(
        name=kind,
        compose=lambda g, h: g.compose(h),
        invert=lambda g: g.inverse(),
        identity=identity,
    )


class PowerTable:
    """Memoized repeated squarings of g and g^-1 for a single search."""

    def __init__(self, ops: GroupOps, g):
        self.ops = ops
        self._squares = {1: [g], -1: [ops.invert(g)]}

    def __call__(self, p: int):
        if p == 0:
            return self.ops.identity
        squares = self._squares[1 if p > 0 else -1]
        p = abs(p)
        result = self.ops.identity
        bit = 0
        while p:
            while len(squares) <= bit:
                squares.append(self.ops.compose(squares[-1], squares[-1]))
            if p & 1:
                result = self.ops.compose(result, squares[bit])
            p >>= 1
            bit += 1
        return result


# ---------- ORDERS ----------

@dataclass(frozen=True)
class SandwichData:
    """A homogeneous quasimorphism f and a constant C with f^-1([C, inf)) inside G+."""

    quasimorphism: "Quasimorphism"
    constant: Fraction


@dataclass(frozen=True)
class OrderOracle:
    """
    Decision procedure for an order semigroup G+.

    ``test`` decides membership of a non-identity element in G+; identity
    detection goes through the exact equality of ``ops``.
    """

    name: str
    ops: GroupOps
    test: Callable[[Any], bool]
    sandwich: Optional[SandwichData] = None

    def positivity(self, g) -> Positivity:
        if self.ops.equal(g, self.ops.identity):
            return Positivity.IDENTITY
        return Positivity.POSITIVE if self.test(g) else Positivity.NOT_POSITIVE

    def is_positive(self, g) -> bool:
        return self.positivity(g) is not Positivity.NOT_POSITIVE

    def leq(self, g, h) -> bool:
        """g <= h iff g^-1 h lies in G+."""
        return self.is_positive(self.ops.compose(self.ops.invert(g), h))

    def with_sandwich(self, quasimorphism: "Quasimorphism", constant) -> "OrderOracle":
        return OrderOracle(self.name, self.ops, self.test, SandwichData(quasimorphism, Fraction(constant)))


@dataclass(frozen=True)
class DominantSet:
    """Membership test for G++ together with its parent order."""

    order: OrderOracle
    membership: Callable[[Any], bool]

    def contains(self, g) -> bool:
        return self.membership(g)


def integer_order() -> OrderOracle:
    """The usual order on Z."""
    return OrderOracle("integers", INTEGERS, lambda k: k > 0)


def integer_dominants() -> DominantSet:
    return DominantSet(integer_order(), lambda k: k > 0)


def perturb_circle(qsemigroup: str, q, kind: str = "pl") -> OrderOracle:
    """
    Perturbed pointwise order on Homeo+_Z(R).

    Args:
        qsemigroup: 'strict' for {e} u {k : k(x) > x + q} or 'nonstrict' for {e} u {k : k(x) >= x + q}
        q: Nonnegative rational shift
        kind: Element kind the oracle works on

    For a non-integer q both variants decide the conjugation-invariant core
    {e} u {k : k(x) >= x + ceil(q)}, the intersection of all conjugates of the
    shifted semigroup.

    Returns:
        OrderOracle deciding the perturbed semigroup exactly
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"perturbation shift must be nonnegative, got {q}")
    if qsemigroup not in ("strict", "nonstrict"):
        raise InputError(f"unknown perturbation variant: {qsemigroup}")
    strict = qsemigroup == "strict"
    shift = q
    if q.denominator != 1:
        shift, strict = Fraction(math.ceil(q)), False
        logger.debug("Shift %s is not an integer; deciding k(x) >= x + %s", q, shift)
    return OrderOracle(
        name=f"{qsemigroup}-q={q}",
        ops=circle_ops(kind),
        test=lambda g: dominates_pointwise(g, shift, strict=strict)[0],
    )


def pointwise_order(kind: str = "pl") -> OrderOracle:
    """g >= e iff g(x) >= x for all x."""
    order = perturb_circle("nonstrict", 0, kind)
    return OrderOracle("pointwise", order.ops, order.test)


def q_order(q: int, kind: str = "pl") -> OrderOracle:
    """The order <=_q: g > e iff g(x) > x + q for all x."""
    order = perturb_circle("strict", q, kind)
    return OrderOracle(f"leq_{q}", order.ops, order.test)


def circle_dominants(order: OrderOracle) -> DominantSet:
    """G++ = {g in G+ : g(x) > x for all x}, decided exactly."""
    return DominantSet(order, lambda g: order.is_positive(g) and is_dominant_pointwise(g).dominant)


def archimedean_order(dom: DominantSet) -> OrderOracle:
    """Order whose positives are exactly {e} u G++."""
    parent = dom.order
    return OrderOracle(f"archimedean({parent.name})", parent.ops, dom.contains, parent.sandwich)


def pullback_order(rho: Callable[[Any], Any], target: OrderOracle, ops: GroupOps) -> OrderOracle:
    """rho^-1(G+) on the source group."""
    return OrderOracle(f"pullback({target.name})", ops, lambda g: target.is_positive(rho(g)))


def pullback_dominants(rho: Callable[[Any], Any], target_dom: DominantSet, ops: GroupOps) -> DominantSet:
    """Pullback of a dominant semigroup along a homomorphism rho."""
    return DominantSet(pullback_order(rho, target_dom.order, ops), lambda g: target_dom.contains(rho(g)))


# ---------- DOMINANCE PROBES ----------

def is_dominant_probe(order: OrderOracle, g, probes: Sequence[Any], n_max: int = PROBE_POWER_LIMIT) -> ProbeResult:
    """
    Budgeted dominance check: for every probe h look for n <= n_max with g^n >= h.

    Raises:
        NotPositiveError: if g is not in G+
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    status = order.positivity(g)
    if status is Positivity.NOT_POSITIVE:
        raise NotPositiveError(f"{order.ops.render(g)} is not positive in {order.name}")
    if status is Positivity.IDENTITY:
        return ProbeResult(outcome=ProbeOutcome.REFUTED, probe_index=0 if probes else None)

    powers = PowerTable(order.ops, g)
    found = []
    for index, h in enumerate(probes):
        if not order.leq(h, powers(n_max)):
            return ProbeResult(outcome=ProbeOutcome.EXHAUSTED, probe_index=index, powers=found)
        low, high = 0, n_max
        while high - low > 1:
            mid = (low + high) // 2
            if order.leq(h, powers(mid)):
                high = mid
            else:
                low = mid
        found.append(high)
    return ProbeResult(outcome=ProbeOutcome.CERTIFIED, powers=found)


# ---------- RELATIVE GROWTH ----------

def growth_en(order: OrderOracle, g, h, n: int, power_cap: int = DEFAULT_POWER_CAP) -> GrowthRecord:
    """
    e_n(g, h) = min {p : g^p >= h^n} by doubling bracket and bisection.

    Args:
        order: Order the comparison is made in
        g: Dominant element (caller-certified)
        h: Any element
        n: Positive power of h
        power_cap: Largest |p| the bracket may reach

    Returns:
        GrowthRecord with the verified boundary facts in its provenance

    Raises:
        SearchDivergedError: if no p in E_n is found within the cap
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    debug_logging = logger.isEnabledFor(logging.DEBUG)
    start = time.perf_counter() if debug_logging else 0.0

    target = order.ops.power(h, n)
    powers = PowerTable(order.ops, g)
    cache: Dict[int, bool] = {}

    def in_ray(p: int) -> bool:
        if p not in cache:
            cache[p] = order.leq(target, powers(p))
        return cache[p]

    provenance: List[str] = []
    if in_ray(1):
        high, step = 1, 1
        low = high - step
        while in_ray(low):
            high = low
            step *= 2
            low = high - step
            if abs(low) > power_cap:
                raise SearchDivergedError(f"E_{n} unbounded below past -{power_cap}: h^n is not bounded by g")
        provenance.append(f"descending bracket ({low}, {high}]")
    else:
        low, high = 1, 2
        while not in_ray(high):
            low = high
            high *= 2
            if high > power_cap:
                raise SearchDivergedError(
                    f"no p <= {power_cap} with g^p >= h^{n}: g is not dominant or the cap is too small"
                )
        provenance.append(f"ascending bracket ({low}, {high}]")

    while high - low > 1:
        mid = (low + high) // 2
        if in_ray(mid):
            high = mid
        else:
            low = mid
    provenance.append(f"bisection converged after {len(cache)} comparisons")

    if not in_ray(high + 1) or in_ray(high - 1):
        raise InconsistentOraclesError(f"E_{n} is not an up-closed ray at {high}")
    provenance.append(f"verified g^{high} >= h^{n}, g^{high + 1} >= h^{n} and not g^{high - 1} >= h^{n}")

    if debug_logging:
        logger.debug("growth_en n=%d e_n=%d in %.4fs", n, high, time.perf_counter() - start)
    return GrowthRecord(n=n, e_n=high, provenance=provenance)


def growth_interval(e_n: int, n: int, f_g: Interval, constant: Fraction, defect: Fraction) -> Interval:
    """Certified interval for f(h)/f(g) from a single e_n."""
    if f_g.lo <= 0:
        raise NotPositiveError(f"f(g) must be positive for a dominant g, got {f_g}")
    ratio = Fraction(e_n, n)
    lower = ratio - (defect + constant) / (n * f_g.lo) - Fraction(1, n)
    upper = ratio + defect / (n * f_g.lo)
    return Interval(lower, upper)


def growth_limit(order: OrderOracle, g, h, N: int, sandwich: Optional[SandwichData] = None,
                 power_cap: int = DEFAULT_POWER_CAP) -> GrowthLimit:
    """
    Estimate e(g, h) by e_N / N, with a certified interval when sandwich data is supplied.

    Raises:
        InconsistentOraclesError: if the certified interval misses f(h)/f(g)
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    record = growth_en(order, g, h, N, power_cap)
    estimate = Fraction(record.e_n, N)
    sandwich = sandwich or order.sandwich
    if sandwich is None:
        return GrowthLimit(estimate=estimate, record=record)

    f = sandwich.quasimorphism
    f_g, f_h = f(g), f(h)
    interval = growth_interval(record.e_n, N, f_g, sandwich.constant, f.defect)
    if not interval.overlaps(f_h.divide(f_g)):
        raise InconsistentOraclesError(f"certified interval {interval} misses f(h)/f(g) = {f_h.divide(f_g)}")
    record = record.model_copy(update={"interval": interval})
    return GrowthLimit(estimate=estimate, interval=interval, record=record)


# ---------- AUDITS ----------

def order_axiom_audit(order: OrderOracle, samples: Sequence[Any], rng: random.Random, triples: int) -> AuditReport:
    """Pointedness, conjugation invariance and product closure on seeded triples."""
    report = AuditReport(name=f"order-axioms:{order.name}", columns=["check", "sample", "result"])
    ops = order.ops
    render = ops.render
    positivity = {}

    def status(x):
        key = render(x)
        if key not in positivity:
            positivity[key] = order.positivity(x)
        return positivity[key]

    for _ in range(triples):
        g, h, k = (samples[rng.randrange(len(samples))] for _ in range(3))
        if status(g) is Positivity.POSITIVE and status(ops.invert(g)) is not Positivity.NOT_POSITIVE:
            report.flag("pointed", render(g), "g and g^-1 are both positive")
        if status(g) is not Positivity.NOT_POSITIVE:
            if not order.is_positive(ops.conjugate(g, k)):
                report.flag("conjugation-invariant", f"{render(g)} by {render(k)}", "k g k^-1 not positive")
            if status(h) is not Positivity.NOT_POSITIVE and not order.is_positive(ops.compose(g, h)):
                report.flag("product-closed", f"{render(g)} * {render(h)}", "product not positive")
    report.add_row("triples", triples, "pass" if report.passed else "fail")
    return report


def subadditivity_audit(order: OrderOracle, g, h, n_max: int, power_cap: int = DEFAULT_POWER_CAP) -> AuditReport:
    """e_{n+m} <= e_n + e_m for all n, m <= n_max."""
    report = AuditReport(name="subadditivity", columns=["n", "e_n"])
    values = {n: growth_en(order, g, h, n, power_cap).e_n for n in range(1, 2 * n_max + 1)}
    for n, e in values.items():
        report.add_row(n, e)
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            if values[n + m] > values[n] + values[m]:
                report.flag("subadditive", f"n={n},m={m}", f"e_{n + m}={values[n + m]} > {values[n]}+{values[m]}")
    return report


def strictly_order_preserving(rho: Callable[[Any], Any], source: OrderOracle, target: OrderOracle,
                              samples: Sequence[Any]) -> AuditReport:
    """Every strictly positive sample maps to a strictly positive element."""
    report = AuditReport(name=f"order-preserving:{target.name}", columns=["sample", "source", "target"])
    for g in samples:
        source_status = source.positivity(g)
        if source_status is not Positivity.POSITIVE:
            continue
        image_status = target.positivity(rho(g))
        report.add_row(source.ops.render(g), source_status.value, image_status.value)
        if image_status is Positivity.NOT_POSITIVE:
            report.flag("order", source.ops.render(g), "positive element maps to a non-positive element")
        elif image_status is Positivity.IDENTITY:
            report.flag("strictness", source.ops.render(g), "positive element maps to the identity")
    return report

