"""
Surface representations
Canonical lifts on the commutator subgroup, the invariant quasimorphism f_Sigma,
the orders <=_{q,Sigma} and order-preservation tests for representations
"""
from __future__ import annotations

import logging
import math
import operator
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .circle import (
    MoebiusLift, _matmul, dominates_pointwise, translation_like, translation_number, translation_sign,
)
from .config import DEFAULT_TOLERANCE, LENGTH_CONSTANT
from .errors import DegenerateSampleError, InputError, NotInCommutatorError, UnsupportedSurfaceError
from .intervals import Interval
from .models import AuditReport, DominanceVerdict, LambdaFit, Positivity
from .orders import GroupOps, OrderOracle, perturb_circle, strictly_order_preserving
from .quasimorphism import Quasimorphism
from .words import FreeWord, in_commutator_subgroup, random_commutator_word

logger = logging.getLogger(__name__)

WORD_OPS = GroupOps(
    name="free-words",
    compose=operator.mul,
    invert=FreeWord.inverse,
    identity=FreeWord(),
)

SlopeInterval = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SurfaceData:
    """Compact oriented surface with boundary and negative Euler characteristic."""

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0:
            raise InputError(f"genus must be nonnegative, got {self.genus}")
        if self.boundary < 1:
            raise UnsupportedSurfaceError("closed surfaces are not supported, boundary must be at least 1")
        if self.euler_characteristic >= 0:
            raise UnsupportedSurfaceError(
                f"surface genus={self.genus} boundary={self.boundary} has Euler characteristic "
                f"{self.euler_characteristic} >= 0"
            )

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def rank(self) -> int:
        """Free rank of the fundamental group."""
        return 2 * self.genus + self.boundary - 1

    def __str__(self) -> str:
        return f"surface genus={self.genus} boundary={self.boundary}"


@dataclass(frozen=True)
class PingPongCertificate:
    """
    Discreteness certificate.

    kind 'markov': tr[A,B] = -2 with |tr A|, |tr B|, |tr AB| > 2 (complete once-punctured torus).
    kind 'schottky': per generator a repelling and an attracting slope interval; the generator maps
    the complement of the repelling interval into the attracting one.
    """

    kind: str
    intervals: Tuple[Tuple[SlopeInterval, SlopeInterval], ...] = ()


@dataclass(frozen=True)
class SurfaceRep:
    """Generator lifts of a representation of the surface group; letter i is generator i."""

    surface: SurfaceData
    lifts: Tuple[MoebiusLift, ...]
    name: str = "rho"
    reference: bool = False
    certificate: Optional[PingPongCertificate] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.lifts) != self.surface.rank:
            raise InputError(f"{self.surface} needs {self.surface.rank} generators, got {len(self.lifts)}")

    def generator_lift(self, letter: str) -> MoebiusLift:
        lift = self.lifts[ord(letter.lower()) - ord("a")]
        return lift if letter.islower() else lift.inverse()

    def with_windings(self, windings: Sequence[int]) -> "SurfaceRep":
        lifts = tuple(MoebiusLift(lift.matrix, m) for lift, m in zip(self.lifts, windings))
        return SurfaceRep(self.surface, lifts, self.name, self.reference, self.certificate)


# ---------- LIFTS AND f_SIGMA ----------

def lift_evaluate(rho: SurfaceRep, w: FreeWord) -> MoebiusLift:
    """
    Canonical lift of a commutator-subgroup word.

    Words act on the right: the first letter is applied first. Under this
    reading the modular torus boundary word abAB has f_Sigma = 1.

    Raises:
        NotInCommutatorError: if some generator exponent-sum of w is nonzero
    """
    if w.rank > rho.surface.rank:
        raise InputError(f"word {w} uses generators beyond rank {rho.surface.rank}")
    if not in_commutator_subgroup(w):
        raise NotInCommutatorError(f"word {w} is not in the commutator subgroup")
    result = MoebiusLift.identity()
    for letter in w.letters:
        result = rho.generator_lift(letter).compose(result)
    return result


def f_sigma(rho_ref: SurfaceRep, w: FreeWord, tol=DEFAULT_TOLERANCE) -> Interval:
    """tau of the canonical lift; exact whenever the image is not elliptic."""
    return translation_number(lift_evaluate(rho_ref, w), tol)


def f_sigma_quasimorphism(rho_ref: SurfaceRep) -> Quasimorphism:
    return Quasimorphism(
        name=f"f_sigma[{rho_ref.name}]",
        evaluate=lambda w: f_sigma(rho_ref, w),
        defect=Fraction(1),
        homogeneous=True,
        ops=WORD_OPS,
        exact_sign=lambda w: translation_sign(lift_evaluate(rho_ref, w)),
    )


def positive_in_sigma_order(rho_ref: SurfaceRep, w: FreeWord, q: int = 0) -> DominanceVerdict:
    """Decide w >_{q,Sigma} e exactly."""
    holds, witness = dominates_pointwise(lift_evaluate(rho_ref, w), q, strict=True)
    return DominanceVerdict(dominant=holds, witness=witness)


def sigma_order(rho_ref: SurfaceRep, q: int = 0) -> OrderOracle:
    """<=_{q,Sigma} on commutator words, sandwiched by f_Sigma with constant q + 1."""
    order = OrderOracle(
        name=f"sigma_{q}[{rho_ref.name}]",
        ops=WORD_OPS,
        test=lambda w: positive_in_sigma_order(rho_ref, w, q).dominant,
    )
    return order.with_sandwich(f_sigma_quasimorphism(rho_ref), q + 1)


def order_threshold(target: OrderOracle) -> Optional[Fraction]:
    """q0 = C * l_G from the target order's sandwich constant."""
    if target.sandwich is None:
        return None
    return target.sandwich.constant * LENGTH_CONSTANT


# ---------- SHIPPED REPRESENTATIONS ----------

def _inverse_matrix(m):
    a, b, c, d = m
    return (d, -b, -c, a)


def _commutator_trace(A, B) -> Fraction:
    product = _matmul(_matmul(A, B), _matmul(_inverse_matrix(A), _inverse_matrix(B)))
    return product[0] + product[3]


def _slope_image(m, s: Fraction) -> Optional[Fraction]:
    a, b, c, d = m
    denominator = c * s + d
    if denominator == 0:
        return None
    return (a * s + b) / denominator


def _inside(s: Optional[Fraction], interval: SlopeInterval) -> bool:
    return s is not None and interval[0] < s < interval[1]


def verify_certificate(rho: SurfaceRep) -> bool:
    """Check the stored discreteness certificate exactly."""
    certificate = rho.certificate
    if certificate is None:
        return False
    matrices = [lift.matrix for lift in rho.lifts]
    if certificate.kind == "markov":
        if len(matrices) != 2:
            return False
        A, B = matrices
        traces = (A[0] + A[3], B[0] + B[3], sum(_matmul(A, B)[i] for i in (0, 3)))
        return _commutator_trace(A, B) == -2 and all(abs(t) > 2 for t in traces)
    if certificate.kind == "schottky":
        if len(certificate.intervals) != len(matrices):
            return False
        flat = sorted(interval for pair in certificate.intervals for interval in pair)
        if any(left[1] >= right[0] for left, right in zip(flat, flat[1:])):
            return False
        for m, (repelling, attracting) in zip(matrices, certificate.intervals):
            if not all(_inside(_slope_image(m, s), attracting) for s in repelling):
                return False
        return True
    raise InputError(f"unknown certificate kind: {certificate.kind}")


def modular_torus() -> SurfaceRep:
    """a -> [[1,1],[1,2]], b -> [[1,-1],[-1,2]]."""
    return SurfaceRep(
        surface=SurfaceData(1, 1),
        lifts=(MoebiusLift((1, 1, 1, 2)), MoebiusLift((1, -1, -1, 2))),
        name="modular-torus",
        reference=True,
        certificate=PingPongCertificate("markov"),
    )


def twisted_torus() -> SurfaceRep:
    """
    Second hyperbolization of the once-punctured torus: the modular torus
    precomposed with the twist a -> ab and conjugated by [[2,1],[1,1]].
    """
    A, B = (lift.matrix for lift in modular_torus().lifts)
    P = (Fraction(2), Fraction(1), Fraction(1), Fraction(1))
    conjugated = [_matmul(_matmul(P, m), _inverse_matrix(P)) for m in (_matmul(B, A), B)]
    return SurfaceRep(
        surface=SurfaceData(1, 1),
        lifts=tuple(MoebiusLift(m) for m in conjugated),
        name="twisted-torus",
        reference=True,
        certificate=PingPongCertificate("markov"),
    )


def _schottky_generator(repelling: Fraction, attracting: Fraction, multiplier: Fraction):
    P = (attracting, repelling, Fraction(1), Fraction(1))
    det = attracting - repelling
    P_inv = (Fraction(1) / det, -repelling / det, Fraction(-1) / det, attracting / det)
    return _matmul(_matmul(P, (multiplier, Fraction(0), Fraction(0), 1 / multiplier)), P_inv)


def _commutator_rotates(rho: SurfaceRep) -> bool:
    """f_Sigma([a, b]) is a nonzero integer; vacuous in rank one."""
    if rho.surface.rank < 2:
        return True
    value = f_sigma(rho, FreeWord("abAB"))
    return value.is_exact and value.value != 0


def schottky_rep(surface: SurfaceData, max_multiplier: int = 2**20) -> SurfaceRep:
    """
    Hyperbolization of a genus-zero surface by Schottky generators.

    Generator i repels at slope 2i and attracts at slope 2(i + rank), so the
    interval pairs interleave cyclically. Adjacent pairs give f_Sigma([a, b]) = 0.
    The multiplier doubles until the ping-pong certificate holds and the
    commutator of the first two generators rotates.
    """
    rank = surface.rank
    half_width = Fraction(1, 2)
    slopes = [(Fraction(2 * i), Fraction(2 * (i + rank))) for i in range(rank)]
    intervals = tuple(
        ((repelling - half_width, repelling + half_width), (attracting - half_width, attracting + half_width))
        for repelling, attracting in slopes
    )
    multiplier = Fraction(2)
    while multiplier <= max_multiplier:
        lifts = tuple(
            MoebiusLift(_schottky_generator(repelling, attracting, multiplier)) for repelling, attracting in slopes
        )
        rep = SurfaceRep(surface, lifts, f"schottky-{surface.boundary}", True,
                         PingPongCertificate("schottky", intervals))
        if verify_certificate(rep) and _commutator_rotates(rep):
            logger.debug("Schottky certificate holds with multiplier %s", multiplier)
            return rep
        multiplier *= 2
    raise UnsupportedSurfaceError(f"no Schottky certificate found for {surface}")


def example_hyperbolization(surface: SurfaceData) -> SurfaceRep:
    """Shipped discrete faithful representation with a verified certificate."""
    if (surface.genus, surface.boundary) == (1, 1):
        return modular_torus()
    if surface.genus == 0:
        return schottky_rep(surface)
    raise UnsupportedSurfaceError(f"no hyperbolization is configured for {surface}")


def commuting_images_rep(surface: SurfaceData) -> SurfaceRep:
    """Every generator goes to the quarter-turn rotation."""
    quarter_turn = MoebiusLift((0, -1, 1, 0))
    return SurfaceRep(surface, (quarter_turn,) * surface.rank, name="commuting-images")


def reverse_orientation(rho: SurfaceRep) -> SurfaceRep:
    """Conjugate every generator by diag(1, -1); lifted translation numbers change sign."""
    def reflect(lift: MoebiusLift) -> MoebiusLift:
        a, b, c, d = lift.matrix
        return MoebiusLift((a, -b, -c, d), -lift.winding)

    lifts = tuple(reflect(lift) for lift in rho.lifts)
    return SurfaceRep(rho.surface, lifts, f"reversed-{rho.name}", False)


# ---------- WORD SAMPLES ----------

def random_commutator_words(surface: SurfaceData, count: int, length: int, rng: random.Random) -> List[FreeWord]:
    return [random_commutator_word(surface.rank, length, rng) for _ in range(count)]


def positive_words(rho_ref: SurfaceRep, q: int, count: int, length: int, rng: random.Random,
                   max_power: int = 8, attempts: int = 5000) -> List[FreeWord]:
    """
    Seeded words with w >_{q,Sigma} e.

    Samples with f_Sigma > 0 that are not yet positive are raised to the least
    power k with k * f_Sigma >= q + 1.
    """
    found: List[FreeWord] = []
    for _ in range(attempts):
        if len(found) >= count:
            return found
        w = random_commutator_word(rho_ref.surface.rank, length, rng)
        value = f_sigma(rho_ref, w)
        if value.lo <= 0:
            continue
        k = max(1, math.ceil((q + 1) / value.lo))
        if k > max_power:
            continue
        candidate = w if positive_in_sigma_order(rho_ref, w, q).dominant else w.power(k)
        if positive_in_sigma_order(rho_ref, candidate, q).dominant:
            found.append(candidate)
    if len(found) < count:
        raise DegenerateSampleError(f"found only {len(found)} of {count} positive words for q={q}")
    return found


# ---------- REPRESENTATION CHECKS ----------

def lambda_fit(rho: SurfaceRep, rho_ref: SurfaceRep, words: Sequence[FreeWord],
               tol=DEFAULT_TOLERANCE) -> LambdaFit:
    """
    Fit tau(rho~(w)) = lambda * f_Sigma(w) over the sampled words.

    Raises:
        DegenerateSampleError: if no sampled word has f_Sigma != 0
    """
    common: Optional[Interval] = None
    first: Optional[FreeWord] = None
    zero_words: List[Tuple[FreeWord, Interval]] = []
    for w in words:
        reference_value = f_sigma(rho_ref, w, tol)
        value = translation_number(lift_evaluate(rho, w), tol)
        if reference_value.is_exact and reference_value.value == 0:
            zero_words.append((w, value))
            continue
        if reference_value.contains(0):
            logger.debug("Skipping %s: f_Sigma enclosure %s straddles 0", w, reference_value)
            continue
        ratio = value.divide(reference_value)
        if common is None:
            common, first = ratio, w
        elif common.overlaps(ratio):
            common = common.intersect(ratio)
        else:
            return LambdaFit(proportional=False, witness_pair=(str(first), str(w)))
    if common is None:
        raise DegenerateSampleError("every sampled word has f_Sigma = 0")
    for w, value in zero_words:
        if not value.contains(0):
            return LambdaFit(proportional=False, witness_pair=(str(first), str(w)))
    chi = abs(rho.surface.euler_characteristic)
    return LambdaFit(proportional=True, lambda_interval=common, toledo=common.scale(chi))


def toledo_bound_check(fit: LambdaFit, surface: SurfaceData) -> AuditReport:
    """|T(rho)| <= |chi(Sigma)| on a proportional fit."""
    report = AuditReport(name="toledo-bound", columns=["lambda", "toledo", "abs_chi"])
    chi = abs(surface.euler_characteristic)
    if not fit.proportional:
        report.add_row("", "", chi)
        report.flag("proportional", " , ".join(fit.witness_pair or ()), "ratios disagree")
        return report
    report.add_row(fit.lambda_interval, fit.toledo, chi)
    if fit.toledo.lo > chi or fit.toledo.hi < -chi:
        report.flag("toledo-bound", str(fit.toledo), f"|T| exceeds |chi| = {chi}")
    return report


def check_order_preserving(rho: SurfaceRep, rho_ref: SurfaceRep, q: int, target_order: OrderOracle,
                           words: Sequence[FreeWord]) -> AuditReport:
    """Every w >_{q,Sigma} e must map to a positive non-identity element of the target order."""
    report = strictly_order_preserving(
        lambda w: lift_evaluate(rho, w), sigma_order(rho_ref, q), target_order, words
    )
    report.name = f"order-preserving:{rho.name}:q={q}"
    return report


def perturbed_order_check(rho: SurfaceRep, rho_ref: SurfaceRep, target_order: OrderOracle, shifts: Sequence,
                          count: int, length: int, rng: random.Random) -> AuditReport:
    """
    Order preservation against the target order perturbed by translations through t < q0.

    With T the translation by ceil(t), the perturbed order is sandwiched by the
    same quasimorphism with constant C + f(T) + defect, so rho must stay strictly
    order preserving for <=_{q,Sigma} at q = ceil((C + f(T) + defect) * l_G).

    Raises:
        ValueError: if the target order carries no sandwich constant
    """
    if target_order.sandwich is None:
        raise ValueError(f"order {target_order.name} carries no sandwich constant")
    f, constant = target_order.sandwich.quasimorphism, target_order.sandwich.constant
    q0 = order_threshold(target_order)
    report = AuditReport(name=f"perturbation-stability:{rho.name}", columns=["shift", "q", "words", "violations"])
    for t in map(Fraction, shifts):
        if t < 0 or t >= q0:
            logger.debug("Skipping perturbation by %s outside [0, %s)", t, q0)
            continue
        perturbed = perturb_circle("strict", t, "moebius")
        shifted_constant = constant + f(translation_like(MoebiusLift.identity(), math.ceil(t))).hi + f.defect
        q = math.ceil(shifted_constant * LENGTH_CONSTANT)
        words = positive_words(rho_ref, q, count, length, rng)
        check = check_order_preserving(rho, rho_ref, q, perturbed, words)
        report.add_row(t, q, len(words), len(check.violations))
        report.violations.extend(check.violations)
    return report


def automorphism_order_check(rho_ref: SurfaceRep, images: Mapping[str, FreeWord], q: int,
                             words: Sequence[FreeWord]) -> AuditReport:
    """Classify an automorphism as preserving, reversing or breaking <=_{q,Sigma} on positive samples."""
    report = AuditReport(name=f"automorphism:q={q}", columns=["word", "image", "status"])
    order = sigma_order(rho_ref, q)
    counts: Dict[str, int] = {"preserved": 0, "reversed": 0, "broken": 0}
    for w in words:
        if order.positivity(w) is not Positivity.POSITIVE:
            continue
        image = w.substitute(images)
        if order.positivity(image) is Positivity.POSITIVE:
            status = "preserved"
        elif order.positivity(image.inverse()) is Positivity.POSITIVE:
            status = "reversed"
        else:
            status = "broken"
        counts[status] += 1
        report.add_row(w, image, status)
    if counts["broken"] or (counts["preserved"] and counts["reversed"]):
        report.flag("automorphism", "", f"mixed behaviour: {counts}")
    return report


def classify_automorphism(report: AuditReport) -> str:
    statuses = {row[2] for row in report.rows}
    if not report.passed:
        return "breaks"
    if statuses == {"reversed"}:
        return "reverses"
    return "preserves"


def winding_invariance_audit(rho: SurfaceRep, words: Sequence[FreeWord], rng: random.Random,
                             reassignments: int = 10) -> AuditReport:
    """lift_evaluate must not depend on the winding parts of the generator lifts."""
    report = AuditReport(name=f"winding-invariance:{rho.name}", columns=["words", "reassignments"])
    baseline = [lift_evaluate(rho, w) for w in words]
    for _ in range(reassignments):
        shifted = rho.with_windings([rng.randint(-5, 5) for _ in rho.lifts])
        for w, expected in zip(words, baseline):
            if lift_evaluate(shifted, w) != expected:
                report.flag("winding-invariance", w, f"windings {[lift.winding for lift in shifted.lifts]}")
    report.add_row(len(words), reassignments)
    return report
