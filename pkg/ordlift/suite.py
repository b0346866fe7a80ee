"""
Acceptance suite
Seeded property runs over every shipped order, quasimorphism, representation and cover
"""
import logging
import random
import re
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .causal import (
    CausalCoverInstance, circle_instance, iota, psi_sandwich_audit, psi_tau_audit, random_points, rx_bounds_audit,
    rx_quasimorphism,
)
from .circle import MoebiusLift, PLMap, cocycle_audit, is_dominant_pointwise
from .config import PERTURBATION_SHIFTS
from .errors import InputError, InstanceInconsistentError
from .lagrangian import lagrangian_instance, oracle_agreement, rank_one_agreement, sample_pairs
from .models import AuditReport, RunConfig
from .orders import order_axiom_audit, perturb_circle, pointwise_order, q_order
from .quasimorphism import (
    defect_audit, homogenize, reconstruct_ratio_check, sandwich_chain_audit, sandwiched_q_order, tau,
)
from .sampling import dominant_pairs, random_elements, random_moebius_lift
from .surface import (
    check_order_preserving, commuting_images_rep, f_sigma, lambda_fit, modular_torus, perturbed_order_check,
    positive_words, random_commutator_words, toledo_bound_check, twisted_torus,
)
from .words import FreeWord

logger = logging.getLogger(__name__)

_LAGRANGIAN_COVER = re.compile(r"^lagrangian\(\s*n\s*=\s*(\d+)\s*\)$")


def lagrangian_dimension(name: str) -> Optional[int]:
    """n for 'lagrangian(n=N)', None for any other cover name."""
    match = _LAGRANGIAN_COVER.match(name.replace(" ", ""))
    return int(match.group(1)) if match else None


def resolve_cover(name: str, kind: str = "pl") -> CausalCoverInstance:
    """'circle' or 'lagrangian(n=2)'."""
    if name == "circle":
        return circle_instance(kind)
    n = lagrangian_dimension(name)
    if n is not None:
        return lagrangian_instance(n)
    raise InputError(f"unknown cover: {name!r} (expected 'circle' or 'lagrangian(n=N)')")


def merge(name: str, reports: Sequence[AuditReport], columns: Sequence[str] = ()) -> AuditReport:
    merged = AuditReport(name=name, columns=list(columns))
    for report in reports:
        merged.rows.extend(report.rows)
        merged.violations.extend(report.violations)
    return merged


def order_axioms(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    reports = []
    for kind in ("pl", "moebius"):
        samples = random_elements(kind, rng, config.samples)
        orders = [pointwise_order(kind)] + [q_order(q, kind) for q in (0, 1, 2)]
        for q in (1, Fraction(1, 2)):
            orders += [perturb_circle(variant, q, kind) for variant in ("strict", "nonstrict")]
        for order in orders:
            report = order_axiom_audit(order, samples, rng, config.samples)
            report.name = f"{report.name}[{kind}]"
            reports.append(report)
    return reports


def reconstruction(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """-1/(n tau(g)) <= e_n/n - tau(h)/tau(g) <= (2 + tau(g))/(n tau(g)) for n <= 12."""
    checks = []
    for g, h in dominant_pairs(rng, min(50, config.samples)):
        kind = "pl" if isinstance(g, PLMap) else "moebius"
        checks.append(reconstruct_ratio_check(
            sandwiched_q_order(0, kind), tau(kind), g, h, 12, constant=1, power_cap=config.power_cap
        ))
    return [merge("reconstruction-bound", checks, ["n", "e_n", "e_n/n", "lower", "upper", "ratio"])]


def dominance_equivalence(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """Pointwise dominance against the sign of tau; a disagreement raises. Also the tau sandwich chain."""
    report = AuditReport(name="dominance-vs-tau", columns=["kind", "samples", "dominant"])
    chain = []
    for kind in ("pl", "moebius"):
        samples = random_elements(kind, rng, config.samples)
        dominant = sum(is_dominant_pointwise(g).dominant for g in samples)
        report.add_row(kind, len(samples), dominant)
        chain += samples
    return [report, sandwich_chain_audit(chain)]


def cocycle(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    triples = [tuple(random_moebius_lift(rng) for _ in range(3)) for _ in range(config.samples)]
    return [cocycle_audit(triples)]


def sigma_invariance(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """Two hyperbolizations of the once-punctured torus give the same f_Sigma."""
    first, second = modular_torus(), twisted_torus()
    report = AuditReport(name="f_sigma-invariance", columns=["word", first.name, second.name])
    for w in random_commutator_words(first.surface, 100, config.word_length, rng):
        a, b = f_sigma(first, w), f_sigma(second, w)
        report.add_row(w, a, b)
        agree = a == b if a.is_exact and b.is_exact else a.widen(Fraction(1, 10**6)).overlaps(b)
        if not agree:
            report.flag("invariance", w, f"{a} != {b}")
    return [report]


def maximality(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    reference = modular_torus()
    report = AuditReport(name="maximality-anchor", columns=["quantity", "value"])
    boundary = f_sigma(reference, FreeWord("abAB"))
    report.add_row("f_sigma(abAB)", boundary)
    if boundary != type(boundary).exact(1):
        report.flag("boundary-word", "abAB", f"f_Sigma = {boundary}, expected 1")
    words = random_commutator_words(reference.surface, config.words, config.word_length, rng)
    fit = lambda_fit(reference, reference, words, config.tol)
    if not fit.proportional:
        report.flag("lambda", " , ".join(fit.witness_pair), "self-comparison is not proportional")
        return [report]
    report.add_row("lambda", fit.lambda_interval)
    report.add_row("toledo", fit.toledo)
    if not (fit.lambda_interval.contains(1) and fit.toledo.contains(1)):
        report.flag("lambda", reference.name, f"lambda = {fit.lambda_interval}, T = {fit.toledo}")
    return [report, toledo_bound_check(fit, reference.surface)]


def order_dichotomy(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """The reference preserves <=_{q,Sigma}; the commuting-images representation collapses it."""
    reference = modular_torus()
    target = sandwiched_q_order(0, "moebius")
    reports = []
    for q in (0, 1, 2):
        words = positive_words(reference, q, config.words, config.word_length, rng)
        reports.append(check_order_preserving(reference, reference, q, target, words))
    reports.append(perturbed_order_check(reference, reference, target, PERTURBATION_SHIFTS, config.words,
                                         config.word_length, rng))
    collapsed = commuting_images_rep(reference.surface)
    words = positive_words(reference, 0, config.words, config.word_length, rng)
    collapse = check_order_preserving(collapsed, reference, 0, target, words)
    dichotomy = AuditReport(name="order-dichotomy", columns=["representation", "strictness_violations"])
    witnesses = collapse.violations_of("strictness")
    dichotomy.add_row(collapsed.name, len(witnesses))
    if witnesses:
        dichotomy.add_row("witness", witnesses[0].sample)
    else:
        dichotomy.flag("dichotomy", collapsed.name, "commuting images unexpectedly preserve the order strictly")
    return reports + [dichotomy]


def causal_suite(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    reports = []
    points = random_points(rng, config.samples)
    for kind in ("pl", "moebius"):
        inst = circle_instance(kind)
        elements = random_elements(kind, rng, max(1, config.samples // 2))
        reports.append(rx_bounds_audit(inst, elements, points, rng, 3 * config.samples // 2))
        reports.append(psi_tau_audit(inst, elements, 1000))
        steep = [MoebiusLift(m.matrix, m.winding + 7) for m in random_elements("moebius", rng, 10)]
        if kind == "pl":
            steep = [PLMap.translation(Fraction(rng.randint(41, 64), 8)) for _ in range(10)]
        reports.append(psi_sandwich_audit(inst, elements + steep, 1000))
    return reports


def quasimorphisms(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """Declared defects on 500 seeded pairs and the 1/N narrowing of the R_x homogenization."""
    inst = circle_instance("pl")
    rx = rx_quasimorphism(inst, Fraction(0))
    reports = [defect_audit(rx, random_elements("pl", rng, config.samples), rng, 500)]
    for kind in ("pl", "moebius"):
        samples = random_elements(kind, rng, config.samples)
        report = defect_audit(tau(kind, Fraction(1, 10**4)), samples, rng, 500)
        report.name = f"{report.name}[{kind}]"
        reports.append(report)
    decay = AuditReport(name="homogenization-width", columns=["N", "value", "width"])
    g = PLMap.translation(Fraction(3, 2))
    for N in (10, 100, 1000):
        value = homogenize(rx, g, N)
        decay.add_row(N, value, value.width)
        if value.width > Fraction(1, N) or not value.contains(Fraction(3, 2)):
            decay.flag("width", f"N={N}", f"{value} for R_x at translation by 3/2")
    return reports + [decay]


def window_guarantee(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """A circle cover declared with D = 1/10 must be rejected by the window check."""
    report = AuditReport(name="iota-window", columns=["instance", "result"])
    misdeclared = circle_instance("pl", spread=Fraction(1, 10))
    try:
        value = iota(misdeclared, Fraction(1, 2), Fraction(0))
    except InstanceInconsistentError as error:
        report.add_row(misdeclared.name, "instance-inconsistent")
        logger.info("Mis-declared cover rejected: %s", error)
    else:
        report.add_row(misdeclared.name, value)
        report.flag("window", misdeclared.name, "mis-declared D was not detected")
    return [report]


def lagrangian_reduction(config: RunConfig, rng: random.Random) -> List[AuditReport]:
    """Rank one must reproduce the circle order; higher rank compares the two oracles."""
    generator = np.random.default_rng(config.seed)
    reports = [rank_one_agreement(sample_pairs(generator, config.samples))]
    n = lagrangian_dimension(config.cover) or 2
    agreement, rate = oracle_agreement(n, generator, min(config.samples, 20))
    agreement.add_row("rate", rate, "")
    reports.append(agreement)
    return reports


SUITE: Dict[str, Callable[[RunConfig, random.Random], List[AuditReport]]] = {
    "order-axioms": order_axioms,
    "reconstruction": reconstruction,
    "dominance": dominance_equivalence,
    "cocycle": cocycle,
    "f-sigma-invariance": sigma_invariance,
    "maximality": maximality,
    "order-preservation": order_dichotomy,
    "causal": causal_suite,
    "quasimorphisms": quasimorphisms,
    "iota-window": window_guarantee,
}


def run_suite(config: RunConfig, only: Sequence[str] = ()) -> List[AuditReport]:
    """Run the selected criteria (all by default), each with its own seeded generator."""
    names = list(only) or list(SUITE)
    unknown = [name for name in names if name not in SUITE and name != "lagrangian"]
    if unknown:
        raise InputError(f"unknown suite entries: {unknown}")
    if lagrangian_dimension(config.cover) is not None and "lagrangian" not in names:
        names.append("lagrangian")
    sections: List[AuditReport] = []
    for index, name in enumerate(names):
        rng = random.Random(config.seed + index)
        runner = lagrangian_reduction if name == "lagrangian" else SUITE[name]
        logger.info("Running %s", name)
        sections.extend(runner(config, rng))
    return sections
