"""
Command-line interface
Every command writes a CSV report (and optionally an SVG plot) and exits 0 on pass, 1 on violations, 2 on bad input
"""
import functools
import logging
import random
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Tuple

import click
import numpy as np
from pydantic import ValidationError

from . import __version__
from .causal import psi_estimate, random_points, rx_bounds_audit
from .circle import PLMap, pointwise_compare, translation_number
from .config import PERTURBATION_SHIFTS
from .errors import (
    InconsistentOraclesError, InputError, InstanceInconsistentError, KindMismatchError, NotInCommutatorError,
    OrdliftError, UnsupportedSurfaceError,
)
from .intervals import format_rational
from .lagrangian import oracle_agreement, random_point, random_unitary, rank_one_agreement, sample_pairs
from .models import AuditReport, Report, RunConfig
from .orders import circle_dominants, growth_limit, integer_order
from .quasimorphism import (
    conjugation_audit, defect_audit, dominant_audit, homogeneity_audit, integer_identity, sandwich_audit,
    sandwiched_q_order, tau,
)
from .reports import build_header, emit_plot, write_report
from .sampling import random_elements
from .serialization import load_config, read_elements, read_rep, split_pair
from .suite import SUITE, lagrangian_dimension, resolve_cover, run_suite
from .surface import (
    SurfaceData, SurfaceRep, check_order_preserving, commuting_images_rep, f_sigma, lambda_fit, lift_evaluate,
    modular_torus, order_threshold, perturbed_order_check, positive_words, random_commutator_words,
    reverse_orientation, schottky_rep, toledo_bound_check, twisted_torus, winding_invariance_audit,
)

logger = logging.getLogger(__name__)

Series = List[Tuple[float, float]]
Outcome = Tuple[List[AuditReport], Optional[dict]]

BUILTIN_REPS = {
    "modular-torus": modular_torus,
    "twisted-torus": twisted_torus,
    "commuting-images": lambda: commuting_images_rep(SurfaceData(1, 1)),
    "reversed-modular-torus": lambda: reverse_orientation(modular_torus()),
    "schottky-pants": lambda: schottky_rep(SurfaceData(0, 3)),
}

_INPUT_ERRORS = (InputError, KindMismatchError, NotInCommutatorError, UnsupportedSurfaceError, ValidationError)
_INCONSISTENT = (InconsistentOraclesError, InstanceInconsistentError)


# ---------- SHARED PLUMBING ----------

def run_options(function: Callable) -> Callable:
    """Options every command accepts; all default to None so config files can fill them in."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="Flat key=value file; explicit flags win."),
        click.option("--seed", type=int, default=None, help="Seed for every random choice."),
        click.option("--samples", type=int, default=None, help="Number of random samples."),
        click.option("--tol", type=str, default=None, help="Interval tolerance, e.g. 1/1000000000."),
        click.option("--power-cap", type=int, default=None, help="Largest exponent a search may reach."),
        click.option("--cover", type=str, default=None, help="'circle' or 'lagrangian(n=N)'."),
        click.option("--q", type=str, default=None, help="Order shift q (rational, nonnegative)."),
        click.option("-n", "n", type=int, default=None, help="Growth horizon or homogenization length."),
        click.option("--words", type=int, default=None, help="Number of sampled surface-group words."),
        click.option("--word-length", type=int, default=None, help="Length of sampled words."),
        click.option("--out", type=str, default=None, help="CSV destination, '-' for standard output."),
        click.option("--format", "format", type=click.Choice(["csv", "svg"]), default=None,
                     help="svg also writes a plot next to the CSV."),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def build_config(command: str, inputs: Tuple[str, ...], config_path: Optional[str], **flags) -> RunConfig:
    """Config file values first, then every flag that was passed explicitly."""
    values = load_config(config_path) if config_path else {}
    values.update({key: value for key, value in flags.items() if value is not None})
    values["command"] = command
    values["inputs"] = list(inputs)
    return RunConfig(**values)


def plot_path(config: RunConfig) -> Path:
    if config.out == "-":
        return Path(f"ordlift-{config.command}.svg")
    return Path(config.out).with_suffix(".svg")


def command_runner(body: Callable[..., Outcome]) -> Callable:
    """Build the config, run the body, write the report and map errors to exit codes."""
    @click.pass_context
    @functools.wraps(body)
    def wrapper(ctx: click.Context, inputs: Tuple[str, ...] = (), config_path: Optional[str] = None, **flags):
        extra = {key: flags.pop(key) for key in list(flags) if key not in RunConfig.model_fields}
        try:
            config = build_config(ctx.info_name, tuple(inputs), config_path, **flags)
            sections, plot = body(config, **extra)
        except _INPUT_ERRORS as error:
            click.echo(f"error: {error}", err=True)
            ctx.exit(2)
        except _INCONSISTENT as error:
            logger.error("%s: %s", type(error).__name__, error)
            ctx.exit(1)
        except OrdliftError as error:
            click.echo(f"failed: {type(error).__name__}: {error}", err=True)
            ctx.exit(1)

        report = Report(header=build_header(config), sections=sections)
        try:
            text = write_report(report, config.out)
            if config.format == "svg" and plot:
                emit_plot(path=plot_path(config), **plot)
        except InputError as error:
            click.echo(f"error: {error}", err=True)
            ctx.exit(2)
        if config.out == "-":
            click.echo(text, nl=False)
        ctx.exit(report.exit_code)

    return wrapper


def element_kind(elements) -> str:
    kinds = {"pl" if isinstance(g, PLMap) else "moebius" for g in elements}
    if len(kinds) > 1:
        raise KindMismatchError("input mixes piecewise-linear maps and Moebius lifts")
    return kinds.pop() if kinds else "pl"


def single_input(config: RunConfig) -> str:
    if len(config.inputs) != 1:
        raise InputError(f"{config.command} takes exactly one input file, got {len(config.inputs)}")
    return config.inputs[0]


def integer_shift(config: RunConfig) -> int:
    if config.q.denominator != 1:
        raise InputError(f"surface-group orders need an integer q, got {config.q}")
    return int(config.q)


def resolve_rep(name: str) -> SurfaceRep:
    if name in BUILTIN_REPS:
        return BUILTIN_REPS[name]()
    return read_rep(name)


# ---------- COMMANDS ----------

@click.group()
@click.version_option(__version__, prog_name="ordlift")
@click.option("--verbose", is_flag=True, help="Debug logging.")
def cli(verbose: bool):
    """Exact decision procedures for left-orders, translation numbers and causal covers."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@cli.command("tau")
@click.argument("inputs", nargs=-1, required=True)
@run_options
@command_runner
def tau_command(config: RunConfig) -> Outcome:
    """Translation number interval of every element in INPUT."""
    report = AuditReport(name="tau", columns=["row", "lo", "hi"])
    series: Series = []
    for index, g in enumerate(read_elements(single_input(config))):
        value = translation_number(g, config.tol)
        report.add_row("tau", format_rational(value.lo), format_rational(value.hi))
        series.append((float(index), float(value.midpoint)))
    plot = dict(series=series, title="translation numbers", xlabel="element", ylabel="tau", scatter=True)
    return [report], plot


@cli.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("--nonstrict", is_flag=True, help="Compare with g(x) + q <= h(x).")
@run_options
@command_runner
def compare(config: RunConfig, nonstrict: bool = False) -> Outcome:
    """Compare the first two elements of INPUT in the order <=_q."""
    g, h = split_pair(read_elements(single_input(config)))
    result = pointwise_compare(g, h, config.q, strict=not nonstrict)
    report = AuditReport(name="compare", columns=["row", "verdict", "witness"])
    report.add_row("compare", result.verdict.value, result.witness.descriptor if result.witness else "")
    return [report], None


@cli.command()
@click.argument("inputs", nargs=-1)
@click.option("-g", "g_int", type=int, default=2, help="Integer demo: the dominant element.")
@click.option("-h", "h_int", type=int, default=3, help="Integer demo: the compared element.")
@run_options
@command_runner
def growth(config: RunConfig, g_int: int = 2, h_int: int = 3) -> Outcome:
    """
    Relative growth e_n(g, h) for n <= N.

    With an INPUT file its first two elements are g and h in the sandwiched
    q-order; without one the integers g and h are compared.
    """
    if config.inputs:
        g, h = split_pair(read_elements(single_input(config)))
        order = sandwiched_q_order(config.q, element_kind([g, h]))
        if not circle_dominants(order).contains(g):
            raise InputError(f"g = {g} is not dominant in {order.name}")
    else:
        if g_int < 1:
            raise InputError(f"g must be a positive integer, got {g_int}")
        order, g, h = integer_order().with_sandwich(integer_identity(), 1), g_int, h_int
    report = AuditReport(name="growth", columns=["row", "n", "e_n", "e_n/n", "interval"])
    series: Series = []
    for n in range(1, config.n + 1):
        limit = growth_limit(order, g, h, n, power_cap=config.power_cap)
        report.add_row("e_n", n, limit.record.e_n, format_rational(limit.estimate), limit.interval or "")
        series.append((float(n), float(limit.estimate)))
    report.add_row("estimate", config.n, limit.record.e_n, format_rational(limit.estimate), limit.interval or "")
    plot = dict(series=series, title="relative growth", xlabel="n", ylabel="e_n / n")
    return [report], plot


@cli.command("sandwich-audit")
@click.argument("inputs", nargs=-1)
@click.option("--kind", type=click.Choice(["pl", "moebius"]), default="pl", help="Kind of random samples.")
@run_options
@command_runner
def sandwich_audit_command(config: RunConfig, kind: str = "pl") -> Outcome:
    """Sandwich, dominant-set and quasimorphism audits of tau against the q-order."""
    rng = random.Random(config.seed)
    if config.inputs:
        samples = read_elements(single_input(config))
        kind = element_kind(samples)
    else:
        samples = random_elements(kind, rng, config.samples)
    f = tau(kind, config.tol)
    order = sandwiched_q_order(config.q, kind)
    sections = [
        sandwich_audit(f, order.sandwich.constant, order, samples),
        dominant_audit(f, order, circle_dominants(order), samples),
        defect_audit(f, samples, rng, config.samples),
        homogeneity_audit(f, samples),
        conjugation_audit(f, samples, rng, config.samples),
    ]
    return sections, None


@cli.command("rep-check")
@click.argument("inputs", nargs=-1, required=True)
@run_options
@command_runner
def rep_check(config: RunConfig) -> Outcome:
    """
    Check REP against the reference REF (default: the modular torus).

    Both are representation files or one of the builtin names modular-torus,
    twisted-torus, commuting-images, reversed-modular-torus and schottky-pants.
    """
    if len(config.inputs) > 2:
        raise InputError(f"rep-check takes REP and an optional REF, got {len(config.inputs)} inputs")
    rho = resolve_rep(config.inputs[0])
    reference = resolve_rep(config.inputs[1]) if len(config.inputs) > 1 else modular_torus()
    if rho.surface != reference.surface:
        raise InputError(f"{rho.name} lives on {rho.surface}, the reference on {reference.surface}")
    rng = random.Random(config.seed)
    words = random_commutator_words(rho.surface, config.words, config.word_length, rng)
    fit = lambda_fit(rho, reference, words, config.tol)
    summary = AuditReport(name="lambda", columns=["row", "lambda", "toledo"])
    if fit.proportional:
        summary.add_row("lambda", fit.lambda_interval, fit.toledo)
    else:
        summary.add_row("lambda", "not-proportional", "")
    q = integer_shift(config)
    target = sandwiched_q_order(0, "moebius")
    summary.add_row("q0", order_threshold(target), "")
    positive = positive_words(reference, q, config.words, config.word_length, rng)
    sections = [
        summary,
        toledo_bound_check(fit, rho.surface),
        check_order_preserving(rho, reference, q, target, positive),
        perturbed_order_check(rho, reference, target, PERTURBATION_SHIFTS, config.words, config.word_length, rng),
        winding_invariance_audit(rho, words[:20], rng),
    ]
    series = [(float(f_sigma(reference, w).midpoint), float(translation_number(lift_evaluate(rho, w)).midpoint))
              for w in words]
    plot = dict(series=series, title=f"{rho.name} against {reference.name}", xlabel="f_Sigma",
                ylabel="tau", scatter=True)
    return sections, plot


@cli.command()
@click.argument("inputs", nargs=-1)
@run_options
@command_runner
def causal(config: RunConfig) -> Outcome:
    """R_x bounds and psi estimates on the selected cover."""
    rng = random.Random(config.seed)
    dimension = lagrangian_dimension(config.cover)
    if dimension is not None:
        if config.inputs:
            raise InputError("element files are read for the circle cover only")
        return lagrangian_sections(config, dimension, rng), None

    elements = read_elements(single_input(config)) if config.inputs else random_elements("pl", rng, config.samples)
    cover = resolve_cover(config.cover, element_kind(elements))
    estimates = AuditReport(name="psi", columns=["row", "element", "psi", "tau"])
    series: Series = []
    for g in elements:
        psi = psi_estimate(cover, g, config.n, Fraction(0))
        value = translation_number(g, config.tol)
        estimates.add_row("psi", cover.ops.render(g), psi, value)
        series.append((float(value.midpoint), float(psi.midpoint)))
    bounds = rx_bounds_audit(cover, elements, random_points(rng, config.samples), rng, config.samples)
    plot = dict(series=series, title=f"psi on {cover.name}", xlabel="tau", ylabel="psi", scatter=True)
    return [estimates, bounds], plot


def lagrangian_sections(config: RunConfig, dimension: int, rng: random.Random) -> List[AuditReport]:
    generator = np.random.default_rng(config.seed)
    cover = resolve_cover(config.cover)
    elements = [random_unitary(dimension, generator) for _ in range(max(1, config.samples // 10))]
    points = [random_point(dimension, generator) for _ in range(max(1, config.samples // 10))]
    sections = [rx_bounds_audit(cover, elements, points, rng, min(config.samples, 50))]
    if dimension == 1:
        sections.append(rank_one_agreement(sample_pairs(generator, config.samples)))
    agreement, rate = oracle_agreement(dimension, generator, min(config.samples, 20))
    agreement.add_row("rate", rate, "")
    sections.append(agreement)
    return sections


@cli.command()
@click.option("--only", multiple=True, type=click.Choice(sorted(SUITE) + ["lagrangian"]),
              help="Run only the named criteria.")
@run_options
@command_runner
def suite(config: RunConfig, only: Tuple[str, ...] = ()) -> Outcome:
    """The seeded acceptance suite over all shipped orders, representations and covers."""
    return run_suite(config, only), None


