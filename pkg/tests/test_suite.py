import random

import pytest

from ordlift.errors import InputError
from ordlift.models import RunConfig
from ordlift.suite import (
    SUITE, causal_suite, cocycle, dominance_equivalence, lagrangian_dimension, maximality, order_axioms, quasimorphisms,
    resolve_cover, run_suite, window_guarantee,
)


@pytest.fixture
def small_config():
    return RunConfig(command="suite", samples=12, words=20)


def test_lagrangian_dimension():
    assert lagrangian_dimension("lagrangian(n=3)") == 3
    assert lagrangian_dimension("lagrangian( n = 2 )") == 2
    assert lagrangian_dimension("circle") is None


def test_resolve_cover():
    assert resolve_cover("circle").name == "circle[pl]"
    assert resolve_cover("circle", "moebius").name == "circle[moebius]"
    assert resolve_cover("lagrangian(n=2)").name == "lagrangian(n=2)"
    with pytest.raises(InputError):
        resolve_cover("torus")


def test_order_axioms_pass(small_config):
    reports = order_axioms(small_config, random.Random(0))
    assert len(reports) == 16
    assert all(report.passed for report in reports)


def test_cocycle_and_window(small_config):
    assert all(report.passed for report in cocycle(small_config, random.Random(1)))
    window = window_guarantee(small_config, random.Random(2))[0]
    assert window.passed
    assert window.rows[0][1] == "instance-inconsistent"


def test_maximality_anchor(small_config):
    reports = maximality(small_config, random.Random(3))
    assert all(report.passed for report in reports)
    assert reports[0].rows[0] == ["f_sigma(abAB)", "1"]


def test_run_suite_selection_is_seeded(small_config):
    first = run_suite(small_config, ["cocycle", "iota-window"])
    second = run_suite(small_config, ["cocycle", "iota-window"])
    assert [s.rows for s in first] == [s.rows for s in second]
    assert [s.name for s in first] == ["euler-cocycle", "iota-window"]


def test_run_suite_rejects_unknown_names(small_config):
    with pytest.raises(InputError):
        run_suite(small_config, ["nonsense"])
    assert "lagrangian" not in SUITE


@pytest.fixture
def acceptance_config():
    return RunConfig(command="suite", samples=200, words=50)


def test_dominance_entry_at_acceptance_size(acceptance_config):
    reports = dominance_equivalence(acceptance_config, random.Random(0))
    assert all(report.passed for report in reports)
    assert [row[1] for row in reports[0].rows] == ["200", "200"]
    assert reports[1].name == "sandwich-chain"
    assert len(reports[1].rows) == 400


def test_causal_entry_at_acceptance_size(acceptance_config):
    reports = causal_suite(acceptance_config, random.Random(0))
    assert len(reports) == 6
    assert all(report.passed for report in reports)
    psi_reports = [report for report in reports if report.name.startswith("psi-tau")]
    assert all(len(report.rows) == 100 for report in psi_reports)


def test_quasimorphism_entry(small_config):
    reports = quasimorphisms(small_config, random.Random(4))
    assert all(report.passed for report in reports)
    assert [row[0] for row in reports[-1].rows] == ["10", "100", "1000"]
    assert "quasimorphisms" in SUITE
