from fractions import Fraction

import pytest

from ordlift.causal import circle_instance, rx_quasimorphism
from ordlift.circle import MoebiusLift, PLMap
from ordlift.intervals import Interval
from ordlift.orders import circle_dominants, integer_order, q_order
from ordlift.quasimorphism import (
    conjugation_audit, defect_audit, dominant_audit, homogeneity_audit, homogenize, integer_identity,
    quasimorphism_order, reconstruct_ratio_check, sandwich_audit, sandwich_chain_audit, sandwiched_q_order, tau,
)
from ordlift.sampling import random_elements


def test_tau_is_exact_on_translations(half_translation):
    f = tau("pl")
    assert f(half_translation) == Interval.exact(Fraction(1, 2))
    assert f.sign(half_translation.inverse()) == -1
    assert f.sign(PLMap.identity()) == 0


def test_integer_identity():
    f = integer_identity()
    assert f(7) == Interval.exact(7)
    assert f.sign(-3) == -1
    assert f.defect == 0


def test_homogenize_contains_tau(contracting_map):
    g = contracting_map.compose(PLMap.translation(1))
    value = homogenize(tau("pl"), g, 8)
    assert value.contains(1)
    with pytest.raises(ValueError):
        homogenize(tau("pl"), g, 0)


def test_quasimorphism_order_positives():
    order = quasimorphism_order(tau("pl"), 1)
    assert order.is_positive(PLMap.translation(Fraction(3, 2)))
    assert not order.is_positive(PLMap.translation(Fraction(1, 2)))
    assert order.sandwich.constant == 1


def test_sandwich_audit_passes_for_q_order(rng):
    samples = random_elements("pl", rng, 30)
    report = sandwich_audit(tau("pl"), 1, q_order(0, "pl"), samples)
    assert report.passed
    assert len(report.rows) == 30


def test_sandwich_audit_flags_too_small_constant():
    order = q_order(1, "pl")
    report = sandwich_audit(tau("pl"), Fraction(1, 2), order, [PLMap.translation(1)])
    assert [v.check for v in report.violations] == ["sandwich"]


def test_dominant_audit_matches_pointwise_dominance(rng):
    order = q_order(0, "moebius")
    samples = random_elements("moebius", rng, 30)
    assert dominant_audit(tau("moebius"), order, circle_dominants(order), samples).passed


def test_sandwiched_q_order_constant():
    assert sandwiched_q_order(0).sandwich.constant == 1
    assert sandwiched_q_order(2, "moebius").sandwich.constant == 3
    assert sandwiched_q_order(Fraction(1, 2)).sandwich.constant == 2


def test_reconstruction_bounds_hold_for_translations():
    g, h = PLMap.translation(Fraction(1, 2)), PLMap.translation(Fraction(3, 4))
    report = reconstruct_ratio_check(sandwiched_q_order(0), tau("pl"), g, h, 12)
    assert report.passed
    assert len(report.rows) == 12
    assert report.rows[-1][5] == "3/2"


def test_reconstruction_bounds_hold_for_moebius_pair():
    g = MoebiusLift.deck(1)
    h = MoebiusLift((2, 1, 1, 1), 3)
    report = reconstruct_ratio_check(sandwiched_q_order(0, "moebius"), tau("moebius"), g, h, 8)
    assert report.passed


def test_reconstruction_needs_a_constant():
    with pytest.raises(ValueError):
        reconstruct_ratio_check(integer_order(), integer_identity(), 1, 2, 3)
    report = reconstruct_ratio_check(integer_order(), integer_identity(), 2, 3, 10, constant=1)
    assert report.passed


def test_defect_and_homogeneity_audits(rng):
    samples = random_elements("pl", rng, 20)
    f = tau("pl", Fraction(1, 10**6))
    defect = defect_audit(f, samples, rng, 60)
    assert defect.passed
    assert defect.rows[0][1] == "1"
    assert homogeneity_audit(f, samples[:5]).passed
    assert conjugation_audit(f, samples, rng, 30).passed


@pytest.mark.parametrize("N", [10, 100, 1000])
def test_rx_homogenization_narrows_as_one_over_n(N):
    f = rx_quasimorphism(circle_instance("pl"), 0)
    value = homogenize(f, PLMap.translation(Fraction(3, 2)), N)
    assert value.contains(Fraction(3, 2))
    assert value.width <= Fraction(1, N)


def test_rx_homogenization_contains_tau_of_a_non_translation(contracting_map):
    f = rx_quasimorphism(circle_instance("pl"), Fraction(1, 3))
    g = contracting_map.compose(PLMap.translation(1))
    assert homogenize(f, g, 50).contains(1)
    assert homogenize(f, contracting_map, 50).contains(0)


def test_rx_defect_audit(rng):
    f = rx_quasimorphism(circle_instance("pl"), Fraction(1, 5))
    assert f.defect == 3
    assert not f.homogeneous
    assert f(PLMap.translation(Fraction(1, 2))) == Interval.exact(1)
    samples = random_elements("pl", rng, 20)
    report = defect_audit(f, samples, rng, 500)
    assert report.passed
    assert Fraction(report.rows[0][2]) <= 2


def test_sandwich_chain(rng, contracting_map, quarter_turn):
    samples = random_elements("pl", rng, 30) + random_elements("moebius", rng, 30)
    report = sandwich_chain_audit(samples + [contracting_map, contracting_map.inverse(), quarter_turn])
    assert report.passed
    rows = report.rows[-3:]
    assert rows[0][1:] == ["False", "False", "True"]
    assert rows[1][1:] == ["False", "True", "True"]
    assert rows[2][1:] == ["False", "True", "True"]
