import dataclasses
from fractions import Fraction

import pytest

from ordlift.causal import (
    causal_dominant_check, circle_instance, instance_audit, iota, psi_estimate, psi_sandwich_audit, psi_tau_audit,
    r_x, random_points, rx_bounds_audit,
)
from ordlift.circle import MoebiusLift, PLMap
from ordlift.errors import InstanceInconsistentError
from ordlift.sampling import random_elements


@pytest.fixture
def circle():
    return circle_instance("pl")


def test_iota_on_the_circle(circle):
    assert iota(circle, Fraction(1, 2), 0) == 1
    assert iota(circle, 0, 0) == 0
    assert iota(circle, Fraction(-3, 2), 0) == -1
    assert iota(circle, 2, Fraction(1, 3)) == 2


def test_misdeclared_spread_is_rejected():
    misdeclared = circle_instance("pl", spread=Fraction(1, 10))
    with pytest.raises(InstanceInconsistentError):
        iota(misdeclared, Fraction(1, 2), 0)


def test_r_x_of_deck_shifts(circle):
    for n in (-3, 0, 4):
        assert r_x(circle, circle.deck_element(n), Fraction(1, 5)) == n
    assert r_x(circle, PLMap.translation(Fraction(1, 2)), 0) == 1


def test_psi_contains_translation_number(circle, half_translation):
    assert psi_estimate(circle, half_translation, 100, 0).contains(Fraction(1, 2))
    with pytest.raises(ValueError):
        psi_estimate(circle, half_translation, 0, 0)


def test_psi_on_moebius_lifts():
    moebius = circle_instance("moebius")
    assert psi_estimate(moebius, MoebiusLift.deck(2), 50, 0).contains(2)
    assert psi_estimate(moebius, MoebiusLift((0, -1, 1, 0)), 200, 0).contains(Fraction(1, 2))


def test_causal_dominance_exact_mode(circle, half_translation, contracting_map):
    assert causal_dominant_check(circle, half_translation, [Fraction(0)]).dominant
    assert not causal_dominant_check(circle, contracting_map, [Fraction(0)]).dominant


def test_causal_dominance_sample_mode(contracting_map):
    sampled = dataclasses.replace(circle_instance("pl"), exact_dominance=None)
    verdict = causal_dominant_check(sampled, contracting_map, [Fraction(0), Fraction(1, 2)])
    assert not verdict.dominant
    assert verdict.witness.point == Fraction(0)
    assert causal_dominant_check(sampled, PLMap.translation(Fraction(1, 8)), [Fraction(1, 3)]).dominant
    with pytest.raises(ValueError):
        causal_dominant_check(sampled, contracting_map, [])


def test_audits_pass_on_piecewise_linear_samples(circle, rng):
    elements = random_elements("pl", rng, 10)
    points = random_points(rng, 10)
    assert rx_bounds_audit(circle, elements, points, rng, 30).passed
    assert psi_tau_audit(circle, elements, 200).passed
    steep = [PLMap.translation(Fraction(rng.randint(41, 64), 8)) for _ in range(5)]
    assert psi_sandwich_audit(circle, elements + steep, 200).passed
    assert instance_audit(circle, points, elements, rng, 30).passed
