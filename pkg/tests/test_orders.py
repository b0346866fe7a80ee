from fractions import Fraction

import pytest

from ordlift.circle import MoebiusLift, PLMap
from ordlift.errors import InputError, NotPositiveError, SearchDivergedError
from ordlift.models import Positivity, ProbeOutcome
from ordlift.orders import (
    archimedean_order, circle_dominants, circle_ops, growth_en, growth_limit, integer_dominants, integer_order,
    is_dominant_probe, order_axiom_audit, perturb_circle, pointwise_order, pullback_dominants, pullback_order, q_order,
    strictly_order_preserving, subadditivity_audit,
)
from ordlift.quasimorphism import integer_identity
from ordlift.sampling import random_elements


def test_integer_growth_demo():
    order = integer_order()
    assert growth_en(order, 2, 3, 1).e_n == 2
    assert growth_en(order, 2, 3, 2).e_n == 3
    record = growth_en(order, 2, 3, 10)
    assert record.e_n == 15
    assert record.ratio == Fraction(3, 2)
    assert any("verified" in line for line in record.provenance)


def test_integer_growth_limit_is_certified():
    order = integer_order().with_sandwich(integer_identity(), 1)
    limit = growth_limit(order, 2, 3, 10)
    assert limit.estimate == Fraction(3, 2)
    assert limit.interval.contains(Fraction(3, 2))
    assert limit.interval.lo == Fraction(27, 20)


def test_growth_with_negative_target():
    assert growth_en(integer_order(), 2, -5, 1).e_n == -2


def test_growth_diverges_for_a_non_dominant_element():
    with pytest.raises(SearchDivergedError):
        growth_en(integer_order(), 0, 3, 1, power_cap=64)


def test_growth_rejects_non_positive_n():
    with pytest.raises(ValueError):
        growth_en(integer_order(), 2, 3, 0)


def test_circle_growth_matches_translation_ratio():
    order = q_order(0, "pl")
    g, h = PLMap.translation(Fraction(1, 2)), PLMap.translation(Fraction(3, 4))
    assert growth_en(order, g, h, 1).e_n == 2
    assert growth_en(order, g, h, 4).e_n == 6


def test_q_order_positivity():
    order = q_order(1, "pl")
    assert order.positivity(PLMap.translation(Fraction(3, 2))) is Positivity.POSITIVE
    assert order.positivity(PLMap.translation(1)) is Positivity.NOT_POSITIVE
    assert order.positivity(PLMap.identity()) is Positivity.IDENTITY
    assert order.leq(PLMap.translation(1), PLMap.translation(3))


def test_moebius_q_order():
    order = q_order(1, "moebius")
    assert order.is_positive(MoebiusLift.deck(2))
    assert not order.is_positive(MoebiusLift.deck(1))


def test_pointwise_order_is_nonstrict(contracting_map):
    order = pointwise_order("pl")
    assert order.is_positive(contracting_map.inverse())
    assert not order.is_positive(contracting_map)


def test_perturbation_variants():
    strict, nonstrict = perturb_circle("strict", 1), perturb_circle("nonstrict", 1)
    assert not strict.is_positive(PLMap.translation(1))
    assert nonstrict.is_positive(PLMap.translation(1))
    assert strict.is_positive(PLMap.translation(Fraction(3, 2)))


def test_fractional_shift_rounds_up(half_translation):
    for variant in ("strict", "nonstrict"):
        order = perturb_circle(variant, Fraction(1, 2))
        assert not order.is_positive(half_translation)
        assert order.is_positive(PLMap.translation(1))
    with pytest.raises(InputError):
        perturb_circle("loose", 0)
    with pytest.raises(ValueError):
        perturb_circle("strict", -1)


def test_unknown_kind():
    with pytest.raises(InputError):
        circle_ops("affine")


def test_order_axioms_hold_on_samples(rng):
    for kind in ("pl", "moebius"):
        samples = random_elements(kind, rng, 25)
        for order in (pointwise_order(kind), q_order(0, kind), q_order(2, kind),
                      perturb_circle("nonstrict", Fraction(1, 2), kind)):
            assert order_axiom_audit(order, samples, rng, 40).passed


def test_dominant_probe(half_translation):
    order = q_order(0, "pl")
    probes = [PLMap.translation(1), PLMap.translation(Fraction(3, 2))]
    result = is_dominant_probe(order, half_translation, probes, 10)
    assert result.outcome is ProbeOutcome.CERTIFIED
    assert result.powers == [2, 3]
    exhausted = is_dominant_probe(order, half_translation, [PLMap.translation(100)], 10)
    assert exhausted.outcome is ProbeOutcome.EXHAUSTED
    assert exhausted.probe_index == 0


def test_dominance_power_search_default_budget(half_translation):
    order = q_order(0, "pl")
    assert is_dominant_probe(order, half_translation, [PLMap.translation(400)]).powers == [800]
    beyond = is_dominant_probe(order, half_translation, [PLMap.translation(600)])
    assert beyond.outcome is ProbeOutcome.EXHAUSTED


def test_dominant_probe_requires_positive_element():
    with pytest.raises(NotPositiveError):
        is_dominant_probe(q_order(0, "pl"), PLMap.translation(-1), [], 5)


def test_dominant_sets(half_translation, contracting_map):
    dom = circle_dominants(pointwise_order("pl"))
    assert dom.contains(half_translation)
    assert not dom.contains(contracting_map.inverse())
    assert integer_dominants().contains(3)
    assert not integer_dominants().contains(0)
    archimedean = archimedean_order(dom)
    assert archimedean.is_positive(half_translation)
    assert not archimedean.is_positive(contracting_map.inverse())


def test_subadditivity_on_integers():
    report = subadditivity_audit(integer_order(), 3, 5, 4)
    assert report.passed
    assert len(report.rows) == 8


def test_pullback_and_preservation():
    doubling = pullback_order(lambda k: 2 * k, integer_order(), integer_order().ops)
    assert doubling.is_positive(1)
    assert not doubling.is_positive(-1)
    assert strictly_order_preserving(lambda k: 2 * k, integer_order(), integer_order(), range(-5, 6)).passed
    collapse = strictly_order_preserving(lambda k: 0, integer_order(), integer_order(), [1, 2])
    assert len(collapse.violations_of("strictness")) == 2


def test_pullback_dominants_along_translation_number_sign():
    dominants = pullback_dominants(lambda k: PLMap.translation(Fraction(k, 2)), circle_dominants(q_order(0)),
                                   integer_order().ops)
    assert dominants.contains(3)
    assert not dominants.contains(-1)
    assert dominants.order.is_positive(3)
    assert not dominants.order.is_positive(-2)
