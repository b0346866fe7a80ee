from fractions import Fraction

import pytest

from ordlift.causal import circle_instance, psi_estimate
from ordlift.circle import (
    MoebiusLift, PLMap, cocycle_audit, conjugate, dominates_pointwise, euler_cocycle, group_op,
    is_dominant_pointwise, orbit_enclosure, pointwise_compare, translation_like, translation_number, translation_sign,
)
from ordlift.errors import InputError, KindMismatchError
from ordlift.intervals import Interval
from ordlift.config import PL_ORBIT_STEPS
from ordlift.models import Comparison
from ordlift.sampling import random_moebius_lift, random_pl_map

MODULAR_A = MoebiusLift((1, 1, 1, 2))


# ---------- PIECEWISE-LINEAR MAPS ----------

def test_pl_validation():
    with pytest.raises(InputError):
        PLMap(((Fraction(1), Fraction(0)),))
    with pytest.raises(InputError):
        PLMap(((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(0))))
    with pytest.raises(InputError):
        PLMap(((Fraction(0), Fraction(0)), (Fraction(1, 2), Fraction(1))))
    with pytest.raises(InputError):
        PLMap(())


def test_pl_evaluation_commutes_with_integer_shifts(contracting_map):
    g = contracting_map
    assert g(Fraction(1, 2)) == Fraction(1, 4)
    assert g(Fraction(3, 4)) == Fraction(5, 8)
    assert g(Fraction(7, 4)) == g(Fraction(3, 4)) + 1
    assert g(Fraction(-1, 4)) == g(Fraction(3, 4)) - 1


def test_pl_group_laws(rng, contracting_map):
    g = contracting_map
    assert g.compose(g.inverse()) == PLMap.identity()
    h = random_pl_map(rng)
    for x in (Fraction(0), Fraction(1, 3), Fraction(5, 7)):
        assert g.compose(h)(x) == g(h(x))
    assert g.power(3) == g.compose(g).compose(g)
    assert g.power(-2) == g.inverse().compose(g.inverse())


def test_collinear_nodes_are_dropped():
    g = PLMap(((Fraction(0), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))))
    assert g == PLMap.translation(Fraction(1, 2))
    assert g.is_translation


def test_pl_translation_number(half_translation, contracting_map):
    assert translation_number(half_translation) == Interval.exact(Fraction(1, 2))
    assert translation_number(contracting_map) == Interval.exact(0)
    assert translation_number(contracting_map.compose(PLMap.translation(2))) == Interval.exact(2)


def test_pl_translation_number_of_conjugate_is_unchanged(rng, half_translation):
    h = random_pl_map(rng)
    assert translation_number(conjugate(half_translation, h)) == Interval.exact(Fraction(1, 2))


# ---------- MOEBIUS LIFTS ----------

def test_moebius_normalization_and_validation():
    assert MoebiusLift((-1, -1, -1, -2)) == MODULAR_A
    with pytest.raises(InputError):
        MoebiusLift((1, 1, 1, 1))


def test_moebius_group_laws(quarter_turn):
    assert MODULAR_A.compose(MODULAR_A.inverse()) == MoebiusLift.identity()
    assert quarter_turn.power(2) == MoebiusLift.deck(1)
    assert quarter_turn.power(4) == MoebiusLift.deck(2)
    assert MoebiusLift.deck(2).compose(MODULAR_A) == MoebiusLift(MODULAR_A.matrix, 2)


def test_moebius_translation_numbers(quarter_turn):
    assert translation_number(MODULAR_A) == Interval.exact(0)
    assert translation_number(MoebiusLift(MODULAR_A.matrix, 2)) == Interval.exact(2)
    assert translation_number(MoebiusLift((1, 0, -1, 1))) == Interval.exact(1)
    assert translation_number(quarter_turn) == Interval.exact(Fraction(1, 2))
    assert translation_number(MoebiusLift.deck(-3)) == Interval.exact(-3)


def test_elliptic_translation_number_is_certified():
    rotation = MoebiusLift((1, -1, 1, 0))
    value = translation_number(rotation)
    assert value.contains(Fraction(1, 3)) or value.contains(Fraction(2, 3))
    assert translation_sign(rotation) == 1


def test_deck_transformation_shifts_points():
    assert MoebiusLift.deck(1).evaluate(Fraction(1, 3)).contains(Fraction(4, 3))
    assert MoebiusLift.deck(1).evaluate(Fraction(1, 4)) == Interval.exact(Fraction(5, 4))


def test_euler_cocycle_range_and_identity(rng):
    triples = [tuple(random_moebius_lift(rng) for _ in range(3)) for _ in range(50)]
    for A, B, _ in triples:
        assert euler_cocycle(A.matrix, B.matrix) in (0, 1)
    assert cocycle_audit(triples).passed


def test_translation_like_rejects_fractional_moebius_shift():
    assert translation_like(MODULAR_A, 2) == MoebiusLift.deck(2)
    with pytest.raises(KindMismatchError):
        translation_like(MODULAR_A, Fraction(1, 2))


def test_group_op_dispatch(half_translation):
    assert group_op("power", half_translation, k=2) == PLMap.translation(1)
    assert group_op("invert", half_translation) == PLMap.translation(Fraction(-1, 2))
    with pytest.raises(KindMismatchError):
        group_op("compose", half_translation, MODULAR_A)
    with pytest.raises(InputError):
        group_op("rotate", half_translation)


# ---------- COMPARISONS ----------

def test_pointwise_compare_translations(half_translation):
    identity = PLMap.identity()
    assert pointwise_compare(identity, half_translation).verdict is Comparison.BELOW
    assert pointwise_compare(half_translation, identity).verdict is Comparison.ABOVE
    assert pointwise_compare(half_translation, half_translation).verdict is Comparison.EQUAL


def test_shifted_comparison_needs_a_margin(half_translation):
    identity = PLMap.identity()
    strict = pointwise_compare(identity, half_translation, Fraction(1, 2))
    assert strict.verdict is Comparison.INCOMPARABLE
    assert strict.witness is not None
    nonstrict = pointwise_compare(identity, half_translation, Fraction(1, 2), strict=False)
    assert nonstrict.verdict is Comparison.BELOW


def test_moebius_comparisons():
    assert pointwise_compare(MoebiusLift.deck(1), MoebiusLift.deck(3), 1).verdict is Comparison.BELOW
    assert pointwise_compare(MoebiusLift.identity(), MoebiusLift.deck(1), Fraction(1, 2)).verdict is Comparison.BELOW
    assert pointwise_compare(MoebiusLift.identity(), MODULAR_A).verdict is Comparison.INCOMPARABLE


def test_compare_rejects_mixed_kinds(half_translation):
    with pytest.raises(KindMismatchError):
        pointwise_compare(half_translation, MODULAR_A)


def test_dominance(half_translation, contracting_map):
    assert is_dominant_pointwise(half_translation).dominant
    verdict = is_dominant_pointwise(contracting_map)
    assert not verdict.dominant
    assert verdict.witness is not None
    holds, _ = dominates_pointwise(contracting_map.inverse(), 0, strict=False)
    assert holds


def test_dominance_agrees_with_tau_on_samples(rng):
    for _ in range(40):
        g = random_pl_map(rng)
        assert is_dominant_pointwise(g).dominant == (translation_sign(g) > 0)
        m = random_moebius_lift(rng)
        assert is_dominant_pointwise(m).dominant == (translation_sign(m) > 0)


# ---------- ORBITS ----------

def _pl(*nodes):
    return PLMap(tuple((Fraction(x), Fraction(y)) for x, y in nodes))


SHEARED = _pl((0, "7/4"), ("1/4", "17/8"), ("1/2", "9/4"), ("3/4", "21/8"))
OFFSET = _pl(("1/4", "3/2"), ("3/4", "17/8"))
# g^3 - 1 has an attracting fixed point at 5/12, off the orbit of 0
PERIOD_THREE = _pl((0, "3/8"), ("1/6", "11/24"), ("1/3", "17/24"), ("1/2", "19/24"), ("2/3", "25/24"),
                   ("5/6", "9/8"))


def test_orbit_enclosure_is_exact_for_short_orbits():
    value = Fraction(0)
    for _ in range(5):
        value = SHEARED(value)
    assert orbit_enclosure(SHEARED, 0, 5) == Interval.exact(value)
    assert orbit_enclosure(SHEARED, Fraction(1, 3), 0) == Interval.exact(Fraction(1, 3))


def test_orbit_enclosure_contains_long_orbits():
    value = Fraction(0)
    for _ in range(300):
        value = SHEARED(value)
    enclosure = orbit_enclosure(SHEARED, 0, 300)
    assert enclosure.contains(value)
    assert enclosure.width <= Fraction(1, 2**60)


@pytest.mark.parametrize("g", [SHEARED, OFFSET])
def test_translation_number_of_irregular_maps(g):
    low, _, high, _ = g.displacement_range()
    value = translation_number(g)
    assert low <= value.lo and value.hi <= high
    assert value.width <= Fraction(1, 10**4)
    assert value.lo.denominator <= PL_ORBIT_STEPS and value.hi.denominator <= PL_ORBIT_STEPS
    assert value.overlaps(psi_estimate(circle_instance("pl"), g, 1000, 0))


def test_rational_translation_number_off_the_orbit_of_zero():
    assert translation_number(PERIOD_THREE) == Interval.exact(Fraction(1, 3))
    assert translation_number(PERIOD_THREE.compose(PLMap.translation(-1))) == Interval.exact(Fraction(-2, 3))


def test_dominance_of_irregular_map_uses_the_exact_sign():
    verdict = is_dominant_pointwise(SHEARED)
    assert verdict.dominant
    assert translation_sign(SHEARED) == 1
