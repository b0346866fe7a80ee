import math
from fractions import Fraction

import numpy as np
import pytest

from ordlift.causal import iota
from ordlift.errors import InputError
from ordlift.lagrangian import (
    LagrangianPoint, LagrangianVerdict, lagrangian_instance, lagrangian_leq, oracle_agreement, path_search,
    random_point, rank_one_agreement, sample_pairs,
)


def test_rank_one_points_follow_the_circle_order():
    low, high = LagrangianPoint.from_circle(0), LagrangianPoint.from_circle(Fraction(1, 2))
    assert lagrangian_leq(low, high) is LagrangianVerdict.LEQ
    assert lagrangian_leq(high, low) is LagrangianVerdict.NOT_LEQ
    assert lagrangian_leq(low, low.shifted(1)) is LagrangianVerdict.LEQ
    assert lagrangian_leq(low.shifted(1), low) is LagrangianVerdict.NOT_LEQ


def test_scalar_rotation_in_rank_two():
    base = LagrangianPoint(np.eye(2), 0.0)
    quarter = LagrangianPoint(1j * np.eye(2), math.pi)
    assert lagrangian_leq(base, quarter) is LagrangianVerdict.LEQ
    assert lagrangian_leq(base, quarter.shifted(-1)) is LagrangianVerdict.NOT_LEQ


def test_point_validation():
    with pytest.raises(InputError):
        LagrangianPoint(np.array([[1, 1], [0, 1]]), 0.0)
    with pytest.raises(InputError):
        LagrangianPoint(2 * np.eye(2), 0.0)
    with pytest.raises(InputError):
        LagrangianPoint(np.eye(2), 1.0)
    with pytest.raises(InputError):
        lagrangian_leq(LagrangianPoint(np.eye(1), 0.0), LagrangianPoint(np.eye(2), 0.0))
    with pytest.raises(InputError):
        lagrangian_instance(0)


def test_iota_on_rank_one_cover():
    cover = lagrangian_instance(1)
    assert iota(cover, LagrangianPoint.from_circle(Fraction(1, 2)), LagrangianPoint.from_circle(0)) == 1
    assert cover.deck_element(2) is not None
    assert lagrangian_instance(2).deck_element(1) is None


def test_rank_one_agreement_on_sampled_pairs():
    pairs = sample_pairs(np.random.default_rng(0), 15)
    report = rank_one_agreement(pairs)
    assert report.passed
    assert len(report.rows) == 15


def test_oracle_agreement_reports_every_pair():
    report, rate = oracle_agreement(2, np.random.default_rng(1), 3)
    assert len(report.rows) == 3
    assert 0.0 <= rate <= 1.0


def test_random_points_are_valid():
    generator = np.random.default_rng(2)
    point = random_point(3, generator)
    assert point.dimension == 3
    assert np.allclose(point.matrix, point.matrix.T)


def _diagonal(angles, theta, rotation=0.0):
    c, s = math.cos(rotation), math.sin(rotation)
    frame = np.array([[c, -s], [s, c]])
    return LagrangianPoint(frame @ np.diag(np.exp(1j * np.asarray(angles))) @ frame.T, theta)


def test_path_search_certificates():
    base = LagrangianPoint(np.eye(2), 0.0)
    quarter = LagrangianPoint(1j * np.eye(2), math.pi)
    assert path_search(base, quarter) is LagrangianVerdict.LEQ
    assert path_search(base, base) is LagrangianVerdict.LEQ
    assert path_search(quarter, base) is LagrangianVerdict.NOT_LEQ
    x = _diagonal([0.2, 2.0], 2.2)
    assert path_search(x, _diagonal([2.5, 0.1], 2.6 + 2 * math.pi)) is LagrangianVerdict.LEQ
    assert lagrangian_leq(x, _diagonal([2.5, 0.1], 2.6 + 2 * math.pi)) is LagrangianVerdict.LEQ


def test_path_search_leaves_interleaved_spectra_undecided():
    x = _diagonal([0.2, 2.0], 2.2)
    y = _diagonal([1.0, 3.0], 4.0, rotation=0.3)
    assert path_search(x, y) is LagrangianVerdict.UNDECIDED
    assert lagrangian_leq(x, y) in (LagrangianVerdict.LEQ, LagrangianVerdict.NOT_LEQ)


def test_path_search_does_not_contradict_the_spectral_criterion():
    report, rate = oracle_agreement(2, np.random.default_rng(3), 10)
    assert report.passed
    assert rate <= 1.0
