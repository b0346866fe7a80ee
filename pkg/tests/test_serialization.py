from fractions import Fraction

import numpy as np
import pytest

from ordlift.circle import MoebiusLift, PLMap
from ordlift.errors import InputError
from ordlift.lagrangian import random_point
from ordlift.serialization import (
    format_element, format_rep, load_config, parse_config, parse_element, parse_lagrangian, parse_rational,
    parse_rep, read_elements, read_words, split_pair,
)
from ordlift.surface import modular_torus, verify_certificate


def test_parse_elements():
    g = parse_element("pl: [(0, 0), (1/2, 1/4)]")
    assert isinstance(g, PLMap)
    assert g(Fraction(1, 2)) == Fraction(1, 4)
    lift = parse_element("moebius: [[1,1],[1,2]] winding 3")
    assert lift == MoebiusLift((1, 1, 1, 2), 3)
    assert parse_element("moebius: [[0,-1],[1,0]]").winding == 0


def test_format_parses_back(quarter_turn, contracting_map):
    for g in (quarter_turn, contracting_map, MoebiusLift.deck(-2)):
        assert parse_element(format_element(g)) == g


@pytest.mark.parametrize("text", [
    "pl: (0, 0)",
    "pl: [(0, 0) junk]",
    "moebius: [[1,1],[1,2]] winding x",
    "moebius: [[2,0],[0,2]]",
    "affine: x + 1",
])
def test_malformed_elements(text):
    with pytest.raises(InputError):
        parse_element(text)


def test_parse_rational():
    assert parse_rational(" 3/4 ") == Fraction(3, 4)
    with pytest.raises(InputError):
        parse_rational("1/0")


def test_rep_file_round_trip():
    modular = modular_torus()
    parsed = parse_rep(format_rep(modular))
    assert parsed == modular
    assert verify_certificate(parsed)


def test_rep_file_errors():
    with pytest.raises(InputError):
        parse_rep("")
    with pytest.raises(InputError):
        parse_rep("surface genus=1 boundary=1\na = moebius: [[1,1],[1,2]]\n")
    with pytest.raises(InputError):
        parse_rep("surface genus=1 boundary=1\na = pl: [(0, 0)]\nb = moebius: [[1,1],[1,2]]\n")
    with pytest.raises(InputError):
        parse_rep("torus\n")


def test_parse_config():
    values = parse_config("# comment\nseed = 7\n\npower-cap=64  # trailing\n")
    assert values == {"seed": "7", "power_cap": "64"}
    with pytest.raises(InputError):
        parse_config("seed 7\n")


def test_files(tmp_path):
    elements = tmp_path / "elements.txt"
    elements.write_text("# pair\npl: [(0, 1/2)]\nmoebius: [[1,0],[0,1]] winding 1\n")
    g, h = split_pair(read_elements(elements))
    assert g == PLMap.translation(Fraction(1, 2))
    assert h == MoebiusLift.deck(1)
    words = tmp_path / "words.txt"
    words.write_text("abAB\nbaBA # inverse\n")
    assert [str(w) for w in read_words(words)] == ["abAB", "baBA"]
    with pytest.raises(InputError):
        load_config(tmp_path / "missing.cfg")
    with pytest.raises(InputError):
        split_pair([g])


def test_parse_lagrangian():
    point = parse_lagrangian("lagrangian: [1+0j 0j; 0j 1+0j] theta 0")
    assert point.dimension == 2
    assert point.theta == 0.0
    with pytest.raises(InputError):
        parse_lagrangian("lagrangian: [1+0j 0j; 0j] theta 0")
    with pytest.raises(InputError):
        parse_lagrangian("lagrangian: [2+0j] theta 0")


def test_lagrangian_text_round_trip():
    generator = np.random.default_rng(11)
    for n in (1, 2, 3):
        point = random_point(n, generator)
        parsed = parse_lagrangian(str(point))
        assert np.array_equal(parsed.matrix, point.matrix)
        assert parsed.theta == point.theta


def test_zero_denominators_are_input_errors():
    with pytest.raises(InputError):
        parse_element("pl: [(0, 1/0)]")
    with pytest.raises(InputError):
        parse_element("pl: [(0, 0), (1/0, 1/2)]")
