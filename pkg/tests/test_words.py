import random

import pytest

from ordlift.errors import InputError
from ordlift.words import (
    FreeWord, commutator, generators, in_commutator_subgroup, parse_automorphism, random_commutator_word,
    random_reduced_word,
)


def test_construction_reduces():
    assert FreeWord("aAbB").letters == ""
    assert FreeWord("ab Ba").letters == "aa"
    assert str(FreeWord("")) == "e"
    assert FreeWord("abAB").rank == 2


def test_inverse_and_power():
    w = FreeWord("abA")
    assert w.inverse().letters == "aBA"
    assert (w * w.inverse()).letters == ""
    assert w.power(2).letters == "abbA"
    assert w.power(-1) == w.inverse()


def test_commutator_membership():
    w = commutator(FreeWord("a"), FreeWord("b"))
    assert w.letters == "abAB"
    assert in_commutator_subgroup(w)
    assert not in_commutator_subgroup(FreeWord("aab"))
    assert FreeWord("aabA").exponent_sums(2) == [1, 1]


def test_substitute():
    images = {"a": FreeWord("ab"), "b": FreeWord("b")}
    assert FreeWord("aB").substitute(images).letters == "a"
    assert FreeWord("A").substitute(images).letters == "BA"


def test_parse_automorphism():
    images = parse_automorphism("a->ab, b->b")
    assert images == {"a": FreeWord("ab"), "b": FreeWord("b")}
    with pytest.raises(InputError):
        parse_automorphism("a=ab")
    with pytest.raises(InputError):
        parse_automorphism("ab->a")


def test_invalid_words():
    with pytest.raises(InputError):
        FreeWord("a1b")
    with pytest.raises(InputError):
        FreeWord("c").exponent_sums(2)
    with pytest.raises(InputError):
        generators(0)


def test_random_words_are_reduced_and_seeded():
    w = random_reduced_word(2, 12, random.Random(3))
    assert len(w) == 12
    assert w == random_reduced_word(2, 12, random.Random(3))


def test_random_commutator_word():
    for seed in range(5):
        w = random_commutator_word(2, 8, random.Random(seed))
        assert w.letters
        assert in_commutator_subgroup(w)


def test_odd_length_falls_back_to_commutators():
    w = random_commutator_word(2, 7, random.Random(1), attempts=10)
    assert in_commutator_subgroup(w)
    assert w.letters
