"""
Free group words
Lowercase letters a, b, c, ... are generators; uppercase letters are their inverses
"""
from __future__ import annotations

import random
import string
from dataclasses import dataclass
from typing import Dict, List, Mapping

from .errors import InputError


def invert_letter(letter: str) -> str:
    if letter.lower() == letter:
        return letter.upper()
    return letter.lower()


def reduce_letters(letters: str) -> str:
    reduced: List[str] = []
    for letter in letters:
        if reduced and reduced[-1] == invert_letter(letter):
            reduced.pop()
        else:
            reduced.append(letter)
    return "".join(reduced)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word; construction reduces the given letters."""

    letters: str = ""

    def __post_init__(self):
        cleaned = "".join(self.letters.split())
        if any(ch not in string.ascii_letters for ch in cleaned):
            raise InputError(f"words use ASCII letters only: {self.letters!r}")
        object.__setattr__(self, "letters", reduce_letters(cleaned))

    @property
    def rank(self) -> int:
        """Smallest free rank whose generators cover this word."""
        if not self.letters:
            return 0
        return max(string.ascii_lowercase.index(ch.lower()) for ch in self.letters) + 1

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord("".join(invert_letter(ch) for ch in reversed(self.letters)))

    def power(self, k: int) -> "FreeWord":
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.letters * abs(k))

    def exponent_sums(self, rank: int) -> List[int]:
        sums = [0] * rank
        for ch in self.letters:
            index = string.ascii_lowercase.index(ch.lower())
            if index >= rank:
                raise InputError(f"letter {ch!r} exceeds rank {rank}")
            sums[index] += 1 if ch.islower() else -1
        return sums

    def substitute(self, images: Mapping[str, "FreeWord"]) -> "FreeWord":
        """Apply the endomorphism sending each generator to its image."""
        pieces = []
        for ch in self.letters:
            image = images[ch.lower()]
            pieces.append(image.letters if ch.islower() else image.inverse().letters)
        return FreeWord("".join(pieces))

    def __str__(self) -> str:
        return self.letters or "e"


def commutator(w1: FreeWord, w2: FreeWord) -> FreeWord:
    """[w1, w2] = w1 w2 w1^-1 w2^-1."""
    return w1 * w2 * w1.inverse() * w2.inverse()


def in_commutator_subgroup(w: FreeWord) -> bool:
    """Membership in [F, F]: every generator exponent-sum vanishes."""
    return not any(w.exponent_sums(max(w.rank, 1)))


def generators(rank: int) -> List[str]:
    if not 1 <= rank <= 26:
        raise InputError(f"rank must be between 1 and 26, got {rank}")
    return list(string.ascii_lowercase[:rank])


def random_reduced_word(rank: int, length: int, rng: random.Random) -> FreeWord:
    """Uniform reduced word of the given length."""
    alphabet = generators(rank) + [g.upper() for g in generators(rank)]
    letters: List[str] = []
    while len(letters) < length:
        letter = alphabet[rng.randrange(len(alphabet))]
        if letters and letters[-1] == invert_letter(letter):
            continue
        letters.append(letter)
    return FreeWord("".join(letters))


def random_commutator_word(rank: int, length: int, rng: random.Random, attempts: int = 400) -> FreeWord:
    """
    Reduced word in [F, F], rejection-sampled among uniform reduced words.

    Falls back to the commutator of two random words when no sample of the
    requested length lands in the commutator subgroup.
    """
    for _ in range(attempts):
        w = random_reduced_word(rank, length, rng)
        if w.letters and in_commutator_subgroup(w):
            return w
    half = max(1, length // 4)
    while True:
        w = commutator(random_reduced_word(rank, half, rng), random_reduced_word(rank, half, rng))
        if w.letters:
            return w


def parse_automorphism(text: str) -> Dict[str, FreeWord]:
    """Parse 'a->ab, b->b' into generator images."""
    images: Dict[str, FreeWord] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        try:
            source, target = (side.strip() for side in part.split("->"))
        except ValueError:
            raise InputError(f"automorphism entries look like 'a->ab', got {part!r}")
        if len(source) != 1 or not source.islower():
            raise InputError(f"automorphism source must be a generator, got {source!r}")
        images[source] = FreeWord(target)
    return images
