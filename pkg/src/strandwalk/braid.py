"""Braid words, their permutations, and the unreduced Burau representation.

Words are read bottom-to-top: the first letter is the lowest crossing of the
diagram.  Stacking a word w2 on top of w1 is the concatenation w1 + w2, and
the matrix of the stack is burau(w2) * burau(w1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BraidSyntaxError, GeneratorOutOfRange, ZeroGenerator
from .linalg import Matrix
from .ring import LaurentPoly


@dataclass(frozen=True)
class BraidWord:
    """Strand count plus signed generator letters (+i for s_i, -i for s_i^-1)."""

    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise GeneratorOutOfRange("a braid needs at least one strand")
        for g in self.letters:
            if g == 0:
                raise ZeroGenerator("0 is not a generator")
            if abs(g) >= self.strands:
                raise GeneratorOutOfRange(
                    f"generator {g} needs at least {abs(g) + 1} strands, have {self.strands}"
                )

    def __len__(self):
        return len(self.letters)

    def concat(self, other):
        """Stack other on top of self (same strand count)."""
        if other.strands != self.strands:
            raise GeneratorOutOfRange("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def as_text(self):
        return " ".join(str(g) for g in self.letters)


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}; images[i-1] = where bottom point i ends on top."""

    n: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{self.n}")

    def __call__(self, i):
        return self.images[i - 1]

    def matrix(self):
        """0/1 matrix over Fraction with entry (pi(i), i) = 1."""
        entries = [Fraction(0)] * (self.n * self.n)
        for i, img in enumerate(self.images):
            entries[(img - 1) * self.n + i] = Fraction(1)
        return Matrix(self.n, self.n, entries)


def parse_braid(text, strands):
    """Whitespace-separated signed integers -> BraidWord; empty is identity."""
    letters = []
    for tok in text.split():
        try:
            g = int(tok)
        except ValueError:
            raise BraidSyntaxError(f"not an integer letter: {tok!r}") from None
        letters.append(g)
    return BraidWord(strands, tuple(letters))


def writhe(b):
    return sum(1 if g > 0 else -1 for g in b.letters)


def permutation(b):
    """Underlying permutation; the sign of each letter is irrelevant."""
    pos2bot = list(range(b.strands + 1))  # pos2bot[p] = bottom point at position p
    for g in b.letters:
        i = abs(g)
        pos2bot[i], pos2bot[i + 1] = pos2bot[i + 1], pos2bot[i]
    images = [0] * b.strands
    for p in range(1, b.strands + 1):
        images[pos2bot[p] - 1] = p
    return Permutation(b.strands, tuple(images))


# generator action on rows i, i+1 (1-based), for left multiplication:
#   s_i     = [[1-t, 1], [t, 0]]        s_i^-1 = [[0, tbar], [1, 1-tbar]]
_ONE_MINUS_T = LaurentPoly({0: 1, 2: -1})
_T = LaurentPoly.t()
_TBAR = LaurentPoly.tbar()
_ONE_MINUS_TBAR = LaurentPoly({0: 1, -2: -1})


def burau_generator(n, g):
    """The n x n unreduced Burau matrix of a single signed generator."""
    return burau(BraidWord(n, (g,)))


def burau(b):
    """Unreduced Burau matrix of a braid word, over LaurentPoly.

    Letters act bottom-to-top, so the result is M(g_k) * ... * M(g_1); each
    generator only rewrites two rows, which keeps long products cheap.
    """
    n = b.strands
    rows = [
        [LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)]
        for i in range(n)
    ]
    for g in b.letters:
        i = abs(g) - 1  # 0-based upper row of the affected pair
        ri, rj = rows[i], rows[i + 1]
        if g > 0:
            rows[i] = [_ONE_MINUS_T * a + c for a, c in zip(ri, rj)]
            rows[i + 1] = [_T * a for a in ri]
        else:
            rows[i] = [_TBAR * c for c in rj]
            rows[i + 1] = [a + _ONE_MINUS_TBAR * c for a, c in zip(ri, rj)]
    return Matrix(n, n, [x for row in rows for x in row])
