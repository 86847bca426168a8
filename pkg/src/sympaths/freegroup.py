"""Reduced words over a finite alphabet and induced homomorphisms.

A word is a finite sequence of letters ``x`` or ``x^-1`` over a declared,
ordered alphabet.  The alphabet order declared here is the global
tie-breaking order used by every downstream module.  All values are
immutable and all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import AlphabetMismatch, ParseError, UnknownGenerator

Symbol = str
Alphabet = tuple[Symbol, ...]


@dataclass(frozen=True)
class Letter:
    """One generator occurrence with exponent +1 or -1."""

    symbol: Symbol
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {self.exponent}")

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.exponent)

    def __str__(self) -> str:
        return self.symbol if self.exponent == 1 else f"{self.symbol}^-1"


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word over an ordered alphabet.

    >>> w = parse_word("a b^-1", ("a", "b"))
    >>> len(w), str(w)
    (2, 'a b^-1')
    """

    alphabet: Alphabet
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        members = self.alphabet_set
        for letter in self.letters:
            if letter.symbol not in members:
                raise UnknownGenerator(
                    f"symbol {letter.symbol!r} is not in the alphabet {list(self.alphabet)}"
                )

    @cached_property
    def alphabet_set(self) -> frozenset[Symbol]:
        return frozenset(self.alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    @staticmethod
    def empty(alphabet: Alphabet) -> "Word":
        return Word(tuple(alphabet), ())


@dataclass(frozen=True)
class FiniteMap:
    """A total function between two ordered finite symbol sets."""

    domain: Alphabet
    codomain: Alphabet
    assignment: Mapping[Symbol, Symbol]

    def __post_init__(self) -> None:
        if set(self.assignment) != set(self.domain):
            raise ValueError("assignment must be total on the domain")
        codomain = set(self.codomain)
        for source, image in self.assignment.items():
            if image not in codomain:
                raise ValueError(f"image {image!r} of {source!r} lies outside the codomain")

    def __getitem__(self, symbol: Symbol) -> Symbol:
        try:
            return self.assignment[symbol]
        except KeyError:
            raise UnknownGenerator(
                f"symbol {symbol!r} is not in the domain {list(self.domain)}"
            ) from None


def reduce(w: Word) -> Word:
    """Normal form of ``w``: no adjacent pair x^d x^-d remains.

    Single left-to-right stack scan; confluence of free reduction makes the
    result independent of any other cancellation order.

    >>> str(reduce(parse_word("a b^-1 b c", ("a", "b", "c"))))
    'a c'
    """
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].symbol == letter.symbol and stack[-1].exponent == -letter.exponent:
            stack.pop()
        else:
            stack.append(letter)
    return Word(w.alphabet, tuple(stack))


def word_product(u: Word, v: Word) -> Word:
    """Reduced juxtaposition of two words over the same alphabet."""
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(
            f"cannot multiply words over {list(u.alphabet)} and {list(v.alphabet)}"
        )
    return reduce(Word(u.alphabet, u.letters + v.letters))


def word_inverse(u: Word) -> Word:
    """Letters reversed, exponents negated; u * u^-1 reduces to the empty word."""
    return Word(u.alphabet, tuple(letter.inverse() for letter in reversed(u.letters)))


def apply_map(w: Word, m: FiniteMap) -> Word:
    """Letterwise image of ``w`` under ``m``, exponents kept, length kept.

    The image is deliberately not reduced: the pairing extractor needs the
    length-preserving image.  Callers reduce when they need the group element.
    """
    if w.alphabet != m.domain:
        raise AlphabetMismatch(
            f"word alphabet {list(w.alphabet)} differs from map domain {list(m.domain)}"
        )
    return Word(m.codomain, tuple(Letter(m[l.symbol], l.exponent) for l in w.letters))


def is_kernel_member(w: Word, m: FiniteMap) -> bool:
    """True iff the image of ``w`` represents the neutral element."""
    return len(reduce(apply_map(w, m))) == 0


_TOKEN = re.compile(r"([A-Za-z0-9_]+)(\^-1)?")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse the whitespace-separated word syntax, e.g. ``a b^-1 c``.

    The empty string denotes the empty word.  Exponents other than ``^-1``
    are rejected; token positions in errors are 1-based.
    """
    letters = []
    for position, token in enumerate(text.split(), start=1):
        match = _TOKEN.fullmatch(token)
        if match is None:
            raise ParseError(f"token {position}: {token!r} is not `symbol` or `symbol^-1`")
        symbol, inverse_mark = match.group(1), match.group(2)
        if symbol not in alphabet:
            raise UnknownGenerator(
                f"token {position}: symbol {symbol!r} is not in the alphabet {list(alphabet)}"
            )
        letters.append(Letter(symbol, -1 if inverse_mark else 1))
    return Word(tuple(alphabet), tuple(letters))


def format_word(w: Word) -> str:
    """Inverse of parse_word; the empty word prints as the empty string."""
    return " ".join(str(letter) for letter in w.letters)
