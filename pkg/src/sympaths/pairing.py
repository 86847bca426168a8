"""Non-crossing cancellation pairings induced by kernel membership.

A word lies in the kernel of an induced homomorphism exactly when its
letters match up in image-cancelling, sign-opposite, non-crossing pairs.
Extraction fixes the canonical leftmost-innermost matching produced by the
stack scan; any valid pairing would do for the downstream rewriting, so
pinning one keeps everything deterministic.  Indices are 1-based throughout,
matching the printed ``i-j`` form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import AlphabetMismatch, LengthMismatch, NotInKernel
from .freegroup import FiniteMap, Word


@dataclass(frozen=True)
class Pairing:
    """A claimed matching on word positions 1..word_length.

    Construction does not enforce validity: a Pairing is a claim, and
    validate_pairing is the judge.  Extracted pairings always satisfy the
    perfect/non-crossing/image/sign conditions.
    """

    word_length: int
    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def partner(self) -> dict[int, int]:
        """The involution i -> paired index of i."""
        mapping: dict[int, int] = {}
        for i, j in self.pairs:
            mapping[i] = j
            mapping[j] = i
        return mapping

    def is_perfect(self) -> bool:
        seen: set[int] = set()
        for i, j in self.pairs:
            if not (1 <= i < j <= self.word_length):
                return False
            if i in seen or j in seen:
                return False
            seen.update((i, j))
        return len(seen) == self.word_length

    def is_noncrossing(self) -> bool:
        # crossing means l < i < m < j for pairs (i, j) and (l, m)
        for i, j in self.pairs:
            for l, m in self.pairs:
                if l < i < m < j:
                    return False
        return True


def extract_pairing(w: Word, m: FiniteMap) -> Pairing:
    """Canonical cancellation pairing of ``w`` under ``m``.

    Runs the stack reduction on the letterwise image; every pop pairs the two
    word positions involved.  The input is taken as given, never reduced
    first: callers pair the letters of specific unreduced sequences.
    """
    if w.alphabet != m.domain:
        raise AlphabetMismatch(
            f"word alphabet {list(w.alphabet)} differs from map domain {list(m.domain)}"
        )
    stack: list[tuple[str, int, int]] = []  # (image symbol, exponent, position)
    pairs: list[tuple[int, int]] = []
    for position, letter in enumerate(w.letters, start=1):
        image = m[letter.symbol]
        if stack and stack[-1][0] == image and stack[-1][1] == -letter.exponent:
            _, _, opener = stack.pop()
            pairs.append((opener, position))
        else:
            stack.append((image, letter.exponent, position))
    if stack:
        raise NotInKernel(
            f"word is not in the kernel: {len(stack)} image letters stay uncancelled"
        )
    pairs.sort()
    return Pairing(len(w), tuple(pairs))


def validate_pairing(w: Word, m: FiniteMap, p: Pairing) -> bool:
    """True iff ``p`` is a perfect non-crossing pairing that cancels under ``m``.

    Every pair (i, j) must satisfy m(a_i) = m(a_j) and opposite exponents.
    A word admitting such a pairing is necessarily a kernel member.
    """
    if w.alphabet != m.domain:
        raise AlphabetMismatch(
            f"word alphabet {list(w.alphabet)} differs from map domain {list(m.domain)}"
        )
    if p.word_length != len(w):
        raise LengthMismatch(
            f"pairing claims length {p.word_length}, word has length {len(w)}"
        )
    if not p.is_perfect():
        return False
    if not p.is_noncrossing():
        return False
    letters = w.letters
    for i, j in p.pairs:
        a, b = letters[i - 1], letters[j - 1]
        if m[a.symbol] != m[b.symbol] or a.exponent != -b.exponent:
            return False
    return True
