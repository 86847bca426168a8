"""Kernel pairs as partitions, relation composition, and square completion.

Composition order convention, fixed once for the whole package:
``compose_relations(Eq(f), Eq(h))`` contains (a, b) iff there is a witness c
with (a, c) in Eq(f) and (c, b) in Eq(h).  The literature uses both orders;
everything downstream assumes this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import GroundMismatch, NoCompletion, UnknownGenerator
from .freegroup import Alphabet, FiniteMap, Symbol


@dataclass(frozen=True)
class Partition:
    """Partition of an ordered ground set, blocks in first-occurrence order."""

    ground: Alphabet
    blocks: tuple[tuple[Symbol, ...], ...]
    class_index: Mapping[Symbol, int]

    def same_block(self, a: Symbol, b: Symbol) -> bool:
        return self.class_index[a] == self.class_index[b]

    def __str__(self) -> str:
        return " ".join("{" + ",".join(block) + "}" for block in self.blocks)


@dataclass(frozen=True)
class Relation:
    ground: Alphabet
    pairs: frozenset[tuple[Symbol, Symbol]]


def eq_partition(m: FiniteMap) -> Partition:
    """Partition of the domain of ``m`` by equal image."""
    index: dict[Symbol, int] = {}
    blocks: list[list[Symbol]] = []
    by_image: dict[Symbol, int] = {}
    for symbol in m.domain:
        image = m[symbol]
        if image not in by_image:
            by_image[image] = len(blocks)
            blocks.append([])
        index[symbol] = by_image[image]
        blocks[by_image[image]].append(symbol)
    return Partition(m.domain, tuple(tuple(block) for block in blocks), index)


def kernel_pair_relation(m: FiniteMap) -> Relation:
    """Eq(m) as an explicit pair set on the domain of ``m``."""
    pairs = frozenset(
        (a, b) for a in m.domain for b in m.domain if m[a] == m[b]
    )
    return Relation(m.domain, pairs)


def identity_relation(ground: Alphabet) -> Relation:
    return Relation(tuple(ground), frozenset((a, a) for a in ground))


def compose_relations(r: Relation, s: Relation) -> Relation:
    """(a, b) with a witness c such that (a, c) in r and (c, b) in s."""
    if r.ground != s.ground:
        raise GroundMismatch(
            f"relations live on different ground sets {list(r.ground)} and {list(s.ground)}"
        )
    successors: dict[Symbol, list[Symbol]] = {}
    for c, b in s.pairs:
        successors.setdefault(c, []).append(b)
    pairs = frozenset(
        (a, b) for a, c in r.pairs for b in successors.get(c, ())
    )
    return Relation(r.ground, pairs)


def relations_commute(f: FiniteMap, h: FiniteMap) -> bool:
    """Brute-force test of Eq(f) o Eq(h) = Eq(h) o Eq(f) over the shared domain."""
    return commuting_witness(f, h) is None


def commuting_witness(f: FiniteMap, h: FiniteMap) -> tuple[Symbol, Symbol] | None:
    """A pair separating the two composites, or None when they agree."""
    if f.domain != h.domain:
        raise GroundMismatch(
            f"maps have different domains {list(f.domain)} and {list(h.domain)}"
        )
    rf = kernel_pair_relation(f)
    rh = kernel_pair_relation(h)
    fh = compose_relations(rf, rh).pairs
    hf = compose_relations(rh, rf).pairs
    difference = fh.symmetric_difference(hf)
    if not difference:
        return None
    return min(difference)


def complete_square(y: Symbol, x: Symbol, f: FiniteMap, h: FiniteMap) -> Symbol:
    """Least z in alphabet order with f(y) = f(z) and h(z) = h(x).

    Exhaustive scan of the domain; finiteness makes the search total, and the
    least-z tie-break makes every caller deterministic.  Raises NoCompletion
    when no z exists, which signals a corrupt instance or a pair outside the
    composite relation.
    """
    if f.domain != h.domain:
        raise GroundMismatch(
            f"maps have different domains {list(f.domain)} and {list(h.domain)}"
        )
    for symbol in (y, x):
        if symbol not in f.assignment:
            raise UnknownGenerator(f"symbol {symbol!r} is not in the domain {list(f.domain)}")
    fy = f[y]
    hx = h[x]
    for z in f.domain:
        if f[z] == fy and h[z] == hx:
            assert f[y] == f[z] and h[z] == h[x]
            return z
    raise NoCompletion(
        f"no z completes the square: f(z)={fy!r} and h(z)={hx!r} has no solution"
    )
