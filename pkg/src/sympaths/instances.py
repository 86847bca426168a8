"""Validated instances (A, B, C, f, h) and seeded generation of test material.

An Instance packages two surjections with commuting kernel pairs; its
existence is the validation token, since construction runs every check.
Generation builds instances as inflated pullbacks of a cospan, so the
commuting hypothesis holds by construction instead of rejection sampling.

All randomness flows through ``random.Random(seed)`` (Mersenne Twister)
restricted to ``randrange`` calls, so identical GenSpecs reproduce identical
bytes on every platform.  The generator identifier is part of
GEN_FORMAT_VERSION.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from random import Random

from .errors import (
    KernelPairsDoNotCommute,
    NotSurjectiveF,
    NotSurjectiveH,
    ParseError,
    SpecOutOfBounds,
)
from .freegroup import (
    Alphabet,
    FiniteMap,
    Letter,
    Word,
    is_kernel_member,
    reduce,
)
from .relations import commuting_witness

GEN_ALGORITHM = "mt19937"
GEN_FORMAT_VERSION = f"sympaths-gen-1-{GEN_ALGORITHM}"

MAX_SET_SIZE = 64
MAX_INFLATION = 8
MAX_FACTORS = 64
MAX_CONJUGATOR = 64


@dataclass(frozen=True)
class Instance:
    """Two surjections out of A with commuting kernel pairs.

    Only construct through validate_instance (or gen_instance); every
    constructed Instance has passed the surjectivity and commuting checks.
    """

    A: Alphabet
    B: Alphabet
    C: Alphabet
    f: FiniteMap
    h: FiniteMap

    def __post_init__(self) -> None:
        if self.f.domain != self.A or self.f.codomain != self.B:
            raise ValueError("f must be a map A -> B")
        if self.h.domain != self.A or self.h.codomain != self.C:
            raise ValueError("h must be a map A -> C")
        f_images = {self.f[a] for a in self.A}
        missing = [b for b in self.B if b not in f_images]
        if missing:
            raise NotSurjectiveF(f"f is not surjective: {missing} have no preimage")
        h_images = {self.h[a] for a in self.A}
        missing = [c for c in self.C if c not in h_images]
        if missing:
            raise NotSurjectiveH(f"h is not surjective: {missing} have no preimage")
        witness = commuting_witness(self.f, self.h)
        if witness is not None:
            raise KernelPairsDoNotCommute(
                "kernel pairs do not commute: "
                f"{witness} lies in exactly one of Eq(f)*Eq(h) and Eq(h)*Eq(f)"
            )


def validate_instance(A, B, C, f: FiniteMap, h: FiniteMap) -> Instance:
    """Check surjectivity of f and h and the commuting hypothesis."""
    return Instance(tuple(A), tuple(B), tuple(C), f, h)


@dataclass(frozen=True)
class GenSpec:
    """Seeded parameters for instance and element generation."""

    seed: int
    base_size: int = 1
    b_size: int = 2
    c_size: int = 2
    inflation: int = 1
    factors: int = 1
    conjugator_length: int = 0

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise SpecOutOfBounds("seed must be non-negative")
        if not 1 <= self.base_size <= min(self.b_size, self.c_size):
            raise SpecOutOfBounds("need 1 <= base_size <= min(b_size, c_size)")
        if max(self.b_size, self.c_size) > MAX_SET_SIZE:
            raise SpecOutOfBounds(f"b_size and c_size are capped at {MAX_SET_SIZE}")
        if not 1 <= self.inflation <= MAX_INFLATION:
            raise SpecOutOfBounds(f"inflation must lie in 1..{MAX_INFLATION}")
        if not 1 <= self.factors <= MAX_FACTORS:
            raise SpecOutOfBounds(f"factors must lie in 1..{MAX_FACTORS}")
        if not 0 <= self.conjugator_length <= MAX_CONJUGATOR:
            raise SpecOutOfBounds(f"conjugator_length must lie in 0..{MAX_CONJUGATOR}")


def gen_instance(spec: GenSpec) -> Instance:
    """Deterministic instance from a cospan pullback, fibers inflated.

    Draw surjections beta: B -> D and gamma: C -> D, take the pullback cells
    {(b, c) : beta(b) = gamma(c)}, then duplicate each cell 1..inflation
    times.  f and h are the coordinate projections, so the kernel pairs
    commute by construction and both projections are onto.
    """
    rng = Random(spec.seed)
    nd, nb, nc = spec.base_size, spec.b_size, spec.c_size
    # first nd images fixed to hit all of D, the rest drawn
    beta = [i if i < nd else rng.randrange(nd) for i in range(nb)]
    gamma = [j if j < nd else rng.randrange(nd) for j in range(nc)]
    B = tuple(f"b{i}" for i in range(nb))
    C = tuple(f"c{j}" for j in range(nc))
    A: list[str] = []
    f_assignment: dict[str, str] = {}
    h_assignment: dict[str, str] = {}
    for i in range(nb):
        for j in range(nc):
            if beta[i] != gamma[j]:
                continue
            copies = 1 if spec.inflation == 1 else 1 + rng.randrange(spec.inflation)
            for _ in range(copies):
                symbol = f"a{len(A)}"
                A.append(symbol)
                f_assignment[symbol] = B[i]
                h_assignment[symbol] = C[j]
    alphabet = tuple(A)
    f = FiniteMap(alphabet, B, f_assignment)
    h = FiniteMap(alphabet, C, h_assignment)
    return validate_instance(alphabet, B, C, f, h)


def _draw_conjugator(rng: Random, A: Alphabet, length: int) -> list[Letter]:
    return [
        Letter(A[rng.randrange(len(A))], 1 if rng.randrange(2) == 0 else -1)
        for _ in range(length)
    ]


def _conjugated(core: list[Letter], conjugator: list[Letter]) -> list[Letter]:
    back = [letter.inverse() for letter in reversed(conjugator)]
    return conjugator + core + back


def gen_intersection_element(inst: Instance, spec: GenSpec) -> Word:
    """Seeded member of both kernels: a product of conjugated square words.

    Each factor is x (a b^-1 c d^-1) x^-1 for a random square (a, b, c, d)
    of the instance: b shares a's f-class, d shares a's h-class, and c closes
    the square (f(c) = f(d), h(c) = h(b); the commuting hypothesis guarantees
    a candidate).  Factors are randomly inverted for sign variety.
    """
    rng = Random(spec.seed)
    A = inst.A
    f, h = inst.f, inst.h
    letters: list[Letter] = []
    for _ in range(spec.factors):
        a = A[rng.randrange(len(A))]
        b_choices = [s for s in A if f[s] == f[a]]
        b = b_choices[rng.randrange(len(b_choices))]
        d_choices = [s for s in A if h[s] == h[a]]
        d = d_choices[rng.randrange(len(d_choices))]
        c_choices = [s for s in A if f[s] == f[d] and h[s] == h[b]]
        c = c_choices[rng.randrange(len(c_choices))]
        core = [Letter(a, 1), Letter(b, -1), Letter(c, 1), Letter(d, -1)]
        if rng.randrange(2) == 1:
            core = [letter.inverse() for letter in reversed(core)]
        letters.extend(_conjugated(core, _draw_conjugator(rng, A, spec.conjugator_length)))
    word = reduce(Word(A, tuple(letters)))
    assert is_kernel_member(word, f) and is_kernel_member(word, h)
    return word


def gen_kernel_element(inst: Instance, spec: GenSpec, which: str) -> Word:
    """Seeded member of one kernel: a product of conjugated a b^-1 words."""
    if which not in ("f", "h"):
        raise ValueError(f"which must be 'f' or 'h', got {which!r}")
    rng = Random(spec.seed)
    A = inst.A
    m = inst.f if which == "f" else inst.h
    letters: list[Letter] = []
    for _ in range(spec.factors):
        a = A[rng.randrange(len(A))]
        b_choices = [s for s in A if m[s] == m[a]]
        b = b_choices[rng.randrange(len(b_choices))]
        core = [Letter(a, 1), Letter(b, -1)]
        if rng.randrange(2) == 1:
            core = [letter.inverse() for letter in reversed(core)]
        letters.extend(_conjugated(core, _draw_conjugator(rng, A, spec.conjugator_length)))
    word = reduce(Word(A, tuple(letters)))
    assert is_kernel_member(word, m)
    return word


def instance_to_json(inst: Instance) -> str:
    """Canonical one-line document; key order and separators are pinned."""
    document = {
        "A": list(inst.A),
        "B": list(inst.B),
        "C": list(inst.C),
        "f": {a: inst.f[a] for a in inst.A},
        "h": {a: inst.h[a] for a in inst.A},
    }
    return json.dumps(document, separators=(",", ":"))


def instance_from_json(text: str) -> Instance:
    """Parse and validate an instance document.

    Structural problems raise ParseError; failed hypotheses raise the
    specific InstanceInvalid subclasses.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance document is not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise ParseError("instance document must be a JSON object")
    expected = {"A", "B", "C", "f", "h"}
    if set(document) != expected:
        raise ParseError(f"instance document must have exactly the keys {sorted(expected)}")
    sets: dict[str, tuple[str, ...]] = {}
    for key in ("A", "B", "C"):
        value = document[key]
        if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
            raise ParseError(f"key {key!r} must be an array of symbol strings")
        if len(set(value)) != len(value):
            raise ParseError(f"key {key!r} contains duplicate symbols")
        sets[key] = tuple(value)
    maps: dict[str, FiniteMap] = {}
    for key, codomain_key in (("f", "B"), ("h", "C")):
        value = document[key]
        if not isinstance(value, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in value.items()
        ):
            raise ParseError(f"key {key!r} must map symbol strings to symbol strings")
        if set(value) != set(sets["A"]):
            raise ParseError(f"map {key!r} must assign an image to every symbol of A")
        bad = [v for v in value.values() if v not in set(sets[codomain_key])]
        if bad:
            raise ParseError(f"map {key!r} has images outside {codomain_key}: {sorted(set(bad))}")
        maps[key] = FiniteMap(sets["A"], sets[codomain_key], dict(value))
    return validate_instance(sets["A"], sets["B"], sets["C"], maps["f"], maps["h"])


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return instance_from_json(handle.read())


__all__ = [
    "GEN_ALGORITHM",
    "GEN_FORMAT_VERSION",
    "GenSpec",
    "Instance",
    "gen_instance",
    "gen_intersection_element",
    "gen_kernel_element",
    "instance_from_json",
    "instance_to_json",
    "load_instance",
    "validate_instance",
]
