"""Symmetric-path certificates and the kernel-intersection rewriting engine.

One dimension: a kernel member g factors as g_a g_b^-1 where the rows
(a_i, b_i, delta_i) have f-equal columns and g_b cancels to the empty word.

Two dimensions: a member of both kernels factors as g_a g_b^-1 g_c g_d^-1
where every row (a_i, b_i, c_i, d_i, delta_i) forms a square: f identifies
the horizontal edges (a_i, b_i) and (d_i, c_i), h the vertical edges
(a_i, d_i) and (b_i, c_i).  The rewriting engine below produces the c/d
columns by walking the cancellation pairing of the doubled sequence

    x = a_1^{d_1} .. a_n^{d_n} b_n^{-d_n} .. b_1^{-d_1}

and repairing f-mismatches through square completion.  Indices are 1-based;
``o(i) = 2n+1-i`` is the opposite position and ``p`` the pairing involution.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    AlphabetMismatch,
    InstanceInvalid,
    NotInKernelF,
    NotInKernelH,
    ParseError,
    UnknownGenerator,
)
from .freegroup import (
    Alphabet,
    FiniteMap,
    Letter,
    Word,
    is_kernel_member,
    reduce,
    word_inverse,
    word_product,
)
from .instances import Instance, validate_instance
from .pairing import Pairing, extract_pairing
from .relations import complete_square

Observer = Callable[[dict], None]


def _format_exponent(exponent: int) -> str:
    return "+1" if exponent == 1 else "-1"


def _column_word(alphabet: Alphabet, symbols: tuple[str, ...], signs: tuple[int, ...]) -> Word:
    return Word(alphabet, tuple(Letter(s, d) for s, d in zip(symbols, signs)))


@dataclass(frozen=True)
class PairCertificate:
    """Rows (a_i, b_i, delta_i) witnessing one-kernel membership."""

    rows: tuple[tuple[str, str, int], ...]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(d for _, _, d in self.rows)

    def word_a(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(a for a, _, _ in self.rows), self.signs)

    def word_b(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(b for _, b, _ in self.rows), self.signs)

    def to_text(self) -> str:
        lines = [f"pair n={len(self.rows)}"]
        lines.extend(f"{a} {b} {_format_exponent(d)}" for a, b, d in self.rows)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class QuadCertificate:
    """Rows (a_i, b_i, c_i, d_i, delta_i) witnessing intersection membership."""

    rows: tuple[tuple[str, str, str, str, int], ...]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(d for *_, d in self.rows)

    def word_a(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(r[0] for r in self.rows), self.signs)

    def word_b(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(r[1] for r in self.rows), self.signs)

    def word_c(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(r[2] for r in self.rows), self.signs)

    def word_d(self, alphabet: Alphabet) -> Word:
        return _column_word(alphabet, tuple(r[3] for r in self.rows), self.signs)

    def product_word(self, alphabet: Alphabet) -> Word:
        """The unreduced 4n-letter word g_a g_b^-1 g_c g_d^-1."""
        parts = (
            self.word_a(alphabet).letters
            + word_inverse(self.word_b(alphabet)).letters
            + self.word_c(alphabet).letters
            + word_inverse(self.word_d(alphabet)).letters
        )
        return Word(alphabet, parts)

    def to_text(self) -> str:
        lines = [f"quad n={len(self.rows)}"]
        lines.extend(
            f"{a} {b} {c} {d} {_format_exponent(e)}" for a, b, c, d, e in self.rows
        )
        return "\n".join(lines) + "\n"


_HEADER = re.compile(r"(pair|quad) n=(0|[1-9][0-9]*)")
_SYMBOL = re.compile(r"[A-Za-z0-9_]+")


def parse_certificate(text: str):
    """Parse the certificate text format; returns a Pair- or QuadCertificate."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty certificate text")
    header = _HEADER.fullmatch(lines[0])
    if header is None:
        raise ParseError(f"line 1: bad header {lines[0]!r}, expected `pair n=<n>` or `quad n=<n>`")
    kind, n = header.group(1), int(header.group(2))
    if len(lines) != n + 1:
        raise ParseError(f"header announces {n} rows but {len(lines) - 1} follow")
    width = 3 if kind == "pair" else 5
    rows = []
    for number, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) != width:
            raise ParseError(f"line {number}: expected {width} fields, got {len(fields)}")
        for symbol in fields[:-1]:
            if _SYMBOL.fullmatch(symbol) is None:
                raise ParseError(f"line {number}: bad symbol {symbol!r}")
        if fields[-1] == "+1":
            exponent = 1
        elif fields[-1] == "-1":
            exponent = -1
        else:
            raise ParseError(f"line {number}: bad exponent {fields[-1]!r}, expected +1 or -1")
        rows.append(tuple(fields[:-1]) + (exponent,))
    if kind == "pair":
        return PairCertificate(tuple(rows))
    return QuadCertificate(tuple(rows))


def parse_pair_certificate(text: str) -> PairCertificate:
    cert = parse_certificate(text)
    if not isinstance(cert, PairCertificate):
        raise ParseError("expected a pair certificate, got a quad certificate")
    return cert


def parse_quad_certificate(text: str) -> QuadCertificate:
    cert = parse_certificate(text)
    if not isinstance(cert, QuadCertificate):
        raise ParseError("expected a quad certificate, got a pair certificate")
    return cert


def one_dim_decompose(g: Word, f: FiniteMap) -> PairCertificate:
    """Factor a kernel member as g_a g_b^-1 with f-symmetric columns.

    Works on the reduced word: a_i are its letters and b_k is the letter at
    the smaller index of the cancellation pair containing position k, so g_b
    cancels to the empty word and g_a g_b^-1 reduces back to reduce(g).
    """
    reduced = reduce(g)
    pairing = extract_pairing(reduced, f)
    partner = pairing.partner
    letters = reduced.letters
    rows = tuple(
        (letter.symbol, letters[min(k, partner[k]) - 1].symbol, letter.exponent)
        for k, letter in enumerate(letters, start=1)
    )
    cert = PairCertificate(rows)
    assert verify_pair_certificate(cert, f, g)
    return cert


def verify_pair_certificate(cert: PairCertificate, f: FiniteMap, g: Word) -> bool:
    """True iff all rows are f-equal and g_a g_b^-1 reduces to reduce(g)."""
    if g.alphabet != f.domain:
        raise AlphabetMismatch(
            f"word alphabet {list(g.alphabet)} differs from map domain {list(f.domain)}"
        )
    for a, b, _ in cert.rows:
        if f[a] != f[b]:
            return False
    product = word_product(cert.word_a(f.domain), word_inverse(cert.word_b(f.domain)))
    return product == reduce(g)


def verify_quad_certificate(
    cert: QuadCertificate, f: FiniteMap, h: FiniteMap, g: Word
) -> bool:
    """True iff every row is a full square and the product reduces to reduce(g)."""
    if g.alphabet != f.domain or f.domain != h.domain:
        raise AlphabetMismatch("word, f and h must share one alphabet")
    for a, b, c, d, _ in cert.rows:
        if f[a] != f[b] or f[d] != f[c] or h[a] != h[d] or h[b] != h[c]:
            return False
    return reduce(cert.product_word(f.domain)) == reduce(g)


@dataclass
class RewriteState:
    """Mutable bookkeeping for one rewriting run; never shared across runs.

    All index arrays are 1-based (slot 0 unused).  ``remaining`` is the set
    of indices not yet visited by the loops; ``fixed`` holds indices whose y
    value is final and must not change again.
    """

    n: int
    x: list[Letter | None]
    y: list[str | None]
    sigma: list[int]
    partner: dict[int, int]
    remaining: set[int]
    m: int
    l: int = 0
    fixed: set[int] = field(default_factory=set)

    def opposite(self, i: int) -> int:
        return 2 * self.n + 1 - i

    def role(self, i: int) -> str:
        """Output column fed by position i: d_i on the left half, c_{o(i)} on the right."""
        return f"d{i}" if i <= self.n else f"c{self.opposite(i)}"

    def set_y(self, i: int, value: str) -> None:
        assert i not in self.fixed, f"y_{i} is already fixed"
        self.y[i] = value

    def discard(self, *indices: int) -> None:
        for i in indices:
            assert i in self.remaining, f"index {i} already left the visit set"
            self.remaining.remove(i)

    def fix(self, i: int, observer: Observer | None) -> None:
        assert i not in self.fixed, f"y_{i} fixed twice"
        self.fixed.add(i)
        if observer is not None:
            observer({"kind": "fix", "index": i, "role": self.role(i), "value": self.y[i]})


def make_rewrite_state(x: Word, pairing: Pairing) -> RewriteState:
    """Initial state for a doubled sequence and one of its valid h-pairings.

    y starts at the smaller-index member of each pair and the sign sequence
    is the negated exponent sequence of x, so the word (y_k^{-sigma_k})
    cancels to the empty word from the start.
    """
    length = len(x)
    if length % 2 != 0 or pairing.word_length != length or not pairing.is_perfect():
        raise ValueError("state needs an even-length word with a perfect pairing")
    n = length // 2
    partner = dict(pairing.partner)
    x_slots: list[Letter | None] = [None] + list(x.letters)
    y_slots: list[str | None] = [None] * (length + 1)
    sigma: list[int] = [0] * (length + 1)
    for k in range(1, length + 1):
        y_slots[k] = x_slots[min(k, partner[k])].symbol
        sigma[k] = -x_slots[k].exponent
    return RewriteState(
        n=n,
        x=x_slots,
        y=y_slots,
        sigma=sigma,
        partner=partner,
        remaining=set(range(1, length + 1)),
        m=n,
    )


def test_pair_step(
    state: RewriteState, j: int, f: FiniteMap, h: FiniteMap, observer: Observer | None = None
) -> RewriteState:
    """Make (y_j, y_{o(j)}) f-equal, repairing y_{o(j)} if needed.

    When the pair is not already f-equal, the replacement z completes the
    square along y_j -f- z -h- x_{o(j)}, which keeps (x_{o(j)}, y_{o(j)})
    h-equal.  Mutates and returns the state.
    """
    opposite = state.opposite(j)
    y_j = state.y[j]
    y_opposite = state.y[opposite]
    if f[y_j] == f[y_opposite]:
        if observer is not None:
            observer(
                {
                    "kind": "testpair",
                    "j": j,
                    "o": opposite,
                    "y_j": y_j,
                    "y_o": y_opposite,
                    "kept": True,
                }
            )
        return state
    z = complete_square(y_j, state.x[opposite].symbol, f, h)
    state.set_y(opposite, z)
    assert h[z] == h[state.x[opposite].symbol]
    if observer is not None:
        observer(
            {
                "kind": "testpair",
                "j": j,
                "o": opposite,
                "y_j": y_j,
                "y_o": y_opposite,
                "kept": False,
                "z": z,
            }
        )
    return state


def _copy_value(state: RewriteState, dst: int, src: int, observer: Observer | None) -> None:
    state.set_y(dst, state.y[src])
    if observer is not None:
        observer({"kind": "copy", "dst": dst, "src": src})
    state.fix(dst, observer)


def run_rewrite(
    state: RewriteState, f: FiniteMap, h: FiniteMap, observer: Observer | None = None
) -> RewriteState:
    """Outer/Inner/Switch walk fixing every y exactly once.

    The outer step visits {m, o(m)}, tests the opposite pair at m, and
    forwards both final values along the pairing; the inner loop chases the
    forwarded value until it closes the cycle at o(l) = p(m).  The two
    forwarding copies of the outer step commute and run in ascending target
    order.  Each index leaves the visit set exactly once and no y value
    changes after it is fixed.
    """

    def emit(event: dict) -> None:
        if observer is not None:
            observer(event)

    if state.n == 0:
        emit({"kind": "stop"})
        return state
    while True:
        m = state.m
        opposite_m = state.opposite(m)
        partner_m = state.partner[m]
        state.discard(m, opposite_m)
        emit({"kind": "outer", "m": m, "remaining": frozenset(state.remaining)})
        test_pair_step(state, m, f, h, observer)
        state.fix(m, observer)
        state.fix(opposite_m, observer)
        if partner_m != opposite_m:
            copies = sorted(
                ((state.partner[m], m), (state.partner[opposite_m], opposite_m))
            )
            for dst, src in copies:
                _copy_value(state, dst, src, observer)
            state.l = state.partner[opposite_m]
            while True:
                l = state.l
                opposite_l = state.opposite(l)
                state.discard(l, opposite_l)
                emit({"kind": "inner", "l": l, "remaining": frozenset(state.remaining)})
                if opposite_l == partner_m:
                    # cycle closed; (y_l, y_{o(l)}) is f-equal by construction
                    assert f[state.y[l]] == f[state.y[opposite_l]]
                    emit({"kind": "inner_end", "l": l, "p_m": partner_m})
                    break
                test_pair_step(state, l, f, h, observer)
                state.fix(opposite_l, observer)
                _copy_value(state, state.partner[opposite_l], opposite_l, observer)
                state.l = state.partner[opposite_l]
        if state.remaining:
            state.m = min(state.remaining)
            emit({"kind": "switch", "m": state.m})
        else:
            emit({"kind": "stop"})
            break
    _check_final_state(state, f, h)
    return state


def _check_final_state(state: RewriteState, f: FiniteMap, h: FiniteMap) -> None:
    length = 2 * state.n
    assert not state.remaining
    assert state.fixed == set(range(1, length + 1))
    for k in range(1, length + 1):
        assert state.y[state.partner[k]] == state.y[k]
        assert f[state.y[k]] == f[state.y[state.opposite(k)]]
        assert h[state.y[k]] == h[state.x[k].symbol]
    closing = Word(
        f.domain,
        tuple(Letter(state.y[k], -state.sigma[k]) for k in range(1, length + 1)),
    )
    assert len(reduce(closing)) == 0


def two_dim_decompose(
    g: Word,
    f: FiniteMap,
    h: FiniteMap,
    instance: Instance | None = None,
    observer: Observer | None = None,
) -> QuadCertificate:
    """Certify a member of both kernels as a symmetric path.

    Passing a pre-validated Instance skips re-checking the surjectivity and
    commuting hypotheses; otherwise they are validated here, so square
    completion cannot fail on honest inputs.
    """
    if instance is None:
        instance = validate_instance(f.domain, f.codomain, h.codomain, f, h)
    elif instance.f != f or instance.h != h:
        raise InstanceInvalid("instance token does not match the supplied maps")
    if not is_kernel_member(g, f):
        raise NotInKernelF("word is not in the kernel induced by f")
    if not is_kernel_member(g, h):
        raise NotInKernelH("word is not in the kernel induced by h")
    reduced = reduce(g)
    n = len(reduced)
    if n == 0:
        return QuadCertificate(())
    pair_cert = one_dim_decompose(reduced, f)
    doubled = Word(
        g.alphabet,
        reduced.letters
        + tuple(
            Letter(pair_cert.rows[k - 1][1], -pair_cert.rows[k - 1][2])
            for k in range(n, 0, -1)
        ),
    )
    h_pairing = extract_pairing(doubled, h)
    state = run_rewrite(make_rewrite_state(doubled, h_pairing), f, h, observer)
    rows = tuple(
        (
            pair_cert.rows[k - 1][0],
            pair_cert.rows[k - 1][1],
            state.y[state.opposite(k)],
            state.y[k],
            pair_cert.rows[k - 1][2],
        )
        for k in range(1, n + 1)
    )
    cert = QuadCertificate(rows)
    assert verify_quad_certificate(cert, f, h, g)
    return cert


def cert_inverse(cert: QuadCertificate) -> QuadCertificate:
    """Certificate for the inverse element: rows (a,b,c,d) become (d,c,b,a)."""
    return QuadCertificate(
        tuple((d, c, b, a, e) for a, b, c, d, e in cert.rows)
    )


def cert_conjugate(
    cert: QuadCertificate, x: Letter, alphabet: Alphabet | None = None
) -> QuadCertificate:
    """Certificate for x g x^-1: prepend the degenerate row (x, x, x, x)."""
    if alphabet is not None and x.symbol not in alphabet:
        raise UnknownGenerator(
            f"symbol {x.symbol!r} is not in the alphabet {list(alphabet)}"
        )
    row = (x.symbol, x.symbol, x.symbol, x.symbol, x.exponent)
    return QuadCertificate((row,) + cert.rows)
