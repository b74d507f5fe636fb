"""
Exact arithmetic in the Artin braid group B_d.

Braids are given as words in the Artin generators (letter g > 0 is sigma_g,
g < 0 is its inverse) and compared through the left-greedy Garside normal form

    Delta^k * s_1 * ... * s_l

where each s_j is a simple braid other than 1 and Delta, stored as the
permutation it induces, and each adjacent pair is left-weighted.

Permutation conventions: one-line notation, 1-based, images[i-1] = p(i), and
``p * q`` is composition with q applied first.  A braid word g_1 ... g_k maps
to s_{g_1} * ... * s_{g_k}, so the map to S_d is a homomorphism.  For a simple
element p, i is a right descent iff p(i) > p(i+1) (p = p' sigma_i), and a
left descent iff p^-1(i) > p^-1(i+1) (p = sigma_i p').
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import re
from typing import Iterable, Iterator, Sequence


class BraidError(ValueError):
    """Invalid braid data or incompatible operands."""


class Permutation(tuple):
    """A permutation of {1, ..., n} in one-line notation."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise BraidError(f"not a permutation of 1..{n}: {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return tuple.__new__(cls, range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise BraidError(f"invalid transposition ({a} {b}) in S_{n}")
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return tuple.__new__(cls, images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if not 1 <= a <= n or a in seen:
                    raise BraidError(f"bad cycle {tuple(cycle)} in S_{n}")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return tuple.__new__(cls, images)

    @property
    def size(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    def __call__(self, x: int) -> int:
        return self[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other) != len(self):
            raise BraidError("permutations of different sizes")
        return tuple.__new__(Permutation, [self[j - 1] for j in other])

    def __rmul__(self, other):
        return NotImplemented

    def __add__(self, other):
        return NotImplemented

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, v in enumerate(self, 1):
            inv[v - 1] = i
        return tuple.__new__(Permutation, inv)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self, 1))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self, 1) if v != i)

    def is_transposition(self) -> bool:
        supp = self.support()
        return len(supp) == 2

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(1, len(self) + 1):
            if start in seen or self[start - 1] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self[start - 1]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self[x - 1]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"


# ---------------------------------------------------------------------------
# Braid words


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_d."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.strands, int) or self.strands < 1:
            raise BraidError(f"strand count must be a positive integer, got {self.strands!r}")
        letters = tuple(int(g) for g in self.letters)
        for g in letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise BraidError(f"letter {g} out of range for B_{self.strands}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __pow__(self, n: int) -> BraidWord:
        if n < 0:
            return invert(self) ** (-n)
        return BraidWord(self.strands, self.letters * n)

    def inverse(self) -> BraidWord:
        return invert(self)

    def __str__(self) -> str:
        return render_braid(self)


def _check_same(w1: BraidWord, w2: BraidWord) -> None:
    if w1.strands != w2.strands:
        raise BraidError(f"strand-count mismatch: {w1.strands} vs {w2.strands}")


def multiply(w1: BraidWord, w2: BraidWord) -> BraidWord:
    _check_same(w1, w2)
    return BraidWord(w1.strands, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-g for g in reversed(w.letters)))


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[int] = []
    for g in w.letters:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return BraidWord(w.strands, tuple(out))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if g > 0 else -1 for g in w.letters)


def underlying_permutation(w: BraidWord) -> Permutation:
    """Image of ``w`` under B_d -> S_d, sigma_i -> (i i+1)."""
    # right multiplication by s_i swaps positions i and i+1
    images = list(range(1, w.strands + 1))
    for g in w.letters:
        i = abs(g)
        images[i - 1], images[i] = images[i], images[i - 1]
    return tuple.__new__(Permutation, images)


def delta_word(d: int) -> tuple[int, ...]:
    """Letters of Delta = (s_1 ... s_{d-1})(s_1 ... s_{d-2}) ... (s_1)."""
    return tuple(g for top in range(d - 1, 0, -1) for g in range(1, top + 1))


def delta_power(d: int, k: int) -> BraidWord:
    if d < 2:
        raise BraidError("delta_power needs d >= 2")
    base = BraidWord(d, delta_word(d))
    return base ** k


def band_generator(d: int, s: int, t: int) -> BraidWord:
    """Positive half-twist a_{s,t} exchanging strands s < t."""
    if not 1 <= s < t <= d:
        raise BraidError(f"band generator needs 1 <= s < t <= d, got ({s}, {t}) for d={d}")
    left = tuple(range(t - 1, s, -1))
    return BraidWord(d, left + (s,) + tuple(-g for g in reversed(left)))


def band_conjugator(d: int, s: int, t: int) -> BraidWord:
    """A word c with c * sigma_1 * c^-1 equal to ``band_generator(d, s, t)``."""
    if not 1 <= s < t <= d:
        raise BraidError(f"band generator needs 1 <= s < t <= d, got ({s}, {t}) for d={d}")
    # (s_1 ... s_{d-1}) s_i (...)^-1 = s_{i+1}
    shift = tuple(range(1, d)) * (s - 1)
    return BraidWord(d, tuple(range(t - 1, s, -1)) + shift)


# ---------------------------------------------------------------------------
# Simple elements


def _longest(d: int) -> Permutation:
    return tuple.__new__(Permutation, range(d, 0, -1))


def right_descents(p: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def left_descents(p: Sequence[int]) -> frozenset[int]:
    pos = [0] * (len(p) + 1)
    for i, v in enumerate(p, 1):
        pos[v] = i
    return frozenset(i for i in range(1, len(p)) if pos[i] > pos[i + 1])


def _swap_positions(p: tuple, i: int) -> Permutation:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple.__new__(Permutation, q)


def _swap_values(p: tuple, i: int) -> Permutation:
    return tuple.__new__(Permutation, [i + 1 if v == i else i if v == i + 1 else v for v in p])


@functools.lru_cache(maxsize=None)
def _left_weight(a: Permutation, b: Permutation) -> tuple[Permutation, Permutation]:
    """Make (a, b) left-weighted by moving letters from the front of b onto a."""
    while True:
        ra = right_descents(a)
        extra = left_descents(b) - ra
        if not extra:
            return a, b
        i = min(extra)
        a = _swap_positions(a, i)
        b = _swap_values(b, i)


@functools.lru_cache(maxsize=None)
def _flip(p: Permutation) -> Permutation:
    """Delta * p * Delta^-1 (for simple p): conjugation by w0."""
    d = len(p)
    return tuple.__new__(Permutation, [d + 1 - v for v in reversed(p)])


@functools.lru_cache(maxsize=None)
def _complement(p: Permutation) -> Permutation:
    """The simple element Delta * p^-1."""
    return _longest(len(p)) * p.inverse()


@functools.lru_cache(maxsize=None)
def simple_word(p: Permutation) -> tuple[int, ...]:
    """A positive reduced word for the simple braid p (smallest left descent first)."""
    letters = []
    while True:
        desc = left_descents(p)
        if not desc:
            return tuple(letters)
        i = min(desc)
        letters.append(i)
        p = _swap_values(p, i)


def is_simple_left_weighted(a: Sequence[int], b: Sequence[int]) -> bool:
    return left_descents(b) <= right_descents(a)


# ---------------------------------------------------------------------------
# Normal forms


@dataclasses.dataclass(frozen=True)
class CanonicalForm:
    """Left-greedy normal form Delta^k s_1 ... s_l of an element of B_d.

    Instances compare equal exactly when they represent the same braid, so
    they double as hash keys.  Group operations are available directly on the
    form (``*``, :meth:`inverse`).
    """

    strands: int
    delta_power: int = 0
    simple_factors: tuple[Permutation, ...] = ()

    @classmethod
    def identity(cls, d: int) -> CanonicalForm:
        return cls(d, 0, ())

    @property
    def infimum(self) -> int:
        return self.delta_power

    @property
    def supremum(self) -> int:
        return self.delta_power + len(self.simple_factors)

    @property
    def canonical_length(self) -> int:
        return len(self.simple_factors)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.simple_factors

    def __mul__(self, other: CanonicalForm) -> CanonicalForm:
        if other.strands != self.strands:
            raise BraidError(f"strand-count mismatch: {self.strands} vs {other.strands}")
        acc = _Accumulator(self)
        acc.times_delta(other.delta_power)
        for s in other.simple_factors:
            acc.append(s)
        return acc.result()

    def inverse(self) -> CanonicalForm:
        acc = _Accumulator(CanonicalForm.identity(self.strands))
        for s in reversed(self.simple_factors):
            acc.times_delta(-1)
            acc.append(_complement(s))
        acc.times_delta(-self.delta_power)
        return acc.result()

    def conjugate(self, c: CanonicalForm) -> CanonicalForm:
        """c * self * c^-1."""
        return c * self * c.inverse()

    def letters(self) -> tuple[int, ...]:
        d = self.strands
        if d == 1:
            return ()
        base = delta_word(d)
        if self.delta_power >= 0:
            head = base * self.delta_power
        else:
            head = tuple(-g for g in reversed(base)) * (-self.delta_power)
        return head + tuple(g for s in self.simple_factors for g in simple_word(s))

    def to_word(self) -> BraidWord:
        return BraidWord(self.strands, self.letters())

    def permutation(self) -> Permutation:
        p = Permutation.identity(self.strands)
        if self.delta_power % 2:
            p = _longest(self.strands)
        for s in self.simple_factors:
            p = p * s
        return p

    def __str__(self) -> str:
        parts = [f"d={self.strands}", f"inf={self.delta_power}"]
        parts.append("[" + ", ".join(" ".join(map(str, s)) for s in self.simple_factors) + "]")
        return " ".join(parts)


class _Accumulator:
    """Mutable (k, factors) pair used while building a normal form."""

    __slots__ = ("d", "k", "factors", "delta", "e")

    def __init__(self, start: CanonicalForm):
        self.d = start.strands
        self.k = start.delta_power
        self.factors = list(start.simple_factors)
        self.delta = _longest(self.d)
        self.e = Permutation.identity(self.d)

    def times_delta(self, m: int) -> None:
        if m % 2:
            self.factors = [_flip(s) for s in self.factors]
        self.k += m

    def append(self, x: Permutation) -> None:
        if x == self.e:
            return
        fs = self.factors
        fs.append(x)
        for j in range(len(fs) - 2, -1, -1):
            a, b = _left_weight(fs[j], fs[j + 1])
            if a is fs[j] or a == fs[j]:
                break
            fs[j], fs[j + 1] = a, b
        lead = 0
        while lead < len(fs) and fs[lead] == self.delta:
            lead += 1
        if lead:
            del fs[:lead]
            self.k += lead
        while fs and fs[-1] == self.e:
            fs.pop()

    def result(self) -> CanonicalForm:
        return CanonicalForm(self.d, self.k, tuple(self.factors))


def _generator_simple(d: int, i: int) -> Permutation:
    return Permutation.transposition(d, i, i + 1)


@functools.lru_cache(maxsize=None)
def _letter_data(d: int) -> tuple[list, list]:
    pos = [None] + [_generator_simple(d, i) for i in range(1, d)]
    neg = [None] + [_longest(d) * _generator_simple(d, i) for i in range(1, d)]
    return pos, neg


def normal_form(w: BraidWord) -> CanonicalForm:
    d = w.strands
    acc = _Accumulator(CanonicalForm.identity(d))
    if d == 1:
        return acc.result()
    pos, neg = _letter_data(d)
    for g in w.letters:
        if g > 0:
            acc.append(pos[g])
        else:
            # sigma_i^-1 = Delta^-1 (Delta sigma_i^-1)
            acc.times_delta(-1)
            acc.append(neg[-g])
    return acc.result()


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    _check_same(w1, w2)
    return normal_form(w1) == normal_form(w2)


def generator_form(d: int, g: int) -> CanonicalForm:
    return normal_form(BraidWord(d, (g,)))


def delta_form(d: int, k: int) -> CanonicalForm:
    return CanonicalForm(d, k, ())


# ---------------------------------------------------------------------------
# Bounded enumeration and conjugacy search


@functools.lru_cache(maxsize=None)
def proper_simples(d: int) -> tuple[Permutation, ...]:
    """All simple elements except 1 and Delta, in lexicographic order."""
    e, w0 = Permutation.identity(d), _longest(d)
    return tuple(
        tuple.__new__(Permutation, p)
        for p in itertools.permutations(range(1, d + 1))
        if p != e and p != w0
    )


def bounded_forms(d: int, max_length: int, delta_powers: Iterable[int] = (0,)) -> Iterator[CanonicalForm]:
    """Normal forms with the given infima and canonical length <= max_length."""
    simples = proper_simples(d)
    powers = tuple(delta_powers)
    level: list[tuple[Permutation, ...]] = [()]
    for length in range(max_length + 1):
        for seq in level:
            for k in powers:
                yield CanonicalForm(d, k, seq)
        if length == max_length:
            break
        level = [
            seq + (s,)
            for seq in level
            for s in simples
            if not seq or is_simple_left_weighted(seq[-1], s)
        ]


def find_conjugator(a: CanonicalForm, b: CanonicalForm, max_length: int = 2) -> CanonicalForm | None:
    """Search for c of canonical length <= max_length with c a c^-1 = b.

    Only conjugators with infimum 0 or 1 are tried; Delta^2 is central, so
    that covers every residue of the infimum.
    """
    if a.strands != b.strands:
        raise BraidError("strand-count mismatch")
    for c in bounded_forms(a.strands, max_length, (0, 1)):
        if c * a == b * c:
            return c
    return None


# ---------------------------------------------------------------------------
# Text format:  word := header? int*   header := "d=" int ";"

_HEADER = re.compile(r"\s*d\s*=\s*([+-]?\d+)\s*;")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"d=3; 1 2 -1"``.  Without a header, ``strands`` must be given
    or is inferred as one more than the largest generator index."""
    m = _HEADER.match(text)
    body_start = 0
    if m:
        header_d = int(m.group(1))
        if strands is not None and strands != header_d:
            raise BraidError(f"header d={header_d} contradicts expected {strands} strands")
        strands = header_d
        body_start = m.end()
    letters = []
    for tok in re.finditer(r"\S+", text[body_start:]):
        s = tok.group()
        col = body_start + tok.start() + 1
        if not re.fullmatch(r"[+-]?\d+", s):
            raise BraidError(f"column {col}: unexpected token {s!r}")
        g = int(s)
        if g == 0:
            raise BraidError(f"column {col}: zero is not a generator")
        letters.append(g)
    if strands is None:
        strands = max((abs(g) for g in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


def render_braid(w: BraidWord, header: bool = True) -> str:
    body = " ".join(str(g) for g in w.letters)
    if not header:
        return body
    return f"d={w.strands};" + (" " + body if body else "")
