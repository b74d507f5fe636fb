"""
Braid monodromy factorizations Delta^{2n} = rho_1 ... rho_r and the Hurwitz
move calculus.

Each factor is stored as a conjugator c and an exponent e, standing for
c sigma_1^e c^-1:

    e = +1   tangency (half-twist)
    e = +2   positive node
    e = -2   negative node
    e = +3   cusp

Positions are 0-based throughout the Python API.
"""

from __future__ import annotations

import dataclasses
import hashlib
import heapq
import itertools
import random
import re
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, NamedTuple, Sequence

from .braid_core import (
    BraidError,
    BraidWord,
    CanonicalForm,
    Permutation,
    bounded_forms,
    delta_form,
    exponent_sum,
    find_conjugator,
    generator_form,
    normal_form,
    parse_braid,
    render_braid,
)
from .perm_action import (
    MonodromyError,
    MonodromyMorphism,
    disjoint_transpositions,
    induced_morphism,
    is_liftable,
    parse_theta,
    render_theta,
)

EXPONENTS = (1, 2, -2, 3)
KINDS = {1: "tangency", 2: "positive node", -2: "negative node", 3: "cusp"}

RIGHT = "right"
LEFT = "left"


class FactorizationError(ValueError):
    """Malformed factorization or a rejected operation."""


class InadmissibleError(FactorizationError):
    """Node-pair creation that is incompatible with the covering."""


class Factor:
    """The braid c sigma_1^e c^-1 for a conjugator c and exponent e."""

    __slots__ = ("strands", "exponent", "_word", "_conj", "_braid", "_inv", "_pending")

    def __init__(self, conjugator: BraidWord, exponent: int):
        if exponent not in EXPONENTS:
            raise FactorizationError(f"exponent must be one of {EXPONENTS}, got {exponent}")
        if conjugator.strands < 2:
            raise FactorizationError("factors need at least 2 strands")
        self.strands = conjugator.strands
        self.exponent = exponent
        self._word = conjugator
        self._conj = None
        self._braid = None
        self._inv = None
        self._pending = None

    @classmethod
    def _from_forms(cls, conj: CanonicalForm | None, exponent: int, braid: CanonicalForm | None = None) -> Factor:
        f = cls.__new__(cls)
        f.strands = braid.strands if conj is None else conj.strands
        f.exponent = exponent
        f._word = None
        f._conj = conj
        f._braid = braid
        f._inv = None
        f._pending = None
        return f

    @classmethod
    def _conjugate_of(cls, f: Factor, by: CanonicalForm, by_inv: CanonicalForm) -> Factor:
        """by * f * by^-1; the conjugator by * c is only formed when asked for."""
        g = cls._from_forms(None, f.exponent, by * f.braid * by_inv)
        g._pending = (by, f)
        return g

    def __reduce__(self):
        return (_restore_factor, (self.exponent, self._word, self.conjugator_form, self.braid))

    @property
    def conjugator(self) -> BraidWord:
        if self._word is None:
            self._word = self.conjugator_form.to_word()
        return self._word

    @property
    def conjugator_form(self) -> CanonicalForm:
        if self._conj is None:
            if self._pending is not None:
                chain = []
                f = self
                while f._conj is None and f._pending is not None:
                    chain.append(f)
                    f = f._pending[1]
                base = f.conjugator_form
                for g in reversed(chain):
                    base = g._pending[0] * base
                    g._conj = base
                    g._pending = None
            else:
                self._conj = normal_form(self._word)
        return self._conj

    @property
    def braid(self) -> CanonicalForm:
        """Normal form of the realized braid."""
        if self._braid is None:
            c = self.conjugator_form
            core = generator_form(self.strands, 1 if self.exponent > 0 else -1)
            power = CanonicalForm.identity(self.strands)
            for _ in range(abs(self.exponent)):
                power = power * core
            self._braid = c * power * c.inverse()
        return self._braid

    def inverse_braid(self) -> CanonicalForm:
        if self._inv is None:
            self._inv = self.braid.inverse()
        return self._inv

    @property
    def kind(self) -> str:
        return KINDS[self.exponent]

    def word(self) -> BraidWord:
        c = self.conjugator
        core = (1,) * self.exponent if self.exponent > 0 else (-1,) * -self.exponent
        return BraidWord(self.strands, c.letters + core + c.inverse().letters)

    def permutation(self) -> Permutation:
        return self.braid.permutation()

    def __eq__(self, other):
        if not isinstance(other, Factor):
            return NotImplemented
        return self.exponent == other.exponent and self.braid == other.braid

    def __hash__(self):
        return hash((self.exponent, self.braid))

    def __repr__(self):
        return f"Factor(conj={render_braid(self.conjugator, header=False)!r}, e={self.exponent:+d})"


def _restore_factor(exponent, word, conj, braid):
    f = Factor._from_forms(conj, exponent, braid)
    f._word = word
    return f


class Profile(NamedTuple):
    tau: int
    nu_pos: int
    nu_neg: int
    kappa: int

    def __add__(self, other):
        return Profile(*(a + b for a, b in zip(self, other)))

    @property
    def nu(self) -> int:
        return self.nu_pos - self.nu_neg


@dataclasses.dataclass(frozen=True)
class Factorization:
    strands: int
    half_turns: int
    factors: tuple[Factor, ...]
    theta: MonodromyMorphism | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        if self.half_turns < 1:
            raise FactorizationError("half_turns must be >= 1")
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.strands != self.strands:
                raise FactorizationError(
                    f"factor on {f.strands} strands in a factorization on {self.strands}"
                )

    def __len__(self) -> int:
        return len(self.factors)

    def with_factors(self, factors: Iterable[Factor], half_turns: int | None = None) -> Factorization:
        return Factorization(
            self.strands,
            self.half_turns if half_turns is None else half_turns,
            tuple(factors),
            self.theta,
        )


def make_factorization(d: int, n: int, factors: Iterable[tuple[Sequence[int] | BraidWord, int]]) -> Factorization:
    """Convenience constructor from (conjugator letters, exponent) pairs."""
    out = []
    for conj, e in factors:
        if not isinstance(conj, BraidWord):
            conj = BraidWord(d, tuple(conj))
        out.append(Factor(conj, e))
    return Factorization(d, n, tuple(out))


# ---------------------------------------------------------------------------
# Products and profiles


def product_form(F: Factorization) -> CanonicalForm:
    acc = CanonicalForm.identity(F.strands)
    for f in F.factors:
        acc = acc * f.braid
    return acc


def evaluate(F: Factorization) -> BraidWord:
    letters: tuple[int, ...] = ()
    for f in F.factors:
        letters += f.word().letters
    return BraidWord(F.strands, letters)


def verify_target(F: Factorization) -> bool:
    return product_form(F) == delta_form(F.strands, 2 * F.half_turns)


def profile(F: Factorization) -> Profile:
    counts = {e: 0 for e in EXPONENTS}
    for f in F.factors:
        counts[f.exponent] += 1
    return Profile(counts[1], counts[2], counts[-2], counts[3])


def exponent_audit(F: Factorization) -> bool:
    """tau + 2 nu_+ - 2 nu_- + 3 kappa == n d (d-1)."""
    p = profile(F)
    d = F.strands
    return p.tau + 2 * p.nu_pos - 2 * p.nu_neg + 3 * p.kappa == F.half_turns * d * (d - 1)


# ---------------------------------------------------------------------------
# Moves


def _conjugated(f: Factor, by: CanonicalForm, by_inv: CanonicalForm | None = None) -> Factor:
    """The factor by * f * by^-1."""
    if by_inv is None:
        by_inv = by.inverse()
    return Factor._conjugate_of(f, by, by_inv)


def hurwitz_move(F: Factorization, i: int, direction: str = RIGHT) -> Factorization:
    """Right: (a, b) -> (a b a^-1, a).  Left: (a, b) -> (b, b^-1 a b)."""
    r = len(F.factors)
    if not 0 <= i < r - 1:
        raise FactorizationError(f"move position {i} out of range for {r} factors")
    fs = list(F.factors)
    a, b = fs[i], fs[i + 1]
    if direction == RIGHT:
        fs[i], fs[i + 1] = _conjugated(b, a.braid, a.inverse_braid()), a
    elif direction == LEFT:
        fs[i], fs[i + 1] = b, _conjugated(a, b.inverse_braid(), b.braid)
    else:
        raise FactorizationError(f"direction must be 'left' or 'right', got {direction!r}")
    return F.with_factors(fs)


def _as_form(b: BraidWord | CanonicalForm, d: int) -> CanonicalForm:
    form = b if isinstance(b, CanonicalForm) else normal_form(b)
    if form.strands != d:
        raise FactorizationError(f"braid on {form.strands} strands, factorization on {d}")
    return form


def global_conjugate(F: Factorization, b: BraidWord | CanonicalForm) -> Factorization:
    """Replace every rho_i by b^-1 rho_i b."""
    bf = _as_form(b, F.strands)
    binv = bf.inverse()
    return F.with_factors(_conjugated(f, binv, bf) for f in F.factors)


def partial_conjugate(F: Factorization, p: int, q: int, b: BraidWord | CanonicalForm) -> Factorization:
    """Conjugate factors p..q (inclusive) by b, provided their product commutes with b."""
    r = len(F.factors)
    if not 0 <= p <= q < r:
        raise FactorizationError(f"block {p}..{q} out of range for {r} factors")
    bf = _as_form(b, F.strands)
    block = CanonicalForm.identity(F.strands)
    for f in F.factors[p:q + 1]:
        block = block * f.braid
    if block * bf != bf * block:
        raise FactorizationError("block product does not commute with the conjugating braid")
    binv = bf.inverse()
    fs = list(F.factors)
    fs[p:q + 1] = [_conjugated(f, binv, bf) for f in fs[p:q + 1]]
    return F.with_factors(fs)


def standard_f0(d: int) -> Factorization:
    """(sigma_1 ... sigma_{d-1})^d with one tangency factor per letter."""
    if d < 2:
        raise FactorizationError("standard factorization needs d >= 2")
    factors = []
    for _ in range(d):
        for i in range(1, d):
            factors.append(Factor(BraidWord(d, _shift_word(d, i)), 1))
    return Factorization(d, 1, tuple(factors))


def _shift_word(d: int, i: int) -> tuple[int, ...]:
    # sigma_i = (s_{i-1} s_i)(s_{i-2} s_{i-1}) ... (s_1 s_2) s_1 (...)^-1
    letters: list[int] = []
    for j in range(i - 1, 0, -1):
        letters += [j, j + 1]
    return tuple(letters)


def stabilize(F: Factorization, n: int) -> Factorization:
    """F followed by n copies of the standard factorization."""
    if n < 0:
        raise FactorizationError("stabilization count must be >= 0")
    f0 = standard_f0(F.strands).factors
    return F.with_factors(F.factors + f0 * n, F.half_turns + n)


def concatenate(F1: Factorization, F2: Factorization, theta: MonodromyMorphism | None = None) -> Factorization:
    """Fiber sum: factors of F1 followed by those of F2."""
    if F1.strands != F2.strands:
        raise FactorizationError(f"strand-count mismatch: {F1.strands} vs {F2.strands}")
    if theta is not None:
        for name, F in (("first", F1), ("second", F2)):
            if not factorization_liftable(F, theta):
                raise FactorizationError(f"{name} factorization is not liftable for the given theta")
    return Factorization(F1.strands, F1.half_turns + F2.half_turns, F1.factors + F2.factors, F1.theta or F2.theta)


def node_branch_images(theta: MonodromyMorphism, conjugator: BraidWord) -> tuple[Permutation, Permutation]:
    """Images under theta of the geometric generators of the two branches
    meeting at the node c sigma_1^2 c^-1."""
    moved = induced_morphism(theta, conjugator)
    return moved.images[0], moved.images[1]


def create_node_pair(
    F: Factorization,
    i: int,
    c1: BraidWord,
    c2: BraidWord | None = None,
    theta: MonodromyMorphism | None = None,
) -> Factorization:
    """Insert the cancelling pair (c1, +2), (c2, -2) before position i."""
    r = len(F.factors)
    if not 0 <= i <= r:
        raise FactorizationError(f"insert position {i} out of range for {r} factors")
    pos = Factor(c1, 2)
    neg = Factor(c1 if c2 is None else c2, -2)
    if pos.strands != F.strands or neg.strands != F.strands:
        raise FactorizationError("conjugator strand count does not match the factorization")
    if not (pos.braid * neg.braid).is_identity():
        raise FactorizationError("node pair does not multiply to the identity")
    if theta is not None:
        t1, t2 = node_branch_images(theta, c1)
        if not (t1.is_transposition() and t2.is_transposition()) or not disjoint_transpositions(t1, t2):
            raise InadmissibleError(
                f"branch images {t1.cycle_string()} and {t2.cycle_string()} are not disjoint transpositions"
            )
    fs = list(F.factors)
    fs[i:i] = [pos, neg]
    return F.with_factors(fs)


def cancel_node_pair(F: Factorization, i: int) -> Factorization:
    r = len(F.factors)
    if not 0 <= i < r - 1:
        raise FactorizationError(f"pair position {i} out of range for {r} factors")
    a, b = F.factors[i], F.factors[i + 1]
    if {a.exponent, b.exponent} != {2, -2} or not (a.braid * b.braid).is_identity():
        raise FactorizationError(f"factors {i}, {i + 1} are not a cancelling node pair")
    return F.with_factors(F.factors[:i] + F.factors[i + 2:])


def factorization_liftable(F: Factorization, theta: MonodromyMorphism) -> bool:
    if theta.degree_d != F.strands:
        raise MonodromyError(f"theta has {theta.degree_d} generators, factorization has {F.strands} strands")
    return all(is_liftable(f.word(), theta) for f in F.factors)


def recognize_factor(w: BraidWord, max_length: int = 2) -> Factor | None:
    """Bounded search for a conjugator-exponent form of a raw factor word."""
    e = exponent_sum(w)
    if e not in EXPONENTS or w.strands < 2:
        return None
    target = normal_form(w)
    core = CanonicalForm.identity(w.strands)
    for _ in range(abs(e)):
        core = core * generator_form(w.strands, 1 if e > 0 else -1)
    c = find_conjugator(core, target, max_length)
    if c is None:
        return None
    return Factor._from_forms(c, e, target)


# ---------------------------------------------------------------------------
# Keys


def _form_text(form: CanonicalForm) -> str:
    return f"{form.delta_power}" + "".join("[" + " ".join(map(str, s)) + "]" for s in form.simple_factors)


def _state_key(F: Factorization) -> tuple:
    return tuple((f.exponent, f.braid.delta_power, f.braid.simple_factors) for f in F.factors)


def canonical_key(F: Factorization) -> str:
    """Deterministic text key; equal iff the factor sequences agree as braids."""
    body = "|".join(f"{f.exponent:+d}:{_form_text(f.braid)}" for f in F.factors)
    return f"d={F.strands};n={F.half_turns};{body}"


def _key_text(d: int, n: int, key: tuple) -> str:
    body = "|".join(f"{e:+d}:{k}" + "".join("[" + " ".join(map(str, s)) + "]" for s in sf) for e, k, sf in key)
    return f"d={d};n={n};{body}"


def factor_complexity(f: Factor) -> int:
    b = f.braid
    return b.canonical_length + abs(b.delta_power)


def state_complexity(F: Factorization) -> int:
    return sum(factor_complexity(f) for f in F.factors)


# ---------------------------------------------------------------------------
# Orbit enumeration


@dataclasses.dataclass(frozen=True)
class OrbitReport:
    visited_count: int
    frontier_exhausted: bool
    representatives: tuple[str, ...]
    limit_hit: str | None
    depth: int
    digest: str
    audit_failures: int = 0
    keys: tuple[str, ...] | None = None


def _neighbours(F: Factorization) -> list[tuple[tuple[int, str], Factorization]]:
    out = []
    for i in range(len(F.factors) - 1):
        for direction in (RIGHT, LEFT):
            out.append(((i, direction), hurwitz_move(F, i, direction)))
    return out


def _expand_chunk(states: list[Factorization]) -> list[list[tuple[tuple, Factorization]]]:
    return [[(_state_key(G), G) for _, G in _neighbours(F)] for F in states]


def _audit_state(F: Factorization, target: CanonicalForm, prof: Profile) -> bool:
    return product_form(F) == target and profile(F) == prof and exponent_audit(F)


def hurwitz_orbit(
    F: Factorization,
    max_states: int = 100_000,
    max_factor_length: int | None = None,
    workers: int = 1,
    audit: bool = False,
    sample: int = 10,
    keep_keys: bool = False,
) -> OrbitReport:
    """Breadth-first closure of F under single Hurwitz moves.

    States are deduplicated by exact factor-sequence equality.  Expansion is
    level-synchronous and merged in a fixed order (position-major, right
    before left), so results do not depend on ``workers``.

    ``max_factor_length`` drops states containing a factor whose Garside
    canonical length exceeds the bound; if that ever happens the orbit is
    reported as not exhausted.
    """
    if max_states < 1 or (max_factor_length is not None and max_factor_length < 1) or workers < 1:
        raise FactorizationError("limits must be positive")
    if not verify_target(F):
        raise FactorizationError("factorization does not multiply to Delta^(2n)")
    d, n = F.strands, F.half_turns
    target = delta_form(d, 2 * n)
    prof = profile(F)
    start = _state_key(F)
    seen = {start}
    order = [start]
    frontier = [F]
    limit_hit = None
    pruned = False
    depth = 0
    failures = 0 if not audit or _audit_state(F, target, prof) else 1

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier and limit_hit is None:
            if pool is None:
                expanded = _expand_chunk(frontier)
            else:
                size = max(1, -(-len(frontier) // (workers * 4)))
                chunks = [frontier[j:j + size] for j in range(0, len(frontier), size)]
                expanded = [row for part in pool.map(_expand_chunk, chunks) for row in part]
            nxt = []
            for row in expanded:
                for key, G in row:
                    if key in seen:
                        continue
                    if max_factor_length is not None and any(
                        f.braid.canonical_length > max_factor_length for f in G.factors
                    ):
                        pruned = True
                        continue
                    if len(seen) >= max_states:
                        limit_hit = "max_states"
                        break
                    seen.add(key)
                    order.append(key)
                    nxt.append(G)
                    if audit and not _audit_state(G, target, prof):
                        failures += 1
                if limit_hit:
                    break
            if nxt:
                depth += 1
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()

    if limit_hit is None and pruned:
        limit_hit = "max_factor_length"
    digest = hashlib.sha256()
    texts = []
    for key in order:
        t = _key_text(d, n, key)
        digest.update(t.encode())
        digest.update(b"\n")
        if keep_keys or len(texts) < sample:
            texts.append(t)
    return OrbitReport(
        visited_count=len(order),
        frontier_exhausted=limit_hit is None,
        representatives=tuple(texts[:sample]),
        limit_hit=limit_hit,
        depth=depth,
        digest=digest.hexdigest(),
        audit_failures=failures,
        keys=tuple(texts) if keep_keys else None,
    )


# ---------------------------------------------------------------------------
# Equivalence search


@dataclasses.dataclass(frozen=True)
class Witness:
    """Global conjugation by ``conjugator`` (if any), then the listed moves."""

    conjugator: BraidWord | None
    moves: tuple[tuple[int, str], ...]


@dataclasses.dataclass(frozen=True)
class EquivalenceResult:
    verdict: str  # "yes", "no" or "unknown"
    reason: str
    witness: Witness | None = None
    visited: int = 0
    limit_hit: str | None = None
    conjugator_bound: int | None = None

    def __bool__(self):
        return self.verdict == "yes"


def replay_witness(F: Factorization, witness: Witness) -> Factorization:
    G = F if witness.conjugator is None else global_conjugate(F, witness.conjugator)
    for i, direction in witness.moves:
        G = hurwitz_move(G, i, direction)
    return G


def _invert_move(move: tuple[int, str]) -> tuple[int, str]:
    i, direction = move
    return i, LEFT if direction == RIGHT else RIGHT


def _liftable_form(c: CanonicalForm, theta: MonodromyMorphism) -> bool:
    return is_liftable(c.to_word(), theta)


def hurwitz_equivalent(
    F1: Factorization,
    F2: Factorization,
    *,
    allow_global_conjugation: bool = False,
    conjugator_bound: int = 2,
    restrict_liftable: MonodromyMorphism | None = None,
    max_states: int = 100_000,
) -> EquivalenceResult:
    """Decide (within limits) whether F2 is reachable from F1.

    The search is a bidirectional best-first search ordered by total Garside
    length of the factors.  'no' is returned only when one side has been
    enumerated completely without meeting the other; with global conjugation
    it is relative to the conjugators of canonical length <= conjugator_bound.
    """
    if F1.strands != F2.strands:
        raise FactorizationError(f"strand-count mismatch: {F1.strands} vs {F2.strands}")
    if F1.half_turns != F2.half_turns:
        raise FactorizationError("factorizations of different powers of Delta^2")
    if max_states < 1 or conjugator_bound < 0:
        raise FactorizationError("limits must be positive")
    if len(F1.factors) != len(F2.factors):
        return EquivalenceResult("no", "length")
    if profile(F1) != profile(F2):
        return EquivalenceResult("no", "profile")
    if product_form(F1) != product_form(F2):
        return EquivalenceResult("no", "product")
    theta = restrict_liftable
    if theta is not None:
        l1, l2 = factorization_liftable(F1, theta), factorization_liftable(F2, theta)
        if not (l1 or l2):
            raise FactorizationError("neither factorization is liftable for the given theta")
        if l1 != l2:
            return EquivalenceResult("no", "liftability")

    d = F1.strands
    bound = conjugator_bound if allow_global_conjugation else None

    # forward side: roots are F1 and (optionally) its bounded global conjugates
    seeds: list[tuple[BraidWord | None, Factorization]] = [(None, F1)]
    if allow_global_conjugation:
        seen_roots = {_state_key(F1)}
        for c in bounded_forms(d, conjugator_bound, (0, 1)):
            if c.is_identity():
                continue
            if theta is not None and not _liftable_form(c, theta):
                continue
            G = global_conjugate(F1, c)
            k = _state_key(G)
            if k not in seen_roots:
                seen_roots.add(k)
                seeds.append((c.to_word(), G))

    counter = itertools.count()
    # parent maps: key -> (parent key | None, move | root conjugator)
    parents = ({}, {})
    heaps: tuple[list, list] = ([], [])
    for conj, G in seeds:
        k = _state_key(G)
        if k in parents[0]:
            continue
        parents[0][k] = (None, conj)
        heapq.heappush(heaps[0], (state_complexity(G), next(counter), k, G))
    k2 = _state_key(F2)
    parents[1][k2] = (None, None)
    heapq.heappush(heaps[1], (state_complexity(F2), next(counter), k2, F2))

    def path_to_root(side: int, key) -> tuple[list, object]:
        moves = []
        while True:
            parent, move = parents[side][key]
            if parent is None:
                return moves[::-1], move
            moves.append(move)
            key = parent

    def witness_for(meet) -> Witness:
        fwd, conj = path_to_root(0, meet)
        bwd, _ = path_to_root(1, meet)
        back = [_invert_move(m) for m in reversed(bwd)]
        return Witness(conj, tuple(fwd + back))

    if k2 in parents[0]:
        return EquivalenceResult("yes", "identical", witness_for(k2), 1 + len(seeds), conjugator_bound=bound)

    visited = len(parents[0]) + len(parents[1])
    side = 0
    while True:
        for s, name in ((0, "first"), (1, "second")):
            if not heaps[s]:
                return EquivalenceResult("no", f"orbit of {name} exhausted", None, visited, conjugator_bound=bound)
        _, _, key, G = heapq.heappop(heaps[side])
        other = 1 - side
        for move, H in _neighbours(G):
            hk = _state_key(H)
            if hk in parents[side]:
                continue
            parents[side][hk] = (key, move)
            visited += 1
            if hk in parents[other]:
                return EquivalenceResult("yes", "meet", witness_for(hk), visited, conjugator_bound=bound)
            heapq.heappush(heaps[side], (state_complexity(H), next(counter), hk, H))
        if visited >= max_states:
            return EquivalenceResult("unknown", "state limit reached", None, visited, "max_states", bound)
        side = other


def scramble(F: Factorization, moves: int, rng: random.Random | int | None = None) -> tuple[Factorization, list[tuple[int, str]]]:
    """Apply ``moves`` uniformly random Hurwitz moves."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    r = len(F.factors)
    if r < 2:
        return F, []
    done = []
    for _ in range(moves):
        m = (rng.randrange(r - 1), rng.choice((RIGHT, LEFT)))
        F = hurwitz_move(F, *m)
        done.append(m)
    return F, done


@dataclasses.dataclass(frozen=True)
class StableSearchResult:
    stabilization: int | None
    result: EquivalenceResult
    tried: tuple[int, ...]


def stable_equivalence_search(
    F1: Factorization, F2: Factorization, max_copies: int = 2, max_states: int = 100_000
) -> StableSearchResult:
    """Look for the least n <= max_copies with F1 F0^n ~ F2 F0^n under Hurwitz moves."""
    tried = []
    last = None
    for n in range(max_copies + 1):
        tried.append(n)
        last = hurwitz_equivalent(stabilize(F1, n), stabilize(F2, n), max_states=max_states)
        if last.verdict == "yes":
            return StableSearchResult(n, last, tuple(tried))
    return StableSearchResult(None, last, tuple(tried))


# ---------------------------------------------------------------------------
# File format

HEADER = "braid-factorization v1"
_FACTOR_LINE = re.compile(r'factor: e=([+-]\d+) conj="([^"]*)"')


def render_factorization(F: Factorization, theta: MonodromyMorphism | None = None) -> str:
    theta = theta if theta is not None else F.theta
    lines = [HEADER, f"strands: {F.strands}", f"half-turns: {F.half_turns}"]
    if theta is not None:
        lines.append(render_theta(theta))
    for f in F.factors:
        lines.append(f'factor: e={f.exponent:+d} conj="{render_braid(f.conjugator, header=False)}"')
    return "\n".join(lines) + "\n"


def parse_factorization(text: str) -> Factorization:
    """Parse the line-oriented factorization format.  Errors carry line numbers."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def fail(lineno: int, msg: str):
        raise FactorizationError(f"line {lineno}: {msg}")

    if not lines or lines[0] != HEADER:
        fail(1, f"expected {HEADER!r}")
    fields: dict[str, int] = {}
    for lineno, key in ((2, "strands"), (3, "half-turns")):
        if len(lines) < lineno:
            fail(lineno, f"missing '{key}:' line")
        m = re.fullmatch(rf"{key}: (\d+)", lines[lineno - 1])
        if not m:
            fail(lineno, f"expected '{key}: <int>', got {lines[lineno - 1]!r}")
        fields[key] = int(m.group(1))
    d, n = fields["strands"], fields["half-turns"]
    if d < 2:
        fail(2, "strands must be >= 2")
    if n < 1:
        fail(3, "half-turns must be >= 1")
    theta = None
    factors = []
    for lineno, line in enumerate(lines[3:], start=4):
        if line.startswith("theta:"):
            if factors or theta is not None:
                fail(lineno, "theta must come once, before the factors")
            try:
                theta = parse_theta(line)
            except MonodromyError as exc:
                fail(lineno, str(exc))
            if theta.degree_d != d:
                fail(lineno, f"theta has {theta.degree_d} images, expected {d}")
            continue
        m = _FACTOR_LINE.fullmatch(line)
        if not m:
            key = line.split(":", 1)[0] if ":" in line else line
            fail(lineno, f"unknown or malformed line {key!r}")
        e = int(m.group(1))
        if m.group(1) not in ("+1", "+2", "-2", "+3"):
            fail(lineno, f"exponent must be +1, +2, -2 or +3, got {m.group(1)}")
        try:
            conj = parse_braid(m.group(2), strands=d)
        except BraidError as exc:
            fail(lineno, f"conjugator: {exc}")
        if re.match(r"\s*d\s*=", m.group(2)):
            fail(lineno, "conjugator must not carry a header")
        factors.append(Factor(conj, e))
    return Factorization(d, n, tuple(factors), theta)
