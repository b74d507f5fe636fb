"""
The Artin action of B_d on the free group F_d = <x_1, ..., x_d>, monodromy
morphisms into S_N, and liftable braids.

Convention: sigma_i acts by

    x_i     -> x_i x_{i+1} x_i^-1
    x_{i+1} -> x_i

fixing the other generators, and (b1 b2)_* = (b1)_* o (b2)_*.  With this
choice the product x_1 ... x_d is fixed by every braid.

A monodromy morphism theta is stored through its values on x_1, ..., x_d, and
permutations multiply as in :mod:`braidmono.braid_core` (right factor first),
so theta(uv) = theta(u) * theta(v).
"""

from __future__ import annotations

import dataclasses
import re
from math import factorial
from typing import Iterable, Sequence

from .braid_core import BraidError, BraidWord, Permutation


class MonodromyError(ValueError):
    """Invalid or incompatible monodromy data."""


@dataclasses.dataclass(frozen=True)
class FreeGroupWord:
    """A freely reduced word in x_1, ..., x_rank (letter -g is x_g^-1)."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        out: list[int] = []
        for g in self.letters:
            g = int(g)
            if g == 0 or abs(g) > self.rank:
                raise MonodromyError(f"letter {g} out of range for F_{self.rank}")
            if out and out[-1] == -g:
                out.pop()
            else:
                out.append(g)
        object.__setattr__(self, "letters", tuple(out))

    @classmethod
    def generator(cls, rank: int, i: int) -> FreeGroupWord:
        return cls(rank, (i,))

    def __mul__(self, other: FreeGroupWord) -> FreeGroupWord:
        if other.rank != self.rank:
            raise MonodromyError("rank mismatch")
        return FreeGroupWord(self.rank, self.letters + other.letters)

    def inverse(self) -> FreeGroupWord:
        return FreeGroupWord(self.rank, tuple(-g for g in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if g > 0 else f"x{-g}^-1" for g in self.letters)


def _substitute(images: Sequence[tuple[int, ...]], letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for g in letters:
        piece = images[g - 1] if g > 0 else tuple(-h for h in reversed(images[-g - 1]))
        for h in piece:
            if out and out[-1] == -h:
                out.pop()
            else:
                out.append(h)
    return tuple(out)


def generator_images(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Reduced words b_*(x_1), ..., b_*(x_d)."""
    d = b.strands
    images = tuple((j,) for j in range(1, d + 1))
    for g in b.letters:
        i = abs(g)
        # b' g: image of x_j is b'_*(g_*(x_j))
        new = list(images)
        if g > 0:
            new[i - 1] = _substitute(images, (i, i + 1, -i))
            new[i] = images[i - 1]
        else:
            new[i - 1] = images[i]
            new[i] = _substitute(images, (-(i + 1), i, i + 1))
        images = tuple(new)
    return images


def artin_action(b: BraidWord, w: FreeGroupWord) -> FreeGroupWord:
    if b.strands != w.rank:
        raise MonodromyError(f"braid on {b.strands} strands cannot act on F_{w.rank}")
    return FreeGroupWord(w.rank, _substitute(generator_images(b), w.letters))


# ---------------------------------------------------------------------------
# Monodromy morphisms


@dataclasses.dataclass(frozen=True)
class MonodromyMorphism:
    """Values of theta on the geometric generators x_1, ..., x_d.

    Images are not required to be transpositions here; use
    :func:`validate_monodromy` to check the geometric conditions.
    """

    degree_N: int
    images: tuple[Permutation, ...]

    def __post_init__(self):
        if self.degree_N < 1:
            raise MonodromyError("degree N must be positive")
        imgs = tuple(p if isinstance(p, Permutation) else Permutation(p) for p in self.images)
        for p in imgs:
            if len(p) != self.degree_N:
                raise MonodromyError(f"image {p.cycle_string()} is not in S_{self.degree_N}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def from_transpositions(cls, N: int, pairs: Iterable[tuple[int, int]]) -> MonodromyMorphism:
        try:
            return cls(N, tuple(Permutation.transposition(N, a, b) for a, b in pairs))
        except BraidError as exc:
            raise MonodromyError(str(exc)) from None

    @property
    def degree_d(self) -> int:
        return len(self.images)

    def evaluate(self, w: FreeGroupWord | Sequence[int]) -> Permutation:
        letters = w.letters if isinstance(w, FreeGroupWord) else w
        p = Permutation.identity(self.degree_N)
        for g in letters:
            p = p * (self.images[g - 1] if g > 0 else self.images[-g - 1].inverse())
        return p

    def product(self) -> Permutation:
        return self.evaluate(range(1, self.degree_d + 1))

    def conjugate_by(self, g: Permutation) -> MonodromyMorphism:
        gi = g.inverse()
        return MonodromyMorphism(self.degree_N, tuple(g * p * gi for p in self.images))

    def same_up_to_conjugation(self, other: MonodromyMorphism) -> bool:
        """Equality up to simultaneous conjugation in S_N."""
        import itertools

        if other.degree_N != self.degree_N or other.degree_d != self.degree_d:
            return False
        if self == other:
            return True
        for g in itertools.permutations(range(1, self.degree_N + 1)):
            if self.conjugate_by(Permutation(g)) == other:
                return True
        return False

    def __str__(self) -> str:
        return render_theta(self)


@dataclasses.dataclass(frozen=True)
class LiftedConfiguration:
    """Base point (puncture set, theta) of the covering of configuration space."""

    theta: MonodromyMorphism

    @property
    def punctures(self) -> int:
        return self.theta.degree_d

    def move(self, b: BraidWord) -> LiftedConfiguration:
        """Endpoint of the lift of b: the base point whose morphism is theta o b_*."""
        return LiftedConfiguration(induced_morphism(self.theta, b))


def _check_dims(theta: MonodromyMorphism, b: BraidWord) -> None:
    if theta.degree_d != b.strands:
        raise MonodromyError(
            f"theta has {theta.degree_d} geometric generators, braid has {b.strands} strands"
        )


def induced_morphism(theta: MonodromyMorphism, b: BraidWord) -> MonodromyMorphism:
    """theta o b_*, computed letter by letter on the tuple of images."""
    _check_dims(theta, b)
    t = list(theta.images)
    for g in b.letters:
        i = abs(g)
        a, c = t[i - 1], t[i]
        if g > 0:
            t[i - 1], t[i] = a * c * a.inverse(), a
        else:
            t[i - 1], t[i] = c, c.inverse() * a * c
    return MonodromyMorphism(theta.degree_N, tuple(t))


def is_liftable(b: BraidWord, theta: MonodromyMorphism, up_to_conjugation: bool = False) -> bool:
    image = induced_morphism(theta, b)
    if up_to_conjugation:
        return image.same_up_to_conjugation(theta)
    return image.images == theta.images


@dataclasses.dataclass(frozen=True)
class ValidationReport:
    all_transpositions: bool
    transitive: bool
    surjective_onto_S_N: bool
    product_is_identity: bool
    d_even: bool

    @property
    def valid(self) -> bool:
        return all(dataclasses.astuple(self))

    def items(self) -> list[tuple[str, bool]]:
        return [(f.name, getattr(self, f.name)) for f in dataclasses.fields(self)] + [("valid", self.valid)]


def _orbits(N: int, perms: Iterable[Permutation]) -> list[set[int]]:
    parent = list(range(N + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, v in enumerate(p, 1):
            parent[find(i)] = find(v)
    groups: dict[int, set[int]] = {}
    for x in range(1, N + 1):
        groups.setdefault(find(x), set()).add(x)
    return list(groups.values())


def validate_monodromy(theta: MonodromyMorphism) -> ValidationReport:
    N = theta.degree_N
    all_t = all(p.is_transposition() for p in theta.images)
    transitive = len(_orbits(N, theta.images)) == 1
    if all_t or N == 1:
        # transpositions generating a transitive group generate all of S_N
        surjective = transitive
    elif not transitive:
        surjective = False
    else:
        from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

        group = PermutationGroup([SymPerm([v - 1 for v in p]) for p in theta.images])
        surjective = group.order() == factorial(N)
    return ValidationReport(
        all_transpositions=all_t,
        transitive=transitive,
        surjective_onto_S_N=surjective,
        product_is_identity=theta.product().is_identity(),
        d_even=theta.degree_d % 2 == 0,
    )


def fiber_genus(d: int, N: int) -> int:
    """Genus of a degree-N cover of the line simply branched at d points."""
    if d % 2:
        raise MonodromyError(f"odd number of branch points d={d}")
    g = (d - 2 * N + 2) // 2
    if g < 0:
        raise MonodromyError(f"negative fiber genus for d={d}, N={N}")
    return g


def disjoint_transpositions(t1: Permutation, t2: Permutation) -> bool:
    if not (t1.is_transposition() and t2.is_transposition()):
        raise MonodromyError("disjointness is only defined for transpositions")
    if len(t1) != len(t2):
        raise MonodromyError("transpositions live in different symmetric groups")
    return not (t1.support() & t2.support())


# ---------------------------------------------------------------------------
# Text format:  theta: N=<int>; (a b) (c d) ...

_THETA = re.compile(r"\s*(?:theta\s*:\s*)?N\s*=\s*(\d+)\s*;(.*)$", re.S)
_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_theta(text: str) -> MonodromyMorphism:
    m = _THETA.match(text)
    if not m:
        raise MonodromyError(f"expected 'theta: N=<int>; (a b) ...', got {text.strip()!r}")
    N = int(m.group(1))
    body = m.group(2)
    images = []
    pos = 0
    for cm in _CYCLE.finditer(body):
        gap = body[pos:cm.start()]
        if gap.strip():
            raise MonodromyError(f"unexpected text {gap.strip()!r} in theta")
        pos = cm.end()
        toks = cm.group(1).split()
        if not all(re.fullmatch(r"\d+", t) for t in toks):
            raise MonodromyError(f"bad cycle ({cm.group(1)})")
        pts = [int(t) for t in toks]
        if len(pts) != 2:
            raise MonodromyError(f"theta images must be transpositions, got ({cm.group(1)})")
        try:
            images.append(Permutation.transposition(N, *pts))
        except BraidError as exc:
            raise MonodromyError(str(exc)) from None
    if body[pos:].strip():
        raise MonodromyError(f"unexpected text {body[pos:].strip()!r} in theta")
    if not images:
        raise MonodromyError("theta needs at least one image")
    return MonodromyMorphism(N, tuple(images))


def render_theta(theta: MonodromyMorphism) -> str:
    return f"theta: N={theta.degree_N}; " + " ".join(p.cycle_string() for p in theta.images)
