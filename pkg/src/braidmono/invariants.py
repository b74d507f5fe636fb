"""
Numerical invariants of a branched cover X -> CP^2 read off from its branch
curve: degree d, signed node count nu = nu_+ - nu_-, cusp count kappa and
covering degree N.

All arithmetic is exact (integers and Fractions).
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .factorization import (
    Factorization,
    factorization_liftable,
    profile,
    verify_target,
)
from .perm_action import MonodromyMorphism, fiber_genus, validate_monodromy

TAUBES_CAVEAT = (
    "informational only: the sign c1.[omega] <= 0 is expected for non-ruled minimal "
    "manifolds with b2+ >= 2, which cannot be checked from curve data"
)


class IntegralityError(ValueError):
    """An invariant that must be an integer came out fractional."""


class InvariantsError(ValueError):
    """A precondition of the branch-curve dictionary failed."""


@dataclasses.dataclass(frozen=True)
class BranchCurveData:
    degree_d: int
    nodes_pos: int = 0
    nodes_neg: int = 0
    cusps: int = 0
    cover_degree: int | None = None

    def __post_init__(self):
        if self.degree_d < 1:
            raise InvariantsError("degree must be >= 1")
        if min(self.nodes_pos, self.nodes_neg, self.cusps) < 0:
            raise InvariantsError("node and cusp counts must be non-negative")
        if self.cover_degree is not None and self.cover_degree < 2:
            raise InvariantsError("cover degree must be >= 2")

    @property
    def nodes(self) -> int:
        """Signed node count."""
        return self.nodes_pos - self.nodes_neg

    @property
    def genus(self) -> int:
        return curve_genus(self.degree_d, self.cusps, self.nodes)

    @property
    def tangencies(self) -> int:
        d = self.degree_d
        return d * (d - 1) - 2 * self.nodes - 3 * self.cusps


@dataclasses.dataclass(frozen=True)
class ChernSet:
    omega_sq: int
    c1_omega: int
    c1_sq: int
    c2: int
    chi: int
    sigma: int
    genus: int
    tangencies: int
    fiber_genus: int | None

    def items(self) -> list[tuple[str, int | None]]:
        return [(f.name, getattr(self, f.name)) for f in dataclasses.fields(self)]


def curve_genus(d: int, kappa: int, nu: int) -> int:
    return (d - 1) * (d - 2) // 2 - kappa - nu


def _as_int(value: Fraction, name: str, data: BranchCurveData) -> int:
    if value.denominator != 1:
        raise IntegralityError(f"{name} = {value} is not an integer for {data}")
    return value.numerator


def chern_invariants(data: BranchCurveData) -> ChernSet:
    if data.cover_degree is None:
        raise InvariantsError("Chern numbers need the covering degree N")
    d, N, kappa = data.degree_d, data.cover_degree, data.cusps
    g = data.genus
    c1_sq = _as_int(Fraction(g - 1) - Fraction(9, 2) * d + 9 * N, "c1^2", data)
    c2 = 2 * g - 2 + 3 * N - kappa
    sigma = _as_int(Fraction(c1_sq - 2 * c2, 3), "signature", data)
    fg = None
    if d % 2 == 0 and d - 2 * N + 2 >= 0:
        fg = (d - 2 * N + 2) // 2
    return ChernSet(
        omega_sq=N,
        c1_omega=3 * N - d,
        c1_sq=c1_sq,
        c2=c2,
        chi=c2,
        sigma=sigma,
        genus=g,
        tangencies=data.tangencies,
        fiber_genus=fg,
    )


@dataclasses.dataclass(frozen=True)
class GeographyReport:
    d_even: bool
    kappa_mod3: bool
    bmy_satisfied: bool
    bmy_bound: Fraction
    taubes_sign_c1_omega: bool | None
    genus_nonneg: bool
    tau_nonneg: bool
    taubes_caveat: str = TAUBES_CAVEAT

    def flags(self) -> list[tuple[str, bool | None]]:
        return [
            ("d_even", self.d_even),
            ("kappa_mod3", self.kappa_mod3),
            ("bmy_satisfied", self.bmy_satisfied),
            ("taubes_sign_c1_omega", self.taubes_sign_c1_omega),
            ("genus_nonneg", self.genus_nonneg),
            ("tau_nonneg", self.tau_nonneg),
        ]


def bmy_bound(data: BranchCurveData) -> Fraction:
    """Largest cusp count allowed by c1^2 <= 3 c2: 5/3 (g-1) + 3/2 d."""
    return Fraction(5, 3) * (data.genus - 1) + Fraction(3, 2) * data.degree_d


def geography_checks(data: BranchCurveData) -> GeographyReport:
    bound = bmy_bound(data)
    taubes = None
    if data.cover_degree is not None:
        taubes = 3 * data.cover_degree - data.degree_d <= 0
    return GeographyReport(
        d_even=data.degree_d % 2 == 0,
        kappa_mod3=data.cusps % 3 == 0,
        bmy_satisfied=data.cusps <= bound,
        bmy_bound=bound,
        taubes_sign_c1_omega=taubes,
        genus_nonneg=data.genus >= 0,
        tau_nonneg=data.tangencies >= 0,
    )


def moishezon_family(p: int) -> BranchCurveData:
    """Degree, cusps and nodes of Moishezon's non-isotopic curves for p >= 2."""
    if p < 2:
        raise InvariantsError("Moishezon's family starts at p = 2")
    d = 9 * p * (p - 1)
    kappa = 27 * (p - 1) * (4 * p - 5)
    nu = Fraction(27, 2) * (p - 1) * (p - 2) * (3 * p * p + 3 * p - 8)
    if nu.denominator != 1:
        raise IntegralityError(f"node count {nu} is not integral for p={p}")
    return BranchCurveData(d, int(nu), 0, kappa)


def lefschetz_euler_characteristic(data: BranchCurveData) -> int:
    """chi(X) from the Lefschetz pencil: 4 - 4 g_F + tau - N."""
    if data.cover_degree is None:
        raise InvariantsError("needs the covering degree N")
    gF = fiber_genus(data.degree_d, data.cover_degree)
    return 4 - 4 * gF + data.tangencies - data.cover_degree


def cross_check_c2(data: BranchCurveData) -> bool:
    N = data.cover_degree
    if N is None:
        raise InvariantsError("needs the covering degree N")
    c2 = 2 * data.genus - 2 + 3 * N - data.cusps
    return lefschetz_euler_characteristic(data) == c2


def bmy_violations(max_degree: int, max_cover: int | None = None):
    """Numerical candidates (d, nu, kappa, N) breaking the cusp bound with c1^2 >= 0.

    Scans even d, kappa a multiple of 3, nu >= 0 and genus >= 0; yields only
    data passing all integrality constraints.  No claim of realizability.
    """
    for d in range(2, max_degree + 1, 2):
        top_genus = (d - 1) * (d - 2) // 2
        for kappa in range(0, top_genus + 1, 3):
            for nu in range(0, top_genus - kappa + 1):
                base = BranchCurveData(d, nu, 0, kappa)
                if base.tangencies < 0 or kappa <= bmy_bound(base):
                    continue
                for N in range(2, (max_cover or d) + 1):
                    data = dataclasses.replace(base, cover_degree=N)
                    inv = chern_invariants(data)
                    if inv.c1_sq >= 0:
                        yield data, inv


def factorization_invariants(F: Factorization, theta: MonodromyMorphism) -> tuple[BranchCurveData, ChernSet]:
    if F.half_turns != 1:
        raise InvariantsError("the plane-curve dictionary applies to factorizations of Delta^2 only")
    if not verify_target(F):
        raise InvariantsError("factorization does not multiply to Delta^2")
    report = validate_monodromy(theta)
    if not report.valid:
        bad = [name for name, ok in report.items() if not ok]
        raise InvariantsError(f"invalid monodromy morphism: {', '.join(bad)}")
    if theta.degree_d != F.strands:
        raise InvariantsError("theta and factorization disagree on d")
    if not factorization_liftable(F, theta):
        raise InvariantsError("factorization is not liftable for theta")
    prof = profile(F)
    data = BranchCurveData(F.strands, prof.nu_pos, prof.nu_neg, prof.kappa, theta.degree_N)
    if prof.tau != data.tangencies:
        raise InvariantsError(f"profile has {prof.tau} tangencies, the curve data predicts {data.tangencies}")
    return data, chern_invariants(data)
