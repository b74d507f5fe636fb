"""Braid monodromy factorizations: Garside normal forms, Hurwitz moves,
liftable braids and the branch-curve invariant dictionary."""

from .braid_core import (
    BraidError,
    BraidWord,
    CanonicalForm,
    Permutation,
    normal_form,
    parse_braid,
    render_braid,
    words_equal,
)
from .factorization import (
    Factor,
    Factorization,
    FactorizationError,
    InadmissibleError,
    hurwitz_equivalent,
    hurwitz_move,
    hurwitz_orbit,
    make_factorization,
    parse_factorization,
    profile,
    render_factorization,
    standard_f0,
    verify_target,
)
from .invariants import BranchCurveData, ChernSet, chern_invariants, geography_checks, moishezon_family
from .perm_action import MonodromyMorphism, is_liftable, parse_theta, validate_monodromy

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
