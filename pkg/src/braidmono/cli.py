"""Command-line front end.

Exit status: 0 true/yes/success, 1 false/no, 2 unknown or a limit was hit,
3 input error.  Positions on the command line are 1-based.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import factorization as fz
from . import invariants as inv
from .braid_core import BraidError, normal_form, parse_braid, render_braid, words_equal
from .perm_action import MonodromyError, is_liftable, parse_theta, render_theta, validate_monodromy

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "n/a"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return str(value)


def render_report(pairs: Iterable[tuple[str, object]], kv: bool = False) -> str:
    pairs = list(pairs)
    if kv:
        return "".join(f"{k}={_fmt(v)}\n" for k, v in pairs)
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k:<{width}}  {_fmt(v)}\n" for k, v in pairs)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str) -> fz.Factorization:
    try:
        return fz.parse_factorization(_read(path))
    except (fz.FactorizationError, BraidError, MonodromyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _theta_for(F: fz.Factorization | None, text: str | None):
    if text is not None:
        return parse_theta(text)
    return F.theta if F is not None else None


def _position(value: int, upper: int, what: str = "position") -> int:
    if not 1 <= value <= upper:
        raise InputError(f"{what} {value} out of range 1..{upper}")
    return value - 1


# ---------------------------------------------------------------------------
# Verbs; each returns (exit code, stdout text)


def cmd_nf(args):
    w = parse_braid(args.word, args.strands)
    form = normal_form(w)
    report = [
        ("strands", form.strands),
        ("delta_power", form.delta_power),
        ("simple_factors", " ".join("[" + " ".join(map(str, s)) + "]" for s in form.simple_factors) or "-"),
        ("word", render_braid(form.to_word())),
    ]
    return EXIT_TRUE, render_report(report, args.kv)


def cmd_eq(args):
    w1 = parse_braid(args.word1, args.strands)
    w2 = parse_braid(args.word2, w1.strands if args.strands is None else args.strands)
    if w1.strands != w2.strands:
        raise InputError("words have different strand counts")
    same = words_equal(w1, w2)
    return (EXIT_TRUE if same else EXIT_FALSE), _fmt(same) + "\n"


def cmd_product(args):
    F = _load(args.file)
    form = fz.product_form(F)
    ok = fz.verify_target(F)
    report = [
        ("product", render_braid(form.to_word())),
        ("target", f"Delta^{2 * F.half_turns}"),
        ("verify_target", ok),
    ]
    return (EXIT_TRUE if ok else EXIT_FALSE), render_report(report, args.kv)


def cmd_f0(args):
    if args.d < 2:
        raise InputError("d must be >= 2")
    if args.stabilize < 0:
        raise InputError("--stabilize must be >= 0")
    F = fz.stabilize(fz.standard_f0(args.d), args.stabilize)
    theta = parse_theta(args.theta) if args.theta else None
    return EXIT_TRUE, fz.render_factorization(F, theta)


def cmd_hurwitz(args):
    F = _load(args.file)
    i = _position(args.position, len(F.factors) - 1)
    return EXIT_TRUE, fz.render_factorization(fz.hurwitz_move(F, i, args.direction))


def cmd_scramble(args):
    F = _load(args.file)
    G, moves = fz.scramble(F, args.moves, args.seed)
    return EXIT_TRUE, fz.render_factorization(G)


def cmd_stabilize(args):
    F = _load(args.file)
    return EXIT_TRUE, fz.render_factorization(fz.stabilize(F, args.n))


def cmd_concat(args):
    F1, F2 = _load(args.file1), _load(args.file2)
    theta = None
    if args.check_theta:
        theta = F1.theta or F2.theta
        if theta is None:
            raise InputError("--check-theta needs a theta line in one of the files")
        if F1.theta and F2.theta and F1.theta != F2.theta:
            return EXIT_FALSE, ""
    try:
        G = fz.concatenate(F1, F2, theta)
    except fz.FactorizationError as exc:
        if theta is not None and "liftable" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FALSE, ""
        raise
    return EXIT_TRUE, fz.render_factorization(G)


def cmd_node_pair(args):
    F = _load(args.file)
    if args.action == "create":
        i = _position(args.position, len(F.factors) + 1)
        if args.conj is None:
            raise InputError("create needs --conj")
        c1 = parse_braid(args.conj, F.strands)
        c2 = parse_braid(args.conj2, F.strands) if args.conj2 is not None else None
        theta = None if args.no_theta else _theta_for(F, args.theta)
        try:
            G = fz.create_node_pair(F, i, c1, c2, theta)
        except fz.InadmissibleError as exc:
            print(f"inadmissible: {exc}", file=sys.stderr)
            return EXIT_FALSE, ""
    else:
        i = _position(args.position, len(F.factors) - 1)
        G = fz.cancel_node_pair(F, i)
    return EXIT_TRUE, fz.render_factorization(G)


def cmd_orbit(args):
    F = _load(args.file)
    if not fz.verify_target(F):
        raise InputError(f"{args.file}: factorization does not multiply to Delta^{2 * F.half_turns}")
    rep = fz.hurwitz_orbit(
        F,
        max_states=args.max_states,
        max_factor_length=args.max_factor_length,
        workers=args.workers,
        audit=args.audit,
        sample=args.sample,
    )
    report = [
        ("visited", rep.visited_count),
        ("exhausted", rep.frontier_exhausted),
        ("limit_hit", rep.limit_hit or "none"),
        ("depth", rep.depth),
        ("digest", rep.digest),
    ]
    if args.audit:
        report.append(("audit_failures", rep.audit_failures))
    report += [(f"representative.{j}", key) for j, key in enumerate(rep.representatives)]
    code = EXIT_TRUE if rep.frontier_exhausted else EXIT_UNKNOWN
    return code, render_report(report, args.kv)


def cmd_equiv(args):
    F1, F2 = _load(args.file1), _load(args.file2)
    if F1.strands != F2.strands or F1.half_turns != F2.half_turns:
        raise InputError("factorizations differ in strands or half-turns")
    theta = None
    if args.liftable:
        theta = _theta_for(F1, args.theta) or F2.theta
        if theta is None:
            raise InputError("--liftable needs a theta")
    res = fz.hurwitz_equivalent(
        F1,
        F2,
        allow_global_conjugation=args.global_conjugation,
        conjugator_bound=args.conjugator_bound,
        restrict_liftable=theta,
        max_states=args.max_states,
    )
    report = [("verdict", res.verdict), ("reason", res.reason), ("visited", res.visited)]
    if res.limit_hit:
        report.append(("limit_hit", res.limit_hit))
    if res.conjugator_bound is not None:
        report.append(("conjugator_bound", res.conjugator_bound))
    if res.verdict == "yes" and args.witness:
        replayed = fz.replay_witness(F1, res.witness)
        if fz.canonical_key(replayed) != fz.canonical_key(F2):
            print("error: witness failed to replay", file=sys.stderr)
            return EXIT_UNKNOWN, render_report(report, args.kv)
        report.append(("witness.replayed", True))
        conj = res.witness.conjugator
        report.append(("witness.conjugate", render_braid(conj) if conj is not None else "none"))
        report.append(("witness.moves", len(res.witness.moves)))
        report += [
            (f"witness.move.{j}", f"{i + 1} {direction}") for j, (i, direction) in enumerate(res.witness.moves, 1)
        ]
    code = {"yes": EXIT_TRUE, "no": EXIT_FALSE}.get(res.verdict, EXIT_UNKNOWN)
    return code, render_report(report, args.kv)


def cmd_liftable(args):
    if args.braid is not None:
        if args.theta is None:
            raise InputError("--braid needs --theta")
        theta = parse_theta(args.theta)
        b = parse_braid(args.braid, theta.degree_d)
        ok = is_liftable(b, theta, up_to_conjugation=args.up_to_conjugation)
        return (EXIT_TRUE if ok else EXIT_FALSE), _fmt(ok) + "\n"
    if args.file is None:
        raise InputError("give a factorization file or --braid")
    F = _load(args.file)
    theta = _theta_for(F, args.theta)
    if theta is None:
        raise InputError("no theta given and none in the file")
    ok = fz.factorization_liftable(F, theta)
    return (EXIT_TRUE if ok else EXIT_FALSE), _fmt(ok) + "\n"


def cmd_validate_theta(args):
    theta = parse_theta(args.theta)
    rep = validate_monodromy(theta)
    return (EXIT_TRUE if rep.valid else EXIT_FALSE), render_report(rep.items(), args.kv)


def _curve_from_args(args, need_n: bool) -> inv.BranchCurveData:
    if args.d is None:
        raise InputError("--d is required")
    if need_n and args.N is None:
        raise InputError("--N is required")
    return inv.BranchCurveData(args.d, args.nu_pos, args.nu_neg, args.kappa, args.N)


def _curve_report(data: inv.BranchCurveData, chern: inv.ChernSet | None) -> list[tuple[str, object]]:
    rows = [
        ("d", data.degree_d),
        ("nu_pos", data.nodes_pos),
        ("nu_neg", data.nodes_neg),
        ("nu", data.nodes),
        ("kappa", data.cusps),
        ("N", data.cover_degree),
    ]
    if chern is not None:
        rows += chern.items()
    return rows


def cmd_invariants(args):
    if args.file is not None:
        F = _load(args.file)
        theta = _theta_for(F, args.theta)
        if theta is None:
            raise InputError("no theta given and none in the file")
        data, chern = inv.factorization_invariants(F, theta)
    else:
        data = _curve_from_args(args, need_n=True)
        chern = inv.chern_invariants(data)
    return EXIT_TRUE, render_report(_curve_report(data, chern), args.kv)


def cmd_geography(args):
    data = _curve_from_args(args, need_n=False)
    rep = inv.geography_checks(data)
    rows = [("genus", data.genus), ("tau", data.tangencies), ("bmy_bound", rep.bmy_bound)] + rep.flags()
    rows.append(("taubes_caveat", rep.taubes_caveat))
    ok = all(v for _, v in rep.flags() if v is not None)
    return (EXIT_TRUE if ok else EXIT_FALSE), render_report(rows, args.kv)


def cmd_moishezon(args):
    data = inv.moishezon_family(args.p)
    rep = inv.geography_checks(data)
    rows = [("p", args.p), ("d", data.degree_d), ("kappa", data.cusps), ("nu", data.nodes)]
    rows += [("genus", data.genus), ("tau", data.tangencies), ("bmy_bound", rep.bmy_bound)]
    rows += [(k, v) for k, v in rep.flags() if v is not None]
    ok = all(v for k, v in rep.flags() if v is not None)
    return (EXIT_TRUE if ok else EXIT_FALSE), render_report(rows, args.kv)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidmono", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--kv", action="store_true", help="key=value output")
        return sp

    sp = verb("nf", cmd_nf, "left-greedy normal form of a braid word")
    sp.add_argument("word")
    sp.add_argument("--strands", type=int)

    sp = verb("eq", cmd_eq, "test two braid words for equality")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.add_argument("--strands", type=int)

    sp = verb("product", cmd_product, "multiply out a factorization and check the target")
    sp.add_argument("file")

    sp = verb("f0", cmd_f0, "standard factorization (s_1 ... s_{d-1})^d")
    sp.add_argument("d", type=int)
    sp.add_argument("--stabilize", type=int, default=0, help="append this many extra copies")
    sp.add_argument("--theta")

    sp = verb("hurwitz", cmd_hurwitz, "apply one Hurwitz move")
    sp.add_argument("file")
    sp.add_argument("position", type=int)
    sp.add_argument("direction", choices=(fz.RIGHT, fz.LEFT))

    sp = verb("scramble", cmd_scramble, "apply seeded random Hurwitz moves")
    sp.add_argument("file")
    sp.add_argument("--moves", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = verb("orbit", cmd_orbit, "breadth-first Hurwitz orbit enumeration")
    sp.add_argument("file")
    sp.add_argument("--max-states", type=int, default=100_000)
    sp.add_argument("--max-factor-length", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--audit", action="store_true", help="re-check product and profile of every state")
    sp.add_argument("--sample", type=int, default=5)

    sp = verb("equiv", cmd_equiv, "search for a Hurwitz equivalence")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--max-states", type=int, default=100_000)
    sp.add_argument("--global-conjugation", action="store_true")
    sp.add_argument("--conjugator-bound", type=int, default=2)
    sp.add_argument("--liftable", action="store_true", help="restrict to liftable conjugators")
    sp.add_argument("--theta")
    sp.add_argument("--witness", action="store_true")

    sp = verb("liftable", cmd_liftable, "liftability of a braid or of a factorization")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--braid")
    sp.add_argument("--theta")
    sp.add_argument("--up-to-conjugation", action="store_true")

    sp = verb("validate-theta", cmd_validate_theta, "check a monodromy morphism")
    sp.add_argument("theta")

    for name, func, help_ in (
        ("invariants", cmd_invariants, "Chern numbers of the branched cover"),
        ("geography", cmd_geography, "integrality and geography checks"),
    ):
        sp = verb(name, func, help_)
        if name == "invariants":
            sp.add_argument("file", nargs="?")
            sp.add_argument("--theta")
        sp.add_argument("--d", type=int)
        sp.add_argument("--nu-pos", type=int, default=0)
        sp.add_argument("--nu-neg", type=int, default=0)
        sp.add_argument("--kappa", type=int, default=0)
        sp.add_argument("--N", type=int)

    sp = verb("moishezon", cmd_moishezon, "curve data of Moishezon's family")
    sp.add_argument("p", type=int)

    sp = verb("stabilize", cmd_stabilize, "append copies of the standard factorization")
    sp.add_argument("file")
    sp.add_argument("n", type=int)

    sp = verb("concat", cmd_concat, "fiber sum (concatenation) of two factorizations")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--check-theta", action="store_true")

    sp = verb("node-pair", cmd_node_pair, "create or cancel a pair of opposite nodes")
    sp.add_argument("file")
    sp.add_argument("action", choices=("create", "cancel"))
    sp.add_argument("position", type=int)
    sp.add_argument("--conj")
    sp.add_argument("--conj2")
    sp.add_argument("--theta")
    sp.add_argument("--no-theta", action="store_true", help="skip the admissibility check")

    return p


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Execute one command; returns (exit code, stdout, stderr)."""
    import contextlib
    import io

    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        try:
            args = build_parser().parse_args(list(argv))
            code, out = args.func(args)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            code, out = EXIT_INPUT, ""
        except (
            BraidError,
            MonodromyError,
            fz.FactorizationError,
            inv.InvariantsError,
            inv.IntegralityError,
        ) as exc:
            print(f"error: {exc}", file=sys.stderr)
            code, out = EXIT_INPUT, ""
        except SystemExit as exc:  # --help
            code, out = (exc.code if isinstance(exc.code, int) else 0), ""
    return code, out, err.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
