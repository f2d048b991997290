"""Command-line interface.

Subcommands operate on matrix documents (JSON, [re, im] entry pairs) and
emit a text table to stdout plus, with --out, a machine-readable JSON
report.  Exit codes: 0 success, 1 malformed input, 2 invariant violation
on load, 3 optimizer-certification failure, 4 suite failures.
"""

import argparse
import sys

from . import metrics
from .errors import (
    CertificationError,
    CpmetricError,
    InvariantViolation,
    MalformedInputError,
)
from .geometry import (
    StarAlgebraPresentation,
    SubspaceBasis,
    commutant,
    dist_to_scalars,
    dist_to_subspace,
    numerical_range,
)
from .dilations import choi_li_dilation, halmos_dilation
from .io import load_channel, load_matrix, load_state, load_unitary
from .reports import emit_report
from .sampling import resolve_seed
from .states import state_distance_report
from .suites import run_suite, suite_names


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # malformed command line is malformed input
        self.print_usage(sys.stderr)
        raise MalformedInputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cpmetric",
                     description="Bures distance and representation metric "
                                 "for states and UCP maps on matrix algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write a machine-readable JSON report here")
        p.add_argument("--seed", type=int, default=None,
                       help="seed override (default CPMETRIC_SEED or 0)")

    p = sub.add_parser("fidelity", help="overlap / Bures / cb distance of two states")
    p.add_argument("state_a")
    p.add_argument("state_b")
    add_common(p)

    p = sub.add_parser("bures", help="Bures distance of two states or channels")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--states", action="store_true")
    kind.add_argument("--channels", action="store_true")
    p.add_argument("a")
    p.add_argument("b")
    add_common(p)

    p = sub.add_parser("gamma", help="representation metric of two states or channels")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--states", action="store_true")
    kind.add_argument("--channels", action="store_true")
    p.add_argument("--constructive", action="store_true",
                   help="also compute gamma as 2 d(U, commutant) (states only)")
    p.add_argument("a")
    p.add_argument("b")
    add_common(p)

    p = sub.add_parser("dilate", help="unitary dilation of a contraction")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--halmos", action="store_true")
    kind.add_argument("--choi-li", dest="choi_li", action="store_true")
    p.add_argument("contraction")
    p.add_argument("--W", dest="free_block",
                   help="free unitary block for the plain block dilation")
    add_common(p)

    p = sub.add_parser("commutant", help="commutant of a finitely generated *-algebra")
    p.add_argument("generators", nargs="+")
    add_common(p)

    p = sub.add_parser("dist", help="operator-norm distance to scalars or a subspace")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--scalar", action="store_true")
    kind.add_argument("--subspace", action="store_true")
    p.add_argument("target")
    p.add_argument("span", nargs="*", help="matrices spanning the subspace")
    add_common(p)

    p = sub.add_parser("numrange", help="numerical range boundary and min modulus")
    p.add_argument("target")
    p.add_argument("--angles", type=int, default=512)
    add_common(p)

    p = sub.add_parser("example", help="worked example quantities on a theta grid point")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--one", action="store_true")
    kind.add_argument("--two", action="store_true")
    p.add_argument("--theta", type=float, required=True)
    add_common(p)

    p = sub.add_parser("verify", help="run a deterministic verification suite")
    p.add_argument("suite", choices=suite_names() + ["all"])
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    add_common(p)

    return parser


def _emit(obj, args) -> None:
    sys.stdout.write(emit_report(obj, "text"))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(emit_report(obj, "json"))


def _dispatch(args) -> int:
    seed = resolve_seed(args.seed) if hasattr(args, "seed") else 0
    if args.command == "fidelity":
        report = state_distance_report(load_state(args.state_a), load_state(args.state_b))
        _emit(report, args)
        return 0
    if args.command == "bures":
        if args.states:
            report = metrics.gamma_states(load_state(args.a), load_state(args.b))
        else:
            report = metrics.gamma_channels(load_channel(args.a), load_channel(args.b),
                                            seed=seed)
        _emit(report, args)
        return 0
    if args.command == "gamma":
        if args.states:
            if args.constructive:
                report = metrics.gamma_states_constructive(
                    load_state(args.a), load_state(args.b), seed=seed)
            else:
                report = metrics.gamma_states(load_state(args.a), load_state(args.b))
        else:
            if args.constructive:
                raise MalformedInputError("--constructive applies to --states only")
            report = metrics.gamma_channels(load_channel(args.a), load_channel(args.b),
                                            seed=seed)
        _emit(report, args)
        return 0
    if args.command == "dilate":
        t, _ = load_matrix(args.contraction)
        if args.halmos:
            if args.free_block:
                w = load_unitary(args.free_block)
            else:
                import numpy as np
                w = np.eye(t.shape[0], dtype=complex)
            result = halmos_dilation(t, w)
        else:
            result = choi_li_dilation(t, seed=seed)
        _emit(result, args)
        return 0
    if args.command == "commutant":
        gens = [load_matrix(path)[0] for path in args.generators]
        alg = StarAlgebraPresentation(dimension=gens[0].shape[0], generators=gens)
        _emit(commutant(alg), args)
        return 0
    if args.command == "dist":
        t, _ = load_matrix(args.target)
        if args.scalar:
            result = dist_to_scalars(t)
        else:
            if not args.span:
                raise MalformedInputError("dist --subspace needs spanning matrices")
            mats = [load_matrix(path)[0] for path in args.span]
            result = dist_to_subspace(t, SubspaceBasis.span(mats), seed=seed)
        _emit(result, args)
        return 0
    if args.command == "numrange":
        t, _ = load_matrix(args.target)
        _emit(numerical_range(t, args.angles), args)
        return 0
    if args.command == "example":
        if args.one:
            report = metrics.example_one(args.theta)
        else:
            report = metrics.example_two(args.theta)
        _emit(report, args)
        return 0
    if args.command == "verify":
        names = suite_names() if args.suite == "all" else [args.suite]
        worst = 0
        for name in names:
            result = run_suite(name, seed=seed, trials=args.trials,
                               workers=args.workers)
            _emit(result, args)
            if result.failures:
                worst = 4
        return worst
    raise MalformedInputError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except CpmetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
