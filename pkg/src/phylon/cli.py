"""Command-line interface.

Exit codes: 0 success (or equivalent), 1 not equivalent, 2 invalid input.
Output is JSON on standard output with sorted keys.
"""
import argparse
import sys

from . import io
from .errors import PhylonError
from .group import act_on_pair
from .invariants import (InvariantSequence, invariant_sequence, lambda_by_pairings,
                         reduced_sequence)
from .normalization import decide_equivalence, morse_normalize, morse_normalize_float
from .one_dim import decide_equivalence_1d, lambda_1d, sqrt_series
from .quadrature import QuadratureConfig, compare_expansion


def _load_pair(path):
    return io.pair_from_json(io.load_json(path))


def _emit(obj):
    io.dump_json(obj, sys.stdout)


def _verdict_json(verdict):
    out = {"equivalent": verdict.equivalent, "failure_order": verdict.failure_order}
    if verdict.witness is not None:
        out["witness"] = io.witness_to_json(verdict.witness)
    return out


def cmd_invariants(args):
    pair, _ = _load_pair(args.instance)
    if args.reduced:
        seq = reduced_sequence(pair.b, args.orders)
    elif args.route == "pairings":
        seq = InvariantSequence(pair.dim, tuple(lambda_by_pairings(pair, i)
                                                for i in range(args.orders + 1)))
    else:
        seq = invariant_sequence(pair, args.orders)
    _emit({"dim": pair.dim, "invariants": seq.to_json()})
    return 0


def _equiv(args, decide):
    a, _ = _load_pair(args.first)
    c, _ = _load_pair(args.second)
    verdict = decide(a, c, args.degree)
    if args.witness and verdict.witness is not None:
        with open(args.witness, "w", encoding="utf-8") as fh:
            io.dump_json(io.witness_to_json(verdict.witness), fh)
    _emit(_verdict_json(verdict))
    return 0 if verdict.equivalent else 1


def cmd_equiv(args):
    return _equiv(args, decide_equivalence)


def cmd_equiv1d(args):
    return _equiv(args, decide_equivalence_1d)


def cmd_morse(args):
    pair, _ = _load_pair(args.instance)
    if pair.dim == 1 and not args.float:
        psi = sqrt_series(pair.f)
        _emit({"map": io.map_to_json(psi, radicand=pair.f[(2,)])})
    elif args.float:
        phi, residual = morse_normalize_float(pair.f, args.bits)
        comps = [{"dim": s.dim, "trunc": s.trunc,
                  "terms": [{"alpha": list(a), "coeff": str(c)} for a, c in s.terms()]}
                 for s in phi.components]
        _emit({"map": {"dim": phi.dim, "trunc": phi.trunc, "components": comps},
               "residual": str(residual)})
    else:
        _emit({"map": io.map_to_json(morse_normalize(pair.f))})
    return 0


def cmd_lambda1d(args):
    pair, _ = _load_pair(args.instance)
    _emit(lambda_1d(pair, args.orders).to_json())
    return 0


def cmd_verify(args):
    pair, _ = _load_pair(args.instance)
    radius = None if args.radius == "auto" else float(args.radius)
    cfg = QuadratureConfig(points=args.points, radius=radius)
    n_values = [float(x) for x in args.n.split(",") if x.strip()]
    _emit(compare_expansion(pair, args.orders, n_values, cfg).to_json())
    return 0


def cmd_act(args):
    pair, psi = _load_pair(args.instance)
    if args.psi:
        psi = io.map_from_json(io.load_json(args.psi))
    if psi is None:
        raise PhylonError("no map given: use --psi or a 'psi' entry in the instance")
    moved = act_on_pair(psi, pair)
    obj = io.pair_to_json(moved)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            io.dump_json(obj, fh)
    _emit(obj)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="phylon",
        description="Exact Laplace-expansion invariants and equivalence of (f, b) pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="Lambda_0 .. Lambda_K of a pair")
    s.add_argument("instance")
    s.add_argument("--orders", type=int, default=4, help="largest order K")
    s.add_argument("--reduced", action="store_true", help="treat f as |x|^2 and use complete traces")
    s.add_argument("--route", choices=["heat", "pairings"], default="heat")
    s.set_defaults(func=cmd_invariants)

    for name, fn, helptext in (("equiv", cmd_equiv, "decide equivalence (dim > 1)"),
                               ("equiv1d", cmd_equiv1d, "decide orientation-preserving equivalence (dim 1)")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("first")
        s.add_argument("second")
        s.add_argument("--degree", type=int, default=4)
        s.add_argument("--witness", help="write the witness map here")
        s.set_defaults(func=fn)

    s = sub.add_parser("morse", help="map phi with phi f = |x|^2")
    s.add_argument("instance")
    s.add_argument("--float", action="store_true", help="floating mode for irrational pivots")
    s.add_argument("--bits", type=int, default=None,
                   help="precision in float mode (default from PHYLON_PRECISION_BITS or 128)")
    s.set_defaults(func=cmd_morse)

    s = sub.add_parser("lambda1d", help="lambda_0 .. lambda_K of a one-variable pair")
    s.add_argument("instance")
    s.add_argument("--orders", type=int, default=4)
    s.set_defaults(func=cmd_lambda1d)

    s = sub.add_parser("verify", help="compare the expansion with numeric quadrature")
    s.add_argument("instance")
    s.add_argument("--n", default="10,100,1000")
    s.add_argument("--orders", type=int, default=2)
    s.add_argument("--points", type=int, default=48)
    s.add_argument("--radius", default="auto")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("act", help="transport a pair by a map")
    s.add_argument("instance")
    s.add_argument("--psi", help="map JSON (defaults to the instance's 'psi')")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_act)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PhylonError, ValueError, OSError, KeyError, TypeError) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
        return 2


if __name__ == "__main__":
    sys.exit(main())
