"""Command-line front end: ``nestgraphs <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import census, nest
from .aut import are_isomorphic, search
from .symmetry import minimal_block_systems

log = logging.getLogger("nestgraphs")


def _params(text):
    try:
        return nest.parse_params(text)
    except (ValueError, nest.NestParamError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_construct(args):
    text = nest.build(args.params).to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_aut(args):
    res = search(nest.build(args.params))
    _emit({"params": list(args.params.as_tuple()),
           "order": res.group.order(),
           "generators": [list(g) for g in res.generators]})
    return 0


def cmd_check(args):
    _emit(census.profile(args.params, full=True))
    return 0


def cmd_blocks(args):
    p = args.params
    grp = search(nest.build(p)).group
    if not grp.is_transitive():
        _emit({"params": list(p.as_tuple()), "transitive": False, "systems": []})
        return 0
    systems = minimal_block_systems(grp, 0, nest_n=p.n)
    _emit({"params": list(p.as_tuple()), "transitive": True,
           "systems": [s.to_dict() for s in systems]})
    return 0


def cmd_iso(args):
    w = are_isomorphic(nest.build(args.params_a), nest.build(args.params_b))
    if w is None:
        print("non-isomorphic")
    else:
        _emit({"witness": list(w)})
    return 0


def cmd_census(args):
    def progress(done):
        if done % 10000 == 0:
            log.info("%d tuples profiled", done)

    recs = census.census_run(args.max_n, jobs=args.jobs, out=args.out,
                             resume=args.resume, progress=progress)
    if not args.out:
        for rec in recs:
            print(census.dumps_record(rec))
    et = sum(1 for r in recs if r["edge_transitive"])
    log.info("%d records, %d edge-transitive", len(recs), et)
    return 0


def cmd_verify(args):
    report = census.verify_theorem(args.census)
    _emit(report.to_dict())
    return report.exit_code


def cmd_invariants(args):
    results = census.invariant_suite(args.census)
    _emit([r.to_dict() for r in results])
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="nestgraphs", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit graph JSON")
    p.add_argument("--params", type=_params, required=True, help="n,a,b,c,k")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    for name, func, hlp in (("aut", cmd_aut, "automorphism group generators and order"),
                            ("check", cmd_check, "census record for one tuple"),
                            ("blocks", cmd_blocks, "minimal block systems")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--params", type=_params, required=True, help="n,a,b,c,k")
        p.set_defaults(func=func)

    p = sub.add_parser("iso", help="isomorphism witness or 'non-isomorphic'")
    p.add_argument("--params-a", type=_params, required=True)
    p.add_argument("--params-b", type=_params, required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("census", help="profile every tuple up to --max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--resume", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-theorem", help="classify edge-transitive core-free classes")
    p.add_argument("--census", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="run the invariant suite over a census")
    p.add_argument("--census", required=True)
    p.set_defaults(func=cmd_invariants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "max_n", 4) < 4:
        parser.error("--max-n must be at least 4")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (OSError, census.CensusFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
