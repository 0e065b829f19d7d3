"""Command-line front end.

Exit codes: 0 success (or "valid"), 1 "invalid" verdict, 2 usage error,
3 data error, 4 resource error.  Structured output is one document on
stdout; diagnostics go to stderr.  Set ``LATIN_NODE_BUDGET`` to cap the
number of search nodes.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import bounds, codes, constructions, documents, enumeration, reference
from .core import CuboidShape, Hypercuboid, normalize_sizes, validate
from .errors import DataError, ParameterError, ResourceError

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_DATA, EXIT_RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _shape(args) -> CuboidShape:
    sizes, _ = normalize_sizes(args.shape)
    if sizes != args.shape:
        print(f"note: sizes reordered to {','.join(map(str, sizes))}", file=sys.stderr)
    return CuboidShape(sizes, args.cls)


def _search_opts(args) -> enumeration.SearchOptions:
    budget = os.environ.get("LATIN_NODE_BUDGET")
    try:
        budget = int(budget) if budget else None
    except ValueError:
        raise UsageError(f"LATIN_NODE_BUDGET must be an integer, got {budget!r}")
    return enumeration.SearchOptions(
        count_only=getattr(args, "count_only", False),
        limit=getattr(args, "limit", None),
        split_depth=getattr(args, "split_depth", None),
        workers=getattr(args, "workers", 1),
        node_budget=budget,
    )


class _Out:
    """Collects the single stdout document and the exit code."""

    def __init__(self, args):
        self.fmt = args.format
        self.one_based = args.one_based

    def json(self, doc):
        if self.fmt == "csv":
            raise UsageError("csv output is only available for count tables")
        print(documents.dumps(doc))

    def table(self, rows, doc):
        if self.fmt == "csv":
            sys.stdout.write(documents.rows_to_csv(rows))
        else:
            print(documents.dumps(doc))


def cmd_validate(args, out):
    c = documents.cuboid_from_doc(documents.load_json(args.file))
    report = validate(c)
    if not report.valid:
        print(report.describe(), file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_bounds(args, out):
    if args.table1:
        out.json({"table1": [list(s) for s in bounds.table1_check()]})
    elif args.shape is not None:
        if args.cls is None:
            raise UsageError("--shape needs --class")
        shape = _shape(args)
        out.json(documents.verdict_to_doc(shape, bounds.existence_bound(shape)))
    elif args.alphabets is not None:
        if args.delta is None:
            raise UsageError("--alphabets needs --delta")
        out.json(documents.bound_report_to_doc(bounds.bound_report(args.alphabets, args.delta)))
    else:
        raise UsageError("give --shape/--class, --alphabets/--delta or --table1")
    return EXIT_OK


def cmd_construct(args, out):
    kind = args.kind
    if kind == "modular":
        c = constructions.modular_class1(CuboidShape(normalize_sizes(args.shape)[0], 1))
    elif kind == "seed":
        square = documents.cuboid_from_doc(documents.load_json(args.square)) if args.square else None
        c = constructions.seed_cube(args.n, args.cls, square)
    elif kind == "extend":
        if not args.cube or not args.square:
            raise UsageError("extend needs --cube L.json and --square S.json")
        L = documents.cuboid_from_doc(documents.load_json(args.cube))
        S = documents.cuboid_from_doc(documents.load_json(args.square))
        c = constructions.extend_cube(L, S)
    else:
        if args.prime is None or args.matrix is None:
            raise UsageError("matrix needs --prime and --matrix")
        c = constructions.matrix_cube(constructions.MatrixSpec.parse(args.prime, args.matrix))
    out.json(documents.cuboid_to_doc(c, out.one_based))
    return EXIT_OK


def cmd_enumerate(args, out):
    shape = _shape(args)
    opts = _search_opts(args)
    solutions = []
    res = enumeration.enumerate_semi_reduced(shape, opts, None if opts.count_only else solutions.append)
    doc = documents.count_to_doc(res)
    if args.total:
        doc["totalBySearch"] = enumeration.count_completions(
            Hypercuboid.empty(shape), enumeration.SearchOptions(
                workers=opts.workers, node_budget=opts.node_budget))
    if not opts.count_only:
        doc["solutions"] = [documents.cuboid_to_doc(c, out.one_based) for c in solutions]
    out.table([documents.count_to_row(res)], doc)
    return EXIT_OK


def cmd_convert(args, out):
    doc = documents.load_json(args.file)
    if args.direction == "to-code":
        code = codes.cuboid_to_code(documents.cuboid_from_doc(doc), args.expand)
        out.json(documents.code_to_doc(code, out.one_based))
    else:
        if args.r is None:
            raise UsageError("from-code needs --r")
        c = codes.code_to_cuboid(documents.code_from_doc(doc), args.r,
                                 require_mds=args.require_mds)
        out.json(documents.cuboid_to_doc(c, out.one_based))
    return EXIT_OK


def cmd_verify(args, out):
    doc = documents.load_json(args.file)
    if args.what == "endo":
        e = codes.build_endomorphism(documents.cuboid_from_doc(doc))
        ok = codes.verify_endomorphism(e)
        result = documents.endomorphism_to_doc(e)
        result["verified"] = ok
    else:
        code = documents.code_from_doc(doc)
        result = documents.metrics_to_doc(codes.code_metrics(code))
        if args.what == "mds":
            ok = codes.is_mds(code)
            result["singleton"] = (bounds.singleton_bound(code.alphabets, result["minDistance"])
                                   if result["minDistance"] else None)
            result["isMds"] = ok
        else:
            if args.low is None:
                raise UsageError("clique needs --low")
            ok = codes.code_is_clique(code, args.low)
            result["isClique"] = ok
            result["isMaximal"] = ok and codes.is_maximal_clique(code, args.low)
    out.json(result)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_oracle(args, out):
    size, code = codes.max_code_bruteforce(args.alphabets, args.delta)
    doc = {"alphabets": list(args.alphabets), "delta": args.delta, "maxSize": size,
           "witness": documents.code_to_doc(code, out.one_based)["words"]}
    out.json(doc)
    return EXIT_OK


def cmd_reproduce(args, out):
    expected = dict(reference.COUNTS_DESK)
    if args.extended:
        expected.update(reference.COUNTS_EXTENDED)
    rows, mismatches = [], []
    opts = enumeration.SearchOptions(count_only=True, workers=args.workers,
                                     node_budget=_search_opts(args).node_budget)
    for (sizes, r), want in expected.items():
        res = enumeration.count_semi_reduced(CuboidShape(sizes, r), opts)
        row = documents.count_to_row(res)
        row["expected"] = want
        row["match"] = res.semi_reduced == want
        rows.append(row)
        if not row["match"]:
            mismatches.append(row)
            print(f"mismatch {sizes} r={r}: got {res.semi_reduced}, expected {want}",
                  file=sys.stderr)
    out.table(rows, {"rows": rows, "allMatch": not mismatches})
    return EXIT_OK if not mismatches else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--one-based", action="store_true", default=argparse.SUPPRESS,
                        help="display symbols shifted by +1")

    p = argparse.ArgumentParser(prog="latinhc", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--one-based", action="store_true", default=False,
                   help="display symbols shifted by +1")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a cuboid document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("bounds", parents=[common], help="existence and code bounds")
    s.add_argument("--shape", type=_ints)
    s.add_argument("--class", dest="cls", type=int)
    s.add_argument("--alphabets", type=_ints)
    s.add_argument("--delta", type=int)
    s.add_argument("--table1", action="store_true",
                   help="list class-2 shapes (n1<=5, d<=6) violating the existence bound")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("construct", parents=[common], help="build a cuboid",
                       description="matrix syntax: rows separated by ';', entries by ','")
    s.add_argument("kind", choices=("modular", "seed", "extend", "matrix"))
    s.add_argument("--shape", type=_ints, help="modular: sizes")
    s.add_argument("--n", type=int, help="seed: side length")
    s.add_argument("--class", dest="cls", type=int, default=1, help="seed: class")
    s.add_argument("--square", help="seed: Latin square file; extend: LHC(r+1,n,r) file")
    s.add_argument("--cube", help="extend: the cube to extend")
    s.add_argument("--prime", type=int, help="matrix: field size")
    s.add_argument("--matrix", help='matrix: e.g. "1,0;0,1;1,1;1,2"')
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("enumerate", parents=[common], help="count semi-reduced cuboids")
    s.add_argument("--shape", type=_ints, required=True)
    s.add_argument("--class", dest="cls", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--limit", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--split-depth", type=int)
    s.add_argument("--total", action="store_true",
                   help="also count all cuboids by unrestricted search")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("convert", parents=[common], help="cuboid <-> mixed code")
    s.add_argument("direction", choices=("to-code", "from-code"))
    s.add_argument("file")
    s.add_argument("--expand", action="store_true", help="to-code: symbols as r-tuples")
    s.add_argument("--r", type=int, help="from-code: class")
    s.add_argument("--require-mds", action="store_true",
                   help="from-code: also demand distance r+1 and the Singleton size")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("verify", parents=[common], help="clique / endomorphism / MDS checks")
    s.add_argument("what", choices=("clique", "endo", "mds"))
    s.add_argument("file")
    s.add_argument("--low", type=int, help="clique: smallest allowed distance")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="exhaustive code search")
    s.add_argument("which", choices=("max-code",))
    s.add_argument("--alphabets", type=_ints, required=True)
    s.add_argument("--delta", type=int, required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("reproduce-table2", parents=[common],
                       help="recount the reference table and diff")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--extended", action="store_true", help="include the slow tier")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, _Out(args))
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ResourceError as exc:
        extra = f" after {exc.nodes} nodes" if exc.nodes is not None else ""
        print(f"resource error: {exc}{extra}", file=sys.stderr)
        return EXIT_RESOURCE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
