"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 resource limit. Without ``--out``, output goes to stdout unless
``EBILAB_OUTPUT_DIR`` is set, in which case a per-command default file
name is used inside that directory.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import constructions as cons
from .core import apply_schedule, evaluate, parse_labeling, serialize_labeling
from .core import Shape
from .errors import (
    EbiError,
    MalformedInputError,
    ParameterError,
    PartialResultError,
    ScheduleVerificationError,
    ShapeTooLargeError,
)
from .report import export_dot, verify_theorems
from .search import SearchOptions, ebi_exhaustive, local_search

OUTPUT_DIR_ENV = "EBILAB_OUTPUT_DIR"

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(text: str, args, default_name: str):
    out = args.out
    if out is None and os.environ.get(OUTPUT_DIR_ENV):
        out = str(Path(os.environ[OUTPUT_DIR_ENV]) / default_name)
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _labeling_output(labeling, args, name):
    shape = labeling.shape
    if args.format == "json":
        payload = {
            "shape": [shape.p, shape.q],
            "labeling": serialize_labeling(shape, labeling),
            "evaluation": evaluate(shape, labeling).to_dict(),
        }
        _emit(_json(payload), args, name + ".json")
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row", "labels"])
        for i, line in enumerate(serialize_labeling(shape, labeling).split("\n")[1:-1]):
            writer.writerow([i, line])
        _emit(buf.getvalue(), args, name + ".csv")
    else:
        _emit(serialize_labeling(shape, labeling), args, name + ".txt")


def _read_labeling(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_labeling(text)


def cmd_oracle(args):
    options = SearchOptions(use_symmetry=args.symmetry == "on", worker_chunks=args.chunks)
    shape = Shape(args.p, args.q)
    result = ebi_exhaustive(shape, options, timeout=args.timeout)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "witness"])
        for idx in result.achieved:
            text = serialize_labeling(shape, result.witnesses[idx])
            writer.writerow([idx, "/".join(text.split("\n")[1:-1])])
        _emit(buf.getvalue(), args, f"oracle_{args.p}x{args.q}.csv")
    else:
        _emit(result.to_json() + "\n", args, f"oracle_{args.p}x{args.q}.json")
    return EXIT_OK


def _build(family, n, a, c):
    if family == "two-diff":
        return cons.build_theorem1_max(n)
    if family == "two-diff-base":
        return cons.build_theorem1_base(n)
    if family == "two-dense":
        return cons.build_two_dense(n)
    if family == "general":
        if a is None or c is None:
            raise UsageError("--family general needs --a and --c")
        return cons.build_theorem2(n, a, c)
    raise UsageError(f"unknown family {family}")


def cmd_construct(args):
    labeling = _build(args.family, args.n, args.a, args.c)
    _labeling_output(labeling, args, f"construct_{args.family}_{args.n}")
    return EXIT_OK


def cmd_schedule(args):
    if args.family == "two-diff":
        base, schedule = cons.build_theorem1_base(args.n), cons.schedule_theorem1(args.n)
    else:
        if args.a is None:
            raise UsageError("--family general needs --a")
        base = cons.build_theorem2(args.n, args.a, 2 * args.a + 1)
        schedule = cons.schedule_theorem2(args.n, args.a)
    try:
        results = apply_schedule(base, schedule)
    except ScheduleVerificationError as exc:
        print(f"schedule verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    payload = {
        "base_index": evaluate(base.shape, base).index,
        "steps": len(schedule.steps),
        "checkpoints": [
            {"prefix": cp.prefix, "expected_index": cp.expected_index, "index": ev.index}
            for cp, _, ev in results
        ],
    }
    _emit(_json(payload), args, f"schedule_{args.family}_{args.n}.json")
    return EXIT_OK


def cmd_verify(args):
    report = verify_theorems(args.n_max, with_oracle=args.oracle)
    if args.format == "csv":
        _emit(report.to_csv(), args, "verify.csv")
    else:
        _emit(report.to_json() + "\n", args, "verify.json")
    return EXIT_OK if report.all_passed else EXIT_MISMATCH


def cmd_fixture(args):
    _labeling_output(cons.fixture_k35(args.variant), args, f"fixture_{args.variant}")
    return EXIT_OK


def cmd_eval(args):
    shape, labeling = _read_labeling(args.file)
    ev = evaluate(shape, labeling)
    if args.format == "csv":
        row = ev.to_dict()
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(row))
        writer.writerow([str(v).lower() if isinstance(v, bool) else v for v in row.values()])
        _emit(buf.getvalue(), args, "eval.csv")
    else:
        _emit(ev.to_json() + "\n", args, "eval.json")
    return EXIT_OK


def cmd_export(args):
    shape, labeling = _read_labeling(args.dot)
    _emit(export_dot(shape, labeling), args, "labeling.dot")
    return EXIT_OK


def cmd_search(args):
    options = SearchOptions(budget=args.budget, seed=args.seed)
    shape = Shape(args.p, args.q)
    found = local_search(shape, args.target, options)
    payload = {"shape": [shape.p, shape.q], "target": args.target, "seed": args.seed, "found": found is not None}
    if found is not None:
        payload["labeling"] = serialize_labeling(shape, found)
        payload["evaluation"] = evaluate(shape, found).to_dict()
    _emit(_json(payload), args, f"search_{shape.p}x{shape.q}_{args.target}.json")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symmetry", choices=("on", "off"), default="off")
    common.add_argument("--chunks", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="labelings default to the plain text format, everything else to json")
    common.add_argument("--out", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ebilab", description="Edge-balanced index sets of K_{p,q}.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive EBI of K_{p,q}")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--timeout", type=float, default=None, help="seconds before giving up (exit 3)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("construct", parents=[common], help="build a constructive labeling")
    p.add_argument("--family", choices=("two-diff", "two-diff-base", "two-dense", "general"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--c", type=int)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("schedule", parents=[common], help="run and check a swap schedule")
    p.add_argument("--family", choices=("two-diff", "general"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("verify", parents=[common], help="compare constructions with claimed sets")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixture", parents=[common], help="the two reference K_{3,5} labelings")
    p.add_argument("variant", choices=("a", "b"))
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("eval", parents=[common], help="evaluate a labeling file")
    p.add_argument("file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("export", parents=[common], help="DOT drawing of a labeling file")
    p.add_argument("--dot", required=True, metavar="FILE")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("search", parents=[common], help="seeded local search for a target index")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ShapeTooLargeError, PartialResultError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, MalformedInputError, ParameterError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EbiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
