"""Command-line front end.

Subcommands: prove, discover, discover-all, relate, compare, locus,
envelope, corpus, serve.  Results are printed as canonical JSON on standard
output; human diagnostics go to standard error.  Exit codes: 0 when a
verdict was computed (even FALSE), 1 on input errors, 2 on resource
limits / UNKNOWN verdicts.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .corpus import run_corpus
from .ops import (op_compare, op_discover, op_discover_all, op_envelope,
                  op_locus, op_prove, op_relate, parse_source)
from .wire import OperationError, canonical_json

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_RESOURCE_LIMIT = 2


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="base seed for numeric screening")
    common.add_argument("--timeout-ms", type=int, default=None,
                        dest="timeout_ms",
                        help="per-call budget (default: MG_TIMEOUT_MS or "
                             "60000)")
    common.add_argument("--no-wlog", action="store_true", dest="no_wlog",
                        help="disable the coordinate-frame normalization")

    parser = argparse.ArgumentParser(
        prog="mechgeo",
        description="Compile geometric constructions into polynomial ideals "
                    "and prove, refute, relate and discover statements "
                    "about them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", parents=[common],
                       help="prove statements of a .geo file")
    p.add_argument("file")
    p.add_argument("--statement", default=None,
                   help="single statement label (default: all)")

    p = sub.add_parser("discover", parents=[common],
                       help="certified facts involving one point")
    p.add_argument("file")
    p.add_argument("--target", required=True, help="point id to query")

    p = sub.add_parser("discover-all", parents=[common],
                       help="all certified facts of one predicate kind")
    p.add_argument("file")
    p.add_argument("--kind", required=True,
                   help="predicate kind, e.g. collinear")

    for name in ("relate", "compare"):
        p = sub.add_parser(
            name, parents=[common],
            help=("certified measure relation between two expressions"
                  if name == "relate" else
                  "numeric comparison with recognized extremal constant"))
        p.add_argument("file")
        p.add_argument("--expr1", required=True)
        p.add_argument("--expr2", required=True)

    p = sub.add_parser("locus", parents=[common],
                       help="implicit equation of a traced point locus")
    p.add_argument("file")
    p.add_argument("--statement", required=True)
    p.add_argument("--tracer", required=True, help="free point to trace")

    p = sub.add_parser("envelope", parents=[common],
                       help="envelope of a moving line or circle")
    p.add_argument("file")
    p.add_argument("--curve", required=True,
                   help="id of the moving line/circle")

    p = sub.add_parser("corpus", parents=[common],
                       help="run every .geo + .expected.json pair in a "
                            "directory")
    p.add_argument("directory")

    p = sub.add_parser("serve", parents=[common], help="start the HTTP "
                                                       "service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    return parser


def _read_file(path_text: str) -> str:
    path = Path(path_text)
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise OperationError("file_not_found", f"file not found: {path}")
    except (OSError, UnicodeDecodeError) as e:
        raise OperationError("unreadable_file", f"cannot read {path}: {e}")


def _seeds(args) -> Optional[tuple]:
    if args.seed is None:
        return None
    return tuple(range(args.seed, args.seed + 5))


def _dispatch(args) -> tuple[dict, int]:
    """(result payload, exit code) for one file-based subcommand."""
    construction = parse_source(_read_file(args.file))
    t = args.timeout_ms
    if args.command == "prove":
        result = op_prove(construction, statement=args.statement,
                          wlog=not args.no_wlog, timeout_ms=t)
        verdicts = {r["verdict"] for r in result["results"]}
        code = EXIT_RESOURCE_LIMIT if "UNKNOWN" in verdicts else EXIT_OK
        return result, code
    if args.command == "discover":
        return op_discover(construction, target=args.target,
                           seeds=_seeds(args), timeout_ms=t), EXIT_OK
    if args.command == "discover-all":
        return op_discover_all(construction, kind=args.kind,
                               seeds=_seeds(args), timeout_ms=t), EXIT_OK
    if args.command == "relate":
        return op_relate(construction, expr1=args.expr1, expr2=args.expr2,
                         timeout_ms=t), EXIT_OK
    if args.command == "compare":
        return op_compare(construction, expr1=args.expr1, expr2=args.expr2,
                          timeout_ms=t), EXIT_OK
    if args.command == "locus":
        return op_locus(construction, statement=args.statement,
                        tracer=args.tracer, timeout_ms=t), EXIT_OK
    if args.command == "envelope":
        return op_envelope(construction, curve=args.curve,
                           timeout_ms=t), EXIT_OK
    raise AssertionError(f"unhandled command {args.command}")


def _run_corpus_command(args) -> int:
    summary = run_corpus(Path(args.directory), timeout_ms=args.timeout_ms)
    for case in summary["cases"]:
        mark = "ok  " if case["ok"] else "FAIL"
        print(f"  {mark} {case['file']}: "
              + ", ".join(f"{k}={v}" for k, v in case["verdicts"].items()),
              file=sys.stderr)
        for m in case["mismatches"]:
            print(f"       {m}", file=sys.stderr)
    print(f"corpus: {summary['passed']}/{summary['total']} passed",
          file=sys.stderr)
    print(canonical_json({"status": "ok", "op": "corpus",
                          "result": summary}))
    if summary["aborted"]:
        return EXIT_RESOURCE_LIMIT
    return EXIT_OK if summary["all_ok"] else EXIT_INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            import uvicorn

            from .app import create_app
            uvicorn.run(create_app(), host=args.host, port=args.port,
                        log_level="warning")
            return EXIT_OK
        if args.command == "corpus":
            return _run_corpus_command(args)
        result, code = _dispatch(args)
    except OperationError as e:
        print(canonical_json({"status": "error", "op": args.command,
                              "error": e.payload()}))
        print(f"mechgeo {args.command}: {e.message}", file=sys.stderr)
        return e.exit_code
    print(canonical_json({"status": "ok", "op": args.command,
                          "file": args.file, "result": result}))
    return code


if __name__ == "__main__":
    sys.exit(main())
