"""Command line client for the computation pipelines.

Thin by design: argument parsing, JSON printing and the exit-code
contract live here; everything else is delegated to the same pipeline
functions the HTTP service calls.

Exit codes: 0 success, 1 malformed input, 2 space/method resolution
failure, 3 underdetermined result, 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import pipeline
from .atlas import SpaceSpecError, UnknownBuiltinError
from .catalog import Catalog, NotRegisteredError
from .les import UnderdeterminedError
from .pipeline import MethodNotApplicableError, NoDecompositionError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOLVE = 2
EXIT_UNDERDETERMINED = 3
EXIT_MISMATCH = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_space_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--builtin", help="builtin space name (see `list`)")
    sub.add_argument("-k", type=int, default=None, help="bundle / surface parameter")
    sub.add_argument("-n", type=int, default=None, help="affine dimension")
    sub.add_argument("--spec-file", help="path to a space-spec JSON file")


def build_parser() -> _Parser:
    parser = _Parser(prog="cohomc", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--dump-catalog", action="store_true", help="print the seeded registry as JSON"
    )
    sub = parser.add_subparsers(dest="command")

    compute = sub.add_parser("compute", help="graded groups of a space by one method")
    _add_space_args(compute)
    compute.add_argument(
        "--method", choices=pipeline.METHODS, default="additive"
    )
    compute.add_argument("--via", help="total space of the decomposition to use")
    compute.add_argument("--max-q", type=int, default=None)
    compute.add_argument("--explain", action="store_true")
    compute.add_argument(
        "--partial",
        action="store_true",
        help="emit known degrees and mark the rest underdetermined",
    )

    verify = sub.add_parser("verify", help="cross-check two methods per degree")
    _add_space_args(verify)
    verify.add_argument(
        "--methods", required=True, help="comma-separated pair, e.g. additive,kunneth"
    )
    verify.add_argument("--bound", type=int, default=16)
    verify.add_argument("--max-q", type=int, default=None)

    sub.add_parser("list", help="builtins, parameters and registered decompositions")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _resolve_space(args):
    spec = None
    if args.spec_file is not None:
        try:
            with open(args.spec_file, encoding="utf-8") as fh:
                spec = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpaceSpecError(f"cannot read space spec: {exc}") from exc
    return pipeline.resolve_space(builtin=args.builtin, k=args.k, n=args.n, spec=spec)


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    catalog = Catalog()

    try:
        if args.dump_catalog:
            _emit(catalog.to_json())
            return EXIT_OK
        if args.command == "compute":
            space = _resolve_space(args)
            outcome = pipeline.compute(
                space,
                args.method,
                catalog,
                via=args.via,
                max_q=args.max_q,
                explain=args.explain,
                partial=args.partial,
            )
            _emit(outcome.to_json())
            return EXIT_OK
        if args.command == "verify":
            methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
            if len(methods) != 2 or any(m not in pipeline.METHODS for m in methods):
                raise SpaceSpecError("--methods needs two of: " + ", ".join(pipeline.METHODS))
            space = _resolve_space(args)
            report = pipeline.verify(
                space, methods, catalog, bound=args.bound, max_q=args.max_q
            )
            _emit(report)
            return EXIT_OK if report["all_equal"] else EXIT_MISMATCH
        if args.command == "list":
            print(pipeline.format_inventory(pipeline.builtin_inventory(), catalog))
            return EXIT_OK
        if args.command == "serve":
            import uvicorn

            from .service import create_app

            uvicorn.run(create_app(catalog), host=args.host, port=args.port)
            return EXIT_OK
    except SpaceSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (
        UnknownBuiltinError,
        NotRegisteredError,
        NoDecompositionError,
        MethodNotApplicableError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOLVE
    except UnderdeterminedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDERDETERMINED

    parser.print_help()
    return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
