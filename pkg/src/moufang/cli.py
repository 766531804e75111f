"""Command-line front end.

Exit codes: 0 when every suite passes, otherwise the number of failed suites
(capped at 63); 64 for usage errors; 65 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .algebras import AnticommAlgebra, BinaryAlgebra, check_alternative, check_associative
from .fixtures import FIXTURES, generate_fixture
from .formats import FormatError, digest, dumps, read_input
from .suites import SUITES, SuiteConfig, UsageError, run_suites, verify_witness
from .triality import DEFAULT_SAMPLE_CAP, pair_from_alternative

EXIT_USAGE = 64
EXIT_DATA = 65


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> int:
    obj = generate_fixture(args.name, args.seed)
    if args.as_pair:
        if not isinstance(obj, BinaryAlgebra):
            raise UsageError(f"{args.name} is not a unital binary algebra; --as-pair needs one")
        obj = pair_from_alternative(obj)
    _emit(dumps(obj), args.out)
    return 0


def _cmd_validate(args) -> int:
    doc, data = read_input(args.file)
    print(f"{args.file}: ok")
    print(f"  sha256 {digest(data)}")
    if isinstance(doc, BinaryAlgebra):
        unit = "none" if doc.unit_index is None else doc.basis_names[doc.unit_index]
        print(f"  binary-algebra  dim={doc.dim}  unit={unit}")
        print(f"  associative: {'yes' if check_associative(doc).passed else 'no'}")
        print(f"  alternative: {'yes' if check_alternative(doc).passed else 'no'}")
    elif isinstance(doc, AnticommAlgebra):
        print(f"  anticomm-algebra  dim={doc.dim}")
    else:
        print(f"  pair  dim={doc.dim}  rep_dim={doc.rep_dim}  "
              f"faithful={'yes' if doc.faithful else 'no'}")
    return 0


def _cmd_check(args) -> int:
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip())
    config = SuiteConfig(
        inputs=tuple(args.files),
        suites=suites,
        seed=args.seed,
        cap=args.cap,
        output_format=args.format,
    )
    report = run_suites(config)
    text = report.to_machine() if config.output_format == "machine" else report.to_text()
    _emit(text, args.out)
    return report.exit_code


def _cmd_verify_witness(args) -> int:
    result = verify_witness(Path(args.report).read_text(encoding="utf-8"), args.index)
    print(f"witness #{result.index} {result.identity} at {list(result.indices)}: {result.message}")
    return 0 if result.reproduced else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moufang",
        description="Exact checks of Moufang-Mal'tsev operator identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a named fixture")
    gen.add_argument("name", choices=FIXTURES)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--as-pair", action="store_true",
                     help="write the left/right multiplication pair instead")
    gen.set_defaults(func=_cmd_gen)

    val = sub.add_parser("validate", help="parse and shape-check a file")
    val.add_argument("file")
    val.set_defaults(func=_cmd_validate)

    chk = sub.add_parser("check", help="run check suites")
    chk.add_argument("files", nargs="+")
    chk.add_argument("--suite", required=True,
                     help="comma-separated subset of: " + ", ".join(SUITES))
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--cap", type=int, default=DEFAULT_SAMPLE_CAP)
    chk.add_argument("--format", choices=("text", "machine"), default="text")
    chk.add_argument("--out")
    chk.set_defaults(func=_cmd_check)

    ver = sub.add_parser("verify-witness", help="recompute one witness of a machine report")
    ver.add_argument("report")
    ver.add_argument("--index", type=int, required=True)
    ver.set_defaults(func=_cmd_verify_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
