"""Command-line front end: gen, parse, verify, bench, fit.

Exit codes: 0 success / verification passed, 1 runtime failure (I/O,
verification mismatch), 2 usage or malformed input.  The fingerprint
modulus can be overridden with the LZGRAM_MODULUS environment variable,
which exists to make hash collisions observable at tiny moduli.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .adversarial import FAMILIES, ParameterError
from .bench import CSV_HEADER, fit_csv, run_bench
from .fast import parse_fast, parse_las_vegas_detailed
from .formats import (FormatError, read_parsing_file, read_text_file,
                      write_parsing_file, write_text_file)
from .hashing import MERSENNE61, HashConfig
from .model import Scheme, parse_reference, verify_parsing
from .naive import parse_naive

MODULUS_ENV = "LZGRAM_MODULUS"

_RUN_ERROR = 1
_USAGE_ERROR = 2


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _modulus() -> int:
    raw = os.environ.get(MODULUS_ENV)
    if raw is None:
        return MERSENNE61
    try:
        p = int(raw)
    except ValueError:
        raise CliError(f"{MODULUS_ENV} must be an integer, got {raw!r}",
                       _USAGE_ERROR) from None
    if p < 3:
        raise CliError(f"{MODULUS_ENV} must be >= 3", _USAGE_ERROR)
    return p


def _read_text(path: str):
    try:
        text = read_text_file(path)
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}", _RUN_ERROR) from None
    except FormatError as e:
        raise CliError(f"malformed text file {path}: {e}", _USAGE_ERROR) from None
    if len(text) == 0:
        raise CliError(f"empty input: {path}", _USAGE_ERROR)
    return text


def cmd_gen(args) -> int:
    gen, _, _ = FAMILIES[args.family]
    try:
        text = gen(args.k)
    except ParameterError as e:
        raise CliError(str(e), _USAGE_ERROR) from None
    try:
        write_text_file(args.out, text, format=args.format)
    except OSError as e:
        raise CliError(f"cannot write {args.out}: {e}", _RUN_ERROR) from None
    return 0


def _run_algo(text, scheme: Scheme, algo: str, seed: int):
    """Returns (parsing, stats key/value pairs)."""
    p = _modulus()
    if algo == "reference":
        return parse_reference(text, scheme), []
    if algo == "naive":
        res = parse_naive(text, scheme)
        s = res.stats
        return res.parsing, [("symbol_comparisons", s.symbol_comparisons),
                             ("edges_traversed", s.edges_traversed),
                             ("nodes_created", s.nodes_created)]
    if algo == "fast":
        res = parse_fast(text, scheme, cfg=HashConfig.from_seed(seed, p))
        return res.parsing, list(dataclasses.asdict(res.stats).items())
    if algo == "lasvegas":
        det = parse_las_vegas_detailed(lambda: text.symbols, scheme,
                                       seed=seed, p=p)
        pairs = [("attempts", det.attempts)]
        pairs += list(dataclasses.asdict(det.stats).items())
        return det.parsing, pairs
    raise CliError(f"unknown algorithm {algo!r}", _USAGE_ERROR)


def cmd_parse(args) -> int:
    text = _read_text(args.infile)
    scheme = Scheme(args.scheme)
    parsing, stat_pairs = _run_algo(text, scheme, args.algo, args.seed)
    if args.out is not None:
        try:
            write_parsing_file(args.out, parsing)
        except OSError as e:
            raise CliError(f"cannot write {args.out}: {e}", _RUN_ERROR) from None
    if args.stats:
        print(f"n={len(text)}")
        print(f"z={len(parsing)}")
        for key, value in stat_pairs:
            print(f"{key}={value}")
    return 0


def cmd_verify(args) -> int:
    text = _read_text(args.infile)
    try:
        parsing = read_parsing_file(args.parsing)
    except OSError as e:
        raise CliError(f"cannot read {args.parsing}: {e}", _RUN_ERROR) from None
    except FormatError as e:
        raise CliError(f"malformed parsing file {args.parsing}: {e}",
                       _USAGE_ERROR) from None
    scheme = Scheme(args.scheme)
    if parsing.scheme is not scheme:
        raise CliError(f"parsing file is {parsing.scheme.value}, "
                       f"asked to verify as {scheme.value}", _USAGE_ERROR)
    if verify_parsing(text, parsing, strict=args.strict):
        return 0
    print("verification FAILED", file=sys.stderr)
    return _RUN_ERROR


def cmd_bench(args) -> int:
    _, natural_scheme, kmin_allowed = FAMILIES[args.family]
    scheme = Scheme(args.scheme) if args.scheme else natural_scheme
    if args.kmin > args.kmax:
        raise CliError("kmin must not exceed kmax", _USAGE_ERROR)
    try:
        records = run_bench(args.family, args.algo, args.kmin, args.kmax,
                            seed=args.seed, scheme=scheme, p=_modulus())
    except ParameterError as e:
        raise CliError(str(e), _USAGE_ERROR) from None
    lines = [CSV_HEADER] + [r.csv_row() for r in records]
    data = "\n".join(lines) + "\n"
    try:
        with open(args.csv, "w", encoding="ascii") as f:
            f.write(data)
    except OSError as e:
        raise CliError(f"cannot write {args.csv}: {e}", _RUN_ERROR) from None
    return 0


def cmd_fit(args) -> int:
    try:
        with open(args.csv, encoding="ascii") as f:
            lines = f.readlines()
    except OSError as e:
        raise CliError(f"cannot read {args.csv}: {e}", _RUN_ERROR) from None
    try:
        fit = fit_csv(lines, args.x, args.y)
    except ValueError as e:
        raise CliError(str(e), _USAGE_ERROR) from None
    print(f"slope={fit.slope:.6f}")
    print(f"r2={fit.r2:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzgram",
        description="LZD/LZMW parsing, adversarial inputs, and growth fits.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an adversarial family member")
    g.add_argument("--family", required=True, choices=sorted(FAMILIES))
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--format", choices=("sym", "raw"), default="sym")
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("parse", help="parse a text file")
    p.add_argument("--scheme", required=True, choices=("lzd", "lzmw"))
    p.add_argument("--algo", required=True,
                   choices=("reference", "naive", "fast", "lasvegas"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_parse)

    v = sub.add_parser("verify", help="check a parsing against its text")
    v.add_argument("--scheme", required=True, choices=("lzd", "lzmw"))
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--parsing", required=True)
    v.add_argument("--strict", action="store_true",
                   help="also require greedy maximality of every part")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="counter/time growth across k")
    b.add_argument("--family", required=True, choices=sorted(FAMILIES))
    b.add_argument("--scheme", choices=("lzd", "lzmw"))
    b.add_argument("--algo", required=True,
                   choices=("reference", "naive", "fast", "lasvegas"))
    b.add_argument("--kmin", type=int, required=True)
    b.add_argument("--kmax", type=int, required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--csv", required=True, help="output CSV path")
    b.set_defaults(func=cmd_bench)

    f = sub.add_parser("fit", help="log-log slope of one CSV column vs another")
    f.add_argument("--csv", required=True, help="input CSV path")
    f.add_argument("--x", default="n")
    f.add_argument("--y", required=True)
    f.set_defaults(func=cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except CliError as e:
        print(f"lzgram: {e}", file=sys.stderr)
        return e.code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
