# Copyright 2026 The multiprecision-fpmul Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Command-line front end: ``fpmul encode|decode|mul|batch|stats|selftest``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from typing import List, NoReturn, Optional, Sequence, TextIO

from .batch import run_batch
from .exceptions import FpMulError, ModeMismatch
from .fp_multiplier import FpMultiplier
from .karatsuba import karatsuba_stats
from .mode_control import RoundingPolicy
from .oracle import (
    double_from_word,
    exact_product,
    relative_error,
    word_from_double,
    word_value,
)
from .selftest import SelftestConfig, run_selftest
from .word_format import (
    CONCRETE_MODES,
    ModeId,
    Word67,
    decode_word,
    encode_word,
    mode_config,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MODE_MISMATCH = 2
EXIT_SELFTEST_FAILED = 3

POWER_OF_TWO_WIDTHS = (8, 16, 32, 64)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_literal(text: str) -> int:
    return int(text, 0)


def _add_rounding(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--rounding",
        choices=[p.value for p in RoundingPolicy],
        default=RoundingPolicy.TRUNCATE.value,
        help="Input mantissa narrowing policy (default: truncate)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="fpmul",
        description="Run-time reconfigurable multi-precision floating point multiplier",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sp = subparsers.add_parser("encode", help="Pack fields (or a float) into a word")
    sp.add_argument("mode", help="auto, M2, M3, M4, M5 or M6")
    sp.add_argument("sign", nargs="?", type=_int_literal)
    sp.add_argument("exponent", nargs="?", type=_int_literal)
    sp.add_argument("mantissa", nargs="?", type=_int_literal, help="52-bit field")
    sp.add_argument("--value", type=float, help="Encode a decimal value instead")

    sp = subparsers.add_parser("decode", help="Show the fields of a word")
    sp.add_argument("word", help="17 hex digits")

    sp = subparsers.add_parser("mul", help="Multiply two words")
    sp.add_argument("a", help="17 hex digits")
    sp.add_argument("b", help="17 hex digits")
    _add_rounding(sp)
    sp.add_argument(
        "--compare-oracle",
        action="store_true",
        help="Also print the exact product and the error against it",
    )

    sp = subparsers.add_parser("batch", help="Multiply every vector in a file")
    sp.add_argument("path")
    _add_rounding(sp)
    sp.add_argument("--strict", action="store_true", help="Abort on a malformed line")
    sp.add_argument("--jobs", type=int, default=1, help="Worker processes")

    sp = subparsers.add_parser("stats", help="Structural cost of the multiplier")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--mode", help="Report the significand width of a mode")
    group.add_argument("--width", type=int, help="Report an operand width in bits")
    group.add_argument("--all", action="store_true", help="Table across M2..M6")

    sp = subparsers.add_parser("selftest", help="Run the differential suites")
    scale = sp.add_mutually_exclusive_group()
    scale.add_argument("--quick", action="store_true", help="Reduced random counts")
    scale.add_argument(
        "--acceptance",
        action="store_true",
        help="Release-gate counts, mode 6 suite on every CPU",
    )
    sp.add_argument("--samples", type=int, help="Random cases per suite")
    sp.add_argument("--seed", type=int, help="Random seed")
    sp.add_argument("--jobs", type=int, help="Worker processes for the mode 6 suite")

    return parser


def cmd_encode(args: argparse.Namespace, out: TextIO) -> int:
    mode = ModeId.from_name(args.mode)
    if args.value is not None:
        word = word_from_double(args.value, mode)
    else:
        if None in (args.sign, args.exponent, args.mantissa):
            raise ValueError("encode needs SIGN EXPONENT MANTISSA or --value")
        word = encode_word(mode, args.sign, args.exponent, args.mantissa)
    out.write(word.to_hex() + "\n")
    return EXIT_OK


def describe_word(w: Word67) -> str:
    d = decode_word(w)
    line = (
        f"mode={d.mode} sign={d.sign} exponent={d.exponent_field} "
        f"mantissa={d.mantissa_field:#015x}"
    )
    if d.mode is ModeId.AUTO or word_value(w) is None:
        return line
    return f"{line} value={double_from_word(w)!r}"


def cmd_decode(args: argparse.Namespace, out: TextIO) -> int:
    out.write(describe_word(Word67.from_hex(args.word)) + "\n")
    return EXIT_OK


def cmd_mul(args: argparse.Namespace, out: TextIO) -> int:
    a = Word67.from_hex(args.a)
    b = Word67.from_hex(args.b)
    result = FpMultiplier.from_name(args.rounding).multiply(a, b)
    out.write(result.to_line() + "\n")
    if args.compare_oracle:
        exact = exact_product(a, b)
        value = word_value(result.word)
        if exact is None or value is None:
            out.write("oracle=n/a\n")
        else:
            out.write(
                f"oracle={float(exact)!r} result={float(value)!r} "
                f"abs_err={float(abs(value - exact)):.3e} "
                f"rel_err={float(relative_error(value, exact)):.3e}\n"
            )
    return EXIT_OK


def cmd_batch(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    multiplier = FpMultiplier.from_name(args.rounding)
    with open(args.path, encoding="utf-8") as f:
        summary = run_batch(
            f, multiplier, out, err, strict=args.strict, jobs=max(1, args.jobs)
        )
    return EXIT_OK if summary.ok else EXIT_USAGE


def cmd_stats(args: argparse.Namespace, out: TextIO) -> int:
    if args.all:
        for mode in CONCRETE_MODES:
            width = mode_config(mode).significand_width
            out.write(f"mode={mode} {karatsuba_stats(width).to_line()}\n")
        for width in POWER_OF_TWO_WIDTHS:
            out.write(karatsuba_stats(width).to_line() + "\n")
        return EXIT_OK
    if args.mode is not None:
        width = mode_config(ModeId.from_name(args.mode)).significand_width
    else:
        width = args.width
    out.write(karatsuba_stats(width).to_line() + "\n")
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace, out: TextIO) -> int:
    if args.quick:
        config = SelftestConfig.quick()
    elif args.acceptance:
        config = SelftestConfig.acceptance()
    else:
        config = SelftestConfig()
    if args.samples is not None:
        config = config.with_samples(args.samples)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    if args.jobs is not None:
        config = dataclasses.replace(config, jobs=args.jobs)
    report = run_selftest(config)
    for suite in report.suites:
        out.write(suite.to_line() + "\n")
    out.write(f"selftest: {'PASS' if report.passed else 'FAIL'}\n")
    return EXIT_OK if report.passed else EXIT_SELFTEST_FAILED


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(name)s: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )


def main(
    argv: Optional[Sequence[str]] = None,
    out: Optional[TextIO] = None,
    err: Optional[TextIO] = None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    logger.debug("running %s", args.command)

    try:
        if args.command == "encode":
            return cmd_encode(args, out)
        if args.command == "decode":
            return cmd_decode(args, out)
        if args.command == "mul":
            return cmd_mul(args, out)
        if args.command == "batch":
            return cmd_batch(args, out, err)
        if args.command == "stats":
            return cmd_stats(args, out)
        if args.command == "selftest":
            return cmd_selftest(args, out)
    except ModeMismatch as e:
        err.write(f"error: {e}\n")
        return EXIT_MODE_MISMATCH
    except (FpMulError, ValueError, OSError) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    raise ValueError(f"Invalid command {args.command}")


def run(argv: Optional[List[str]] = None) -> NoReturn:
    sys.exit(main(argv))
