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

"""Golden-file batches: ``<a_hex> <b_hex> [expected_hex]`` per line."""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, TextIO

from .exceptions import BatchParseError, FpMulError
from .fp_multiplier import FpMultiplier, ProductResult
from .word_format import Word67

logger = logging.getLogger(__name__)

COMMENT_CHAR = "#"


@dataclass(frozen=True)
class BatchRecord:
    line_no: int
    a: Word67
    b: Word67
    expected: Optional[Word67] = None


@dataclass(frozen=True)
class BatchOutcome:
    record: BatchRecord
    result: Optional[ProductResult] = None
    error: Optional[str] = None

    @property
    def passed(self) -> Optional[bool]:
        """None when the record has no expected word to compare against."""
        if self.record.expected is None:
            return None
        return self.result is not None and self.result.word == self.record.expected

    def to_line(self) -> str:
        assert self.result is not None
        line = self.result.to_line()
        if self.record.expected is not None:
            verdict = "PASS" if self.passed else "FAIL"
            line += f" expected={self.record.expected.to_hex()} {verdict}"
        return line


@dataclass
class BatchSummary:
    total: int = 0
    passed: int = 0
    failed: int = 0
    errors: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.errors == 0

    def to_line(self) -> str:
        return f"total={self.total} pass={self.passed} fail={self.failed}"


def parse_batch_line(line: str, line_no: int) -> Optional[BatchRecord]:
    text = line.split(COMMENT_CHAR, 1)[0].strip()
    if not text:
        return None
    fields = text.split()
    if len(fields) not in (2, 3):
        raise BatchParseError(
            line_no,
            f"expected '<a_hex> <b_hex> [expected_hex]', got {len(fields)} fields",
        )
    try:
        words = [Word67.from_hex(f) for f in fields]
    except ValueError as e:
        raise BatchParseError(line_no, str(e)) from e
    return BatchRecord(line_no, *words)


def evaluate_record(record: BatchRecord, multiplier: FpMultiplier) -> BatchOutcome:
    try:
        return BatchOutcome(record, multiplier.multiply(record.a, record.b))
    except FpMulError as e:
        return BatchOutcome(record, error=str(e))


def run_batch(
    lines: Iterable[str],
    multiplier: FpMultiplier,
    out: TextIO,
    err: TextIO,
    strict: bool = False,
    jobs: int = 1,
) -> BatchSummary:
    """Evaluate every record, writing result lines to ``out`` in input order.

    Malformed lines and records the multiplier rejects are reported on ``err``
    and counted in ``errors``; with ``strict`` the first malformed line is
    raised before anything is evaluated.
    """
    summary = BatchSummary()
    records: List[BatchRecord] = []
    for line_no, line in enumerate(lines, start=1):
        try:
            record = parse_batch_line(line, line_no)
        except BatchParseError as e:
            if strict:
                raise
            summary.errors += 1
            err.write(f"error: {e}\n")
            continue
        if record is not None:
            records.append(record)

    evaluate = functools.partial(evaluate_record, multiplier=multiplier)
    if jobs > 1 and len(records) > 1:
        logger.info("evaluating %d records on %d workers", len(records), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(evaluate, records, chunksize=64))
    else:
        outcomes = [evaluate(record) for record in records]

    for outcome in outcomes:
        summary.total += 1
        if outcome.error is not None:
            err.write(f"error: line {outcome.record.line_no}: {outcome.error}\n")
            if outcome.record.expected is not None:
                summary.failed += 1
            else:
                summary.errors += 1
            continue
        out.write(outcome.to_line() + "\n")
        if outcome.passed is True:
            summary.passed += 1
        elif outcome.passed is False:
            summary.failed += 1

    out.write(summary.to_line() + "\n")
    logger.debug(
        "batch summary: %s, %d errors", summary.to_line(), summary.errors
    )
    return summary
