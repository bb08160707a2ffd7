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

import io

import numpy as np
import pytest

from multiprecision_fpmul.batch import parse_batch_line, run_batch
from multiprecision_fpmul.exceptions import BatchParseError
from multiprecision_fpmul.fp_multiplier import FpMultiplier
from multiprecision_fpmul.oracle import reference_product, word_from_double
from multiprecision_fpmul.word_format import ModeId, encode_word

ONE = word_from_double(1.0).to_hex()
TWO = word_from_double(2.0).to_hex()
M2_ONE = encode_word(ModeId.M2, 0, 127, 0).to_hex()


def golden_vectors(count: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    lines = []
    for _ in range(count):
        a, b = (
            encode_word(
                ModeId.M6,
                int(rng.integers(0, 2)),
                int(rng.integers(900, 1101)),
                int(rng.integers(0, 1 << 52)),
            )
            for _ in range(2)
        )
        lines.append(f"{a} {b} {reference_product(a, b)}")
    return lines


class TestParse:
    def test_blank_and_comment(self):
        assert parse_batch_line("   \n", 1) is None
        assert parse_batch_line("# header", 2) is None

    def test_trailing_comment(self):
        record = parse_batch_line(f"{ONE} {TWO}  # one times two", 3)
        assert record is not None
        assert record.expected is None
        assert record.a.to_hex() == ONE

    def test_field_count(self):
        with pytest.raises(BatchParseError, match="line 4: expected"):
            parse_batch_line(ONE, 4)

    def test_bad_hex(self):
        with pytest.raises(BatchParseError, match="line 5"):
            parse_batch_line(f"{ONE} xyz", 5)


class TestRunBatch:
    @pytest.fixture
    def multiplier(self) -> FpMultiplier:
        return FpMultiplier()

    def run(self, lines, multiplier, **kwargs):
        out, err = io.StringIO(), io.StringIO()
        summary = run_batch(lines, multiplier, out, err, **kwargs)
        return summary, out.getvalue().splitlines(), err.getvalue().splitlines()

    def test_empty(self, multiplier):
        summary, out, err = self.run([], multiplier)
        assert out == ["total=0 pass=0 fail=0"]
        assert err == []
        assert summary.ok

    def test_golden_file(self, multiplier):
        summary, out, _ = self.run(golden_vectors(100), multiplier)
        assert out[-1] == "total=100 pass=100 fail=0"
        assert all(line.endswith("PASS") for line in out[:-1])
        assert summary.passed == 100

    def test_failure_reported(self, multiplier):
        summary, out, _ = self.run([f"{ONE} {ONE} {TWO}"], multiplier)
        assert out[0].endswith(f"expected={TWO} FAIL")
        assert out[-1] == "total=1 pass=0 fail=1"
        assert not summary.ok

    def test_malformed_line_continues(self, multiplier):
        lines = [f"{ONE} {TWO} {TWO}"] * 9
        lines.insert(4, "not a vector")
        summary, out, err = self.run(lines, multiplier)
        assert len(out) == 10
        assert out[-1] == "total=9 pass=9 fail=0"
        assert len(err) == 1
        assert err[0].startswith("error: line 5:")
        assert summary.errors == 1

    def test_strict_aborts(self, multiplier):
        with pytest.raises(BatchParseError):
            self.run([f"{ONE} {TWO}", "bad"], multiplier, strict=True)

    def test_mode_mismatch_line(self, multiplier):
        summary, out, err = self.run([f"{M2_ONE} {ONE} {ONE}"], multiplier)
        assert err == [
            "error: line 1: mode select error: operand modes differ (M2 vs M6)"
        ]
        assert out == ["total=1 pass=0 fail=1"]

    def test_rejected_line_without_expected_fails_batch(self, multiplier):
        summary, out, err = self.run([f"{M2_ONE} {ONE}", f"{ONE} {ONE}"], multiplier)
        assert out[-1] == "total=2 pass=0 fail=0"
        assert err[0].startswith("error: line 1: mode select error")
        assert summary.errors == 1
        assert not summary.ok

    def test_prefixed_hex_is_malformed(self, multiplier):
        summary, _, err = self.run([f"0x{ONE[2:]} {ONE}"], multiplier)
        assert summary.errors == 1
        assert err[0].startswith("error: line 1:")

    def test_workers_keep_order(self, multiplier):
        lines = golden_vectors(200, seed=11)
        _, sequential, _ = self.run(lines, multiplier)
        _, parallel, _ = self.run(lines, multiplier, jobs=2)
        assert parallel == sequential
