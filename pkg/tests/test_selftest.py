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

from dataclasses import replace

import numpy as np
import pytest

from multiprecision_fpmul import selftest, urdhva
from multiprecision_fpmul.selftest import (
    SUITES,
    SelftestConfig,
    SuiteReport,
    random_bits,
    run_selftest,
)


@pytest.fixture(scope="module")
def quick_report():
    return run_selftest(SelftestConfig.quick())


class TestConfig:
    def test_quick_is_smaller(self):
        full, quick = SelftestConfig(), SelftestConfig.quick()
        assert quick.seed == full.seed
        assert quick.rtz_samples < full.rtz_samples
        assert quick.auto_samples < full.auto_samples

    def test_with_samples(self):
        config = SelftestConfig().with_samples(10000)
        assert config.rtz_samples == config.karatsuba_samples == 10000

    def test_positive(self):
        with pytest.raises(ValueError, match="rtz_samples"):
            SelftestConfig(rtz_samples=0)
        with pytest.raises(ValueError, match="jobs"):
            SelftestConfig(jobs=0)

    def test_acceptance_counts(self):
        config = SelftestConfig.acceptance()
        assert config.karatsuba_samples == 100_000
        assert config.rtz_samples == 1_000_000
        assert config.rtz_time_limit == 60.0
        assert config.jobs >= 1


class TestReports:
    def test_suite_line(self):
        report = SuiteReport("demo")
        report.check(True, lambda: "unused")
        assert report.to_line() == "demo: PASS (1 checked)"
        report.check(False, lambda: "first")
        report.check(False, lambda: "second")
        assert report.to_line() == "demo: FAIL (2/3) first=first"

    def test_merge(self):
        first, second = SuiteReport("demo"), SuiteReport("demo")
        first.check(True, lambda: "unused")
        second.check(False, lambda: "late")
        first.merge(second)
        assert (first.checked, first.failures, first.first_failure) == (2, 1, "late")

    def test_random_bits_width(self):
        rng = np.random.default_rng(1)
        values = random_bits(rng, 53, 500)
        assert len(values) == 500
        assert all(0 <= v < 1 << 53 for v in values)
        assert max(values) >= 1 << 52


class TestRun:
    def test_every_suite_runs(self, quick_report):
        assert len(quick_report.suites) == len(SUITES)
        assert all(suite.checked > 0 for suite in quick_report.suites)

    def test_all_pass(self, quick_report):
        failures = [s.to_line() for s in quick_report.suites if not s.passed]
        assert failures == []
        assert quick_report.passed

    def test_exhaustive_counts(self, quick_report):
        by_name = {s.name: s for s in quick_report.suites}
        assert by_name["urdhva-4x4"].checked == 256
        assert by_name["urdhva-8x8"].checked == 65536

    def test_faulty_reduction_detected(self, monkeypatch):
        monkeypatch.setattr(urdhva, "urdhva_reduce", lambda cols: cols.value() + 1)
        report = run_selftest(SelftestConfig.quick())
        assert not report.passed
        failed = {s.name for s in report.suites if not s.passed}
        assert {"urdhva-4x4", "urdhva-8x8", "karatsuba-oracle"} <= failed

    def test_crashing_suite_fails(self, monkeypatch):
        def boom(config, rng):
            raise RuntimeError("kaput")

        boom.__name__ = "suite_boom"
        monkeypatch.setattr(selftest, "SUITES", [boom])
        report = run_selftest(SelftestConfig.quick())
        assert report.suites[0].name == "boom"
        assert report.suites[0].first_failure == "raised RuntimeError('kaput')"


class TestMode6Suite:
    def test_chunks_independent_of_jobs(self, monkeypatch):
        monkeypatch.setattr(selftest, "RTZ_CHUNK", 50)
        config = SelftestConfig.quick()
        rng = np.random.default_rng(0)
        serial = selftest.suite_mode6_rtz(config, rng)
        parallel = selftest.suite_mode6_rtz(replace(config, jobs=2), rng)
        assert serial == parallel
        assert serial.checked == 200
        assert serial.passed

    def test_time_limit(self):
        config = replace(SelftestConfig.quick(), rtz_time_limit=0.0)
        report = selftest.suite_mode6_rtz(config, np.random.default_rng(0))
        assert report.checked == 201
        assert report.first_failure.startswith("took ")
