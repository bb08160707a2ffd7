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

"""Differential suites comparing every kernel against an independent oracle."""

from __future__ import annotations

import functools
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .fp_multiplier import ExceptionFlag, multiply
from .karatsuba import (
    KaratsubaTrace,
    clear_base_cache,
    karatsuba,
    karatsuba_stats,
)
from .mode_control import auto_select, resolve_mode
from .oracle import exact_product, reference_product, relative_error, word_value
from .urdhva import urdhva_mul, urdhva_stats
from .word_format import (
    CONCRETE_MODES,
    MANTISSA_BITS,
    ModeId,
    Word67,
    decode_word,
    encode_word,
    mode_config,
)

logger = logging.getLogger(__name__)

KARATSUBA_WIDTHS = (8, 9, 16, 17, 24, 32, 37, 53, 64)
STRUCTURE_WIDTHS = (8, 16, 32, 53, 64)
AUTO_DIRECTED = (
    (7, ModeId.M2),
    (15, ModeId.M3),
    (22, ModeId.M4),
    (35, ModeId.M5),
    (52, ModeId.M6),
)

# mode-6 pairs generated and checked per worker task
RTZ_CHUNK = 10_000

# exponent windows keeping every product inside the normal range
_SAFE_EXPONENTS: Dict[ModeId, Tuple[int, int]] = {
    ModeId.M2: (64, 190),
    ModeId.M3: (64, 190),
    ModeId.M4: (64, 190),
    ModeId.M5: (64, 190),
    ModeId.M6: (512, 1534),
}


@dataclass(frozen=True)
class SelftestConfig:
    seed: int = 20240627
    karatsuba_samples: int = 2000
    rtz_samples: int = 5000
    error_samples: int = 2000
    exception_samples: int = 2000
    auto_samples: int = 10000
    jobs: int = 1
    rtz_time_limit: Optional[float] = None

    def __post_init__(self) -> None:
        for name in (
            "karatsuba_samples",
            "rtz_samples",
            "error_samples",
            "exception_samples",
            "auto_samples",
            "jobs",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"SelftestConfig {name} must be positive")

    @classmethod
    def quick(cls) -> SelftestConfig:
        return cls(
            karatsuba_samples=100,
            rtz_samples=200,
            error_samples=200,
            exception_samples=200,
            auto_samples=500,
        )

    @classmethod
    def acceptance(cls) -> SelftestConfig:
        """Counts of the release gate: 10^5 pairs per Karatsuba width, 10^6 in M6."""
        return cls(
            karatsuba_samples=100_000,
            rtz_samples=1_000_000,
            error_samples=10_000,
            exception_samples=10_000,
            auto_samples=10_000,
            jobs=os.cpu_count() or 1,
            rtz_time_limit=60.0,
        )

    def with_samples(self, samples: int) -> SelftestConfig:
        return replace(
            self,
            karatsuba_samples=samples,
            rtz_samples=samples,
            error_samples=samples,
            exception_samples=samples,
            auto_samples=samples,
        )


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: int = 0
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def check(self, ok: bool, detail: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail()

    def merge(self, other: SuiteReport) -> None:
        self.checked += other.checked
        self.failures += other.failures
        if self.first_failure is None:
            self.first_failure = other.first_failure

    def to_line(self) -> str:
        if self.passed:
            return f"{self.name}: PASS ({self.checked} checked)"
        return (
            f"{self.name}: FAIL ({self.failures}/{self.checked}) "
            f"first={self.first_failure}"
        )


@dataclass
class SelftestReport:
    suites: List[SuiteReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)


def random_bits(rng: np.random.Generator, bits: int, count: int) -> List[int]:
    """``count`` uniform integers of ``bits`` bits, assembled from 32-bit draws."""
    chunks = (bits + 31) // 32
    draws = rng.integers(0, 1 << 32, size=(count, chunks), dtype=np.uint64)
    mask = (1 << bits) - 1
    values = []
    for row in draws.tolist():
        value = 0
        for chunk in row:
            value = (value << 32) | int(chunk)
        values.append(value & mask)
    return values


def _random_normal_words(
    rng: np.random.Generator, mode: ModeId, count: int
) -> List[Word67]:
    lo, hi = _SAFE_EXPONENTS[mode]
    exponents = rng.integers(lo, hi + 1, size=count).tolist()
    signs = rng.integers(0, 2, size=count).tolist()
    fractions = random_bits(rng, MANTISSA_BITS, count)
    return [encode_word(mode, s, e, f) for s, e, f in zip(signs, exponents, fractions)]


def suite_urdhva_4x4(config: SelftestConfig, rng: np.random.Generator) -> SuiteReport:
    report = SuiteReport("urdhva-4x4")
    for a in range(16):
        for b in range(16):
            p = urdhva_mul(a, b, 4)
            report.check(
                p == a * b and (p & 1) == (a & b & 1),
                lambda: f"{a}*{b}={p}",
            )
    return report


def suite_urdhva_8x8(config: SelftestConfig, rng: np.random.Generator) -> SuiteReport:
    report = SuiteReport("urdhva-8x8")
    operands = np.arange(256, dtype=np.int64)
    table = np.outer(operands, operands).tolist()
    for a in range(256):
        row = table[a]
        for b in range(256):
            p = urdhva_mul(a, b, 8)
            report.check(p == row[b], lambda: f"{a}*{b}={p}")
    return report


def suite_urdhva_adders(
    config: SelftestConfig, rng: np.random.Generator
) -> SuiteReport:
    report = SuiteReport("urdhva-adders")
    for n, expected in ((4, 6), (8, 14)):
        adders = urdhva_stats(n).adders
        report.check(adders == expected, lambda: f"n={n} adders={adders}")
    return report


def suite_karatsuba_oracle(
    config: SelftestConfig, rng: np.random.Generator
) -> SuiteReport:
    report = SuiteReport("karatsuba-oracle")
    clear_base_cache()
    for n in KARATSUBA_WIDTHS:
        top = (1 << n) - 1
        xs = random_bits(rng, n, config.karatsuba_samples) + [0, top, top]
        ys = random_bits(rng, n, config.karatsuba_samples) + [top, 0, top]
        for x, y in zip(xs, ys):
            p = karatsuba(x, y, n)
            report.check(p == x * y, lambda: f"n={n} {x:#x}*{y:#x}")
    return report


def suite_karatsuba_structure(
    config: SelftestConfig, rng: np.random.Generator
) -> SuiteReport:
    report = SuiteReport("karatsuba-structure")
    for n in STRUCTURE_WIDTHS:
        trace = KaratsubaTrace()
        top = (1 << n) - 1
        karatsuba(top, top, n, trace)
        stats = karatsuba_stats(n)
        report.check(
            trace.base_multiplies == stats.base_multiplies == 3**stats.depth
            and trace.depth == stats.depth
            and trace.add_ops == stats.add_ops,
            lambda: f"n={n} traced={trace} expected={stats}",
        )
    return report


def _mode6_rtz_chunk(seed: int, index: int, count: int) -> SuiteReport:
    report = SuiteReport("mode6-rtz")
    rng = np.random.default_rng([seed, index])
    xs = _random_normal_words(rng, ModeId.M6, count)
    ys = _random_normal_words(rng, ModeId.M6, count)
    for a, b in zip(xs, ys):
        result = multiply(a, b)
        expected = reference_product(a, b)
        report.check(
            expected is not None
            and result.flag is ExceptionFlag.NORMAL
            and result.word == expected,
            lambda: f"{a}*{b} -> {result.word} expected {expected}",
        )
    return report


def suite_mode6_rtz(config: SelftestConfig, rng: np.random.Generator) -> SuiteReport:
    """Random normal M6 pairs against the integer oracle.

    Pairs are drawn per chunk from ``config.seed`` so the vectors do not
    depend on ``config.jobs``.
    """
    report = SuiteReport("mode6-rtz")
    started = time.perf_counter()
    starts = range(0, config.rtz_samples, RTZ_CHUNK)
    sizes = [min(RTZ_CHUNK, config.rtz_samples - start) for start in starts]
    task = functools.partial(_mode6_rtz_chunk, config.seed)
    if config.jobs > 1 and len(sizes) > 1:
        logger.info("mode6-rtz: %d chunks on %d workers", len(sizes), config.jobs)
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            parts = list(pool.map(task, range(len(sizes)), sizes))
    else:
        parts = [task(index, size) for index, size in enumerate(sizes)]
    for part in parts:
        report.merge(part)
    if config.rtz_time_limit is not None:
        elapsed = time.perf_counter() - started
        report.check(
            elapsed <= config.rtz_time_limit,
            lambda: f"took {elapsed:.1f}s, limit {config.rtz_time_limit:.0f}s",
        )
    return report


def suite_per_mode_error(
    config: SelftestConfig, rng: np.random.Generator
) -> SuiteReport:
    report = SuiteReport("per-mode-error")
    max_errors = []
    for mode in CONCRETE_MODES:
        m = mode_config(mode).mantissa_width
        bound = Fraction(1, 1 << (m - 2))
        worst = Fraction(0)
        xs = _random_normal_words(rng, mode, config.error_samples)
        ys = _random_normal_words(rng, mode, config.error_samples)
        for a, b in zip(xs, ys):
            value = word_value(multiply(a, b).word)
            exact = exact_product(a, b)
            assert value is not None and exact is not None
            error = relative_error(value, exact)
            worst = max(worst, error)
            report.check(
                error <= bound, lambda: f"{mode} {a}*{b} rel={float(error):.3e}"
            )
        logger.debug("%s max relative error %.3e", mode, float(worst))
        max_errors.append((mode, worst))

    for (mode_a, err_a), (mode_b, err_b) in zip(max_errors, max_errors[1:]):
        report.check(
            err_b <= err_a,
            lambda: f"max error grew from {mode_a} ({float(err_a):.3e}) "
            f"to {mode_b} ({float(err_b):.3e})",
        )
    return report


def _check_encoding(report: SuiteReport, a: Word67, b: Word67) -> None:
    result = multiply(a, b)
    d = decode_word(result.word)
    cfg = mode_config(result.resolved_mode)
    mant = d.mantissa_field
    flag = result.flag
    if flag is ExceptionFlag.ZERO:
        ok = d.exponent_field == 0 and mant == 0
    elif flag is ExceptionFlag.DENORMAL:
        ok = d.exponent_field == 0 and mant != 0
    elif flag is ExceptionFlag.INFINITY:
        ok = d.exponent_field == cfg.exp_all_ones and mant == 0
    elif flag is ExceptionFlag.NAN:
        ok = d.exponent_field == cfg.exp_all_ones and mant != 0
    else:
        ok = 0 < d.exponent_field < cfg.exp_all_ones
    if flag is not ExceptionFlag.NAN:
        ok = ok and d.sign == a.sign ^ b.sign
    ok = ok and len(result.flags) == 1
    report.check(ok, lambda: f"{a}*{b} -> {result.to_line()}")


def suite_exceptions(config: SelftestConfig, rng: np.random.Generator) -> SuiteReport:
    report = SuiteReport("exceptions")
    for mode in CONCRETE_MODES:
        cfg = mode_config(mode)
        top = 1 << (MANTISSA_BITS - 1)  # 1.5
        big = cfg.exp_all_ones - cfg.bias // 2
        small = cfg.bias // 3
        one = encode_word(mode, 0, cfg.bias, 0)
        w = functools.partial(encode_word, mode)
        inf = cfg.exp_all_ones
        directed = [
            (one, w(1, 0, 0), ExceptionFlag.ZERO),
            (w(0, big, 0), w(0, big, 0), ExceptionFlag.INFINITY),
            (w(0, big, top), w(0, big, top), ExceptionFlag.NAN),
            (w(0, small, top), w(0, small, top), ExceptionFlag.DENORMAL),
            (w(0, small, 0), w(0, small, 0), ExceptionFlag.ZERO),
            (w(0, inf, top), one, ExceptionFlag.NAN),
            (w(0, inf, 0), w(0, 0, 0), ExceptionFlag.NAN),
            (w(1, inf, 0), one, ExceptionFlag.INFINITY),
        ]
        for a, b, expected in directed:
            flag = multiply(a, b).flag
            report.check(
                flag is expected, lambda: f"{mode} {a}*{b} -> {flag}, want {expected}"
            )
            _check_encoding(report, a, b)

        # exponent sums straddling the zero and all-ones boundaries
        count = config.exception_samples
        low = rng.integers(0, cfg.bias // 2 + 2, size=count).tolist()
        high = rng.integers(cfg.bias, cfg.exp_all_ones + 1, size=count).tolist()
        fractions = random_bits(rng, MANTISSA_BITS, 2 * count)
        signs = rng.integers(0, 2, size=2 * count).tolist()
        for i in range(count):
            e = low[i] if i % 2 else high[i]
            a = encode_word(mode, signs[2 * i], e, fractions[2 * i])
            b = encode_word(mode, signs[2 * i + 1], e, fractions[2 * i + 1])
            _check_encoding(report, a, b)
    return report


def suite_auto_mode(config: SelftestConfig, rng: np.random.Generator) -> SuiteReport:
    report = SuiteReport("auto-mode")
    for bits, expected in AUTO_DIRECTED:
        mantissa = ((1 << bits) - 1) << (MANTISSA_BITS - bits)
        chosen = auto_select(mantissa, 0)
        report.check(chosen is expected, lambda: f"{bits} bits -> {chosen}")
        # auto words carry double exponents; 1023 is 2**0
        a = encode_word(ModeId.AUTO, 0, 1023, mantissa)
        b = encode_word(ModeId.AUTO, 0, 1023, 0)
        resolved = resolve_mode(a, b).mode
        report.check(resolved is expected, lambda: f"{bits} bits resolved {resolved}")
        value = word_value(multiply(a, b).word)
        report.check(
            value == exact_product(a, b), lambda: f"{bits} bits auto product {value}"
        )

    mantissas = random_bits(rng, MANTISSA_BITS, config.auto_samples)
    extras = random_bits(rng, MANTISSA_BITS, config.auto_samples)
    for mantissa, extra in zip(mantissas, extras):
        # keep only bits below the current lowest 1
        lowest = mantissa & -mantissa
        widened = mantissa | (extra & (lowest - 1)) if lowest else extra
        before = auto_select(mantissa, 0)
        after = auto_select(widened, 0)
        report.check(
            after.value >= before.value,
            lambda: f"{mantissa:#x} -> {before}, {widened:#x} -> {after}",
        )
    return report


SUITES: List[Callable[[SelftestConfig, np.random.Generator], SuiteReport]] = [
    suite_urdhva_4x4,
    suite_urdhva_8x8,
    suite_urdhva_adders,
    suite_karatsuba_oracle,
    suite_karatsuba_structure,
    suite_mode6_rtz,
    suite_per_mode_error,
    suite_exceptions,
    suite_auto_mode,
]


def run_selftest(config: Optional[SelftestConfig] = None) -> SelftestReport:
    config = config or SelftestConfig()
    rng = np.random.default_rng(config.seed)
    report = SelftestReport()
    for suite in SUITES:
        started = time.perf_counter()
        try:
            result = suite(config, rng)
        except Exception as e:
            logger.error("%s raised %r", suite.__name__, e)
            result = SuiteReport(suite.__name__[len("suite_") :].replace("_", "-"))
            result.check(False, lambda: f"raised {e!r}")
        logger.info(
            "%s finished in %.2fs (%d checked)",
            result.name,
            time.perf_counter() - started,
            result.checked,
        )
        report.suites.append(result)
    return report
