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

import logging
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multiprecision_fpmul.exceptions import ExponentOutOfRange, ModeMismatch
from multiprecision_fpmul.mode_control import (
    ModeResolution,
    RoundingPolicy,
    Truncation,
    auto_operand,
    auto_select,
    narrow_auto_exponent,
    resolve_mode,
    significant_width,
    truncate_operand,
)
from multiprecision_fpmul.oracle import word_from_double
from multiprecision_fpmul.word_format import (
    CONCRETE_MODES,
    ModeConfig,
    ModeId,
    decode_word,
    encode_word,
    mode_config,
)

TOP_SEVEN = 0b1111111 << 45
MANTISSA_MASK = (1 << 52) - 1


class TestSignificantWidth:
    def test_zero(self):
        assert significant_width(0) == 0

    def test_leading_run(self):
        assert significant_width(TOP_SEVEN) == 7

    def test_gap(self):
        assert significant_width((1 << 51) | (1 << 30)) == 22

    def test_full(self):
        assert significant_width(MANTISSA_MASK) == 52

    @given(st.integers(1, MANTISSA_MASK), st.integers(0, 51))
    def test_low_bits_only_grow(self, mantissa, bit):
        assert significant_width(mantissa | (1 << bit)) >= significant_width(mantissa)


class TestAutoSelect:
    @pytest.mark.parametrize(
        "a,b,mode",
        [
            (0, 0, ModeId.M2),
            (TOP_SEVEN, 0, ModeId.M2),
            (1 << 44, 0, ModeId.M3),
            (0, 1 << 36, ModeId.M4),
            (1 << 30, 0, ModeId.M4),
            (1 << 29, 0, ModeId.M5),
            (1 << 17, 1 << 40, ModeId.M5),
            (1 << 15, 0, ModeId.M6),
            (MANTISSA_MASK, 0, ModeId.M6),
        ],
    )
    def test_thresholds(self, a, b, mode):
        assert auto_select(a, b) is mode

    @given(st.integers(0, MANTISSA_MASK))
    def test_chosen_mode_holds_every_bit(self, mantissa):
        mode = auto_select(mantissa, 0)
        assert mode_config(mode).mantissa_width >= significant_width(mantissa)


class TestResolveMode:
    def test_concrete(self):
        a = encode_word(ModeId.M3, 0, 127, 0)
        resolution = resolve_mode(a, a)
        assert resolution == ModeResolution(ModeId.M3)
        assert not resolution.auto_chosen

    def test_mismatch(self):
        a = encode_word(ModeId.M2, 0, 127, 0)
        b = encode_word(ModeId.M6, 0, 1023, 0)
        with pytest.raises(ModeMismatch, match="mode select error") as exc:
            resolve_mode(a, b)
        assert exc.value.a_mode is ModeId.M2
        assert exc.value.b_mode is ModeId.M6

    def test_auto_zero_mantissas(self):
        a = encode_word(ModeId.AUTO, 0, 0, 0)
        resolution = resolve_mode(a, a)
        assert resolution.mode is ModeId.M2
        assert resolution.auto_chosen
        assert resolution.per_operand_bits == (0, 0)

    @pytest.mark.parametrize(
        "mantissa,mode",
        [(0, ModeId.M2), (1 << 51, ModeId.M2), (1 << 44, ModeId.M3)],
    )
    def test_auto_doubles_narrow(self, mantissa, mode):
        # 1.0, 1.5 and 1 + 2**-8 as doubles
        a = encode_word(ModeId.AUTO, 0, 1023, mantissa)
        assert resolve_mode(a, a).mode is mode

    def test_auto_exponent_out_of_custom_range(self):
        huge = encode_word(ModeId.AUTO, 0, 1023 + 200, 1 << 51)
        one = encode_word(ModeId.AUTO, 0, 1023, 0)
        assert resolve_mode(huge, one).mode is ModeId.M6
        assert resolve_mode(one, huge).mode is ModeId.M6

    def test_auto_double_denormal_needs_double(self):
        tiny = encode_word(ModeId.AUTO, 0, 0, 1 << 51)
        assert resolve_mode(tiny, tiny).mode is ModeId.M6

    def test_auto_tiny_doubles_stay_wide(self):
        a = encode_word(ModeId.AUTO, 0, 200, 1 << 51)
        b = encode_word(ModeId.AUTO, 0, 200, (1 << 51) | 1)
        assert resolve_mode(a, a).mode is ModeId.M6
        assert resolve_mode(b, b).mode is ModeId.M6

    def test_auto_logs_choice(self, caplog):
        a = encode_word(ModeId.AUTO, 0, 1023, TOP_SEVEN)
        with caplog.at_level(logging.DEBUG, logger="multiprecision_fpmul"):
            resolve_mode(a, a)
        assert "auto mode selected M2" in caplog.text

    def test_resolution_rejects_auto(self):
        with pytest.raises(ValueError, match="concrete"):
            ModeResolution(ModeId.AUTO)


class TestNarrowAutoExponent:
    @pytest.mark.parametrize(
        "exponent,mantissa,expected",
        [
            (1023, 0, 127),
            (1023 - 126, 0, 1),
            (1023 + 127, 0, 254),
            (1023 - 127, 0, None),
            (1023 + 128, 0, None),
            (0, 0, 0),
            (0, 1, None),
            (2047, 0, 255),
            (2047, 1 << 51, 255),
        ],
    )
    def test_rebias(self, exponent, mantissa, expected):
        assert narrow_auto_exponent(exponent, mantissa, ModeId.M4) == expected

    def test_auto_operand(self):
        d = decode_word(encode_word(ModeId.AUTO, 1, 1024, 1 << 51))
        narrowed = auto_operand(d, ModeId.M2)
        assert narrowed == (ModeId.M2, 1, 128, 1 << 51)
        assert auto_operand(d, ModeId.M6) is d

    def test_auto_operand_out_of_range(self):
        d = decode_word(encode_word(ModeId.AUTO, 0, 2000, 0))
        with pytest.raises(ExponentOutOfRange):
            auto_operand(d, ModeId.M3)


class TestTruncateOperand:
    @given(st.integers(0, MANTISSA_MASK))
    def test_double_keeps_everything(self, mantissa):
        cfg = mode_config(ModeId.M6)
        for policy in RoundingPolicy:
            assert truncate_operand(mantissa, cfg, policy) == Truncation(mantissa)

    def test_discarded_zero(self):
        cfg = mode_config(ModeId.M2)
        assert truncate_operand(0xFF00000000000, cfg) == Truncation(0xFF)

    def test_truncate_drops_tail(self):
        cfg = mode_config(ModeId.M2)
        assert truncate_operand(0xFF00000000000 | (1 << 43), cfg) == Truncation(0xFF)

    def test_nearest_even_overflow(self):
        cfg = mode_config(ModeId.M2)
        result = truncate_operand(
            0xFF00000000000 | (1 << 43), cfg, RoundingPolicy.ROUND_NEAREST_EVEN
        )
        assert result == Truncation(0, exponent_increment=1)

    def test_nearest_even_ties(self):
        cfg = mode_config(ModeId.M2)
        rne = RoundingPolicy.ROUND_NEAREST_EVEN
        even_tie = (0x10 << 44) | (1 << 43)
        odd_tie = (0x11 << 44) | (1 << 43)
        above = (0x10 << 44) | (1 << 43) | 1
        assert truncate_operand(even_tie, cfg, rne) == Truncation(0x10)
        assert truncate_operand(odd_tie, cfg, rne) == Truncation(0x12)
        assert truncate_operand(above, cfg, rne) == Truncation(0x11)

    @given(st.integers(0, MANTISSA_MASK))
    def test_nearest_even_within_half_ulp(self, mantissa):
        cfg = mode_config(ModeId.M4)
        rounded = truncate_operand(mantissa, cfg, RoundingPolicy.ROUND_NEAREST_EVEN)
        value = (rounded.mantissa + (rounded.exponent_increment << 23)) << 29
        assert abs(value - mantissa) <= 1 << 28

    def test_policy_from_name(self):
        rne = RoundingPolicy.from_name("Nearest-Even")
        assert rne is RoundingPolicy.ROUND_NEAREST_EVEN
        with pytest.raises(ValueError, match="rounding policy"):
            RoundingPolicy.from_name("up")

    def test_nearest_even_exhaustive_four_bits(self):
        cfg = ModeConfig(4, 8, 127)
        rne = RoundingPolicy.ROUND_NEAREST_EVEN
        for v in range(1 << 12):
            # round() on a Fraction breaks ties to even
            kept = round(Fraction(v, 1 << 8))
            if kept == 1 << 4:
                expected = Truncation(0, exponent_increment=1)
            else:
                expected = Truncation(kept)
            assert truncate_operand(v << 40, cfg, rne) == expected, hex(v)

    @given(
        st.sampled_from(CONCRETE_MODES),
        st.floats(min_value=1.0, max_value=2.0, exclude_max=True),
    )
    def test_truncation_error_below_one_ulp(self, mode, x):
        cfg = mode_config(mode)
        m = cfg.mantissa_width
        fraction = word_from_double(x).mantissa_field
        kept = truncate_operand(fraction, cfg).mantissa
        significand = Fraction(x)
        truncated = 1 + Fraction(kept, 1 << m)
        assert truncated <= significand
        assert (significand - truncated) / significand < Fraction(1, 1 << m)
