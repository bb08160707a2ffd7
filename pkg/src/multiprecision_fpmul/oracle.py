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

"""Reference model used to check the multiplier.

Everything here is computed with Python integers and exact fractions, never
with the Karatsuba/Urdhva kernels, so it can serve as an independent oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .exceptions import ExponentOutOfRange
from .mode_control import resolve_mode
from .word_format import (
    MANTISSA_BITS,
    ModeId,
    Word67,
    decode_word,
    encode_word,
    mode_config,
    visible_mantissa,
)

_DOUBLE_BIAS = 1023
_DOUBLE_EXP_ALL_ONES = 0x7FF
_LOW_64 = (1 << 64) - 1


def _concrete(mode: ModeId) -> ModeId:
    # auto-mode words carry the double-precision layout
    return ModeId.M6 if mode is ModeId.AUTO else mode


def word_value(
    w: Word67, mode: Optional[ModeId] = None, full_precision: bool = False
) -> Optional[Fraction]:
    """Exact value of a word, or None for Infinity/NaN encodings.

    ``mode`` overrides the word's own mode bits. Custom modes read only the
    high ``m`` mantissa bits unless ``full_precision`` is set.
    """
    decoded = decode_word(w)
    cfg = mode_config(_concrete(mode or decoded.mode))
    if decoded.exponent_field == cfg.exp_all_ones:
        return None
    if full_precision:
        fraction = Fraction(decoded.mantissa_field, 1 << MANTISSA_BITS)
    else:
        fraction = Fraction(
            visible_mantissa(decoded.mantissa_field, cfg), 1 << cfg.mantissa_width
        )
    if decoded.exponent_field == 0:
        magnitude = fraction * Fraction(2) ** (1 - cfg.bias)
    else:
        magnitude = (1 + fraction) * Fraction(2) ** (decoded.exponent_field - cfg.bias)
    return -magnitude if decoded.sign else magnitude


def exact_product(a: Word67, b: Word67) -> Optional[Fraction]:
    """Product of the untruncated inputs in the mode the controller resolves.

    Auto-mode inputs are valued as the doubles they encode, whatever mode the
    controller picks.
    """
    mode = resolve_mode(a, b).mode
    if decode_word(a).mode is ModeId.AUTO:
        mode = ModeId.M6
    va = word_value(a, mode, full_precision=True)
    vb = word_value(b, mode, full_precision=True)
    if va is None or vb is None:
        return None
    return va * vb


def relative_error(result: Fraction, exact: Fraction) -> Fraction:
    if exact == 0:
        return Fraction(0) if result == 0 else Fraction(1)
    return abs(result - exact) / abs(exact)


def rtz_significand_product(sa: int, sb: int, keep_bits: int) -> int:
    """Wide-integer product truncated to its ``keep_bits`` leading bits."""
    p = sa * sb
    drop = p.bit_length() - keep_bits
    return p >> drop if drop > 0 else p


def reference_product(a: Word67, b: Word67) -> Optional[Word67]:
    """Truncating product of two normal words by plain integer arithmetic.

    Returns None when an input is not normal or the product leaves the normal
    exponent range; those cases are covered by the exception rules instead.
    """
    mode = resolve_mode(a, b).mode
    cfg = mode_config(mode)
    m = cfg.mantissa_width
    da, db = decode_word(a), decode_word(b)
    if da.mode is ModeId.AUTO and mode.is_custom:
        shift = _DOUBLE_BIAS - cfg.bias
        da = da._replace(exponent_field=da.exponent_field - shift)
        db = db._replace(exponent_field=db.exponent_field - shift)
    for d in (da, db):
        if not 0 < d.exponent_field < cfg.exp_all_ones:
            return None

    sa = (1 << m) | visible_mantissa(da.mantissa_field, cfg)
    sb = (1 << m) | visible_mantissa(db.mantissa_field, cfg)
    kept = rtz_significand_product(sa, sb, m + 1)
    carry = 1 if (sa * sb).bit_length() == 2 * m + 2 else 0
    exponent = da.exponent_field + db.exponent_field - cfg.bias + carry
    if not 0 < exponent < cfg.exp_all_ones:
        return None
    mantissa = kept & ((1 << m) - 1)
    return encode_word(
        mode, da.sign ^ db.sign, exponent, mantissa << cfg.mantissa_shift
    )


def word_from_double(x: float, mode: ModeId = ModeId.M6) -> Word67:
    """Encode a Python float, re-biasing the exponent for custom modes."""
    bits = int(np.array(x, dtype=np.float64).view(np.uint64))
    sign = bits >> 63
    exponent = (bits >> MANTISSA_BITS) & _DOUBLE_EXP_ALL_ONES
    fraction = bits & ((1 << MANTISSA_BITS) - 1)
    if not mode.is_custom:
        return encode_word(mode, sign, exponent, fraction)

    cfg = mode_config(mode)
    if exponent == _DOUBLE_EXP_ALL_ONES:
        custom_exponent = cfg.exp_all_ones
    elif exponent == 0:
        if fraction:
            raise ExponentOutOfRange(exponent, mode)
        custom_exponent = 0
    else:
        custom_exponent = exponent - _DOUBLE_BIAS + cfg.bias
        if not 0 < custom_exponent < cfg.exp_all_ones:
            raise ExponentOutOfRange(custom_exponent, mode)
    return encode_word(mode, sign, custom_exponent, fraction)


def double_from_word(w: Word67) -> float:
    decoded = decode_word(w)
    if not decoded.mode.is_custom:
        return float(np.array(w.raw & _LOW_64, dtype=np.uint64).view(np.float64))
    value = word_value(w)
    if value is not None:
        return float(value)
    if visible_mantissa(decoded.mantissa_field, mode_config(decoded.mode)):
        return float("nan")
    return float("-inf") if decoded.sign else float("inf")
