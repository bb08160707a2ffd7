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

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exceptions import ExponentOutOfRange, ModeMismatch
from .word_format import (
    MANTISSA_BITS,
    DecodedWord,
    ModeConfig,
    ModeId,
    Word67,
    decode_word,
    mode_config,
)

logger = logging.getLogger(__name__)

_MANTISSA_MASK = (1 << MANTISSA_BITS) - 1

# (exclusive upper bound on significant bits, mode), smallest mode first
_AUTO_THRESHOLDS: List[Tuple[int, ModeId]] = [
    (8, ModeId.M2),
    (16, ModeId.M3),
    (23, ModeId.M4),
    (36, ModeId.M5),
]

class RoundingPolicy(enum.Enum):
    """How input mantissas are narrowed to the mode width."""

    TRUNCATE = "truncate"
    ROUND_NEAREST_EVEN = "nearest-even"

    @classmethod
    def from_name(cls, name: str) -> RoundingPolicy:
        for policy in cls:
            if policy.value == name.strip().lower():
                return policy
        choices = ", ".join(p.value for p in cls)
        raise ValueError(
            f"Unknown rounding policy '{name}'; expected one of: {choices}"
        )


DEFAULT_ROUNDING_POLICY: RoundingPolicy = RoundingPolicy.TRUNCATE


@dataclass(frozen=True)
class ModeResolution:
    mode: ModeId
    auto_chosen: bool = False
    per_operand_bits: Tuple[int, int] = (0, 0)

    def __post_init__(self) -> None:
        if self.mode is ModeId.AUTO:
            raise ValueError("ModeResolution mode must be a concrete mode")


@dataclass(frozen=True)
class Truncation:
    mantissa: int
    exponent_increment: int = 0


def significant_width(mantissa: int) -> int:
    """Number of stored mantissa bits the auto-mode controller must keep.

    The prefix a mode must keep ends at the last 1-bit followed only by zeros,
    which is the lowest 1-bit of the field. The hidden bit is not counted.
    """
    mantissa &= _MANTISSA_MASK
    if mantissa == 0:
        return 0
    lowest_one = (mantissa & -mantissa).bit_length() - 1
    return MANTISSA_BITS - lowest_one


def auto_select(mant_a: int, mant_b: int) -> ModeId:
    width = max(significant_width(mant_a), significant_width(mant_b))
    for bound, mode in _AUTO_THRESHOLDS:
        if width < bound:
            return mode
    return ModeId.M6


def narrow_auto_exponent(
    exponent_field: int, mantissa_field: int, mode: ModeId
) -> Optional[int]:
    """Re-bias a double-layout exponent for a custom mode.

    Returns None when the operand's value has no place in the mode's 8-bit
    exponent range.
    """
    wide = mode_config(ModeId.M6)
    cfg = mode_config(mode)
    if exponent_field == wide.exp_all_ones:
        return cfg.exp_all_ones
    if exponent_field == 0:
        return 0 if mantissa_field == 0 else None
    narrowed = exponent_field - wide.bias + cfg.bias
    if not 0 < narrowed < cfg.exp_all_ones:
        return None
    return narrowed


def auto_operand(decoded: DecodedWord, mode: ModeId) -> DecodedWord:
    """An auto-mode word's fields in the format of the mode it resolved to."""
    if not mode.is_custom:
        return decoded
    exponent = narrow_auto_exponent(
        decoded.exponent_field, decoded.mantissa_field, mode
    )
    if exponent is None:
        raise ExponentOutOfRange(decoded.exponent_field, mode)
    return decoded._replace(mode=mode, exponent_field=exponent)


def resolve_mode(a: Word67, b: Word67) -> ModeResolution:
    da = decode_word(a)
    db = decode_word(b)
    if da.mode is not db.mode:
        raise ModeMismatch(da.mode, db.mode)
    if da.mode is not ModeId.AUTO:
        return ModeResolution(da.mode)

    bits = (significant_width(da.mantissa_field), significant_width(db.mantissa_field))
    mode = auto_select(da.mantissa_field, db.mantissa_field)
    if mode.is_custom and any(
        narrow_auto_exponent(d.exponent_field, d.mantissa_field, mode) is None
        for d in (da, db)
    ):
        mode = ModeId.M6
    logger.debug("auto mode selected %s for significant widths %s", mode, bits)
    return ModeResolution(mode, auto_chosen=True, per_operand_bits=bits)


def truncate_operand(
    mantissa: int,
    cfg: ModeConfig,
    policy: RoundingPolicy = DEFAULT_ROUNDING_POLICY,
) -> Truncation:
    """Narrow a 52-bit stored fraction to the mode's ``m`` high bits.

    Under ``ROUND_NEAREST_EVEN`` a carry out of the ``m``-bit fraction means the
    significand reached the next power of two: the fraction wraps to zero and
    the caller must add ``exponent_increment`` to the operand exponent.
    """
    mantissa &= _MANTISSA_MASK
    drop = cfg.mantissa_shift
    if drop == 0:
        return Truncation(mantissa)

    kept = mantissa >> drop
    if policy is RoundingPolicy.TRUNCATE:
        return Truncation(kept)

    rest = mantissa & ((1 << drop) - 1)
    half = 1 << (drop - 1)
    if rest > half or (rest == half and kept & 1):
        kept += 1
    if kept >> cfg.mantissa_width:
        return Truncation(kept & ((1 << cfg.mantissa_width) - 1), 1)
    return Truncation(kept)
