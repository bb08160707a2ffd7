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

"""The 67-bit operand word and the per-mode format parameters.

Layout, MSB first::

    | mode (3) | sign (1) | exponent (11) | mantissa (52) |
      66..64      63         62..52          51..0

Custom modes (M2..M5) read only the low 8 bits of the exponent field and the
high ``m`` bits of the mantissa field.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Dict, NamedTuple

from .exceptions import (
    AutoUnresolved,
    ExponentOutOfRange,
    FieldOverflow,
    InvalidMode,
)

WORD_BITS = 67
MODE_BITS = 3
SIGN_BITS = 1
EXPONENT_BITS = 11
MANTISSA_BITS = 52
HEX_DIGITS = 17

_MANTISSA_MASK = (1 << MANTISSA_BITS) - 1
_EXPONENT_MASK = (1 << EXPONENT_BITS) - 1
_CUSTOM_EXPONENT_BITS = 8
_HEX_WORD = re.compile(f"[0-9a-fA-F]{{{HEX_DIGITS}}}")


class ModeId(enum.Enum):
    """Mode select encodings of the three top word bits."""

    AUTO = 0b000
    M2 = 0b001
    M3 = 0b010
    M4 = 0b011
    M5 = 0b100
    M6 = 0b101

    @classmethod
    def from_bits(cls, bits: int) -> ModeId:
        try:
            return cls(bits)
        except ValueError:
            raise InvalidMode(bits) from None

    @classmethod
    def from_name(cls, name: str) -> ModeId:
        """Parse ``auto``, ``M2``..``M6`` (case-insensitive) or a bare mode number."""
        key = name.strip().upper()
        if key in ("AUTO", "1", "M1"):
            return cls.AUTO
        if key.isdigit():
            key = "M" + key
        try:
            return cls[key]
        except KeyError:
            raise ValueError(
                f"Unknown mode '{name}'; expected one of: auto, M2, M3, M4, M5, M6"
            ) from None

    @property
    def is_custom(self) -> bool:
        return self in (ModeId.M2, ModeId.M3, ModeId.M4, ModeId.M5)

    def __str__(self) -> str:
        return "auto" if self is ModeId.AUTO else self.name


@dataclass(frozen=True)
class ModeConfig:
    mantissa_width: int
    exponent_width: int
    bias: int
    exp_all_ones: int = field(init=False)

    def __post_init__(self) -> None:
        if not 1 <= self.mantissa_width <= MANTISSA_BITS:
            raise ValueError(
                f"ModeConfig mantissa_width must be in [1, {MANTISSA_BITS}]"
            )
        if not 1 <= self.exponent_width <= EXPONENT_BITS:
            raise ValueError(
                f"ModeConfig exponent_width must be in [1, {EXPONENT_BITS}]"
            )
        object.__setattr__(self, "exp_all_ones", (1 << self.exponent_width) - 1)

    @property
    def significand_width(self) -> int:
        """Mantissa width including the hidden bit."""
        return self.mantissa_width + 1

    @property
    def mantissa_shift(self) -> int:
        """Position of the lowest significant mantissa bit inside the 52-bit field."""
        return MANTISSA_BITS - self.mantissa_width


_MODE_CONFIGS: Dict[ModeId, ModeConfig] = {
    ModeId.M2: ModeConfig(8, 8, 127),
    ModeId.M3: ModeConfig(16, 8, 127),
    ModeId.M4: ModeConfig(23, 8, 127),
    ModeId.M5: ModeConfig(36, 8, 127),
    ModeId.M6: ModeConfig(52, 11, 1023),
}

CONCRETE_MODES = tuple(_MODE_CONFIGS)


def mode_config(mode: ModeId) -> ModeConfig:
    if mode is ModeId.AUTO:
        raise AutoUnresolved()
    return _MODE_CONFIGS[mode]


@dataclass(frozen=True)
class Word67:
    raw: int

    def __post_init__(self) -> None:
        if not isinstance(self.raw, int) or isinstance(self.raw, bool):
            raise ValueError("Word67 raw value must be type int")
        if not 0 <= self.raw < (1 << WORD_BITS):
            raise FieldOverflow("raw", self.raw, WORD_BITS)

    @property
    def mode_bits(self) -> int:
        return self.raw >> 64

    @property
    def sign(self) -> int:
        return (self.raw >> 63) & 1

    @property
    def exponent_field(self) -> int:
        return (self.raw >> MANTISSA_BITS) & _EXPONENT_MASK

    @property
    def mantissa_field(self) -> int:
        return self.raw & _MANTISSA_MASK

    def to_hex(self) -> str:
        return f"{self.raw:0{HEX_DIGITS}x}"

    @classmethod
    def from_hex(cls, text: str) -> Word67:
        text = text.strip()
        if not _HEX_WORD.fullmatch(text):
            raise ValueError(
                f"Word67 hex form must be exactly {HEX_DIGITS} hex digits, got '{text}'"
            )
        return cls(int(text, 16))

    def __str__(self) -> str:
        return self.to_hex()


class DecodedWord(NamedTuple):
    mode: ModeId
    sign: int
    exponent_field: int
    mantissa_field: int


@dataclass(frozen=True)
class FpOperand:
    """A decoded operand at the precision of its (concrete) mode."""

    sign: int
    exponent_field: int
    mantissa_field: int
    mode: ModeId

    def __post_init__(self) -> None:
        cfg = mode_config(self.mode)
        if self.sign not in (0, 1):
            raise ValueError("FpOperand sign must be 0 or 1")
        if not 0 <= self.exponent_field < (1 << cfg.exponent_width):
            raise ExponentOutOfRange(self.exponent_field, self.mode)
        if not 0 <= self.mantissa_field < (1 << cfg.mantissa_width):
            raise FieldOverflow("mantissa", self.mantissa_field, cfg.mantissa_width)

    @property
    def is_zero(self) -> bool:
        return self.exponent_field == 0 and self.mantissa_field == 0

    @property
    def is_denormal(self) -> bool:
        return self.exponent_field == 0 and self.mantissa_field != 0

    @property
    def is_infinite(self) -> bool:
        cfg = mode_config(self.mode)
        return self.exponent_field == cfg.exp_all_ones and self.mantissa_field == 0

    @property
    def is_nan(self) -> bool:
        cfg = mode_config(self.mode)
        return self.exponent_field == cfg.exp_all_ones and self.mantissa_field != 0


def _check_custom_exponent(mode: ModeId, exponent_field: int) -> None:
    if mode.is_custom and exponent_field >> _CUSTOM_EXPONENT_BITS:
        raise ExponentOutOfRange(exponent_field, mode)


def decode_word(w: Word67) -> DecodedWord:
    mode = ModeId.from_bits(w.mode_bits)
    sign = w.sign
    exponent_field = w.exponent_field
    mantissa_field = w.mantissa_field
    _check_custom_exponent(mode, exponent_field)

    assert sign >> SIGN_BITS == 0
    assert exponent_field >> EXPONENT_BITS == 0
    assert mantissa_field >> MANTISSA_BITS == 0
    return DecodedWord(mode, sign, exponent_field, mantissa_field)


def encode_word(
    mode: ModeId, sign: int, exponent_field: int, mantissa_field: int
) -> Word67:
    if sign not in (0, 1):
        raise FieldOverflow("sign", sign, SIGN_BITS)
    if not 0 <= exponent_field <= _EXPONENT_MASK:
        raise FieldOverflow("exponent", exponent_field, EXPONENT_BITS)
    if not 0 <= mantissa_field <= _MANTISSA_MASK:
        raise FieldOverflow("mantissa", mantissa_field, MANTISSA_BITS)
    _check_custom_exponent(mode, exponent_field)
    raw = (
        (mode.value << 64)
        | (sign << 63)
        | (exponent_field << MANTISSA_BITS)
        | mantissa_field
    )
    return Word67(raw)


def visible_mantissa(mantissa_field: int, cfg: ModeConfig) -> int:
    """High ``m`` bits of the 52-bit field, i.e. what the mode computes with."""
    return mantissa_field >> cfg.mantissa_shift


def align_mantissa(mantissa: int, cfg: ModeConfig) -> int:
    """Place an ``m``-bit mantissa at the top of the 52-bit field."""
    return mantissa << cfg.mantissa_shift


def significand_of(op: FpOperand, cfg: ModeConfig) -> int:
    if op.exponent_field == 0:
        return op.mantissa_field
    return (1 << cfg.mantissa_width) | op.mantissa_field
