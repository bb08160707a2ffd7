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
from dataclasses import dataclass
from typing import FrozenSet, NamedTuple, Optional, Tuple, Type

from .karatsuba import karatsuba
from .mode_control import (
    DEFAULT_ROUNDING_POLICY,
    RoundingPolicy,
    auto_operand,
    resolve_mode,
    truncate_operand,
)
from .word_format import (
    DecodedWord,
    FpOperand,
    ModeConfig,
    ModeId,
    Word67,
    align_mantissa,
    decode_word,
    encode_word,
    mode_config,
    significand_of,
    visible_mantissa,
)


class ExceptionFlag(enum.Enum):
    """Classification of a product; exactly one applies to every result."""

    ZERO = "Zero"
    INFINITY = "Infinity"
    NAN = "NaN"
    DENORMAL = "Denormal"
    NORMAL = "Normal"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ProductResult:
    word: Word67
    flag: ExceptionFlag
    norm_shift: int
    resolved_mode: ModeId
    auto_chosen: bool = False

    @property
    def flags(self) -> FrozenSet[ExceptionFlag]:
        return frozenset({self.flag})

    def to_line(self) -> str:
        return (
            f"{self.word.to_hex()} flags={self.flag} "
            f"mode={self.resolved_mode} shift={self.norm_shift}"
        )


class Normalized(NamedTuple):
    mantissa: int
    exponent: int
    norm_shift: int


def sign_mul(s1: int, s2: int) -> int:
    return s1 ^ s2


def exponent_add(e1: int, e2: int, cfg: ModeConfig) -> int:
    """Biased exponent of the product, before any range handling."""
    limit = 1 << cfg.exponent_width
    if e1 >= limit or e2 >= limit:
        raise ValueError(
            f"Exponent fields must be below {limit} for this mode, got {e1} and {e2}"
        )
    return e1 + e2 - cfg.bias


def normalize(p: int, e: int, m: int) -> Normalized:
    """Bring a product of two ``(m + 1)``-bit significands back to ``m`` fraction bits.

    Both significands lie in [1, 2), so the product lies in [1, 4) and needs at
    most one right shift. Discarded bits are dropped (round toward zero).
    """
    if not 0 <= p < (1 << (2 * m + 2)):
        raise ValueError(f"Product {p} is wider than {2 * m + 2} bits")
    mask = (1 << m) - 1
    if p >> (2 * m + 1):
        return Normalized((p >> (m + 1)) & mask, e + 1, 1)
    return Normalized((p >> m) & mask, e, 0)


def classify(e_out: int, mantissa: int, cfg: ModeConfig) -> ExceptionFlag:
    if e_out <= 0:
        return ExceptionFlag.ZERO if mantissa == 0 else ExceptionFlag.DENORMAL
    if e_out >= cfg.exp_all_ones:
        return ExceptionFlag.INFINITY if mantissa == 0 else ExceptionFlag.NAN
    return ExceptionFlag.NORMAL


def normalize_operand(significand: int, exponent_field: int, m: int) -> Tuple[int, int]:
    """Left-align a denormal significand on the hidden-bit position.

    Returns the shifted significand and the effective biased exponent, which
    drops to ``1 - shift`` for denormals.
    """
    if exponent_field != 0 or significand == 0:
        return significand, exponent_field
    shift = m + 1 - significand.bit_length()
    return significand << shift, 1 - shift


def _narrowed_operand(
    decoded: DecodedWord, mode: ModeId, cfg: ModeConfig, policy: RoundingPolicy
) -> FpOperand:
    if decoded.exponent_field == cfg.exp_all_ones:
        # Inf and NaN are told apart by the visible bits alone
        return FpOperand(
            decoded.sign,
            decoded.exponent_field,
            visible_mantissa(decoded.mantissa_field, cfg),
            mode,
        )
    narrowed = truncate_operand(decoded.mantissa_field, cfg, policy)
    return FpOperand(
        decoded.sign,
        decoded.exponent_field + narrowed.exponent_increment,
        narrowed.mantissa,
        mode,
    )


def _special_result(
    flag: ExceptionFlag, sign: int, mode: ModeId, cfg: ModeConfig, auto_chosen: bool
) -> ProductResult:
    if flag is ExceptionFlag.NAN:
        exponent, mantissa = cfg.exp_all_ones, 1 << (cfg.mantissa_width - 1)
    elif flag is ExceptionFlag.INFINITY:
        exponent, mantissa = cfg.exp_all_ones, 0
    else:
        exponent, mantissa = 0, 0
    word = encode_word(mode, sign, exponent, align_mantissa(mantissa, cfg))
    return ProductResult(word, flag, 0, mode, auto_chosen)


def _input_special(a: FpOperand, b: FpOperand) -> Optional[ExceptionFlag]:
    if a.is_nan or b.is_nan:
        return ExceptionFlag.NAN
    if a.is_infinite or b.is_infinite:
        if a.is_zero or b.is_zero:
            return ExceptionFlag.NAN
        return ExceptionFlag.INFINITY
    if a.is_zero or b.is_zero:
        return ExceptionFlag.ZERO
    return None


def multiply(
    a: Word67,
    b: Word67,
    rounding_policy: RoundingPolicy = DEFAULT_ROUNDING_POLICY,
) -> ProductResult:
    resolution = resolve_mode(a, b)
    mode = resolution.mode
    cfg = mode_config(mode)
    m = cfg.mantissa_width
    da = decode_word(a)
    db = decode_word(b)
    if resolution.auto_chosen:
        da, db = auto_operand(da, mode), auto_operand(db, mode)
    sign = sign_mul(da.sign, db.sign)

    ops = [_narrowed_operand(d, mode, cfg, rounding_policy) for d in (da, db)]
    special = _input_special(ops[0], ops[1])
    if special is not None:
        return _special_result(special, sign, mode, cfg, resolution.auto_chosen)

    significands = []
    exponents = []
    for op in ops:
        significand, exponent = normalize_operand(
            significand_of(op, cfg), op.exponent_field, m
        )
        significands.append(significand)
        exponents.append(exponent)

    p = karatsuba(significands[0], significands[1], cfg.significand_width)
    e = exponent_add(exponents[0], exponents[1], cfg)
    norm = normalize(p, e, m)
    flag = classify(norm.exponent, norm.mantissa, cfg)

    if flag is ExceptionFlag.NORMAL:
        exponent, mantissa = norm.exponent, norm.mantissa
    elif flag is ExceptionFlag.DENORMAL:
        exponent, mantissa = 0, norm.mantissa
    elif flag is ExceptionFlag.ZERO:
        exponent, mantissa = 0, 0
    elif flag is ExceptionFlag.INFINITY:
        exponent, mantissa = cfg.exp_all_ones, 0
    else:
        exponent, mantissa = cfg.exp_all_ones, norm.mantissa

    word = encode_word(mode, sign, exponent, align_mantissa(mantissa, cfg))
    return ProductResult(word, flag, norm.norm_shift, mode, resolution.auto_chosen)


class FpMultiplier:
    """A multiplier bound to one input rounding policy."""

    def __init__(self, rounding: RoundingPolicy = DEFAULT_ROUNDING_POLICY) -> None:
        if not isinstance(rounding, RoundingPolicy):
            raise ValueError("rounding must be a RoundingPolicy")
        self.rounding = rounding

    @classmethod
    def from_name(cls: Type[FpMultiplier], rounding: str) -> FpMultiplier:
        return cls(RoundingPolicy.from_name(rounding))

    def multiply(self, a: Word67, b: Word67) -> ProductResult:
        return multiply(a, b, self.rounding)

    def __repr__(self) -> str:
        return f"FpMultiplier(rounding={self.rounding.value!r})"
