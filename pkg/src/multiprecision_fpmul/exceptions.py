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

from typing import Any


class FpMulError(ValueError):
    """Base class for all errors raised by the multiplier."""


class InvalidMode(FpMulError):
    def __init__(self, bits: int) -> None:
        super().__init__(f"Invalid mode select bits {bits:03b}; expected 000-101.")
        self.bits = bits


class FieldOverflow(FpMulError):
    def __init__(self, field: str, value: int, width: int) -> None:
        super().__init__(
            f"Field '{field}' value {value} does not fit in {width} bits."
        )
        self.field = field
        self.value = value
        self.width = width


class AutoUnresolved(FpMulError):
    def __init__(self) -> None:
        super().__init__(
            "Auto mode has no format of its own; resolve it with resolve_mode first."
        )


class ExponentOutOfRange(FpMulError):
    def __init__(self, exponent_field: int, mode: Any) -> None:
        super().__init__(
            f"Exponent field {exponent_field} is out of range for {mode}; "
            "custom modes use an 8-bit exponent."
        )
        self.exponent_field = exponent_field
        self.mode = mode


class ModeMismatch(FpMulError):
    def __init__(self, a_mode: Any, b_mode: Any) -> None:
        super().__init__(
            f"mode select error: operand modes differ ({a_mode} vs {b_mode})"
        )
        self.a_mode = a_mode
        self.b_mode = b_mode


class OddWidth(FpMulError):
    def __init__(self, width: int) -> None:
        super().__init__(f"Cannot split an operand of odd width {width}; pad first.")
        self.width = width


class BatchParseError(FpMulError):
    def __init__(self, line_no: int, reason: str) -> None:
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason
