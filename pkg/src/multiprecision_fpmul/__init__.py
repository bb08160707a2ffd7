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

from .batch import BatchSummary, run_batch
from .exceptions import (
    AutoUnresolved,
    BatchParseError,
    ExponentOutOfRange,
    FieldOverflow,
    FpMulError,
    InvalidMode,
    ModeMismatch,
    OddWidth,
)
from .fp_multiplier import ExceptionFlag, FpMultiplier, ProductResult, multiply
from .karatsuba import MulStats, karatsuba, karatsuba_stats
from .mode_control import RoundingPolicy, auto_select, resolve_mode
from .urdhva import urdhva_mul
from .version import __version__
from .word_format import ModeId, Word67, decode_word, encode_word

__all__ = [
    "AutoUnresolved",
    "BatchParseError",
    "BatchSummary",
    "ExceptionFlag",
    "ExponentOutOfRange",
    "FieldOverflow",
    "FpMulError",
    "FpMultiplier",
    "InvalidMode",
    "ModeId",
    "ModeMismatch",
    "MulStats",
    "OddWidth",
    "ProductResult",
    "RoundingPolicy",
    "Word67",
    "auto_select",
    "decode_word",
    "encode_word",
    "karatsuba",
    "karatsuba_stats",
    "multiply",
    "resolve_mode",
    "run_batch",
    "urdhva_mul",
    "__version__",
]
