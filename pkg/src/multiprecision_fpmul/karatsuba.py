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

"""Karatsuba recursion over the Urdhva base case.

``X * Y = 2**n * Xl*Yl + Xr*Yr + 2**(n/2) * ((Xl + Xr)(Yl + Yr) - Xl*Yl - Xr*Yr)``

Operands are halved until they are at most ``BASE_WIDTH`` bits wide. Odd
widths are zero-padded to the next even width before splitting.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Tuple

from .exceptions import OddWidth
from .urdhva import urdhva_mul, urdhva_stats

BASE_WIDTH = 8
# two operand additions, two subtractions, two aligned accumulations
ADDS_PER_COMBINE = 6


@dataclass(frozen=True)
class MulStats:
    operand_width: int
    base_multiplies: int
    add_ops: int
    depth: int

    @property
    def urdhva_adders(self) -> int:
        """Total ripple adders across all base-case multipliers."""
        return self.base_multiplies * urdhva_stats(BASE_WIDTH).adders

    def to_line(self) -> str:
        return (
            f"width={self.operand_width} depth={self.depth} "
            f"base_muls={self.base_multiplies} add_ops={self.add_ops} "
            f"urdhva_adders={self.urdhva_adders}"
        )


@dataclass
class KaratsubaTrace:
    """Counters filled in by an instrumented :func:`karatsuba` run."""

    base_multiplies: int = 0
    add_ops: int = 0
    depth: int = 0


def split(x: int, n: int) -> Tuple[int, int]:
    if n % 2:
        raise OddWidth(n)
    if not 0 <= x < (1 << n):
        raise ValueError(f"Operand {x} does not fit in {n} bits")
    half = n // 2
    return x >> half, x & ((1 << half) - 1)


@functools.lru_cache(maxsize=1 << 16)
def _base_product(x: int, y: int) -> int:
    return urdhva_mul(x, y, BASE_WIDTH)


def clear_base_cache() -> None:
    _base_product.cache_clear()


def karatsuba(
    x: int, y: int, n: int, trace: Optional[KaratsubaTrace] = None
) -> int:
    if n < 1:
        raise ValueError("Karatsuba width must be at least 1")
    if not 0 <= x < (1 << n) or not 0 <= y < (1 << n):
        raise ValueError(f"Operands must fit in {n} bits")
    return _karatsuba(x, y, n, trace, 0)


def _karatsuba(
    x: int, y: int, n: int, trace: Optional[KaratsubaTrace], level: int
) -> int:
    if n <= BASE_WIDTH:
        if trace is not None:
            trace.base_multiplies += 1
            trace.depth = max(trace.depth, level)
        return _base_product(x, y)

    half = (n + 1) // 2
    width = 2 * half
    x_l, x_r = split(x, width)
    y_l, y_r = split(y, width)

    high = _karatsuba(x_l, y_l, half, trace, level + 1)
    low = _karatsuba(x_r, y_r, half, trace, level + 1)
    middle = _middle_product(x_l + x_r, y_l + y_r, half, trace, level + 1)
    cross = middle - high - low
    if trace is not None:
        trace.add_ops += ADDS_PER_COMBINE
    return (high << width) + (cross << half) + low


def _middle_product(
    s: int, t: int, half: int, trace: Optional[KaratsubaTrace], level: int
) -> int:
    # s and t may be half + 1 bits wide; the top bit of each is applied by
    # shifted additions so the recursive multiply stays at width `half`.
    mask = (1 << half) - 1
    s_top, s_low = s >> half, s & mask
    t_top, t_low = t >> half, t & mask
    product = _karatsuba(s_low, t_low, half, trace, level)
    if s_top:
        product += t_low << half
    if t_top:
        product += s_low << half
    if s_top and t_top:
        product += 1 << (2 * half)
    return product


def karatsuba_depth(n: int) -> int:
    """``ceil(log2(ceil(n / 8)))`` for ``n > 8``, else 0."""
    return ((n + BASE_WIDTH - 1) // BASE_WIDTH - 1).bit_length()


def karatsuba_stats(n: int) -> MulStats:
    if n < 1:
        raise ValueError("Karatsuba width must be at least 1")
    depth = karatsuba_depth(n)
    base_multiplies = 3**depth
    internal_nodes = (base_multiplies - 1) // 2
    return MulStats(
        operand_width=n,
        base_multiplies=base_multiplies,
        add_ops=ADDS_PER_COMBINE * internal_nodes,
        depth=depth,
    )
