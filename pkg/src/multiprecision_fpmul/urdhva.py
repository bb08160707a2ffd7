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

"""Urdhva-Tiryagbhyam ("vertically and crosswise") column multiplier.

Column ``k`` collects every bit product ``a_i * b_j`` with ``i + j == k``. The
columns are then reduced LSB first by a ripple of adders: product bit ``k`` is
the LSB of ``t_k + carry_in`` and the remaining bits carry into column
``k + 1``. Carry-save and carry-select variants only change timing, so one
functional reduction covers them all.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple


@dataclass(frozen=True)
class ColumnSet:
    width: int
    columns: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.width
        if n < 1:
            raise ValueError("ColumnSet width must be at least 1")
        if len(self.columns) != 2 * n - 1:
            raise ValueError(
                f"ColumnSet of width {n} needs {2 * n - 1} columns, "
                f"got {len(self.columns)}"
            )
        for k, t in enumerate(self.columns):
            if not 0 <= t <= min(k + 1, 2 * n - 1 - k):
                raise ValueError(f"Column {k} sum {t} exceeds its term count")

    def value(self) -> int:
        """Sum of ``t_k * 2**k``; the product before any carry handling."""
        return sum(t << k for k, t in enumerate(self.columns))


@dataclass(frozen=True)
class UrdhvaStats:
    width: int
    adders: int
    max_column_height: int


def _check_operand(name: str, x: int, n: int) -> None:
    if not 0 <= x < (1 << n):
        raise ValueError(f"Operand {name}={x} does not fit in {n} bits")


def urdhva_columns(a: int, b: int, n: int) -> ColumnSet:
    if n < 1:
        raise ValueError("Urdhva width must be at least 1")
    _check_operand("a", a, n)
    _check_operand("b", b, n)

    a_bits = [(a >> i) & 1 for i in range(n)]
    b_bits = [(b >> j) & 1 for j in range(n)]
    columns = []
    for k in range(2 * n - 1):
        lo = max(0, k - n + 1)
        hi = min(k, n - 1)
        columns.append(sum(a_bits[i] & b_bits[k - i] for i in range(lo, hi + 1)))
    return ColumnSet(n, tuple(columns))


def urdhva_reduce(cols: ColumnSet) -> int:
    product = 0
    carry = 0
    for k, t in enumerate(cols.columns):
        total = t + carry
        product |= (total & 1) << k
        carry = total >> 1
    # the last adder's carry-out forms the top product bits
    return product | (carry << len(cols.columns))


def urdhva_mul(a: int, b: int, n: int) -> int:
    return urdhva_reduce(urdhva_columns(a, b, n))


def urdhva_partial_sums(cols: ColumnSet) -> Tuple[int, ...]:
    """Bit-plane partial sums ``s_1, s_2, ...`` of a column set.

    ``s_j`` gathers bit ``j - 1`` of every column sum at weight ``k + j - 1``.
    Adding them all gives the product; for ``n == 4`` there are exactly three.
    """
    height = max(cols.columns, default=0).bit_length()
    return tuple(
        sum(((t >> j) & 1) << (k + j) for k, t in enumerate(cols.columns))
        for j in range(height)
    )


def urdhva_stats(n: int) -> UrdhvaStats:
    if n < 2:
        raise ValueError("Urdhva adder chain needs a width of at least 2")
    # p0 is a single AND gate; each of the remaining 2n - 2 columns has an adder
    return UrdhvaStats(width=n, adders=2 * n - 2, max_column_height=n)


def column_heights(n: int) -> Sequence[int]:
    """Number of bit-product terms feeding each column."""
    return [min(k + 1, 2 * n - 1 - k) for k in range(2 * n - 1)]
