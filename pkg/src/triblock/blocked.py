"""Recognition of triangular blocked structure.

A partition (n_1, ..., n_r) of the dimension splits [1, n] into
consecutive index blocks I_1, ..., I_r. Each block kind is a vanishing
pattern over the nonzero entries, phrased entirely through the minimum
and maximum of an entry's trailing indices relative to the prefix sums
S_j = n_1 + ... + n_j:

* ``UTB1``  rows in I_j (j >= 2) vanish when  min <= S_{j-1}
* ``UTB2``  rows in I_j (j >= 2) vanish when  min <= S_{j-1} and max <= S_j
* ``UTB3``  rows in I_j (j >= 2) vanish when  max <= S_{j-1}
* ``LTB1``  rows in I_j (j <= r-1) vanish when  max >  S_j
* ``LTB2``  rows in I_j (j <= r-1) vanish when  max >  S_j and min > S_{j-1}
* ``LTB3``  rows in I_j (j <= r-1) vanish when  min >  S_j
* ``DIAG``  rows in I_j vanish unless every trailing index stays in I_j

All checks are exact: an entry either is stored (nonzero) or is a
structural zero.
"""
from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator

from .core import Tensor, principal_subtensor
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    OrderTooSmall,
    PartitionTooCoarse,
)

_ENUM_GUARD = 12  # exhaustive partition search is 2^(n-1) candidates


@dataclass(frozen=True)
class Partition:
    """An ordered partition of [1, n] into consecutive blocks."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise PartitionTooCoarse("partition needs at least one part")
        if any((not isinstance(p, int)) or p < 1 for p in self.parts):
            raise DimensionMismatch(f"parts must be positive integers, got {self.parts}")
        sums = [0]
        for p in self.parts:
            sums.append(sums[-1] + p)
        object.__setattr__(self, "_sums", tuple(sums))

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise DimensionMismatch(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    @property
    def n(self) -> int:
        return self._sums[-1]

    @property
    def r(self) -> int:
        return len(self.parts)

    def S(self, j: int) -> int:
        """Prefix sum S_j = n_1 + ... + n_j, with S_0 = 0."""
        return self._sums[j]

    def block(self, j: int) -> range:
        """The 1-based index block I_j."""
        return range(self.S(j - 1) + 1, self.S(j) + 1)

    def block_of(self, i: int) -> int:
        """Which block a row index belongs to."""
        return bisect_left(self._sums, i, lo=1)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


class BlockKind(enum.Enum):
    UTB1 = "utb1"
    UTB2 = "utb2"
    UTB3 = "utb3"
    LTB1 = "ltb1"
    LTB2 = "ltb2"
    LTB3 = "ltb3"
    DIAG = "diag"

    @classmethod
    def from_token(cls, token: str) -> "BlockKind":
        try:
            return cls(token.lower())
        except ValueError as exc:
            raise DimensionMismatch(f"unknown block kind {token!r}") from exc

    @property
    def token(self) -> str:
        return self.value

    @property
    def is_triangular(self) -> bool:
        return self is not BlockKind.DIAG


def _forbidden(kind: BlockKind, p: Partition, j: int, lo: int, hi: int) -> bool:
    """Does the vanishing pattern cover a row-block-j entry with trailing min/max (lo, hi)?"""
    if kind is BlockKind.UTB1:
        return j >= 2 and lo <= p.S(j - 1)
    if kind is BlockKind.UTB2:
        return j >= 2 and lo <= p.S(j - 1) and hi <= p.S(j)
    if kind is BlockKind.UTB3:
        return j >= 2 and hi <= p.S(j - 1)
    if kind is BlockKind.LTB1:
        return j <= p.r - 1 and hi > p.S(j)
    if kind is BlockKind.LTB2:
        return j <= p.r - 1 and hi > p.S(j) and lo > p.S(j - 1)
    if kind is BlockKind.LTB3:
        return j <= p.r - 1 and lo > p.S(j)
    return lo <= p.S(j - 1) or hi > p.S(j)  # DIAG


def is_blocked(tensor: Tensor, partition: Partition, kind: BlockKind) -> bool:
    """Exact structural test: does every stored entry avoid the kind's vanishing region?"""
    if tensor.order < 2:
        raise OrderTooSmall("blocked structure needs order >= 2")
    if partition.n != tensor.dim:
        raise DimensionMismatch(
            f"partition covers [1, {partition.n}] but tensor dim is {tensor.dim}")
    if kind.is_triangular and partition.r < 2:
        raise PartitionTooCoarse(f"{kind.token} structure needs at least two blocks")
    for idx in tensor.entries:
        j = partition.block_of(idx[0])
        lo = min(idx[1:])
        hi = max(idx[1:])
        if _forbidden(kind, partition, j, lo, hi):
            return False
    return True


def diagonal_blocks(tensor: Tensor, partition: Partition) -> list[Tensor]:
    """The principal subtensors on the partition's index blocks."""
    if partition.n != tensor.dim:
        raise DimensionMismatch(
            f"partition covers [1, {partition.n}] but tensor dim is {tensor.dim}")
    return [principal_subtensor(tensor, partition.block(j))
            for j in range(1, partition.r + 1)]


def compositions(n: int, r_min: int = 1) -> Iterator[tuple[int, ...]]:
    """All ordered partitions of n with at least ``r_min`` parts, lexicographically."""
    found = []
    for mask in range(2 ** (n - 1)):
        parts = []
        last = 0
        for gap in range(1, n):
            if mask >> (gap - 1) & 1:
                parts.append(gap - last)
                last = gap
        parts.append(n - last)
        if len(parts) >= r_min:
            found.append(tuple(parts))
    return iter(sorted(found))


def blocked_partitions(tensor: Tensor, kind: BlockKind, r_min: int = 1) -> list[Partition]:
    """Every partition (with at least ``r_min`` parts) under which the tensor has the kind.

    Exhaustive over all 2^(n-1) compositions, so the dimension is capped.
    Triangular kinds silently skip the single-block composition, which
    they cannot carry by definition.
    """
    if tensor.dim > _ENUM_GUARD:
        raise DimensionTooLarge(
            f"partition enumeration is capped at dim {_ENUM_GUARD}, got {tensor.dim}")
    least = max(r_min, 2 if kind.is_triangular else 1)
    out = []
    for parts in compositions(tensor.dim, least):
        p = Partition(parts)
        if is_blocked(tensor, p, kind):
            out.append(p)
    return out
