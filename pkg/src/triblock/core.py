"""Sparse real tensors with 1-based indices, plus the structural helpers
every other module builds on: principal subtensors, permutation similarity,
polynomial application, and the majorization / representation matrices.

Storage is coordinate format: a mapping from index tuples to nonzero
doubles. An absent tuple reads as an exact structural zero, and every
constructor drops exact zeros on the way in, so "is this entry zero"
questions are answered without tolerances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadArity,
    DimensionMismatch,
    DuplicateIndex,
    EmptyIndexSet,
    IndexOutOfRange,
    OrderTooSmall,
)

Index = tuple[int, ...]

_DENSE_GUARD = 20_000_000  # refuse to densify anything bigger than this


@dataclass(frozen=True)
class Tensor:
    """An order-``order`` tensor on ``[1, dim]^order``, stored sparsely.

    ``entries`` maps index tuples to nonzero values; missing tuples are
    exact zeros. Instances are immutable: operations return new tensors
    and never touch their inputs, so values can be shared freely between
    threads.
    """

    order: int
    dim: int
    entries: Mapping[Index, float]

    def get(self, index: Sequence[int]) -> float:
        """Entry at a 1-based index tuple, zero when absent."""
        return self.entries.get(tuple(index), 0.0)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> np.ndarray:
        """Dense ``(dim,) * order`` array with 0-based axes."""
        if self.dim ** self.order > _DENSE_GUARD:
            raise MemoryError("tensor too large to densify")
        out = np.zeros((self.dim,) * self.order)
        for idx, v in self.entries.items():
            out[tuple(i - 1 for i in idx)] = v
        return out

    @classmethod
    def from_dense(cls, values: np.ndarray) -> "Tensor":
        arr = np.asarray(values, dtype=float)
        order = arr.ndim
        dim = arr.shape[0] if order else 0
        if arr.shape != (dim,) * order or order < 1 or dim < 1:
            raise DimensionMismatch(f"expected a hypercubic array, got shape {arr.shape}")
        entries = {}
        for idx in np.ndindex(arr.shape):
            v = float(arr[idx])
            if v != 0.0:
                entries[tuple(i + 1 for i in idx)] = v
        return cls(order, dim, entries)

    def allclose(self, other: "Tensor", tol: float = 0.0) -> bool:
        """Entrywise agreement within an absolute tolerance."""
        if (self.order, self.dim) != (other.order, other.dim):
            return False
        for key in self.entries.keys() | other.entries.keys():
            if abs(self.entries.get(key, 0.0) - other.entries.get(key, 0.0)) > tol:
                return False
        return True

    def __repr__(self) -> str:  # keep test output readable
        return f"Tensor(order={self.order}, dim={self.dim}, nnz={self.nnz})"


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``[1, n]``, stored as the image tuple ``(sigma(1), ..., sigma(n))``."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise IndexOutOfRange(f"image {self.image} is not a bijection of [1, {n}]")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.dim
        for i, img in enumerate(self.image, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``: the result maps i to self(other(i))."""
        if self.dim != other.dim:
            raise DimensionMismatch("cannot compose permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.dim + 1)))


def _validated_index(index: Sequence[int], order: int, dim: int) -> Index:
    idx = tuple(index)
    if len(idx) != order:
        raise BadArity(f"index {idx} has {len(idx)} components, expected {order}")
    for i in idx:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
            raise BadArity(f"index component {i!r} is not an integer")
        if not 1 <= i <= dim:
            raise IndexOutOfRange(f"index component {i} outside [1, {dim}]")
    return tuple(int(i) for i in idx)


def new_tensor(order: int, dim: int,
               entries: Iterable[tuple[Sequence[int], float]] = ()) -> Tensor:
    """Build a tensor from ``(index, value)`` pairs.

    Indices are 1-based tuples of length ``order``. Exact zeros are
    dropped; duplicate tuples are rejected rather than summed.
    """
    if order < 1:
        raise OrderTooSmall(f"order must be >= 1, got {order}")
    if dim < 1:
        raise DimensionMismatch(f"dim must be >= 1, got {dim}")
    data: dict[Index, float] = {}
    for index, value in entries:
        idx = _validated_index(index, order, dim)
        if idx in data:
            raise DuplicateIndex(f"index {idx} supplied twice")
        v = float(value)
        if math.isnan(v) or math.isinf(v):
            raise ValueError(f"entry {idx} is not finite: {value!r}")
        if v != 0.0:
            data[idx] = v
        else:
            data[idx] = 0.0  # placeholder so later duplicates still collide
    return Tensor(order, dim, {k: v for k, v in data.items() if v != 0.0})


def unit_tensor(order: int, dim: int) -> Tensor:
    """The identity for the tensor product: 1 on the all-equal diagonal."""
    if order < 1:
        raise OrderTooSmall(f"order must be >= 1, got {order}")
    if dim < 1:
        raise DimensionMismatch(f"dim must be >= 1, got {dim}")
    return Tensor(order, dim, {(i,) * order: 1.0 for i in range(1, dim + 1)})


def diagonal_tensor(order: int, diag: Sequence[float]) -> Tensor:
    """Tensor whose only (potential) nonzeros sit at positions (i, i, ..., i)."""
    if order < 1:
        raise OrderTooSmall(f"order must be >= 1, got {order}")
    values = [float(v) for v in diag]
    if not values:
        raise DimensionMismatch("diagonal must have at least one value")
    return Tensor(order, len(values),
                  {(i,) * order: v for i, v in enumerate(values, start=1) if v != 0.0})


def principal_subtensor(tensor: Tensor, index_set: Iterable[int]) -> Tensor:
    """Restrict to rows and columns in ``index_set``, relabelled 1..k in sorted order."""
    members = sorted(set(int(i) for i in index_set))
    if not members:
        raise EmptyIndexSet("principal subtensor needs a nonempty index set")
    for i in members:
        if not 1 <= i <= tensor.dim:
            raise IndexOutOfRange(f"index {i} outside [1, {tensor.dim}]")
    relabel = {old: new for new, old in enumerate(members, start=1)}
    keep = set(members)
    entries = {}
    for idx, v in tensor.entries.items():
        if all(i in keep for i in idx):
            entries[tuple(relabel[i] for i in idx)] = v
    return Tensor(tensor.order, len(members), entries)


def permute_similar(tensor: Tensor, sigma: Permutation) -> Tensor:
    """Relabel indices by ``sigma``: the result has b[sigma(i1), ..., sigma(im)] = a[i1, ..., im]."""
    if sigma.dim != tensor.dim:
        raise DimensionMismatch(
            f"permutation acts on [1, {sigma.dim}] but tensor dim is {tensor.dim}")
    entries = {tuple(sigma(i) for i in idx): v for idx, v in tensor.entries.items()}
    return Tensor(tensor.order, tensor.dim, entries)


def apply(tensor: Tensor, x: Sequence[complex]) -> np.ndarray:
    """Evaluate the degree-(order-1) polynomial map: y_i = sum a[i, i2..im] * x_i2 ... x_im.

    Accepts real or complex vectors. Each output component is accumulated
    with exact compensated summation, so integer inputs stay exact.
    """
    if tensor.order < 2:
        raise OrderTooSmall("polynomial application needs order >= 2")
    xs = list(x)
    if len(xs) != tensor.dim:
        raise DimensionMismatch(f"vector has length {len(xs)}, tensor dim is {tensor.dim}")
    is_complex = any(isinstance(v, complex) for v in xs)
    terms: list[list[complex]] = [[] for _ in range(tensor.dim)]
    for idx, a in tensor.entries.items():
        prod: complex = a
        for t in idx[1:]:
            prod *= xs[t - 1]
        terms[idx[0] - 1].append(prod)
    if is_complex:
        out = [complex(math.fsum(t.real for t in row), math.fsum(t.imag for t in row))
               for row in terms]
        return np.asarray(out, dtype=complex)
    return np.asarray([math.fsum(row) for row in terms], dtype=float)


def is_row_diagonal(tensor: Tensor) -> bool:
    """True when every nonzero entry has all trailing indices equal."""
    if tensor.order < 2:
        raise OrderTooSmall("row-diagonal structure needs order >= 2")
    return all(len(set(idx[1:])) == 1 for idx in tensor.entries)


def majorization_matrix(tensor: Tensor) -> np.ndarray:
    """The n-by-n matrix reading off M[i, j] = a[i, j, j, ..., j]."""
    if tensor.order < 2:
        raise OrderTooSmall("majorization matrix needs order >= 2")
    n, m = tensor.dim, tensor.order
    out = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            out[i - 1, j - 1] = tensor.entries.get((i,) + (j,) * (m - 1), 0.0)
    return out


def representation_matrix(tensor: Tensor) -> np.ndarray:
    """Row i, column j sums |a[i, i2..im]| over entries whose trailing indices include j.

    Each entry contributes once per distinct index it mentions, so the
    zero pattern encodes exactly which indices row i touches.
    """
    if tensor.order < 2:
        raise OrderTooSmall("representation matrix needs order >= 2")
    n = tensor.dim
    out = np.zeros((n, n))
    for idx, v in tensor.entries.items():
        i = idx[0]
        for j in set(idx[1:]):
            out[i - 1, j - 1] += abs(v)
    return out


def row_diagonal_from_matrix(values: np.ndarray, order: int) -> Tensor:
    """Build the row-diagonal tensor with a[i, j, ..., j] = P[i, j]."""
    if order < 2:
        raise OrderTooSmall("row-diagonal tensors need order >= 2")
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = float(arr[i - 1, j - 1])
            if v != 0.0:
                entries[(i,) + (j,) * (order - 1)] = v
    return Tensor(order, n, entries)


def tensor_from_matrix(values: np.ndarray) -> Tensor:
    """View a square matrix as an order-2 tensor."""
    return row_diagonal_from_matrix(values, 2)
