"""The general tensor product used throughout: an order-m tensor times an
order-k tensor over the same dimension gives order (m-1)(k-1) + 1.

Writing each trailing slot of A against a full row of B,

    c[i, a_1, ..., a_{m-1}] = sum over i2..im of
        a[i, i2, ..., im] * b[i2, a_1] * ... * b[im, a_{m-1}]

where every a_t is itself a (k-1)-tuple of indices. Matrices (k = 2)
recover ordinary matrix action, and order-1 tensors recover polynomial
application.
"""
from __future__ import annotations

import itertools
import math

from .core import Tensor
from .errors import DimensionMismatch, OrderTooSmall


def general_product(a: Tensor, b: Tensor) -> Tensor:
    """Product of ``a`` (order >= 2) with ``b`` (order >= 1) over a shared dimension.

    Sparse throughout: only stored entries of ``a`` meet only stored rows
    of ``b``. Every output coordinate is accumulated with compensated
    summation and exact zeros are dropped, so integer inputs give exact
    integer outputs and structural zeros stay structural.
    """
    if a.order < 2:
        raise OrderTooSmall("left factor must have order >= 2")
    if b.order < 1:
        raise OrderTooSmall("right factor must have order >= 1")
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    m, k, n = a.order, b.order, a.dim
    out_order = (m - 1) * (k - 1) + 1

    rows: dict[int, list[tuple[tuple[int, ...], float]]] = {}
    for idx, v in b.entries.items():
        rows.setdefault(idx[0], []).append((idx[1:], v))

    terms: dict[tuple[int, ...], list[float]] = {}
    for idx, av in a.entries.items():
        slices = []
        for t in idx[1:]:
            row = rows.get(t)
            if row is None:
                break
            slices.append(row)
        else:
            for combo in itertools.product(*slices):
                out_idx = (idx[0],)
                val = av
                for alpha, bv in combo:
                    out_idx += alpha
                    val *= bv
                terms.setdefault(out_idx, []).append(val)

    entries = {}
    for out_idx, vals in terms.items():
        total = math.fsum(vals)
        if total != 0.0:
            entries[out_idx] = total
    return Tensor(out_order, n, entries)
