"""Left and right k-inverses.

A tensor has a left inverse exactly when it is row diagonal, i.e. equal
to P applied to the unit tensor for the (then invertible) matrix P read
off its rows; the unique left k-inverse is the unit tensor of order k
times P^-1. Right inverses mirror this through tensors of the shape
"unit tensor times Q": such a tensor factors entrywise into products of
Q's row entries, which is what the recovery routine reconstructs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .core import (
    Tensor,
    is_row_diagonal,
    majorization_matrix,
    tensor_from_matrix,
    unit_tensor,
)
from .errors import (
    DimensionMismatch,
    NoLeftInverse,
    NotRightForm,
    NotRightInvertible,
    OrderTooSmall,
    SingularMatrix,
)
from .product import general_product

VERIFY_TOL = 1e-10


def has_left_inverse(tensor: Tensor) -> bool:
    """Row diagonal with an invertible row matrix."""
    if tensor.order < 2:
        raise OrderTooSmall("inverses need order >= 2")
    if not is_row_diagonal(tensor):
        return False
    return linalg.is_nonsingular(majorization_matrix(tensor))


def left_k_inverse(tensor: Tensor, k: int) -> Tensor:
    """The unique left inverse of order k: unit tensor times the inverse row matrix."""
    if k < 2:
        raise OrderTooSmall(f"left inverses need k >= 2, got {k}")
    if tensor.order < 2:
        raise OrderTooSmall("inverses need order >= 2")
    if not is_row_diagonal(tensor):
        raise NoLeftInverse("tensor is not row diagonal")
    try:
        inv = linalg.invert(majorization_matrix(tensor))
    except SingularMatrix as exc:
        raise NoLeftInverse("row matrix is singular") from exc
    return general_product(unit_tensor(k, tensor.dim), tensor_from_matrix(inv))


@dataclass(frozen=True)
class RightFormRecovery:
    """The matrix Q with tensor = unit_tensor(order) * Q, plus the sign bookkeeping.

    ``sign_profile`` records, per row and per column, the sign attached
    to the extracted root magnitude. For even order the root is odd and
    the sign is forced; for odd order signs are fixed relative to the
    row's first nonzero, which is made positive (the canonical choice).
    """

    q: np.ndarray
    sign_profile: tuple[tuple[int, ...], ...]


def _root_with_snap(value: float, degree: int) -> float:
    """Real degree-th root of a nonnegative value, snapped when exactly integral."""
    if value == 0.0:
        return 0.0
    root = value ** (1.0 / degree)
    nearest = round(root)
    if nearest >= 0 and float(nearest ** degree) == value:
        return float(nearest)
    return root


def recover_right_form(tensor: Tensor) -> RightFormRecovery:
    """Factor the tensor as unit_tensor(m) applied to a matrix Q, or fail.

    Row i of Q comes from the all-equal-feet entries a[i, t, ..., t] =
    q[i, t]^(m-1); mixed entries then pin relative signs when m is odd.
    Every entry of the tensor is re-verified against the product of Q's
    row values before the factorization is returned.
    """
    if tensor.order < 2:
        raise OrderTooSmall("right-form recovery needs order >= 2")
    m, n = tensor.order, tensor.dim
    degree = m - 1
    q = np.zeros((n, n))
    profile: list[tuple[int, ...]] = []

    for i in range(1, n + 1):
        diag = [tensor.entries.get((i,) + (t,) * degree, 0.0) for t in range(1, n + 1)]
        signs = [0] * n
        if degree % 2 == 1:
            # odd root: unique real solution, sign carried by the entry
            for t, d in enumerate(diag):
                mag = _root_with_snap(abs(d), degree)
                signs[t] = 1 if d >= 0 else -1
                q[i - 1, t] = signs[t] * mag
        else:
            for t, d in enumerate(diag):
                if d < 0:
                    raise NotRightForm(
                        f"entry ({i}, {t + 1}, ...) = {d} cannot be an even power")
            mags = [_root_with_snap(d, degree) for d in diag]
            support = [t for t, v in enumerate(mags) if v > 0.0]
            if support:
                anchor = support[0]
                signs[anchor] = 1
                for t in support[1:]:
                    mixed = tensor.entries.get(
                        (i, anchor + 1) + (t + 1,) * (degree - 1), 0.0)
                    # a[i, anchor, t, ..., t] = q[i, anchor] * q[i, t]^(m-2), odd power of q[i, t]
                    signs[t] = 1 if mixed >= 0 else -1
            for t in support:
                q[i - 1, t] = signs[t] * mags[t]
        profile.append(tuple(signs))

    for i in range(1, n + 1):
        row = q[i - 1]
        for feet in itertools.product(range(1, n + 1), repeat=degree):
            expected = tensor.entries.get((i,) + feet, 0.0)
            got = 1.0
            for t in feet:
                got *= row[t - 1]
            if abs(got - expected) > VERIFY_TOL * max(1.0, abs(expected)):
                raise NotRightForm(
                    f"entry ({i}, {', '.join(map(str, feet))}) = {expected} "
                    f"but the factorization gives {got}")

    return RightFormRecovery(q, tuple(profile))


def right_k_inverse(tensor: Tensor, k: int) -> Tensor:
    """A right inverse of order k for tensors of the form unit_tensor(m) * Q."""
    if k < 2:
        raise OrderTooSmall(f"right inverses need k >= 2, got {k}")
    try:
        recovery = recover_right_form(tensor)
    except NotRightForm as exc:
        raise NotRightInvertible(str(exc)) from exc
    try:
        inv = linalg.invert(recovery.q)
    except SingularMatrix as exc:
        raise NotRightInvertible("recovered factor matrix is singular") from exc
    return general_product(tensor_from_matrix(inv), unit_tensor(k, tensor.dim))


def verify_inverse(candidate: Tensor, tensor: Tensor, side: str,
                   tol: float = VERIFY_TOL) -> bool:
    """Multiply in the stated order and compare against the unit tensor entrywise.

    ``side='left'`` checks candidate * tensor, ``side='right'`` checks
    tensor * candidate. Comparison covers missing entries on both sides.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if candidate.dim != tensor.dim:
        raise DimensionMismatch(f"dimensions differ: {candidate.dim} vs {tensor.dim}")
    if side == "left":
        prod = general_product(candidate, tensor)
    else:
        prod = general_product(tensor, candidate)
    return prod.allclose(unit_tensor(prod.order, prod.dim), tol)
