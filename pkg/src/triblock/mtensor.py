"""Z-tensor and M-tensor classification.

A Z-tensor has nonpositive off-diagonal entries and therefore splits as
s * unit - b with b nonnegative; the canonical split here takes s to be
the largest diagonal entry, making the diagonal of b nonnegative and as
small as possible. M-tensor status then reduces to comparing s with the
spectral radius of b, which is well defined because the margin
s - rho(b) does not depend on the chosen split.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import Tensor
from .errors import NotZTensor, OrderTooSmall
from .spectra import spectral_radius

DEFAULT_TOL = 1e-9


def is_z_tensor(tensor: Tensor) -> bool:
    """Every off-diagonal entry is nonpositive."""
    if tensor.order < 2:
        raise OrderTooSmall("Z-tensor classification needs order >= 2")
    return all(v <= 0.0 for idx, v in tensor.entries.items() if len(set(idx)) > 1)


@dataclass(frozen=True)
class ZSplit:
    """A decomposition tensor = s * unit - b with b nonnegative."""

    s: float
    b: Tensor


def z_split(tensor: Tensor) -> ZSplit:
    """Split a Z-tensor with s equal to its largest diagonal entry."""
    if not is_z_tensor(tensor):
        bad = next(idx for idx, v in tensor.entries.items()
                   if len(set(idx)) > 1 and v > 0.0)
        raise NotZTensor(f"positive off-diagonal entry at {bad}")
    m, n = tensor.order, tensor.dim
    s = max(tensor.entries.get((i,) * m, 0.0) for i in range(1, n + 1))
    entries = {}
    for i in range(1, n + 1):
        key = (i,) * m
        v = s - tensor.entries.get(key, 0.0)
        if v != 0.0:
            entries[key] = v
    for idx, v in tensor.entries.items():
        if len(set(idx)) > 1:
            entries[idx] = -v
    return ZSplit(s, Tensor(m, n, entries))


def _split_margin(tensor: Tensor, tol: float) -> tuple[ZSplit, float]:
    split = z_split(tensor)
    rho = spectral_radius(split.b, tol=min(tol, 1e-10)).rho
    return split, split.s - rho


def is_m_tensor(tensor: Tensor, tol: float = DEFAULT_TOL) -> bool:
    """s >= rho(b) up to tol for the canonical split; raises NotZTensor otherwise."""
    _, margin = _split_margin(tensor, tol)
    return margin >= -tol


def is_nonsingular_m_tensor(tensor: Tensor, tol: float = DEFAULT_TOL) -> bool:
    """Strict margin: s > rho(b) + tol for the canonical split."""
    _, margin = _split_margin(tensor, tol)
    return margin > tol


def is_positive_tensor(tensor: Tensor) -> bool:
    """Every one of the n^order positions holds a strictly positive value."""
    want = tensor.dim ** tensor.order
    return tensor.nnz == want and all(v > 0.0 for v in tensor.entries.values())


def m_tensor_report(tensor: Tensor, tol: float = DEFAULT_TOL) -> dict:
    """One-pass classification used by the command line tool."""
    if not is_z_tensor(tensor):
        return {"z": False, "m": False, "nonsingular_m": False, "s": None, "rho": None}
    split, margin = _split_margin(tensor, tol)
    return {
        "z": True,
        "m": bool(margin >= -tol),
        "nonsingular_m": bool(margin > tol),
        "s": split.s,
        "rho": split.s - margin,
    }
