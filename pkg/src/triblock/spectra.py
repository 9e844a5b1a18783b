"""Determinants, factored spectra, spectral radii and a numerical
singularity probe for blocked tensors.

The closed forms all flow from one fact: over a supported block
structure with parts (n_1, ..., n_r) in dimension n, the determinant
factors as

    det A = prod_i  det(A_i) ** (m-1) ** (n - n_i)

and the characteristic polynomial factors the same way, so spectra come
back as (block eigenvalue, exponent) pairs rather than flat multisets.
Third-type structure is excluded: it genuinely does not satisfy the
formula, and asking for it is an error rather than a wrong number.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .blocked import BlockKind, Partition, blocked_partitions, diagonal_blocks, is_blocked
from .core import Tensor, apply
from .errors import (
    BlockDetUnavailable,
    BlockSpectrumUnavailable,
    DimensionMismatch,
    DimensionTooLarge,
    NegativeEntry,
    NoConvergence,
    NotBlocked,
    NotDiagonal,
    OrderTooSmall,
    ThirdTypeUnsupported,
)
from .structure import is_weakly_irreducible, normal_form_2nd

_ORACLE_GUARD = 6

# kinds whose diagonal blocks determine determinant and spectrum
_SUPPORTED = (BlockKind.UTB1, BlockKind.UTB2, BlockKind.LTB1, BlockKind.LTB2, BlockKind.DIAG)
# preference order when hunting refinements of a diagonal block
_REFINE_ORDER = (BlockKind.UTB1, BlockKind.UTB2, BlockKind.LTB1, BlockKind.LTB2)


def _is_diagonal(tensor: Tensor) -> bool:
    return all(len(set(idx)) == 1 for idx in tensor.entries)


def _exact_pow(base: float, exponent: int):
    """Integer bases go through arbitrary-precision integer power."""
    if float(base).is_integer():
        return int(base) ** exponent
    return base ** exponent


def det_dim1(tensor: Tensor) -> float:
    """Determinant of a dimension-1 tensor: its single entry."""
    if tensor.dim != 1:
        raise DimensionMismatch(f"expected dim 1, got {tensor.dim}")
    return tensor.entries.get((1,) * tensor.order, 0.0)


def det_diagonal(tensor: Tensor) -> float:
    """prod d_i ** (m-1)^(n-1) for a diagonal tensor.

    Integer diagonals are multiplied out in exact integer arithmetic
    before the final float conversion.
    """
    if tensor.order < 2:
        raise OrderTooSmall("determinants need order >= 2")
    if not _is_diagonal(tensor):
        raise NotDiagonal("tensor has an off-diagonal entry")
    exponent = (tensor.order - 1) ** (tensor.dim - 1)
    total = 1
    for i in range(1, tensor.dim + 1):
        d = tensor.entries.get((i,) * tensor.order, 0.0)
        total = total * _exact_pow(d, exponent)
    return float(total)


def _finest_refinement(tensor: Tensor) -> Optional[tuple[Partition, BlockKind]]:
    """The refinement with the most parts over the supported kinds, or None.

    Ties break toward the earlier kind, then the lexicographically
    smaller partition, making the recursion deterministic.
    """
    best: Optional[tuple[Partition, BlockKind]] = None
    best_key = None
    for rank, kind in enumerate(_REFINE_ORDER):
        for p in blocked_partitions(tensor, kind, 2):
            key = (-p.r, rank, p.parts)
            if best_key is None or key < best_key:
                best_key = key
                best = (p, kind)
    return best


def _checked(tensor: Tensor, partition: Partition, kind: BlockKind) -> None:
    if tensor.order < 2:
        raise OrderTooSmall("determinants need order >= 2")
    if kind in (BlockKind.UTB3, BlockKind.LTB3):
        raise ThirdTypeUnsupported(
            "third-type triangular structure does not determine the determinant or spectrum")
    if kind not in _SUPPORTED:
        raise NotBlocked(f"unsupported block kind {kind!r}")
    if partition.n != tensor.dim:
        raise DimensionMismatch(
            f"partition covers [1, {partition.n}] but tensor dim is {tensor.dim}")
    if not is_blocked(tensor, partition, kind):
        raise NotBlocked(f"tensor is not {partition}-{kind.token} blocked")


def _block_det(block: Tensor):
    if block.dim == 1:
        val = det_dim1(block)
        return int(val) if float(val).is_integer() else val
    if _is_diagonal(block):
        m, n = block.order, block.dim
        exponent = (m - 1) ** (n - 1)
        total = 1
        for i in range(1, n + 1):
            total = total * _exact_pow(block.entries.get((i,) * m, 0.0), exponent)
        return total
    refinement = _finest_refinement(block)
    if refinement is None:
        raise BlockDetUnavailable(
            f"a dim-{block.dim} diagonal block admits no supported refinement")
    p, kind = refinement
    return _det_product(block, p, kind)


def _det_product(tensor: Tensor, partition: Partition, kind: BlockKind):
    m, n = tensor.order, tensor.dim
    total = 1
    for part, block in zip(partition.parts, diagonal_blocks(tensor, partition)):
        total = total * _exact_pow(_block_det(block), (m - 1) ** (n - part))
    return total


def det_blocked(tensor: Tensor, partition: Partition, kind: BlockKind) -> float:
    """Determinant through the block formula.

    Each diagonal block must be dimension-1, diagonal, or recursively
    blocked under some supported kind; otherwise BlockDetUnavailable.
    Third-type input raises ThirdTypeUnsupported because the formula is
    provably false there.
    """
    _checked(tensor, partition, kind)
    return float(_det_product(tensor, partition, kind))


@dataclass(frozen=True)
class SpectrumItem:
    """Eigenvalues of one terminal block together with their lifted exponent."""

    eigenvalues: tuple[float, ...]
    exponent: int


@dataclass(frozen=True)
class SpectrumFactored:
    """A spectrum kept in factored form: items multiply to the characteristic polynomial."""

    items: tuple[SpectrumItem, ...]
    total_degree: int

    def as_multiset(self) -> dict[float, int]:
        out: dict[float, int] = {}
        for item in self.items:
            for ev in item.eigenvalues:
                out[ev] = out.get(ev, 0) + item.exponent
        return out


def spectrum_blocked(tensor: Tensor, partition: Partition, kind: BlockKind) -> SpectrumFactored:
    """Factored spectrum over a supported block structure.

    Recursion must bottom out in dimension-1 blocks (single eigenvalue
    each); exponents pick up (m-1)^(dim - part) at every level, which
    telescopes to (m-1)^(n-1) for each surviving entry.
    """
    _checked(tensor, partition, kind)
    m, n = tensor.order, tensor.dim
    items: list[SpectrumItem] = []

    def collect(block: Tensor, lifted: int) -> None:
        if block.dim == 1:
            items.append(SpectrumItem((det_dim1(block),), lifted))
            return
        refinement = _finest_refinement(block)
        if refinement is None:
            raise BlockSpectrumUnavailable(
                f"a dim-{block.dim} diagonal block cannot be reduced to dimension 1")
        p, _ = refinement
        for part, sub in zip(p.parts, diagonal_blocks(block, p)):
            collect(sub, lifted * (m - 1) ** (block.dim - part))

    for part, block in zip(partition.parts, diagonal_blocks(tensor, partition)):
        collect(block, (m - 1) ** (n - part))

    degree = n * (m - 1) ** (n - 1)
    if sum(len(it.eigenvalues) * it.exponent for it in items) != degree:
        raise AssertionError("spectrum bookkeeping lost degrees")
    return SpectrumFactored(tuple(items), degree)


@dataclass(frozen=True)
class SpectralResult:
    """Output of the power iteration.

    ``eigvec`` is a positive vector when the iteration itself converged;
    reducible inputs go through the normal form, which yields the radius
    but no single positive eigenvector.
    """

    rho: float
    eigvec: Optional[np.ndarray]
    iterations: int
    residual: float


def _power_iteration(tensor: Tensor, tol: float, max_iter: int) -> SpectralResult:
    """Collatz-Wielandt bracketing on the tensor shifted by the unit tensor.

    The shift keeps every iterate strictly positive and guarantees the
    bounds close for weakly irreducible input; it is undone exactly when
    reporting.
    """
    m, n = tensor.order, tensor.dim
    shifted = dict(tensor.entries)
    for i in range(1, n + 1):
        key = (i,) * m
        shifted[key] = shifted.get(key, 0.0) + 1.0
    work = Tensor(m, n, shifted)

    x = np.ones(n)
    lower = upper = None
    for it in range(1, max_iter + 1):
        y = apply(work, x)
        ratios = y / x ** (m - 1)
        lower = float(ratios.min())
        upper = float(ratios.max())
        if upper - lower <= tol:
            rho = upper - 1.0
            residual = float(np.max(np.abs(apply(tensor, x) - rho * x ** (m - 1))))
            return SpectralResult(rho, x, it, residual)
        x = y ** (1.0 / (m - 1))
        x = x / x.max()
    raise NoConvergence(
        f"bounds still {upper - lower:.3e} apart after {max_iter} iterations",
        lower=lower - 1.0, upper=upper - 1.0, iterations=max_iter)


def spectral_radius(tensor: Tensor, tol: float = 1e-10, max_iter: int = 10000,
                    seed: int = 7) -> SpectralResult:
    """Largest H-eigenvalue of a nonnegative tensor.

    Weakly irreducible input runs the power iteration directly from the
    all-ones vector. Anything else is decomposed through the second-type
    normal form and the radius is the maximum over diagonal blocks; the
    reported residual belongs to the winning block. ``seed`` is accepted
    for interface stability; the deterministic start never consumes it.
    """
    if tensor.order < 2:
        raise OrderTooSmall("spectral radius needs order >= 2")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    for idx, v in tensor.entries.items():
        if v < 0:
            raise NegativeEntry(f"entry {idx} is negative: {v}")

    n, m = tensor.dim, tensor.order
    if tensor.is_zero():
        return SpectralResult(0.0, np.ones(n), 0, 0.0)
    if n == 1:
        value = tensor.entries.get((1,) * m, 0.0)
        return SpectralResult(value, np.ones(1), 0, 0.0)
    if is_weakly_irreducible(tensor):
        return _power_iteration(tensor, tol, max_iter)

    nf = normal_form_2nd(tensor)
    best: Optional[SpectralResult] = None
    iterations = 0
    for block in nf.blocks:
        result = spectral_radius(block, tol=tol, max_iter=max_iter, seed=seed)
        iterations += result.iterations
        if best is None or result.rho > best.rho:
            best = result
    assert best is not None
    return SpectralResult(best.rho, None, iterations, best.residual)


@dataclass(frozen=True)
class OracleReport:
    """Numerical evidence about min ||A x||_2 over the complex unit sphere."""

    min_norm: float
    witness: np.ndarray
    restarts_used: int


def _oracle_jacobian(tensor: Tensor, z: np.ndarray) -> np.ndarray:
    """Complex Jacobian of x -> apply(tensor, x)."""
    n, m = tensor.dim, tensor.order
    jac = np.zeros((n, n), dtype=complex)
    for idx, a in tensor.entries.items():
        i = idx[0] - 1
        feet = [t - 1 for t in idx[1:]]
        vals = [z[f] for f in feet]
        for pos, f in enumerate(feet):
            partial = a
            for s, v in enumerate(vals):
                if s != pos:
                    partial *= v
            jac[i, f] += partial
    return jac


def singularity_oracle(tensor: Tensor, restarts: int = 64, iters: int = 200,
                       seed: int = 7) -> OracleReport:
    """Projected gradient descent estimate of min ||A x||_2, ||x||_2 = 1, x complex.

    A reported minimum near zero is strong evidence of a nontrivial
    projective zero (vanishing determinant); a minimum bounded away from
    zero certifies, numerically, that none exists. Each restart draws
    its own start from seed + restart index, so runs are reproducible
    and independent of scheduling.

    Each iteration first tries a Gauss-Newton move (solve J d = -y in
    least squares); plain descent on ||A x||^2 flattens out quartically
    near a zero, while the Newton step keeps converging geometrically.
    Moves are only ever accepted when they lower the objective, so the
    gradient line search below remains the fallback everywhere else.
    """
    if tensor.order < 2:
        raise OrderTooSmall("the singularity probe needs order >= 2")
    if tensor.dim > _ORACLE_GUARD:
        raise DimensionTooLarge(
            f"the probe is capped at dim {_ORACLE_GUARD}, got {tensor.dim}")
    if restarts < 1 or iters < 1:
        raise ValueError("restarts and iters must be positive")

    def objective(z: np.ndarray) -> float:
        y = apply(tensor, list(z))
        return float(np.real(np.vdot(y, y)))

    best_f = np.inf
    best_z: Optional[np.ndarray] = None
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        z = rng.standard_normal(tensor.dim) + 1j * rng.standard_normal(tensor.dim)
        z = z / np.linalg.norm(z)
        f = objective(z)
        for _ in range(iters):
            y = apply(tensor, list(z))
            jac = _oracle_jacobian(tensor, z)
            delta = np.linalg.lstsq(jac, -y, rcond=None)[0]
            norm = np.linalg.norm(z + delta)
            if norm > 0:
                trial = (z + delta) / norm
                f_trial = objective(trial)
                if f_trial < f:
                    z, f = trial, f_trial
                    continue
            # real-coordinate gradient of ||y||^2, packed back into a complex vector
            grad = 2.0 * np.conj(jac.T @ np.conj(y))
            if np.linalg.norm(grad) < 1e-14:
                break
            step = 0.5
            improved = False
            while step > 1e-17:
                trial = z - step * grad
                norm = np.linalg.norm(trial)
                if norm > 0:
                    trial = trial / norm
                    f_trial = objective(trial)
                    if f_trial < f:
                        z, f = trial, f_trial
                        improved = True
                        break
                step *= 0.5
            if not improved:
                break
        if f < best_f:
            best_f, best_z = f, z

    assert best_z is not None
    return OracleReport(float(np.sqrt(max(best_f, 0.0))), best_z, restarts)
