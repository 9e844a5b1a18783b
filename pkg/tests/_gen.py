"""Test-side oracles and random instance generators.

The oracles here are deliberately naive re-derivations (dense loops over
every index tuple, brute-force subset scans) used to pin down expected
values independently of the library's sparse implementations.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

import triblock as tb
from triblock import BlockKind, Partition, Tensor


# ---------------------------------------------------------------- oracles

def dense_apply(tensor: Tensor, x):
    """Brute-force polynomial application over every index tuple."""
    n, m = tensor.dim, tensor.order
    out = [0.0 + 0.0j if any(isinstance(v, complex) for v in x) else 0.0] * n
    for idx in itertools.product(range(1, n + 1), repeat=m):
        a = tensor.get(idx)
        if a == 0.0:
            continue
        term = a
        for t in idx[1:]:
            term = term * x[t - 1]
        out[idx[0] - 1] = out[idx[0] - 1] + term
    return np.asarray(out)


def dense_product(a: Tensor, b: Tensor) -> Tensor:
    """Straight transcription of the product definition, dense in the output."""
    m, k, n = a.order, b.order, a.dim
    out_order = (m - 1) * (k - 1) + 1
    entries = []
    for i in range(1, n + 1):
        for alphas in itertools.product(
                itertools.product(range(1, n + 1), repeat=k - 1), repeat=m - 1):
            total = 0.0
            for feet in itertools.product(range(1, n + 1), repeat=m - 1):
                term = a.get((i,) + feet)
                if term == 0.0:
                    continue
                for foot, alpha in zip(feet, alphas):
                    term *= b.get((foot,) + alpha)
                    if term == 0.0:
                        break
                total += term
            if total != 0.0:
                flat = (i,) + tuple(v for alpha in alphas for v in alpha)
                entries.append((flat, total))
    return tb.new_tensor(out_order, n, entries)


def brute_strong_sets(tensor: Tensor) -> list[frozenset[int]]:
    """All strongly reducing proper nonempty subsets, by definition."""
    n = tensor.dim
    found = []
    for size in range(1, n):
        for subset in itertools.combinations(range(1, n + 1), size):
            members = set(subset)
            ok = all(not (idx[0] in members and all(t not in members for t in idx[1:]))
                     for idx in tensor.entries)
            if ok:
                found.append(frozenset(members))
    return found


def brute_weak_sets(tensor: Tensor) -> list[frozenset[int]]:
    """All weakly reducing proper nonempty subsets, by definition."""
    n = tensor.dim
    found = []
    for size in range(1, n):
        for subset in itertools.combinations(range(1, n + 1), size):
            members = set(subset)
            ok = all(not (idx[0] in members and any(t not in members for t in idx[1:]))
                     for idx in tensor.entries)
            if ok:
                found.append(frozenset(members))
    return found


def forbidden_positions(n: int, m: int, partition: Partition, kind: BlockKind) -> set:
    """Probe the public classifier with single-entry tensors.

    A position is forbidden under (partition, kind) exactly when the
    tensor holding a lone 1.0 there fails the structure test.
    """
    out = set()
    for idx in itertools.product(range(1, n + 1), repeat=m):
        probe = tb.new_tensor(m, n, [(idx, 1.0)])
        if not tb.is_blocked(probe, partition, kind):
            out.add(idx)
    return out


def blocked_or_trivial(tensor: Tensor, parts: tuple[int, ...], kind: BlockKind) -> bool:
    """Single-part triangular conditions are vacuously true in the recursions."""
    if len(parts) == 1:
        return True
    return tb.is_blocked(tensor, Partition(parts), kind)


def exact_int_det(matrix: np.ndarray) -> int:
    """Exact determinant of an integer matrix via rational elimination."""
    n = matrix.shape[0]
    rows = [[Fraction(int(x)) for x in row] for row in matrix]
    sign = 1
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        det *= rows[col][col]
        for r in range(col + 1, n):
            f = rows[r][col] / rows[col][col]
            rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    result = sign * det
    assert result.denominator == 1
    return int(result)


# -------------------------------------------------------------- generators

NONZERO = [-3, -2, -1, 1, 2, 3]


def rand_tensor(rng: random.Random, n: int, m: int, density: float = 0.3,
                values=NONZERO) -> Tensor:
    entries = []
    for idx in itertools.product(range(1, n + 1), repeat=m):
        if rng.random() < density:
            entries.append((idx, float(rng.choice(values))))
    return tb.new_tensor(m, n, entries)


def rand_blocked(rng: random.Random, parts: tuple[int, ...], kind: BlockKind,
                 m: int, density: float = 0.3, values=NONZERO) -> Tensor:
    """Random tensor supported only on positions the kind allows."""
    p = Partition(parts)
    n = p.n
    banned = forbidden_positions(n, m, p, kind)
    entries = []
    for idx in itertools.product(range(1, n + 1), repeat=m):
        if idx not in banned and rng.random() < density:
            entries.append((idx, float(rng.choice(values))))
    return tb.new_tensor(m, n, entries)


def rand_permutation(rng: random.Random, n: int) -> tb.Permutation:
    image = list(range(1, n + 1))
    rng.shuffle(image)
    return tb.Permutation(tuple(image))


def rand_unimodular(rng: random.Random, n: int, ops: int | None = None) -> np.ndarray:
    """Random integer matrix with determinant +-1 (shears plus sign flips)."""
    mat = np.eye(n, dtype=int)
    for _ in range(ops if ops is not None else 3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        mat[i] += rng.choice([-2, -1, 1, 2]) * mat[j]
    for i in range(n):
        if rng.random() < 0.3:
            mat[i] = -mat[i]
    return mat


def rand_blocked_unimodular(rng: random.Random, parts: tuple[int, ...]) -> np.ndarray:
    """Block upper triangular integer matrix, unimodular diagonal blocks."""
    p = Partition(parts)
    n = p.n
    mat = np.zeros((n, n), dtype=int)
    for l in range(1, p.r + 1):
        block = rand_unimodular(rng, p.parts[l - 1])
        lo = p.S(l - 1)
        mat[lo:p.S(l), lo:p.S(l)] = block
    for l in range(1, p.r):
        for i in p.block(l):
            for j in range(p.S(l) + 1, n + 1):
                if rng.random() < 0.4:
                    mat[i - 1, j - 1] = rng.choice(NONZERO)
    return mat


def rand_irreducible_nonneg(rng: random.Random, n: int, density: float = 0.3) -> np.ndarray:
    """Nonnegative matrix whose digraph contains the full cycle, hence irreducible."""
    mat = np.zeros((n, n))
    for i in range(n):
        mat[i, (i + 1) % n] = rng.uniform(0.5, 2.0)
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                mat[i, j] += rng.uniform(0.1, 1.5)
    return mat


def rand_m_matrix(rng: random.Random, n: int) -> np.ndarray:
    """Irreducible nonsingular M-matrix: s I - B with s beyond rho(B)."""
    b = rand_irreducible_nonneg(rng, n)
    rho = float(np.max(np.abs(np.linalg.eigvals(b))))
    s = rho + rng.uniform(0.3, 1.2)
    return s * np.eye(n) - b


def rand_blocked_m_matrix(rng: random.Random, parts: tuple[int, ...]) -> np.ndarray:
    """Block upper triangular Z-matrix with irreducible nonsingular M diagonal blocks."""
    p = Partition(parts)
    n = p.n
    mat = np.zeros((n, n))
    for l in range(1, p.r + 1):
        lo = p.S(l - 1)
        mat[lo:p.S(l), lo:p.S(l)] = rand_m_matrix(rng, p.parts[l - 1])
    for l in range(1, p.r):
        for i in p.block(l):
            for j in range(p.S(l) + 1, n + 1):
                if rng.random() < 0.5:
                    mat[i - 1, j - 1] = -rng.uniform(0.1, 1.0)
    return mat


def rand_hypergraph(rng: random.Random, k: int, groups: list[int],
                    edges_per_group: int = 3) -> tb.Hypergraph:
    """Edges drawn inside disjoint vertex groups, so at least len(groups) components."""
    n = sum(groups)
    edges: set[frozenset[int]] = set()
    start = 1
    for size in groups:
        verts = list(range(start, start + size))
        start += size
        if size < k:
            continue
        for _ in range(edges_per_group):
            edges.add(frozenset(rng.sample(verts, k)))
    return tb.Hypergraph(k, n, tuple(sorted(edges, key=sorted)))
