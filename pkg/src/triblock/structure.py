"""Reducibility, block-triangular normal forms, and uniform hypergraphs.

Two nested notions of reducibility drive everything here. An index set I
strongly reduces a tensor when rows of I vanish whenever *all* trailing
indices leave I; it weakly reduces when rows of I vanish whenever *any*
trailing index leaves I. Weak reducibility is exactly failure of strong
connectivity of the digraph drawn from the representation matrix, which
is what the normal-form peeling exploits.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import networkx as nx

from .blocked import BlockKind, Partition, compositions, diagonal_blocks, is_blocked
from .core import (
    Permutation,
    Tensor,
    permute_similar,
    principal_subtensor,
    representation_matrix,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptyIndexSet,
    IndexOutOfRange,
    InvalidHypergraph,
    NormalFormUnavailable,
    NotReducingSet,
    OrderTooSmall,
)

_FIRST_TYPE_GUARD = 6  # the witness search is n! * 2^(n-1) candidates
_CHAIN_GUARD = 12  # the chain search visits subsets of [n]


def _check_order(tensor: Tensor) -> None:
    if tensor.order < 2:
        raise OrderTooSmall("reducibility needs order >= 2")


def _check_subset(tensor: Tensor, index_set: Iterable[int]) -> frozenset[int]:
    members = frozenset(int(i) for i in index_set)
    if not members:
        raise EmptyIndexSet("index set must be nonempty")
    for i in members:
        if not 1 <= i <= tensor.dim:
            raise IndexOutOfRange(f"index {i} outside [1, {tensor.dim}]")
    return members


def strongly_reduces(tensor: Tensor, index_set: Iterable[int]) -> bool:
    """Do rows of I vanish whenever every trailing index stays outside I?"""
    _check_order(tensor)
    members = _check_subset(tensor, index_set)
    if len(members) == tensor.dim:
        return False  # must be proper
    for idx in tensor.entries:
        if idx[0] in members and all(t not in members for t in idx[1:]):
            return False
    return True


def weakly_reduces(tensor: Tensor, index_set: Iterable[int]) -> bool:
    """Do rows of I vanish whenever at least one trailing index leaves I?"""
    _check_order(tensor)
    members = _check_subset(tensor, index_set)
    if len(members) == tensor.dim:
        return False
    for idx in tensor.entries:
        if idx[0] in members and any(t not in members for t in idx[1:]):
            return False
    return True


def _closure(tensor: Tensor, seed: int) -> set[int]:
    """Smallest superset of {seed} closed under "some row reaches it with all feet inside"."""
    inside = {seed}
    grew = True
    while grew:
        grew = False
        for idx in tensor.entries:
            if idx[0] not in inside and all(t in inside for t in idx[1:]):
                inside.add(idx[0])
                grew = True
    return inside


def find_reducing_set(tensor: Tensor) -> Optional[frozenset[int]]:
    """A strongly reducing index set, or None when the tensor is irreducible.

    Seeds a closure from each index in turn; the complement of the first
    closure that fails to swallow [1, n] strongly reduces the tensor.
    The search is complete: any reducing set's complement is closed, so
    seeding inside it must succeed.
    """
    _check_order(tensor)
    full = set(range(1, tensor.dim + 1))
    for seed in range(1, tensor.dim + 1):
        inside = _closure(tensor, seed)
        if inside != full:
            found = frozenset(full - inside)
            assert strongly_reduces(tensor, found)
            return found
    return None


def is_irreducible(tensor: Tensor) -> bool:
    """No strongly reducing set exists. Dimension-1 tensors count as irreducible."""
    return find_reducing_set(tensor) is None


def _digraph(tensor: Tensor) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(1, tensor.dim + 1))
    rep = representation_matrix(tensor)
    for i in range(tensor.dim):
        for j in range(tensor.dim):
            if rep[i, j] > 0.0:
                g.add_edge(i + 1, j + 1)
    return g


def find_weakly_reducing_set(tensor: Tensor) -> Optional[frozenset[int]]:
    """A weakly reducing index set, or None when none exists.

    The digraph on [1, n] with an edge i -> j whenever row i mentions
    index j is strongly connected exactly when the tensor is weakly
    irreducible. Otherwise any sink strongly connected component is
    closed under outgoing edges, hence weakly reduces the tensor; the
    one containing the smallest index is returned for determinism.
    """
    _check_order(tensor)
    if tensor.dim == 1:
        return None
    g = _digraph(tensor)
    if nx.is_strongly_connected(g):
        return None
    cond = nx.condensation(g)
    sinks = [cond.nodes[c]["members"] for c in cond.nodes if cond.out_degree(c) == 0]
    best = min(sinks, key=min)
    found = frozenset(best)
    assert weakly_reduces(tensor, found)
    return found


def is_weakly_irreducible(tensor: Tensor) -> bool:
    """Strong connectivity of the representation digraph; dimension 1 passes."""
    return find_weakly_reducing_set(tensor) is None


def reducing_to_utb(tensor: Tensor, index_set: Iterable[int],
                    weak: bool = False) -> tuple[Permutation, Tensor]:
    """Push a (strongly or weakly) reducing set to the bottom rows.

    Relabels so the complement keeps positions 1..k and the reducing set
    takes k+1..n, each in increasing order. The result is third-type
    upper triangular over (k, n-k) for a strong set, first-type for a
    weak one. The set is re-verified first.
    """
    members = _check_subset(tensor, index_set)
    ok = weakly_reduces(tensor, members) if weak else strongly_reduces(tensor, members)
    if not ok:
        kind = "weakly" if weak else "strongly"
        raise NotReducingSet(f"{sorted(members)} does not {kind} reduce the tensor")
    complement = sorted(set(range(1, tensor.dim + 1)) - members)
    image = [0] * tensor.dim
    for pos, old in enumerate(complement + sorted(members), start=1):
        image[old - 1] = pos
    sigma = Permutation(tuple(image))
    moved = permute_similar(tensor, sigma)
    k = len(complement)
    expected = BlockKind.UTB1 if weak else BlockKind.UTB3
    if not is_blocked(moved, Partition((k, tensor.dim - k)), expected):
        raise AssertionError("verified reducing set failed to produce the block structure")
    return sigma, moved


@dataclass(frozen=True)
class NormalForm:
    """A permutation similarity exhibiting block upper triangular structure.

    ``permute_similar(original, sigma)`` carries the stated kind over
    ``partition``, and ``blocks`` are its diagonal blocks in order.
    """

    sigma: Permutation
    partition: Partition
    kind: BlockKind
    blocks: tuple[Tensor, ...]


def _verify_normal_form(tensor: Tensor, nf: NormalForm, weak: bool) -> None:
    moved = permute_similar(tensor, nf.sigma)
    if nf.partition.r >= 2 and not is_blocked(moved, nf.partition, nf.kind):
        raise AssertionError("normal form failed block verification")
    got = diagonal_blocks(moved, nf.partition)
    if list(nf.blocks) != got:
        raise AssertionError("normal form blocks disagree with the moved tensor")
    check = is_weakly_irreducible if weak else is_irreducible
    if not all(check(b) for b in nf.blocks):
        raise AssertionError("normal form produced a reducible diagonal block")


def _assemble(tensor: Tensor, chain: list[frozenset[int]], kind: BlockKind,
              weak: bool) -> NormalForm:
    """Turn an ordered list of index blocks into a verified NormalForm."""
    image = [0] * tensor.dim
    pos = 1
    for comp in chain:
        for old in sorted(comp):
            image[old - 1] = pos
            pos += 1
    sigma = Permutation(tuple(image))
    parts = tuple(len(comp) for comp in chain)
    blocks = tuple(principal_subtensor(tensor, sorted(comp)) for comp in chain)
    nf = NormalForm(sigma, Partition(parts), kind, blocks)
    _verify_normal_form(tensor, nf, weak)
    return nf


def normal_form_3rd(tensor: Tensor) -> NormalForm:
    """Third-type upper triangular normal form with irreducible diagonal blocks.

    The triangular condition is equivalent to every block prefix being
    closed in the following sense: whenever all trailing indices of a
    nonzero entry lie in the prefix, its row index does too. Splitting
    off one reducing set at a time and recursing does not work, because
    an entry whose trailing indices straddle a cut escapes both halves;
    a valid refinement of one prefix can still break an outer one. So
    this runs a complete backtracking search over chains of closed
    prefixes whose successive differences induce irreducible blocks,
    trying smaller blocks first and lexicographically within a size,
    which makes the output deterministic.

    Some reducible tensors admit no such decomposition at all (with
    a_{122}=a_{233}=a_{312}=1 the only closed candidate prefix is {1}
    and the forced remainder block {2,3} is reducible); for those the
    search is exhaustive and NormalFormUnavailable is raised.
    """
    _check_order(tensor)
    n = tensor.dim
    if n > _CHAIN_GUARD:
        raise DimensionTooLarge(
            f"decomposition search is capped at dim {_CHAIN_GUARD}, got {n}")
    pattern = [(idx[0], frozenset(idx[1:])) for idx in tensor.entries]
    full = frozenset(range(1, n + 1))

    def closed(members: frozenset[int]) -> bool:
        return not any(row not in members and feet <= members
                       for row, feet in pattern)

    block_ok: dict[frozenset[int], bool] = {}

    def irreducible_block(members: frozenset[int]) -> bool:
        got = block_ok.get(members)
        if got is None:
            got = is_irreducible(principal_subtensor(tensor, sorted(members)))
            block_ok[members] = got
        return got

    dead: set[frozenset[int]] = set()

    def extend(prefix: frozenset[int]) -> Optional[list[frozenset[int]]]:
        if prefix == full:
            return []
        if prefix in dead:
            return None
        rest = sorted(full - prefix)
        for size in range(1, len(rest) + 1):
            for combo in itertools.combinations(rest, size):
                block = frozenset(combo)
                grown = prefix | block
                if grown != full and not closed(grown):
                    continue
                if not irreducible_block(block):
                    continue
                tail = extend(grown)
                if tail is not None:
                    return [block] + tail
        dead.add(prefix)
        return None

    chain = extend(frozenset())
    if chain is None:
        raise NormalFormUnavailable(
            "no permutation gives block upper triangular structure with "
            "irreducible diagonal blocks")
    return _assemble(tensor, chain, BlockKind.UTB3, weak=False)


def normal_form_2nd(tensor: Tensor) -> NormalForm:
    """Second-type upper triangular normal form with weakly irreducible blocks.

    Peels sink strongly connected components of the representation
    digraph from the bottom up: the first component peeled becomes the
    last diagonal block. Among simultaneous sinks the one containing the
    smallest index goes first, making the output deterministic.
    """
    _check_order(tensor)
    remaining = list(range(1, tensor.dim + 1))
    peeled: list[frozenset[int]] = []
    while remaining:
        sub = principal_subtensor(tensor, remaining)
        g = _digraph(sub)
        cond = nx.condensation(g)
        sinks = [cond.nodes[c]["members"] for c in cond.nodes if cond.out_degree(c) == 0]
        local = min(sinks, key=min)
        component = frozenset(remaining[i - 1] for i in local)
        peeled.append(component)
        remaining = [i for i in remaining if i not in component]

    return _assemble(tensor, list(reversed(peeled)), BlockKind.UTB2, weak=True)


def exists_first_type_normal_form(tensor: Tensor) -> Optional[tuple[Permutation, Partition]]:
    """Search for a first-type upper triangular similarity with weakly irreducible blocks.

    Exhausts every permutation and every partition with at least two
    parts, in lexicographic order, returning the first witness. The
    guard keeps the n! * 2^(n-1) search at desk scale.
    """
    _check_order(tensor)
    if tensor.dim > _FIRST_TYPE_GUARD:
        raise DimensionTooLarge(
            f"witness search is capped at dim {_FIRST_TYPE_GUARD}, got {tensor.dim}")
    parts_list = [Partition(parts) for parts in compositions(tensor.dim, 2)]
    for image in itertools.permutations(range(1, tensor.dim + 1)):
        sigma = Permutation(image)
        moved = permute_similar(tensor, sigma)
        for p in parts_list:
            if not is_blocked(moved, p, BlockKind.UTB1):
                continue
            if all(is_weakly_irreducible(b) for b in diagonal_blocks(moved, p)):
                return sigma, p
    return None


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices [1, n]; edges are k-sets."""

    k: int
    n: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.k < 2:
            raise InvalidHypergraph(f"edges need at least two vertices, got k={self.k}")
        if self.n < 1:
            raise InvalidHypergraph(f"vertex count must be positive, got {self.n}")
        seen = set()
        for edge in self.edges:
            if len(edge) != self.k:
                raise InvalidHypergraph(
                    f"edge {sorted(edge)} has {len(edge)} distinct vertices, expected {self.k}")
            for v in edge:
                if not 1 <= v <= self.n:
                    raise InvalidHypergraph(f"vertex {v} outside [1, {self.n}]")
            if edge in seen:
                raise InvalidHypergraph(f"duplicate edge {sorted(edge)}")
            seen.add(edge)

    @classmethod
    def from_edge_lists(cls, k: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        fixed = tuple(frozenset(int(v) for v in edge) for edge in edges)
        return cls(k, n, fixed)


def adjacency_tensor(graph: Hypergraph) -> Tensor:
    """Order-k adjacency tensor, 1/(k-1)! at every arrangement of every edge.

    The normalization makes applying the tensor to a vector reproduce,
    in each edge coordinate, the plain product over the other vertices.
    """
    value = 1.0 / math.factorial(graph.k - 1)
    entries = {}
    for edge in graph.edges:
        for perm in itertools.permutations(sorted(edge)):
            entries[perm] = value
    return Tensor(graph.k, graph.n, entries)


def connected_components(graph: Hypergraph) -> list[frozenset[int]]:
    """Vertex classes reachable through shared edges, sorted by smallest member.

    Plain union-find over the edge list; isolated vertices come back as
    singletons.
    """
    parent = list(range(graph.n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for edge in graph.edges:
        verts = sorted(edge)
        root = find(verts[0])
        for v in verts[1:]:
            parent[find(v)] = root

    groups: dict[int, set[int]] = {}
    for v in range(1, graph.n + 1):
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(g) for g in sorted(groups.values(), key=min)]
