# hypercore/hypergraph.py

"""
Core data model for k-uniform hypergraphs.

Vertices are dense integers 0..n-1. Edges are strictly increasing tuples and
the edge tuple is kept in lexicographic order, so two hypergraphs compare
equal exactly when their canonical forms agree. Vertex sets are also handled
as int bitmasks (bit v <-> vertex v); Python ints have no width limit, so the
same code serves n <= 64 and larger hosts.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import config
from hypercore.errors import HypergraphError

Edge = Tuple[int, ...]


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def colex_rank(subset: Sequence[int]) -> int:
    """Rank of a sorted subset in colexicographic order (combinatorial number system)."""
    return sum(comb(v, i + 1) for i, v in enumerate(subset))


def iter_colex(n: int, size: int) -> Iterator[Tuple[int, ...]]:
    """size-subsets of 0..n-1 in colex order, lazily."""
    if size == 0:
        yield ()
        return
    for top in range(size - 1, n):
        for rest in iter_colex(top, size - 1):
            yield rest + (top,)


def colex_combinations(items: Sequence, size: int) -> List[tuple]:
    """All size-subsets of items (taken by position) in colex order of positions."""
    return [tuple(items[p] for p in pos) for pos in iter_colex(len(items), size)]


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on vertices 0..n-1 with a canonical edge tuple"""
    k: int
    n: int
    edges: Tuple[Edge, ...]

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_masks(self) -> Tuple[int, ...]:
        return tuple(mask_of(e) for e in self.edges)

    @cached_property
    def mask_set(self) -> FrozenSet[int]:
        return frozenset(self.edge_masks)

    @cached_property
    def link(self) -> Dict[int, int]:
        """(k-1)-set mask -> neighbourhood mask, only for sets of positive codegree"""
        index: Dict[int, int] = {}
        for e, emask in zip(self.edges, self.edge_masks):
            for v in e:
                sub = emask ^ (1 << v)
                index[sub] = index.get(sub, 0) | (1 << v)
        return index

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return mask_of(vertices) in self.mask_set

    def neighbour_mask(self, subset_mask: int) -> int:
        return self.link.get(subset_mask, 0)

    def codegree(self, subset: Iterable[int]) -> int:
        return self.link.get(mask_of(subset), 0).bit_count()

    def __repr__(self):
        return f"Hypergraph(k={self.k}, n={self.n}, m={len(self.edges)})"


def new_hypergraph(k: int, n: int, edge_list: Iterable[Iterable[int]]) -> Hypergraph:
    """Validate and canonicalize an edge list into a Hypergraph."""
    if k < 2:
        raise HypergraphError(f"uniformity must be at least 2, got {k}")
    if n < 0:
        raise HypergraphError(f"vertex count must be non-negative, got {n}")

    canonical = set()
    for raw in edge_list:
        edge = tuple(sorted(raw))
        if len(edge) != k:
            raise HypergraphError(f"edge {tuple(raw)} has arity {len(edge)}, expected {k}")
        if len(set(edge)) != k:
            raise HypergraphError(f"edge {tuple(raw)} repeats a vertex")
        if edge[0] < 0 or edge[-1] >= n:
            raise HypergraphError(f"edge {tuple(raw)} has a vertex outside 0..{n - 1}")
        if edge in canonical:
            raise HypergraphError(f"duplicate edge {edge}")
        canonical.add(edge)

    return Hypergraph(k=k, n=n, edges=tuple(sorted(canonical)))


def complete_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k=k, n=n, edges=tuple(combinations(range(n), k)))


def empty_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k=k, n=n, edges=())


def relabel(H: Hypergraph, permutation: Sequence[int]) -> Hypergraph:
    """Apply vertex map v -> permutation[v]."""
    if sorted(permutation) != list(range(H.n)):
        raise HypergraphError("relabelling must be a permutation of 0..n-1")
    return Hypergraph(k=H.k, n=H.n,
                      edges=tuple(sorted(tuple(sorted(permutation[v] for v in e)) for e in H.edges)))


@dataclass(frozen=True)
class CodegreeProfile:
    """
    Codegree of every (k-1)-subset.

    degrees is indexed by the colex rank of the subset and is materialized
    when C(n, k-1) fits PROFILE_MATERIALIZE_LIMIT; otherwise it is None and
    entries are answered from the hypergraph's link index on demand.
    """
    k: int
    n: int
    min_degree: int
    witness: Tuple[int, ...]
    degrees: Optional[np.ndarray]
    host: Hypergraph

    def degree(self, subset: Sequence[int]) -> int:
        subset = tuple(sorted(subset))
        if len(subset) != self.k - 1:
            raise HypergraphError(f"expected a {self.k - 1}-subset, got {subset}")
        if self.degrees is not None:
            return int(self.degrees[colex_rank(subset)])
        return self.host.codegree(subset)

    def items(self) -> Iterator[Tuple[Tuple[int, ...], int]]:
        for subset in combinations(range(self.n), self.k - 1):
            yield subset, self.degree(subset)

    @property
    def total(self) -> int:
        if self.degrees is not None:
            return int(self.degrees.sum())
        return sum(d for _, d in self.items())


def codegree_profile(H: Hypergraph) -> CodegreeProfile:
    """Codegree of every (k-1)-subset, with the minimum and a witness attaining it."""
    size = H.k - 1
    if H.n < size:
        raise HypergraphError(f"codegree needs n >= k-1, got n={H.n}, k={H.k}")

    total_subsets = comb(H.n, size)
    if total_subsets <= config.PROFILE_MATERIALIZE_LIMIT:
        degrees = np.zeros(total_subsets, dtype=np.int64)
        for e in H.edges:
            for sub in combinations(e, size):
                degrees[colex_rank(sub)] += 1
        rank = int(np.argmin(degrees))
        witness = colex_unrank(rank, size)
        return CodegreeProfile(k=H.k, n=H.n, min_degree=int(degrees[rank]),
                               witness=witness, degrees=degrees, host=H)

    # streaming pass; keeps the colex-least minimizer like argmin does
    best, witness = None, None
    for sub in iter_colex(H.n, size):
        d = H.codegree(sub)
        if best is None or d < best:
            best, witness = d, sub
            if d == 0:
                break
    return CodegreeProfile(k=H.k, n=H.n, min_degree=best, witness=witness, degrees=None, host=H)


def min_codegree(H: Hypergraph) -> int:
    return codegree_profile(H).min_degree


def colex_unrank(rank: int, size: int) -> Tuple[int, ...]:
    """Inverse of colex_rank."""
    out = []
    for i in range(size, 0, -1):
        v = i - 1
        while comb(v + 1, i) <= rank:
            v += 1
        out.append(v)
        rank -= comb(v, i)
    return tuple(reversed(out))


def neighbourhood(H: Hypergraph, S: Iterable[int]) -> FrozenSet[int]:
    """N_H(S): vertices v with S + {v} an edge."""
    S = tuple(S)
    if len(set(S)) != H.k - 1 or len(S) != H.k - 1:
        raise HypergraphError(f"expected {H.k - 1} distinct vertices, got {S}")
    if any(v < 0 or v >= H.n for v in S):
        raise HypergraphError(f"subset {S} leaves 0..{H.n - 1}")
    return frozenset(vertices_of(H.neighbour_mask(mask_of(S))))


def induced(H: Hypergraph, W: Iterable[int]) -> Hypergraph:
    """H[W], relabelled to 0..|W|-1 in increasing vertex order."""
    order = sorted(set(W))
    position = {v: i for i, v in enumerate(order)}
    wmask = mask_of(order)
    edges = tuple(sorted(
        tuple(position[v] for v in e)
        for e, emask in zip(H.edges, H.edge_masks)
        if emask & wmask == emask
    ))
    return Hypergraph(k=H.k, n=len(order), edges=edges)
