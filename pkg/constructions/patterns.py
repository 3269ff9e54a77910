# constructions/patterns.py

"""
Forbidden-pattern constructions: K^k(t,t) and the recursive F^k_r.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import List, Tuple

import config
from hypercore.errors import GuardExceeded, ParameterError
from hypercore.hypergraph import Hypergraph, colex_combinations
from utils.logger import setup_logger

logger = setup_logger("constructions", "constructions.log")


def gen_ktt(t: int, k: int) -> Hypergraph:
    """Vertices 0..t-1 form A, t..2t-1 form B; edges meet A or B in exactly one vertex."""
    if t < 1:
        raise ParameterError(f"need t >= 1, got t={t}")
    if k < 3:
        raise ParameterError(f"need k >= 3, got k={k}")
    edges = []
    for e in combinations(range(2 * t), k):
        in_a = sum(1 for v in e if v < t)
        if in_a == 1 or k - in_a == 1:
            edges.append(e)
    return Hypergraph(k=k, n=2 * t, edges=tuple(edges))


def ktt_colouring_parts(t: int) -> Tuple[int, ...]:
    """A and B are a weak 2-colouring of K^k(t,t) for k >= 3."""
    return tuple([0] * t + [1] * t)


@dataclass(frozen=True)
class FrParams:
    k: int
    r: int

    def validate(self):
        if self.k < 3:
            raise ParameterError(f"need k >= 3, got k={self.k}")
        if self.r < 1:
            raise ParameterError(f"need r >= 1, got r={self.r}")

    @property
    def core_size(self) -> int:
        """|S| = r(k-2)+1"""
        return self.r * (self.k - 2) + 1

    @property
    def m(self) -> int:
        return comb(self.core_size, self.k - 1)

    @property
    def vertex_count(self) -> int:
        if self.r == 1:
            return self.k
        return self.core_size + self.m * FrParams(self.k, self.r - 1).vertex_count

    @property
    def edge_count(self) -> int:
        if self.r == 1:
            return 1
        below = FrParams(self.k, self.r - 1)
        return self.m * (below.vertex_count + below.edge_count)


@dataclass(frozen=True)
class FrBlock:
    """One X_j with the vertex range of its attached copy of F^k_{r-1}"""
    link: Tuple[int, ...]
    start: int
    size: int

    @property
    def vertices(self) -> range:
        return range(self.start, self.start + self.size)


def fr_layout(k: int, r: int) -> Tuple[Tuple[int, ...], List[FrBlock]]:
    """S occupies 0..|S|-1; block j follows in colex order of X_j."""
    params = FrParams(k, r)
    params.validate()
    if r == 1:
        return tuple(range(k)), []
    core = tuple(range(params.core_size))
    sub_size = FrParams(k, r - 1).vertex_count
    blocks, offset = [], params.core_size
    for link in colex_combinations(core, k - 1):
        blocks.append(FrBlock(link=link, start=offset, size=sub_size))
        offset += sub_size
    return core, blocks


def gen_fr(k: int, r: int) -> Hypergraph:
    params = FrParams(k, r)
    params.validate()
    if params.vertex_count > config.FR_MAX_VERTICES:
        raise GuardExceeded("FR_MAX_VERTICES", params.vertex_count, config.FR_MAX_VERTICES)
    H = Hypergraph(k=k, n=params.vertex_count, edges=tuple(sorted(_fr_edges(k, r, 0))))
    logger.info(f"F^{k}_{r}: {H.n} vertices, {len(H.edges)} edges")
    return H


def _fr_edges(k: int, r: int, offset: int) -> List[Tuple[int, ...]]:
    if r == 1:
        return [tuple(range(offset, offset + k))]
    core, blocks = fr_layout(k, r)
    edges = []
    for block in blocks:
        edges.extend(_fr_edges(k, r - 1, offset + block.start))
        for v in block.vertices:
            edges.append(tuple(offset + x for x in block.link) + (offset + v,))
    return edges
