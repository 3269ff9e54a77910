# constructions/hosts.py

"""
Dense host constructions with a known minimum codegree.

gen_gabn    a-part construction with the "b parts forward" rule
gen_rpartite all k-sets meeting at least two of r near-equal parts

Parts are contiguous blocks of vertices; when n is not divisible by the
number of parts, the first n mod a parts take the extra vertex.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from hypercore.errors import ParameterError
from hypercore.hypergraph import Hypergraph
from hypercore.witness import Colouring
from utils.logger import setup_logger

logger = setup_logger("constructions", "constructions.log")


def near_equal_parts(n: int, parts: int) -> List[Tuple[int, ...]]:
    base, extra = divmod(n, parts)
    out, start = [], 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        out.append(tuple(range(start, start + size)))
        start += size
    return out


def _part_index(parts: List[Tuple[int, ...]], n: int) -> List[int]:
    index = [0] * n
    for i, block in enumerate(parts):
        for v in block:
            index[v] = i
    return index


@dataclass(frozen=True)
class GabnParams:
    a: int
    b: int
    n: int
    k: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.b, self.a)

    def validate(self):
        if self.a < 2:
            raise ParameterError(f"need a >= 2, got a={self.a}")
        if not 1 <= self.b < self.a:
            raise ParameterError(f"need 1 <= b < a, got b={self.b}, a={self.a}")
        if self.n < self.a:
            raise ParameterError(f"need n >= a, got n={self.n}, a={self.a}")
        if self.k < 3:
            raise ParameterError(f"need k >= 3, got k={self.k}")

    def codegree_lower_bound(self) -> Fraction:
        """(b/a)n - b - (k-1)"""
        return self.alpha * self.n - self.b - (self.k - 1)


def gabn_partition(params: GabnParams) -> List[Tuple[int, ...]]:
    params.validate()
    return near_equal_parts(params.n, params.a)


def gabn_is_edge(part_counts: Counter, a: int, b: int, k: int) -> bool:
    """Edge rule of G_{a,b,n} given how many vertices a k-set has in each part."""
    if len(part_counts) >= 3:
        return True
    if len(part_counts) == 1:
        return False
    (i, ci), (j, cj) = part_counts.items()
    if ci >= 2 and cj >= 2:
        return True
    # one vertex in part `single`, k-1 vertices in part `home`
    home, single = (i, j) if cj == 1 else (j, i)
    return 1 <= (single - home) % a <= b


def gen_gabn(params: GabnParams) -> Hypergraph:
    parts = gabn_partition(params)
    part_of = _part_index(parts, params.n)
    edges = tuple(
        e for e in combinations(range(params.n), params.k)
        if gabn_is_edge(Counter(part_of[v] for v in e), params.a, params.b, params.k)
    )
    logger.info(f"G(a={params.a}, b={params.b}, n={params.n}, k={params.k}): {len(edges)} edges")
    return Hypergraph(k=params.k, n=params.n, edges=edges)


def forward_parts(params: GabnParams, subset) -> List[int]:
    """Indices of parts that must lie (minus the subset) in N(subset).

    For a subset inside part i these are parts i+1..i+b (mod a). Subsets that
    meet several parts reach every part that can complete them.
    """
    parts = gabn_partition(params)
    part_of = _part_index(parts, params.n)
    touched = Counter(part_of[v] for v in subset)
    reached = []
    for j in range(params.a):
        counts = touched.copy()
        counts[j] += 1
        if gabn_is_edge(counts, params.a, params.b, params.k):
            reached.append(j)
    return reached


def gen_rpartite(n: int, r: int, k: int) -> Hypergraph:
    if r < 1 or n < r:
        raise ParameterError(f"need n >= r >= 1, got n={n}, r={r}")
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")
    part_of = _part_index(near_equal_parts(n, r), n)
    edges = tuple(
        e for e in combinations(range(n), k)
        if len({part_of[v] for v in e}) >= 2
    )
    logger.info(f"r-partite host (n={n}, r={r}, k={k}): {len(edges)} edges")
    return Hypergraph(k=k, n=n, edges=edges)


def rpartite_partition(n: int, r: int) -> Colouring:
    """The parts of gen_rpartite as a weak r-colouring of that host."""
    if r < 1 or n < r:
        raise ParameterError(f"need n >= r >= 1, got n={n}, r={r}")
    return Colouring(parts=tuple(_part_index(near_equal_parts(n, r), n)), r=r)
