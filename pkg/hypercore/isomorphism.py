# hypercore/isomorphism.py

"""
Backtracking isomorphism test for small hypergraphs.

Vertices of the first graph are placed in descending-degree order; each
placement is checked in both directions on the edges it completes, so a
full assignment is an edge bijection once the edge counts agree.
"""

from typing import Dict, List, Optional, Tuple

import config
from hypercore.errors import GuardExceeded
from hypercore.hypergraph import Hypergraph, mask_of, vertices_of


def invariant_key(H: Hypergraph) -> Tuple:
    """Isomorphism invariant used to bucket graphs before pairwise tests."""
    link_sizes = sorted(m.bit_count() for m in H.link.values())
    return (H.k, H.n, len(H.edges), tuple(sorted(H.degrees)), tuple(link_sizes))


def _completed_edges(H: Hypergraph, order: List[int]) -> List[List[int]]:
    """For each position i, the edge masks whose last vertex in order is order[i]."""
    position = {v: i for i, v in enumerate(order)}
    out: List[List[int]] = [[] for _ in order]
    for e, emask in zip(H.edges, H.edge_masks):
        last = max(position[v] for v in e)
        out[last].append(emask)
    return out


def find_isomorphism(H1: Hypergraph, H2: Hypergraph) -> Optional[Dict[int, int]]:
    limit = config.ISO_MAX_VERTICES
    if max(H1.n, H2.n) > limit:
        raise GuardExceeded("ISO_MAX_VERTICES", max(H1.n, H2.n), limit)
    if invariant_key(H1) != invariant_key(H2):
        return None

    order = sorted(range(H1.n), key=lambda v: (-H1.degrees[v], v))
    completed1 = _completed_edges(H1, order)
    edges2_by_vertex: Dict[int, List[int]] = {v: [] for v in range(H2.n)}
    for emask, e in zip(H2.edge_masks, H2.edges):
        for v in e:
            edges2_by_vertex[v].append(emask)

    image = [0] * H1.n
    used = [False] * H2.n

    def consistent(i: int, target: int) -> bool:
        placed = order[: i + 1]
        for emask in completed1[i]:
            if mask_of(image[p] for p in vertices_of(emask)) not in H2.mask_set:
                return False
        # every H2 edge now fully inside the placed image must have a preimage
        placed_mask = mask_of(image[v] for v in placed)
        inverse = {image[v]: v for v in placed}
        for emask in edges2_by_vertex[target]:
            if emask & placed_mask == emask:
                pre = mask_of(inverse[h] for h in vertices_of(emask))
                if pre not in H1.mask_set:
                    return False
        return True

    def search(i: int) -> bool:
        if i == H1.n:
            return True
        v = order[i]
        for target in range(H2.n):
            if used[target] or H2.degrees[target] != H1.degrees[v]:
                continue
            image[v] = target
            used[target] = True
            if consistent(i, target) and search(i + 1):
                return True
            used[target] = False
        return False

    if search(0):
        return dict(enumerate(image))
    return None


def is_isomorphic(H1: Hypergraph, H2: Hypergraph) -> bool:
    return find_isomorphism(H1, H2) is not None


def dedup_isomorphic(graphs):
    """Yield one representative per isomorphism class, first occurrence wins."""
    buckets: Dict[Tuple, List[Hypergraph]] = {}
    for G in graphs:
        key = invariant_key(G)
        reps = buckets.setdefault(key, [])
        if any(is_isomorphic(G, R) for R in reps):
            continue
        reps.append(G)
        yield G
