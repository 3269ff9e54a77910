# satgate/oracle.py

"""
Exhaustive co-ex oracle, independent of the CNF encoding and the embedding engine.

Copies of each pattern are listed with itertools.permutations, and the edge
slots are searched depth-first (include before exclude) with an upper bound:
the codegree minimum of the current graph plus every undecided slot.
"""

from itertools import permutations
from typing import List, Sequence

import config
from hypercore.errors import GuardExceeded, HypergraphError, ParameterError
from hypercore.hypergraph import Hypergraph, iter_colex
from utils.logger import setup_logger

logger = setup_logger("satgate", "satgate.log")


def _copy_masks(slot_index, n: int, pattern: Hypergraph) -> List[int]:
    masks = set()
    for image in permutations(range(n), pattern.n):
        mask = 0
        for e in pattern.edges:
            mask |= 1 << slot_index[tuple(sorted(image[p] for p in e))]
        masks.add(mask)
    return sorted(masks)


def brute_force_coex(n: int, k: int, family: Sequence[Hypergraph]) -> int:
    if k < 2 or n < k:
        raise ParameterError(f"need n >= k >= 2, got n={n}, k={k}")
    slots = list(iter_colex(n, k))
    if len(slots) > config.BRUTE_COEX_MAX_EDGES:
        raise GuardExceeded("BRUTE_COEX_MAX_EDGES", len(slots), config.BRUTE_COEX_MAX_EDGES)
    slot_index = {e: i for i, e in enumerate(slots)}

    forbidden: List[int] = []
    for F in family:
        if F.k != k:
            raise HypergraphError(f"family member {F!r} is not {k}-uniform")
        if F.n > n:
            continue
        if not F.edges:
            raise ParameterError(f"no {k}-graph on {n} vertices avoids an edgeless member")
        forbidden.extend(_copy_masks(slot_index, n, F))
    # copies that contain slot i, checked when slot i is switched on
    through = [[f for f in forbidden if f >> i & 1] for i in range(len(slots))]

    subset_masks = []
    for S in iter_colex(n, k - 1):
        subset_masks.append(sum(1 << i for i, e in enumerate(slots) if set(S) <= set(e)))

    def delta(mask: int) -> int:
        return min((mask & s).bit_count() for s in subset_masks)

    all_slots = (1 << len(slots)) - 1
    best = -1
    nodes = 0

    def search(i: int, chosen: int):
        nonlocal best, nodes
        nodes += 1
        undecided = all_slots & ~((1 << i) - 1)
        if delta(chosen | undecided) <= best:
            return
        if i == len(slots):
            best = delta(chosen)
            return
        grown = chosen | (1 << i)
        if all(grown & f != f for f in through[i]):
            search(i + 1, grown)
        search(i + 1, chosen)

    search(0, 0)
    logger.info(f"brute-force co-ex(n={n}, k={k}) = {best} after {nodes} nodes")
    return best
