# constructions/families.py

import numpy as np

import config
from hypercore.errors import GuardExceeded, ParameterError
from hypercore.hypergraph import Hypergraph, iter_colex
from hypercore.isomorphism import dedup_isomorphic
from utils.logger import setup_logger

logger = setup_logger("constructions", "constructions.log")

# edge patterns are uint32 words
PATTERN_BITS = 32


def _dense_edge_sets(m: int, k: int, threshold: int):
    """Bit patterns over the colex edge slots whose codegree minimum reaches threshold."""
    slots = list(iter_colex(m, k))
    limit = min(config.HFAMILY_MAX_EDGES, PATTERN_BITS)
    if len(slots) > limit:
        raise GuardExceeded("HFAMILY_MAX_EDGES", len(slots), limit)

    graphs = np.arange(1 << len(slots), dtype=np.uint32)
    keep = np.ones(graphs.shape, dtype=bool)
    for subset in iter_colex(m, k - 1):
        smask = 0
        for i, e in enumerate(slots):
            if set(subset) <= set(e):
                smask |= 1 << i
        keep &= np.bitwise_count(graphs & np.uint32(smask)) >= threshold
    return slots, graphs[keep]


def enumerate_min_codegree_family(m: int, k: int, threshold: int, dedup: bool = False):
    """
    Every k-graph on m vertices with minimum codegree at least threshold.

    Graphs come out in increasing order of their edge-slot bit pattern (slot i
    is the i-th k-set in colex order). With dedup set, only the first graph
    of each isomorphism class is kept.
    """
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")
    if m < k - 1:
        raise ParameterError(f"need m >= k-1, got m={m}, k={k}")
    slots, kept = _dense_edge_sets(m, k, threshold)
    logger.info(f"H family m={m}, k={k}, threshold={threshold}: {len(kept)} graphs before dedup")

    def members():
        for pattern in kept:
            pattern = int(pattern)
            edges = tuple(sorted(e for i, e in enumerate(slots) if pattern >> i & 1))
            yield Hypergraph(k=k, n=m, edges=edges)

    if dedup:
        return dedup_isomorphic(members())
    return members()
