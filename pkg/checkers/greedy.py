# checkers/greedy.py

"""
Greedy embedders of F^k_r.

Both procedures fix the core on the lowest host vertices and fill the blocks
X_1, X_2, ... in colex order, always taking the lexicographically least
valid choice. A failure only means the greedy got stuck; it says nothing
about whether the host contains F^k_r.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

from constructions.patterns import FrParams, fr_layout, gen_fr
from hypercore.errors import CertificateError, ParameterError
from hypercore.hypergraph import Hypergraph, induced, mask_of, vertices_of
from hypercore.witness import Embedding, verify_embedding
from utils.logger import setup_logger

logger = setup_logger("checkers", "checkers.log")

GREEDY_MODES = ("codegree", "edge")


@dataclass(frozen=True)
class GreedyFailure:
    reason: str
    path: Tuple[int, ...] = ()  # block indices (1-based) from the outermost level down
    link: Tuple[int, ...] = ()
    available: Tuple[int, ...] = ()

    def describe(self) -> str:
        where = "/".join(map(str, self.path)) or "top"
        text = f"{self.reason} at block {where}"
        if self.link:
            text += f", link {{{','.join(map(str, self.link))}}} leaves {len(self.available)} vertices"
        return text


@dataclass(frozen=True)
class GreedyOutcome:
    embedding: Optional[Embedding] = None
    failure: Optional[GreedyFailure] = None

    def __bool__(self):
        return self.embedding is not None


def _least_block(H: Hypergraph, available: List[int], mode: str) -> Optional[Tuple[int, ...]]:
    amask = mask_of(available)
    if mode == "edge":
        for e, emask in zip(H.edges, H.edge_masks):
            if emask & amask == emask:
                return e
        return None
    for Y in combinations(available, H.k - 1):
        reach = H.neighbour_mask(mask_of(Y)) & amask
        if reach:
            return tuple(sorted(Y + (vertices_of(reach)[0],)))
    return None


def _checked(H: Hypergraph, pattern: Hypergraph, mapping) -> GreedyOutcome:
    embedding = Embedding(tuple(mapping))
    check = verify_embedding(H, pattern, embedding)
    if not check:
        raise CertificateError(f"greedy produced an invalid embedding ({check.reason})")
    return GreedyOutcome(embedding=embedding)


def greedy_embed_f2(H: Hypergraph, mode: str = "codegree") -> GreedyOutcome:
    """
    Embed F^k_2 greedily.

    mode "codegree" picks the least (k-1)-set Y inside the available set A and
    the least y in N(Y) inside A; mode "edge" picks the least edge inside A.
    """
    if mode not in GREEDY_MODES:
        raise ParameterError(f"unknown greedy mode {mode!r}")
    k = H.k
    params = FrParams(k, 2)
    if H.n < params.vertex_count:
        return GreedyOutcome(failure=GreedyFailure("host_too_small"))

    core, blocks = fr_layout(k, 2)
    mapping = [-1] * params.vertex_count
    for v in core:
        mapping[v] = v
    used = mask_of(core)

    for j, block in enumerate(blocks, start=1):
        link_mask = H.neighbour_mask(mask_of(block.link))
        available = vertices_of(link_mask & ~used)
        chosen = _least_block(H, available, mode)
        if chosen is None:
            logger.info(f"greedy F^{k}_2 stuck at block {j}")
            return GreedyOutcome(failure=GreedyFailure("no_block_in_link", (j,), block.link, tuple(available)))
        for offset, h in enumerate(chosen):
            mapping[block.start + offset] = h
        used |= mask_of(chosen)

    logger.info(f"greedy F^{k}_2 embedded into {H!r}")
    return _checked(H, gen_fr(k, 2), mapping)


def _embed_fr(H: Hypergraph, r: int, path: Tuple[int, ...]):
    k = H.k
    if r == 1:
        if not H.edges:
            return None, GreedyFailure("no_edge", path)
        return list(H.edges[0]), None

    params = FrParams(k, r)
    if H.n < params.vertex_count:
        return None, GreedyFailure("host_too_small", path)

    core, blocks = fr_layout(k, r)
    mapping = [-1] * params.vertex_count
    for v in core:
        mapping[v] = v
    used = mask_of(core)

    for j, block in enumerate(blocks, start=1):
        available = vertices_of(H.neighbour_mask(mask_of(block.link)) & ~used)
        sub_map, failure = _embed_fr(induced(H, available), r - 1, path + (j,))
        if failure is not None:
            if not failure.link:
                failure = GreedyFailure(failure.reason, failure.path, block.link, tuple(available))
            return None, failure
        for offset, x in enumerate(sub_map):
            mapping[block.start + offset] = available[x]
        used |= mask_of(available[x] for x in sub_map)
    return mapping, None


def embed_fr_recursive(H: Hypergraph, r: int) -> GreedyOutcome:
    """Embed F^k_r by recursing into the host induced on each link minus what is taken."""
    FrParams(H.k, r).validate()
    mapping, failure = _embed_fr(H, r, ())
    if failure is not None:
        logger.info(f"recursive F^{H.k}_{r} embedding failed: {failure.describe()}")
        return GreedyOutcome(failure=failure)
    return _checked(H, gen_fr(H.k, r), mapping)
