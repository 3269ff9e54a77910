# checkers/embedding.py

"""
Subgraph embedding search (non-induced).

Pattern vertices are placed one at a time. Each unplaced vertex keeps a
bitmask domain of host vertices; placing a vertex narrows the domain of any
vertex that becomes the last unplaced one of a pattern edge to the host
neighbourhood of that edge's image. The next vertex to place is the one with
the smallest live domain, ties broken by higher pattern degree, then index.
Host candidates are tried in increasing order, so the first embedding found
is the same on every run.
"""

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional

from joblib import Parallel, delayed

import config
from hypercore.errors import BudgetExceeded, CertificateError, HypergraphError
from hypercore.hypergraph import Hypergraph, mask_of, vertices_of
from hypercore.witness import Embedding, verify_embedding
from utils.logger import setup_logger

logger = setup_logger("checkers", "checkers.log")


class SearchStatus(Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET = "budget"


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    embedding: Optional[Embedding] = None
    nodes: int = 0
    seconds: float = 0.0

    def __bool__(self):
        return self.status is SearchStatus.FOUND


class EmbeddingSearch:
    def __init__(self, host: Hypergraph, pattern: Hypergraph, node_budget: Optional[int] = None):
        if host.k != pattern.k:
            raise HypergraphError(f"pattern is {pattern.k}-uniform but host is {host.k}-uniform")
        self.host = host
        self.pattern = pattern
        self.node_budget = node_budget
        self.nodes = 0

        self.incident: List[List[tuple]] = [[] for _ in range(pattern.n)]
        for e in pattern.edges:
            for u in e:
                self.incident[u].append(e)
        self.pattern_degree = pattern.degrees
        host_degree = host.degrees
        self.initial = [
            mask_of(h for h in range(host.n) if host_degree[h] >= self.pattern_degree[u])
            for u in range(pattern.n)
        ]

    def root_vertex(self) -> Optional[int]:
        """Pattern vertex the search places first."""
        if not self.pattern.n:
            return None
        return min(range(self.pattern.n),
                   key=lambda u: (self.initial[u].bit_count(), -self.pattern_degree[u], u))

    def embeddings(self, root_mask: Optional[int] = None) -> Iterator[Embedding]:
        """All embeddings in search order; root_mask restricts the first placement."""
        if self.pattern.n > self.host.n:
            return
        domains = list(self.initial)
        if root_mask is not None and self.pattern.n:
            domains[self.root_vertex()] &= root_mask
        yield from self._extend([-1] * self.pattern.n, domains, 0, 0)

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExceeded(f"node budget {self.node_budget} exhausted")

    def _extend(self, mapping, domains, used, placed):
        if placed == self.pattern.n:
            yield Embedding(tuple(mapping))
            return
        self._tick()

        best, best_key = -1, None
        for u in range(self.pattern.n):
            if mapping[u] >= 0:
                continue
            size = (domains[u] & ~used).bit_count()
            if size == 0:
                return
            key = (size, -self.pattern_degree[u], u)
            if best_key is None or key < best_key:
                best, best_key = u, key

        for h in vertices_of(domains[best] & ~used):
            mapping[best] = h
            narrowed = self._narrow(best, mapping, domains)
            if narrowed is not None:
                yield from self._extend(mapping, narrowed, used | (1 << h), placed + 1)
            mapping[best] = -1

    def _narrow(self, u, mapping, domains):
        narrowed = None
        for e in self.incident[u]:
            free = [w for w in e if mapping[w] < 0]
            if not free:
                if mask_of(mapping[w] for w in e) not in self.host.mask_set:
                    return None
            elif len(free) == 1:
                w = free[0]
                rest = mask_of(mapping[x] for x in e if x != w)
                if narrowed is None:
                    narrowed = list(domains)
                narrowed[w] &= self.host.neighbour_mask(rest)
                if not narrowed[w]:
                    return None
        return domains if narrowed is None else narrowed


def iter_embeddings(host: Hypergraph, pattern: Hypergraph, limit: Optional[int] = None,
                    node_budget: Optional[int] = None) -> Iterator[Embedding]:
    """Stream embeddings of pattern into host; raises BudgetExceeded when the node budget runs out."""
    search = EmbeddingSearch(host, pattern, node_budget)
    for count, emb in enumerate(search.embeddings(), start=1):
        yield emb
        if limit is not None and count >= limit:
            return


def _search_branch(host, pattern, root, node_budget):
    search = EmbeddingSearch(host, pattern, node_budget)
    try:
        emb = next(search.embeddings(root_mask=1 << root), None)
    except BudgetExceeded:
        return SearchStatus.BUDGET, None, search.nodes
    return (SearchStatus.FOUND if emb else SearchStatus.NONE), emb, search.nodes


def find_embedding(host: Hypergraph, pattern: Hypergraph, node_budget: Optional[int] = None,
                   n_jobs: Optional[int] = None) -> SearchOutcome:
    """
    First embedding in search order, or an exhausted NONE, or BUDGET.

    With n_jobs > 1 the candidates of the root vertex are searched as
    independent branches (each with its own node budget) and the branch with
    the lowest root candidate that finds an embedding wins.
    """
    n_jobs = config.N_JOBS if n_jobs is None else n_jobs
    started = time.perf_counter()
    search = EmbeddingSearch(host, pattern, node_budget)
    logger.info(f"embedding search: pattern {pattern!r} into host {host!r}")

    if n_jobs == 1 or pattern.n == 0 or pattern.n > host.n:
        try:
            emb = next(search.embeddings(), None)
            status = SearchStatus.FOUND if emb else SearchStatus.NONE
        except BudgetExceeded:
            emb, status = None, SearchStatus.BUDGET
        nodes = search.nodes
    else:
        roots = vertices_of(search.initial[search.root_vertex()])
        branches = Parallel(n_jobs=n_jobs)(
            delayed(_search_branch)(host, pattern, h, node_budget) for h in roots
        )
        nodes = sum(b[2] for b in branches)
        found = [b for b in branches if b[0] is SearchStatus.FOUND]
        if found:
            status, emb = SearchStatus.FOUND, found[0][1]
        elif any(b[0] is SearchStatus.BUDGET for b in branches):
            status, emb = SearchStatus.BUDGET, None
        else:
            status, emb = SearchStatus.NONE, None

    if emb is not None:
        check = verify_embedding(host, pattern, emb)
        if not check:
            raise CertificateError(f"search produced an invalid embedding ({check.reason})")

    elapsed = time.perf_counter() - started
    logger.info(f"embedding search finished: {status.value} after {nodes} nodes in {elapsed:.3f}s")
    return SearchOutcome(status=status, embedding=emb, nodes=nodes, seconds=elapsed)
