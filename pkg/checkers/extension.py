# checkers/extension.py

"""
Does a host contain some member of the (s,t)-extension family F(s,t)?

For one embedding phi of F, index j can be served by any host vertex outside
phi(V(F)) that forms an edge with at least t of the image sets phi(T_j).
Different indices need different vertices, so some member sits on top of phi
exactly when the index/vertex candidacy relation has a matching covering
every index. Every embedding of F is tried in search order.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from checkers.embedding import SearchStatus, iter_embeddings
from constructions.extensions import ExtensionSpec, extension_frame, extension_member
from hypercore.errors import BudgetExceeded, CertificateError
from hypercore.hypergraph import Hypergraph, mask_of, vertices_of
from hypercore.witness import Embedding, verify_embedding
from utils.logger import setup_logger

logger = setup_logger("checkers", "checkers.log")


@dataclass(frozen=True)
class ContainmentCertificate:
    base: Embedding
    representatives: Tuple[int, ...]  # host vertex chosen for each index j
    spec: ExtensionSpec

    @property
    def member(self) -> Hypergraph:
        return extension_member(self.spec)

    @property
    def member_embedding(self) -> Embedding:
        return Embedding(self.base.mapping + self.representatives)

    def verify(self, host: Hypergraph):
        check = verify_embedding(host, self.member, self.member_embedding)
        if not check:
            raise CertificateError(f"extension certificate does not embed its member ({check.reason})")

    def lines(self) -> List[str]:
        out = self.member_embedding.lines()
        for j, Pj in enumerate(self.spec.P):
            links = " ".join("{" + ",".join(map(str, self.spec.A[y])) + "}" for y in Pj)
            out.append(f"P{j + 1}: {links}")
        return out


@dataclass(frozen=True)
class ExtensionOutcome:
    status: SearchStatus
    certificate: Optional[ContainmentCertificate] = None
    embeddings_tried: int = 0
    base_index: Optional[int] = None

    def __bool__(self):
        return self.status is SearchStatus.FOUND


def _image_links(host: Hypergraph, A, phi: Embedding) -> List[int]:
    """Per set of A, the host vertices outside phi(V(F)) that complete its image to an edge."""
    outside = ~mask_of(phi.mapping)
    return [host.neighbour_mask(mask_of(phi.mapping[p] for p in a)) & outside for a in A]


def _candidates(links: List[int], T, t: int) -> List[FrozenSet[int]]:
    out = []
    for Tj in T:
        counts: Dict[int, int] = {}
        for y in Tj:
            for v in vertices_of(links[y]):
                counts[v] = counts.get(v, 0) + 1
        out.append(frozenset(v for v, c in counts.items() if c >= t))
    return out


def extension_candidates(host: Hypergraph, F: Hypergraph, phi: Embedding, s: int, t: int) -> List[FrozenSet[int]]:
    """The sets R_T for every T in T(F), relative to the embedding phi."""
    A, T, _ = extension_frame(F, s, t)
    return _candidates(_image_links(host, A, phi), T, t)


def _covering_matching(candidates: List[FrozenSet[int]]) -> Optional[Tuple[int, ...]]:
    if any(not c for c in candidates):
        return None
    # Hall's condition on the whole index set
    if len(frozenset().union(*candidates)) < len(candidates):
        return None
    G = nx.Graph()
    indices = [("index", j) for j in range(len(candidates))]
    G.add_nodes_from(indices, bipartite=0)
    for j, cand in enumerate(candidates):
        for v in sorted(cand):
            G.add_edge(("index", j), ("vertex", v))
    matching = nx.bipartite.hopcroft_karp_matching(G, top_nodes=indices)
    if not all(node in matching for node in indices):
        return None
    return tuple(matching[node][1] for node in indices)


def contains_extension_member(host: Hypergraph, F: Hypergraph, s: int, t: int,
                              node_budget: Optional[int] = None) -> ExtensionOutcome:
    A, T, _ = extension_frame(F, s, t)
    logger.info(f"extension containment: F={F!r}, s={s}, t={t}, r={len(T)}, host {host!r}")

    tried = 0
    try:
        for phi in iter_embeddings(host, F, node_budget=node_budget):
            tried += 1
            links = _image_links(host, A, phi)
            reps = _covering_matching(_candidates(links, T, t))
            if reps is None:
                continue
            P = tuple(tuple([y for y in Tj if links[y] >> v & 1][:t]) for Tj, v in zip(T, reps))
            spec = ExtensionSpec(base=F, s=s, t=t, A=A, T=T, P=P)
            certificate = ContainmentCertificate(base=phi, representatives=reps, spec=spec)
            certificate.verify(host)
            logger.info(f"extension member found after {tried} base embeddings")
            return ExtensionOutcome(SearchStatus.FOUND, certificate, tried)
    except BudgetExceeded:
        logger.warning(f"extension containment stopped by the node budget after {tried} embeddings")
        return ExtensionOutcome(SearchStatus.BUDGET, None, tried)

    logger.info(f"no extension member: {tried} base embeddings exhausted")
    return ExtensionOutcome(SearchStatus.NONE, None, tried)


def contains_family_extension(host: Hypergraph, family: Sequence[Hypergraph], s: int, t: int,
                              node_budget: Optional[int] = None) -> ExtensionOutcome:
    """Containment of the union of F(s,t) over F in family; BUDGET only if nothing was found."""
    total, hit_budget = 0, False
    for i, F in enumerate(family):
        outcome = contains_extension_member(host, F, s, t, node_budget)
        total += outcome.embeddings_tried
        if outcome.status is SearchStatus.FOUND:
            return ExtensionOutcome(SearchStatus.FOUND, outcome.certificate, total, base_index=i)
        hit_budget |= outcome.status is SearchStatus.BUDGET
    return ExtensionOutcome(SearchStatus.BUDGET if hit_budget else SearchStatus.NONE, None, total)
