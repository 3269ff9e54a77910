# checkers/colouring.py

"""
Weak r-colourability: can the vertices be split into r parts so that no edge
lies inside a single part?
"""

from dataclasses import dataclass
from typing import List, Optional

import config
from hypercore.errors import BackendError, CertificateError, GuardExceeded, ParameterError
from hypercore.hypergraph import Hypergraph
from hypercore.witness import Colouring, verify_colouring
from satgate.backends import SolverStatus, run_backend
from satgate.cnf import CnfInstance
from utils.logger import setup_logger

logger = setup_logger("checkers", "checkers.log")

COLOUR_BACKENDS = ("brute", "sat")


@dataclass(frozen=True)
class ColourResult:
    r: int
    backend: str
    colouring: Optional[Colouring] = None

    @property
    def colourable(self) -> bool:
        return self.colouring is not None

    @property
    def verdict(self) -> str:
        return "SAT" if self.colourable else "UNSAT"


def _brute_colouring(H: Hypergraph, r: int) -> Optional[List[int]]:
    # edges grouped by their largest vertex, checked once that vertex is coloured
    closing: List[List[tuple]] = [[] for _ in range(H.n)]
    for e in H.edges:
        closing[e[-1]].append(e)
    parts = [-1] * H.n

    def place(v: int, used: int) -> bool:
        if v == H.n:
            return True
        # vertex v may open at most one new part; vertex 0 always gets part 0
        for c in range(min(r, used + 1)):
            parts[v] = c
            if all(any(parts[u] != c for u in e[:-1]) for e in closing[v]):
                if place(v + 1, max(used, c + 1)):
                    return True
        parts[v] = -1
        return False

    return parts if place(0, 0) else None


def colouring_cnf(H: Hypergraph, r: int) -> CnfInstance:
    """x(v, c) = v*r + c + 1; one part per vertex, no monochromatic edge, vertex 0 in part 0."""
    def x(v, c):
        return v * r + c + 1

    instance = CnfInstance(num_vars=H.n * r, comments=[f"weak {r}-colouring, {H.n} vertices"])
    for v in range(H.n):
        instance.add(x(v, c) for c in range(r))
        for c in range(r):
            for d in range(c + 1, r):
                instance.add((-x(v, c), -x(v, d)))
    for e in H.edges:
        for c in range(r):
            instance.add(-x(v, c) for v in e)
    if H.n:
        instance.add((x(0, 0),))
    return instance


def _sat_colouring(H: Hypergraph, r: int, sat_backend: Optional[str]) -> Optional[List[int]]:
    instance = colouring_cnf(H, r)
    verdict = run_backend(instance, sat_backend)
    if verdict.status is SolverStatus.UNKNOWN:
        raise BackendError(f"colouring instance left undecided by {verdict.backend} {verdict.detail}")
    if verdict.status is SolverStatus.UNSAT:
        return None
    true_vars = verdict.true_vars()
    return [next(c for c in range(r) if v * r + c + 1 in true_vars) for v in range(H.n)]


def colour(H: Hypergraph, r: int, backend: str = "brute", sat_backend: Optional[str] = None) -> ColourResult:
    if r < 1:
        raise ParameterError(f"need r >= 1, got r={r}")
    if backend not in COLOUR_BACKENDS:
        raise ParameterError(f"unknown colouring backend {backend!r}")

    if backend == "brute":
        if H.n > config.BRUTE_COLOUR_MAX_VERTICES:
            raise GuardExceeded("BRUTE_COLOUR_MAX_VERTICES", H.n, config.BRUTE_COLOUR_MAX_VERTICES)
        parts = _brute_colouring(H, r)
    else:
        parts = _sat_colouring(H, r, sat_backend)

    if parts is None:
        logger.info(f"{H!r} is not {r}-colourable ({backend})")
        return ColourResult(r=r, backend=backend)

    colouring = Colouring(parts=tuple(parts), r=r)
    check = verify_colouring(H, colouring)
    if not check:
        raise CertificateError(f"{backend} backend produced an invalid colouring ({check.reason})")
    logger.info(f"{H!r} is {r}-colourable ({backend})")
    return ColourResult(r=r, backend=backend, colouring=colouring)


def colouring_obstruction(host: Hypergraph, host_colouring: Colouring, pattern: Hypergraph,
                          r: int, backend: str = "brute") -> bool:
    """
    True iff host_colouring is a valid weak r-colouring of host and pattern has
    none; then no copy of pattern can sit in host.
    """
    if host_colouring.r > r or not verify_colouring(host, host_colouring):
        return False
    return not colour(pattern, r, backend).colourable
