# satgate/coex.py

"""
Exact co-ex(n, F): the largest minimum codegree of an n-vertex k-graph that
contains no member of the family F.

Every SAT witness is decoded and re-checked (codegree and freeness) before
it is returned; UNKNOWN verdicts are never read as UNSAT.
"""

import threading
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import config
from checkers.embedding import SearchStatus, find_embedding
from hypercore.errors import CertificateError, ParameterError, SolverUnknown
from hypercore.hypergraph import Hypergraph, min_codegree
from satgate.backends import SolverStatus, SolverVerdict, run_backend
from satgate.cnf import decode_witness, encode_coex_cnf
from utils.logger import setup_logger

logger = setup_logger("satgate", "satgate.log")


@dataclass(frozen=True)
class CoexDecision:
    n: int
    k: int
    t: int
    verdict: SolverVerdict
    witness: Optional[Hypergraph] = None

    @property
    def status(self) -> SolverStatus:
        return self.verdict.status


@dataclass
class CoexResult:
    n: int
    k: int
    value: int
    witness: Hypergraph
    decisions: Dict[int, SolverStatus] = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return self.value / self.n


def family_key(family: Sequence[Hypergraph]) -> Tuple:
    return tuple(sorted((F.k, F.n, F.edges) for F in family))


def verify_coex_witness(H: Hypergraph, family: Sequence[Hypergraph], t: int):
    """Raise CertificateError unless H has minimum codegree >= t and avoids every member."""
    delta = min_codegree(H)
    if delta < t:
        raise CertificateError(f"witness has minimum codegree {delta} < {t}")
    for F in family:
        outcome = find_embedding(H, F)
        if outcome.status is not SearchStatus.NONE:
            raise CertificateError(f"witness is not free of {F!r} ({outcome.status.value})")


def coex_decision(n: int, k: int, family: Sequence[Hypergraph], t: int,
                  backend: Optional[str] = None, **backend_options) -> CoexDecision:
    """Is there a family-free k-graph on n vertices with minimum codegree >= t?"""
    instance = encode_coex_cnf(n, k, family, t)
    verdict = run_backend(instance, backend, **backend_options)
    witness = None
    if verdict.status is SolverStatus.SAT:
        witness = decode_witness(instance, verdict.model)
        verify_coex_witness(witness, family, t)
    logger.info(f"co-ex decision n={n} k={k} t={t}: {verdict.status.value} ({verdict.backend})")
    return CoexDecision(n=n, k=k, t=t, verdict=verdict, witness=witness)


class VerdictCache:
    """Decisions keyed by (n, k, family, backend[, solver command], t); writes are serialized."""

    def __init__(self):
        self._lock = threading.Lock()
        self._decisions: Dict[Tuple, CoexDecision] = {}

    def get(self, key) -> Optional[CoexDecision]:
        return self._decisions.get(key)

    def put(self, key, decision: CoexDecision):
        with self._lock:
            self._check_monotone(key, decision)
            self._decisions[key] = decision

    def _check_monotone(self, key, decision):
        base, t = key[:-1], key[-1]
        for other_key, other in self._decisions.items():
            if other_key[:-1] != base:
                continue
            other_t = other_key[-1]
            if decision.status is SolverStatus.SAT and other.status is SolverStatus.UNSAT and other_t <= t:
                raise CertificateError(f"SAT at t={t} contradicts UNSAT at t={other_t}")
            if decision.status is SolverStatus.UNSAT and other.status is SolverStatus.SAT and other_t >= t:
                raise CertificateError(f"UNSAT at t={t} contradicts SAT at t={other_t}")

    def __len__(self):
        return len(self._decisions)


_default_cache = VerdictCache()


def coex_exact(n: int, k: int, family: Sequence[Hypergraph], backend: Optional[str] = None,
               cache: Optional[VerdictCache] = None, **backend_options) -> CoexResult:
    """Binary search over t in [0, n-k+1] for the largest satisfiable t."""
    cache = _default_cache if cache is None else cache
    resolved = backend or config.SAT_BACKEND
    base = (n, k, family_key(family), resolved)
    if resolved == "external":
        base += (backend_options.get("sat_cmd") or config.SAT_CMD,)
    decisions: Dict[int, CoexDecision] = {}

    def decide(t: int) -> CoexDecision:
        key = base + (t,)
        decision = cache.get(key)
        if decision is None:
            decision = coex_decision(n, k, family, t, backend, **backend_options)
            if decision.status is SolverStatus.UNKNOWN:
                raise SolverUnknown(t, decision.verdict.detail)
            cache.put(key, decision)
        decisions[t] = decision
        return decision

    if decide(0).status is not SolverStatus.SAT:
        raise ParameterError(f"no {k}-graph on {n} vertices avoids the family (an edgeless member fits)")

    lo, hi = 0, n - k + 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if decide(mid).status is SolverStatus.SAT:
            lo = mid
        else:
            hi = mid - 1

    logger.info(f"co-ex(n={n}, k={k}) = {lo} after {len(decisions)} decisions")
    return CoexResult(n=n, k=k, value=lo, witness=decisions[lo].witness,
                      decisions={t: d.status for t, d in sorted(decisions.items())})
