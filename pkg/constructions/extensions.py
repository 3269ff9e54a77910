# constructions/extensions.py

"""
(s,t)-extension families.

For a base k-graph F, A lists every (k-1)-subset of V(F) and T lists every
s-subset of A, both in colex order. A member picks, for each T_i, a t-subset
P_i and joins a new vertex v_i to every set of P_i. Members are indexed in
mixed radix over the C(s,t) choices per coordinate, first coordinate most
significant, so member 0 takes the colex-first choice everywhere.
"""

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator, Optional, Sequence, Tuple

import config
from hypercore.errors import GuardExceeded, ParameterError
from hypercore.hypergraph import Hypergraph, colex_combinations, iter_colex
from hypercore.isomorphism import dedup_isomorphic
from utils.logger import setup_logger

logger = setup_logger("constructions", "constructions.log")


@dataclass(frozen=True)
class ExtensionSpec:
    base: Hypergraph
    s: int
    t: int
    A: Tuple[Tuple[int, ...], ...]
    T: Tuple[Tuple[int, ...], ...]  # indices into A
    P: Tuple[Tuple[int, ...], ...]  # indices into A, P[i] inside T[i]

    @property
    def r(self) -> int:
        return len(self.T)

    def new_vertex(self, i: int) -> int:
        """Vertex index of v_{i+1}."""
        return self.base.n + i


def _check_st(s: int, t: int):
    if not s >= t >= 1:
        raise ParameterError(f"need s >= t >= 1, got s={s}, t={t}")


def extension_family_size(F: Hypergraph, s: int, t: int) -> Tuple[int, int]:
    """(r, C(s,t)^r) without enumerating anything."""
    _check_st(s, t)
    r = comb(comb(F.n, F.k - 1), s)
    return r, comb(s, t) ** r


def extension_frame(F: Hypergraph, s: int, t: int):
    """A, T and the per-coordinate P choices; guarded on r."""
    _check_st(s, t)
    if F.n < F.k - 1:
        raise ParameterError(f"base has {F.n} vertices, fewer than k-1={F.k - 1}: A is empty")
    r, _ = extension_family_size(F, s, t)
    if r < 1:
        raise ParameterError(f"C(|A|, s) = 0 for |A|={comb(F.n, F.k - 1)}, s={s}")
    if r > config.EXTENSION_MAX_INDICES:
        raise GuardExceeded("EXTENSION_MAX_INDICES", r, config.EXTENSION_MAX_INDICES)
    A = tuple(iter_colex(F.n, F.k - 1))
    T = tuple(iter_colex(len(A), s))
    choices = tuple(tuple(colex_combinations(Ti, t)) for Ti in T)
    return A, T, choices


def make_extension_spec(F: Hypergraph, s: int, t: int, P: Sequence[Sequence[int]]) -> ExtensionSpec:
    A, T, _ = extension_frame(F, s, t)
    return ExtensionSpec(base=F, s=s, t=t, A=A, T=T, P=tuple(tuple(sorted(p)) for p in P))


def extension_spec_at(F: Hypergraph, s: int, t: int, index: int) -> ExtensionSpec:
    A, T, choices = extension_frame(F, s, t)
    base = comb(s, t)
    total = base ** len(T)
    if not 0 <= index < total:
        raise ParameterError(f"member index {index} outside 0..{total - 1}")
    digits = []
    for _ in T:
        index, d = divmod(index, base)
        digits.append(d)
    digits.reverse()
    P = tuple(choices[i][d] for i, d in enumerate(digits))
    return ExtensionSpec(base=F, s=s, t=t, A=A, T=T, P=P)


def extension_member(spec: ExtensionSpec) -> Hypergraph:
    F = spec.base
    if len(spec.P) != spec.r:
        raise ParameterError(f"need one P_i per T_i: {len(spec.P)} given, r={spec.r}")
    edges = list(F.edges)
    for i, (Ti, Pi) in enumerate(zip(spec.T, spec.P)):
        if len(set(Pi)) != spec.t:
            raise ParameterError(f"|P_{i + 1}| = {len(set(Pi))}, expected t={spec.t}")
        if not set(Pi) <= set(Ti):
            raise ParameterError(f"P_{i + 1} = {Pi} is not inside T_{i + 1} = {Ti}")
        v = spec.new_vertex(i)
        edges.extend(spec.A[y] + (v,) for y in Pi)
    return Hypergraph(k=F.k, n=F.n + spec.r, edges=tuple(sorted(edges)))


def extension_member_at(F: Hypergraph, s: int, t: int, index: int) -> Hypergraph:
    return extension_member(extension_spec_at(F, s, t, index))


def extension_family_iter(F: Hypergraph, s: int, t: int, dedup: bool = False,
                          override: bool = False, cap: Optional[int] = None) -> Iterator[Hypergraph]:
    """Members in mixed-radix order; one per isomorphism class when dedup is set."""
    r, total = extension_family_size(F, s, t)
    cap = config.FAMILY_CAP if cap is None else cap
    if total > cap and not override:
        raise GuardExceeded("FAMILY_CAP", total, cap)
    A, T, choices = extension_frame(F, s, t)
    logger.info(f"extension family s={s}, t={t}: r={r}, {total} members (dedup={dedup})")

    def members():
        for P in product(*choices):
            yield extension_member(ExtensionSpec(base=F, s=s, t=t, A=A, T=T, P=P))

    if dedup:
        return dedup_isomorphic(members())
    return members()
