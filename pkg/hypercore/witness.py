# hypercore/witness.py

"""
Certificate objects and their independent verifiers.

Nothing produced by a search is trusted until one of the verify_* functions
here has re-checked it against the raw edge sets.
"""

from dataclasses import dataclass
from typing import Mapping, Tuple

from hypercore.hypergraph import Hypergraph, mask_of


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str = "ok"
    detail: Tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Embedding:
    """mapping[p] is the host vertex of pattern vertex p"""
    mapping: Tuple[int, ...]

    def lines(self):
        return [f"{p}→{h}" for p, h in enumerate(self.mapping)]

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


@dataclass(frozen=True)
class Colouring:
    """parts[v] is the part index of vertex v, in 0..r-1"""
    parts: Tuple[int, ...]
    r: int

    def lines(self):
        return [f"{v}→{c}" for v, c in enumerate(self.parts)]

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def verify_embedding(host: Hypergraph, pattern: Hypergraph, mapping) -> CheckResult:
    """True iff mapping is an injective pattern->host map sending edges to edges."""
    if isinstance(mapping, Embedding):
        mapping = mapping.mapping
    elif isinstance(mapping, Mapping):
        if set(mapping) != set(range(pattern.n)):
            return CheckResult(False, "not_total")
        mapping = tuple(mapping[p] for p in range(pattern.n))

    if pattern.k != host.k:
        return CheckResult(False, "uniformity_mismatch", (pattern.k, host.k))
    if len(mapping) != pattern.n:
        return CheckResult(False, "not_total", (len(mapping), pattern.n))
    if any(h < 0 or h >= host.n for h in mapping):
        return CheckResult(False, "out_of_range")
    if len(set(mapping)) != len(mapping):
        return CheckResult(False, "not_injective")

    for e in pattern.edges:
        image = mask_of(mapping[p] for p in e)
        if image not in host.mask_set:
            return CheckResult(False, "missing_edge", e)
    return CheckResult(True)


def verify_colouring(H: Hypergraph, colouring: Colouring) -> CheckResult:
    """True iff every vertex has a part in range and no edge is monochromatic."""
    parts = colouring.parts
    if len(parts) != H.n:
        return CheckResult(False, "not_total", (len(parts), H.n))
    if any(c < 0 or c >= colouring.r for c in parts):
        return CheckResult(False, "part_out_of_range")
    for e in H.edges:
        if len({parts[v] for v in e}) == 1:
            return CheckResult(False, "monochromatic_edge", e)
    return CheckResult(True)
