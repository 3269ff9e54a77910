# satgate/cnf.py

"""
CNF instances, the co-ex decision encoding, and DIMACS text.

Edge variables come first: the k-set of colex rank i is variable i+1.
Counter registers and other auxiliaries are numbered above them.
"""

import re
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, List, Sequence, Tuple

import config
from checkers.embedding import iter_embeddings
from hypercore.errors import BackendError, GuardExceeded, HypergraphError, ParameterError
from hypercore.hypergraph import Hypergraph, colex_rank, colex_unrank, complete_hypergraph, iter_colex
from utils.logger import setup_logger

logger = setup_logger("satgate", "satgate.log")

Clause = Tuple[int, ...]


@dataclass
class CnfInstance:
    num_vars: int
    clauses: List[Clause] = field(default_factory=list)
    n: int = 0
    k: int = 0
    edge_vars: int = 0
    comments: List[str] = field(default_factory=list)

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add(self, lits: Iterable[int]):
        """Append one clause; empty clauses are refused"""
        clause = tuple(lits)
        if not clause:
            raise ParameterError("refusing to add an empty clause")
        self.clauses.append(clause)

    def contradiction(self):
        """A fresh variable forced both ways."""
        a = self.new_var()
        self.add((a,))
        self.add((-a,))

    def edge_of(self, var: int) -> Tuple[int, ...]:
        """The k-set behind an edge variable"""
        if not 1 <= var <= self.edge_vars:
            raise ParameterError(f"variable {var} is not an edge variable")
        return colex_unrank(var - 1, self.k)

    def to_dimacs(self) -> str:
        """DIMACS CNF text, comments first"""
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, c)) + " 0" for c in self.clauses)
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    """Read DIMACS CNF text; the header counts are checked against the body"""
    header, clauses, pending = None, [], []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if header is None:
            header = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if header is None:
                raise BackendError(f"line {line_no}: expected 'p cnf' header, got {line!r}")
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if header is None:
        raise BackendError("missing 'p cnf' header")
    if pending:
        raise BackendError("last clause is not zero-terminated")
    num_vars, num_clauses = int(header.group(1)), int(header.group(2))
    if len(clauses) != num_clauses:
        raise BackendError(f"header announces {num_clauses} clauses, found {len(clauses)}")
    if any(abs(l) > num_vars for c in clauses for l in c):
        raise BackendError(f"literal outside 1..{num_vars}")
    return CnfInstance(num_vars=num_vars, clauses=clauses)


def add_at_most(instance: CnfInstance, lits: Sequence[int], bound: int):
    """Sequential-counter encoding of sum(lits) <= bound."""
    m = len(lits)
    if bound < 0:
        instance.contradiction()
        return
    if bound >= m:
        return
    if bound == 0:
        for x in lits:
            instance.add((-x,))
        return

    # s[i][j] is forced true once j+1 of lits[0..i] are true
    s = [[instance.new_var() for _ in range(bound)] for _ in range(m - 1)]
    instance.add((-lits[0], s[0][0]))
    for j in range(1, bound):
        instance.add((-s[0][j],))
    for i in range(1, m - 1):
        x = lits[i]
        instance.add((-x, s[i][0]))
        instance.add((-s[i - 1][0], s[i][0]))
        for j in range(1, bound):
            instance.add((-x, -s[i - 1][j - 1], s[i][j]))
            instance.add((-s[i - 1][j], s[i][j]))
        instance.add((-x, -s[i - 1][bound - 1]))
    instance.add((-lits[m - 1], -s[m - 2][bound - 1]))


def add_at_least(instance: CnfInstance, lits: Sequence[int], bound: int):
    """sum(lits) >= bound, as at-most on the negated literals"""
    add_at_most(instance, [-x for x in lits], len(lits) - bound)


def blocking_images(n: int, k: int, pattern: Hypergraph) -> List[Tuple[int, ...]]:
    """Distinct edge-variable sets of the copies of pattern inside K^k_n."""
    if pattern.n > n:
        return []
    host = complete_hypergraph(k, n)
    seen, images = set(), []
    for count, emb in enumerate(iter_embeddings(host, pattern), start=1):
        if count > config.EMBEDDING_ENUM_LIMIT:
            raise GuardExceeded("EMBEDDING_ENUM_LIMIT", count, config.EMBEDDING_ENUM_LIMIT)
        image = tuple(sorted(
            colex_rank(sorted(emb.mapping[p] for p in e)) + 1 for e in pattern.edges
        ))
        if image not in seen:
            seen.add(image)
            images.append(image)
    return images


def encode_coex_cnf(n: int, k: int, family: Sequence[Hypergraph], t: int) -> CnfInstance:
    """
    Satisfiable iff some family-free k-graph on n vertices has minimum codegree >= t.
    """
    if k < 2 or n < k:
        raise ParameterError(f"need n >= k >= 2, got n={n}, k={k}")
    if t < 0:
        raise ParameterError(f"need t >= 0, got t={t}")
    for F in family:
        if F.k != k:
            raise HypergraphError(f"family member {F!r} is not {k}-uniform")

    edge_vars = comb(n, k)
    instance = CnfInstance(num_vars=edge_vars, n=n, k=k, edge_vars=edge_vars,
                           comments=[f"co-ex decision n={n} k={k} t={t} family={len(family)}"])

    for subset in iter_colex(n, k - 1):
        extension = [colex_rank(sorted(subset + (v,))) + 1 for v in range(n) if v not in subset]
        add_at_least(instance, extension, t)

    blocking = 0
    for F in family:
        if F.n > n:
            continue
        if not F.edges:
            # every graph on n >= |V(F)| vertices contains an edgeless F
            instance.contradiction()
            continue
        for image in blocking_images(n, k, F):
            instance.add(tuple(-v for v in image))
            blocking += 1

    logger.info(f"encoded n={n} k={k} t={t}: {instance.num_vars} vars, "
                f"{len(instance.clauses)} clauses ({blocking} blocking)")
    return instance


def decode_witness(instance: CnfInstance, model: Iterable[int]) -> Hypergraph:
    """Edge variables set true in the model; auxiliaries are ignored."""
    true_vars = {l for l in model if 0 < l <= instance.edge_vars}
    edges = tuple(sorted(instance.edge_of(v) for v in true_vars))
    return Hypergraph(k=instance.k, n=instance.n, edges=edges)
