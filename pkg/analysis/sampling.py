# analysis/sampling.py

"""
Estimator for the share of m-subsets S with minimum codegree of G[S] above alpha*m.

Subsets are scored in numpy batches: vertex sets become uint64 masks, each
(k-1)-subset of S is looked up by colex rank in a table of host neighbourhood
masks, and the codegree inside S is a popcount. Hosts are therefore limited
to 64 vertices.

Sampling uses numpy's counter-based Philox generator. Chunk c draws from
Philox(seed).jumped(c), so the estimate depends only on (seed, trials,
chunk size) and not on how the chunks are spread over workers.
"""

import math
from itertools import combinations, islice
from math import comb
from typing import Dict, Optional

import numpy as np
from joblib import Parallel, delayed

import config
from hypercore.errors import ParameterError
from hypercore.hypergraph import Hypergraph, iter_colex
from utils.logger import setup_logger

logger = setup_logger("analysis", "analysis.log")

GENERATOR = "numpy.random.Philox"
SAMPLE_MODES = ("auto", "exhaustive", "sampled")


def _estimate(successes: int, trials: int, stderr: float, mode: str, seed: Optional[int]) -> Dict:
    return {
        "fraction": successes / trials,
        "stderr": stderr,
        "trials": trials,
        "successes": successes,
        "mode": mode,
        "seed": seed,
        "generator": GENERATOR,
    }


def _link_table(G: Hypergraph) -> np.ndarray:
    """Neighbourhood mask of every (k-1)-subset, indexed by colex rank."""
    return np.array([G.neighbour_mask(sum(1 << v for v in S)) for S in iter_colex(G.n, G.k - 1)],
                    dtype=np.uint64)


def _score_batch(subsets: np.ndarray, links: np.ndarray, k: int, alpha: float) -> int:
    """How many rows (sorted m-subsets) induce minimum codegree > alpha*m."""
    rows, m = subsets.shape
    bits = np.left_shift(np.uint64(1), subsets.astype(np.uint64))
    smask = np.bitwise_or.reduce(bits, axis=1)
    low = np.full(rows, np.iinfo(np.int64).max, dtype=np.int64)
    for pos in combinations(range(m), k - 1):
        rank = np.zeros(rows, dtype=np.int64)
        for i, p in enumerate(pos):
            rank += _comb_column(subsets[:, p], i + 1)
        degree = np.bitwise_count(links[rank] & smask).astype(np.int64)
        np.minimum(low, degree, out=low)
    return int(np.count_nonzero(low > alpha * m + config.COMPARE_SLACK))


def _comb_column(values: np.ndarray, r: int) -> np.ndarray:
    table = np.array([comb(v, r) for v in range(int(values.max()) + 1)], dtype=np.int64)
    return table[values]


def _sampled_chunk(n, m, k, alpha, links, seed, chunk, size) -> int:
    bit_generator = np.random.Philox(seed)
    if chunk:
        bit_generator = bit_generator.jumped(chunk)
    rng = np.random.Generator(bit_generator)
    subsets = np.sort(np.argsort(rng.random((size, n)), axis=1)[:, :m], axis=1)
    return _score_batch(subsets, links, k, alpha)


def _exhaustive(n, m, k, alpha, links):
    total, hits = 0, 0
    source = combinations(range(n), m)
    while True:
        block = list(islice(source, config.SAMPLE_CHUNK))
        if not block:
            return hits, total
        hits += _score_batch(np.array(block, dtype=np.int64).reshape(len(block), m), links, k, alpha)
        total += len(block)


def sample_dense_msets(G: Hypergraph, m: int, alpha: float, trials: int, seed: int = 0,
                       mode: str = "auto", n_jobs: Optional[int] = None) -> Dict:
    """
    Share of m-subsets whose induced minimum codegree exceeds alpha*m.

    Returns a dict with fraction, stderr, trials, successes, mode, seed and
    generator. Exhaustive mode scores every subset and reports stderr 0.
    """
    if mode not in SAMPLE_MODES:
        raise ParameterError(f"unknown sampling mode {mode!r}")
    if not G.n >= m >= G.k - 1:
        raise ParameterError(f"need n >= m >= k-1, got n={G.n}, m={m}, k={G.k}")
    if trials < 1:
        raise ParameterError(f"need trials >= 1, got {trials}")
    if G.n > 64:
        raise ParameterError(f"subset scoring works on hosts of at most 64 vertices, got {G.n}")

    links = _link_table(G)
    exhaustive = mode == "exhaustive" or (mode == "auto" and comb(G.n, m) <= config.SAMPLE_EXHAUSTIVE_LIMIT)

    if exhaustive:
        successes, total = _exhaustive(G.n, m, G.k, alpha, links)
        estimate = _estimate(successes, total, 0.0, "exhaustive", None)
    else:
        n_jobs = config.N_JOBS if n_jobs is None else n_jobs
        chunk = config.SAMPLE_CHUNK
        sizes = [min(chunk, trials - start) for start in range(0, trials, chunk)]
        counts = Parallel(n_jobs=n_jobs)(
            delayed(_sampled_chunk)(G.n, m, G.k, alpha, links, seed, c, size)
            for c, size in enumerate(sizes)
        )
        successes = int(sum(counts))
        p = successes / trials
        estimate = _estimate(successes, trials, math.sqrt(p * (1 - p) / trials), "sampled", seed)

    logger.info(f"dense m-sets of {G!r}, m={m}, alpha={alpha}: {estimate['fraction']:.6f} "
                f"+- {estimate['stderr']:.6f} ({estimate['mode']}, {estimate['trials']} subsets)")
    return estimate
