# analysis/density.py

from typing import Iterable, List, Optional, Sequence

import pandas as pd

import config
from hypercore.errors import CertificateError, ParameterError
from hypercore.hypergraph import Hypergraph
from satgate.coex import CoexResult, coex_exact
from utils.logger import setup_logger

logger = setup_logger("analysis", "analysis.log")

CSV_COLUMNS = ["n", "coex", "ratio"]


def coex_sequence(family: Sequence[Hypergraph], k: int, n_values: Iterable[int],
                  backend: Optional[str] = None, **backend_options) -> List[CoexResult]:
    """co-ex(n, family) for each n; nothing is claimed about the limit of the ratios."""
    results = []
    for n in n_values:
        result = coex_exact(n, k, family, backend, **backend_options)
        if result.value > n - k + 1:
            raise CertificateError(f"co-ex({n}) = {result.value} exceeds n-k+1")
        results.append(result)
    return results


def density_table(family: Sequence[Hypergraph], k: int, n_from: int, n_to: int,
                  backend: Optional[str] = None, **backend_options) -> pd.DataFrame:
    if n_from < k or n_to < n_from:
        raise ParameterError(f"need k <= n_from <= n_to, got {n_from}..{n_to} for k={k}")
    results = coex_sequence(family, k, range(n_from, n_to + 1), backend, **backend_options)
    df = pd.DataFrame(
        [(r.n, r.value, r.ratio) for r in results],
        columns=CSV_COLUMNS,
    )
    logger.info(f"density table n={n_from}..{n_to}: {df['coex'].tolist()}")
    return df


def write_density_csv(df: pd.DataFrame, path_or_buf=None):
    """CSV with header n,coex,ratio and 10 significant digits; returns the text when no target is given."""
    return df.to_csv(path_or_buf, index=False, float_format=f"%.{config.FLOAT_DIGITS}g", lineterminator="\n")
