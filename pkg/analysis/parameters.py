# analysis/parameters.py

"""
Closed-form parameter calculators.

compute_M        smallest M such that every m >= M has m >= 2(k-1)/delta and
                 C(m, k-1) * exp(-delta^2 (m-k+1) / 12) <= 1/2
compute_rho      1/2 (1 - 1/C(l,k-1) + 1/(C(l,k-1) 2^(1/l)))
nonprincipality  epsilon = (1/6)(1/2 - rho) together with the two patterns
rational family  the alpha = b/a instantiation (symbolic sizes only)

Binomials are exact integers; comparisons happen in log space with
config.COMPARE_SLACK of slack.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Optional, Tuple

from mpmath import iv

import config
from hypercore.errors import ParameterError
from utils.logger import setup_logger

logger = setup_logger("analysis", "analysis.log")


@dataclass(frozen=True)
class AnalysisParams:
    k: int
    delta: Optional[float] = None
    M: Optional[int] = None
    ell: Optional[int] = None
    rho: Optional[float] = None
    epsilon: Optional[float] = None
    alpha: Optional[Fraction] = None
    patterns: Dict[str, str] = field(default_factory=dict)

    def build_patterns(self):
        """(K^k(l,l), F^k_2) for the non-principal pair."""
        from constructions.patterns import gen_fr, gen_ktt
        return gen_ktt(self.ell, self.k), gen_fr(self.k, 2)


def _check_delta_k(delta: float, k: int):
    if not 0 < delta <= 1:
        raise ParameterError(f"need 0 < delta <= 1, got delta={delta}")
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")


def size_condition(m: int, delta: float, k: int) -> bool:
    """m >= 2(k-1)/delta"""
    return m + config.COMPARE_SLACK >= 2 * (k - 1) / delta


def tail_condition(m: int, delta: float, k: int) -> bool:
    """C(m, k-1) e^{-delta^2 (m-k+1)/12} <= 1/2, in log space."""
    c = comb(m, k - 1)
    if c == 0:
        return True
    lhs = math.log(c) - delta ** 2 * (m - k + 1) / 12
    return lhs <= math.log(0.5) + config.COMPARE_SLACK


def ratio_certificate(m: int, delta: float, k: int) -> bool:
    """(m+1)/(m+2-k) <= e^{delta^2/12}: the tail term does not grow from m to m+1."""
    if m < k - 1:
        return False
    return math.log(m + 1) - math.log(m + 2 - k) <= delta ** 2 / 12 + config.COMPARE_SLACK


def _first_true(predicate, start: int) -> int:
    """Least m >= start with predicate(m), for a predicate that stays true once true."""
    if predicate(start):
        return start
    lo, step = start, 1
    while not predicate(lo + step):
        lo += step
        step *= 2
    hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def compute_M(delta: float, k: int) -> int:
    _check_delta_k(delta, k)
    # the ratio is decreasing in m, so the certificate holds from m0 on
    m0 = _first_true(lambda m: ratio_certificate(m, delta, k), max(k - 1, 1))
    start = max(m0, math.ceil(2 * (k - 1) / delta - config.COMPARE_SLACK))
    m1 = _first_true(lambda m: tail_condition(m, delta, k) and size_condition(m, delta, k), start)

    M = m1
    while M - 1 >= 1 and tail_condition(M - 1, delta, k) and size_condition(M - 1, delta, k):
        M -= 1
    logger.info(f"M(delta={delta}, k={k}) = {M} (ratio certificate from m={m0})")
    return M


def _check_k_ell(k: int, ell: int):
    if k < 3:
        raise ParameterError(f"need k >= 3, got k={k}")
    if ell < k - 1:
        raise ParameterError(f"need ell >= k-1, got ell={ell}, k={k}")


def compute_rho(k: int, ell: int) -> float:
    _check_k_ell(k, ell)
    c = comb(ell, k - 1)
    return 0.5 * (1 - 1 / c + 1 / (c * 2 ** (1 / ell)))


def rho_interval(k: int, ell: int) -> Tuple[float, float]:
    """Interval enclosure of rho from mpmath's interval arithmetic."""
    _check_k_ell(k, ell)
    c = iv.mpf(comb(ell, k - 1))
    root = iv.mpf(2) ** (iv.mpf(1) / ell)
    rho = iv.mpf(1) / 2 * (1 - 1 / c + 1 / (c * root))
    return float(rho.a), float(rho.b)


def nonprincipality_params(k: int, ell: int) -> AnalysisParams:
    rho = compute_rho(k, ell)
    epsilon = (0.5 - rho) / 6
    if epsilon <= 0:
        raise ParameterError(f"rho={rho} is not below 1/2")
    return AnalysisParams(k=k, ell=ell, rho=rho, epsilon=epsilon,
                          patterns={"F1": f"K^{k}({ell},{ell})", "F2": f"F^{k}_2"})


@dataclass(frozen=True)
class RationalFamilyParams:
    a: int
    b: int
    k: int
    delta: float
    M: int
    m: int
    s: int
    t: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.b, self.a)

    @property
    def threshold(self) -> float:
        """Minimum codegree (alpha - delta) m asked of the family members."""
        return (float(self.alpha) - self.delta) * self.m

    @property
    def edge_slots(self) -> int:
        """C(m, k); the family ranges over subsets of these slots."""
        return comb(self.m, self.k)


def rational_family_params(a: int, b: int, k: int) -> RationalFamilyParams:
    """
    The alpha = b/a instantiation: delta = 1/(4a^2), m = max(4a^2(k-1), M(delta)),
    extension parameters (s, t) = (a, b+1). Only the numbers are computed; the
    family itself has 2^C(m,k) candidate members.
    """
    if not 0 < b < a:
        raise ParameterError(f"need 0 < b < a, got a={a}, b={b}")
    if k < 3:
        raise ParameterError(f"need k >= 3, got k={k}")
    alpha = Fraction(b, a)
    a, b = alpha.denominator, alpha.numerator
    delta = 1 / (4 * a * a)
    M = compute_M(delta, k)
    m = max(4 * a * a * (k - 1), M)
    return RationalFamilyParams(a=a, b=b, k=k, delta=delta, M=M, m=m, s=a, t=b + 1)
