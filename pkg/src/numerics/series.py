from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import bernoulli

from src.core.constants import DEFAULT_SERIES_MAX_TERMS, DEFAULT_SERIES_REL_TOL
from src.core.exceptions import BadParameter, NonPositiveParameter, SeriesNotConverged, SeriesOverflow

logger = logging.getLogger(__name__)

ACCELERATION_THRESHOLD = 1e-2
_FIRST_BLOCK = 256
_MAX_ASYMPTOTIC_CORRECTIONS = 12

BlockFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_estimate: float
    accelerated: bool
    log_value: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "terms_used": self.terms_used,
            "truncation_estimate": self.truncation_estimate,
            "accelerated": self.accelerated,
            "log_value": self.log_value,
        }


@dataclass(frozen=True)
class BlockSums:
    sums: np.ndarray
    terms_used: int
    tail_estimates: np.ndarray


def sum_blocks(
    block: BlockFn,
    *,
    rows: int,
    rel_tol: float = DEFAULT_SERIES_REL_TOL,
    max_terms: int = DEFAULT_SERIES_MAX_TERMS,
    min_terms: int = 1,
) -> BlockSums:
    """
    Sum several non-negative series over n = 1, 2, ... in numpy blocks.

    ``block(n)`` returns an array of shape (rows, len(n)). Every row must be
    eventually decreasing with a decreasing term ratio once n >= min_terms; the
    tail is then bounded by the geometric series built from the last ratio.
    Summation stops once every row's tail bound is below rel_tol times its
    partial sum.
    """
    sums = np.zeros(rows)
    start = 1
    size = max(_FIRST_BLOCK, min(int(min_terms) + 1, max_terms))
    tails = np.full(rows, np.inf)
    while True:
        stop = min(start + size, max_terms + 1)
        n = np.arange(start, stop, dtype=float)
        terms = np.asarray(block(n), dtype=float).reshape(rows, n.size)
        if not np.all(np.isfinite(terms)):
            raise SeriesOverflow(f"series terms left the floating-point range near n={int(n[-1])}")
        sums += terms.sum(axis=1)
        tails = _geometric_tails(terms)
        last = int(n[-1])
        converged = last >= min_terms and np.all(tails <= rel_tol * np.abs(sums))
        if converged:
            logger.debug("series converged after %d terms (tail %.3e)", last, float(tails.max()))
            return BlockSums(sums=sums, terms_used=last, tail_estimates=tails)
        if stop > max_terms:
            estimate = float(np.max(tails / np.where(sums > 0, sums, 1.0)))
            raise SeriesNotConverged(
                f"series not converged after {last} terms (relative tail {estimate:.3e} > {rel_tol:.1e})",
                terms_used=last,
                truncation_estimate=estimate,
            )
        start = stop
        size *= 2


def _geometric_tails(terms: np.ndarray) -> np.ndarray:
    if terms.shape[1] < 2:
        return np.full(terms.shape[0], np.inf)
    last = terms[:, -1]
    prev = terms[:, -2]
    tails = np.full(terms.shape[0], np.inf)
    zero = last == 0.0
    tails[zero] = 0.0
    live = ~zero & (prev > 0.0)
    ratio = np.ones_like(last)
    ratio[live] = last[live] / prev[live]
    decaying = live & (ratio < 1.0)
    tails[decaying] = last[decaying] * ratio[decaying] / (1.0 - ratio[decaying])
    return tails


def gauss_sum(
    a: float,
    k: int,
    *,
    rel_tol: float = DEFAULT_SERIES_REL_TOL,
    max_terms: int = DEFAULT_SERIES_MAX_TERMS,
    accelerate: bool = True,
) -> SeriesResult:
    """Σ_{n=1..∞} n^k e^{-a n²} for k in {0, 1, 2}."""
    if not (isinstance(a, (int, float)) and math.isfinite(a)) or a <= 0:
        raise NonPositiveParameter(f"gauss_sum needs a > 0, got {a!r}")
    if k not in (0, 1, 2):
        raise BadParameter(f"gauss_sum supports k in {{0, 1, 2}}, got {k!r}")

    if accelerate and a < ACCELERATION_THRESHOLD:
        if k == 0:
            return _theta_transform(a, rel_tol)
        return _asymptotic_moment(a, k, rel_tol)
    return _direct_gauss(a, k, rel_tol, max_terms)


def _direct_gauss(a: float, k: int, rel_tol: float, max_terms: int) -> SeriesResult:
    # Terms are referenced to the first one, e^{-a}, so large a cannot underflow the sum.
    def block(n: np.ndarray) -> np.ndarray:
        return (n**k) * np.exp(-a * (n * n - 1.0))

    result = sum_blocks(
        block,
        rows=1,
        rel_tol=rel_tol,
        max_terms=max_terms,
        min_terms=math.ceil(1.0 / math.sqrt(a)) + 1,
    )
    rel_sum = float(result.sums[0])
    log_value = -a + math.log(rel_sum)
    scale = math.exp(-a)
    return SeriesResult(
        value=scale * rel_sum,
        terms_used=result.terms_used,
        truncation_estimate=scale * float(result.tail_estimates[0]),
        accelerated=False,
        log_value=log_value,
    )


def _theta_transform(a: float, rel_tol: float) -> SeriesResult:
    # Poisson summation: Σ_{n>=1} e^{-a n²} = ½√(π/a)(1 + 2 Σ_{m>=1} e^{-π² m²/a}) - ½
    dual = 0.0
    m = 1
    while True:
        term = math.exp(-(math.pi**2) * m * m / a)
        if term == 0.0 or term < rel_tol * (1.0 + dual):
            break
        dual += term
        m += 1
    value = 0.5 * math.sqrt(math.pi / a) * (1.0 + 2.0 * dual) - 0.5
    return SeriesResult(
        value=value,
        terms_used=m,
        truncation_estimate=math.sqrt(math.pi / a) * math.exp(-(math.pi**2) * m * m / a),
        accelerated=True,
        log_value=math.log(value),
    )


def _asymptotic_moment(a: float, k: int, rel_tol: float) -> SeriesResult:
    # Integral replacement plus Euler–Maclaurin corrections:
    # Σ n^k e^{-a n²} ~ ½Γ((k+1)/2) a^{-(k+1)/2} + Σ_j ζ(-k-2j) (-a)^j / j!
    leading = 0.5 * math.gamma((k + 1) / 2.0) * a ** (-(k + 1) / 2.0)
    total = leading
    last = 0.0
    used = 1
    for j in range(_MAX_ASYMPTOTIC_CORRECTIONS):
        correction = _zeta_negative(k + 2 * j) * (-a) ** j / math.factorial(j)
        used += 1
        if correction == 0.0:
            continue
        total += correction
        last = abs(correction)
        if last < rel_tol * abs(total):
            break
    logger.debug("asymptotic moment k=%d a=%.3e used %d corrections", k, a, used - 1)
    return SeriesResult(
        value=total,
        terms_used=used,
        truncation_estimate=last * a,
        accelerated=True,
        log_value=math.log(total),
    )


def _zeta_negative(m: int) -> float:
    # ζ(-m) = -B_{m+1}/(m+1) for m >= 1 (zero for even m), ζ(0) = -½
    if m == 0:
        return -0.5
    return float(-bernoulli(m + 1)[m + 1] / (m + 1))
