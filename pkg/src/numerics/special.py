from __future__ import annotations

import math

import numpy as np

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)

# Below this the power series, above it the continued fraction.
SERIES_CUTOFF = 2.0

_SERIES_MAX_TERMS = 200
_CF_MAX_TERMS = 20_000
_TINY = 1e-300


def erfc(x: float) -> float:
    """Complementary error function, relative error below 1e-12 on the real line."""
    if math.isnan(x):
        return math.nan
    if x < 0.0:
        return 2.0 - erfc(-x)
    if math.isinf(x):
        return 0.0
    if x <= SERIES_CUTOFF:
        return 1.0 - _erf_series(x)
    return math.exp(-x * x) * _INV_SQRT_PI / _continued_fraction(x)


def erfcx(x: float) -> float:
    """Scaled complementary error function e^{x²}·erfc(x) for x >= 0."""
    if x < 0.0:
        raise ValueError("erfcx is only provided for non-negative arguments")
    if math.isinf(x):
        return 0.0
    if x <= SERIES_CUTOFF:
        return math.exp(x * x) * (1.0 - _erf_series(x))
    return _INV_SQRT_PI / _continued_fraction(x)


def erf(x: float) -> float:
    return 1.0 - erfc(x)


erfc_array = np.vectorize(erfc, otypes=[float])


def _erf_series(x: float) -> float:
    # erf(x) = 2/√π e^{-x²} Σ 2ⁿ x^{2n+1} / (1·3···(2n+1)); all terms positive.
    x2 = x * x
    term = x
    total = x
    for n in range(1, _SERIES_MAX_TERMS):
        term *= 2.0 * x2 / (2 * n + 1)
        total += term
        if term < 1e-17 * total:
            break
    return _TWO_OVER_SQRT_PI * math.exp(-x2) * total


def _continued_fraction(x: float) -> float:
    # x + (1/2)/(x + 1/(x + (3/2)/(x + 2/(x + ...)))), modified Lentz.
    f = x
    c = f
    d = 0.0
    for k in range(1, _CF_MAX_TERMS):
        a = 0.5 * k
        d = x + a * d
        if abs(d) < _TINY:
            d = _TINY
        c = x + a / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return f
