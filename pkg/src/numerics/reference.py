"""High-precision reference values (mpmath) used to validate the double-precision paths."""

from __future__ import annotations

import math

import mpmath

DEFAULT_DPS = 40


def erfc_reference(x: float, dps: int = DEFAULT_DPS) -> float:
    with mpmath.workdps(dps):
        return float(mpmath.erfc(mpmath.mpf(x)))


def erfc_maclaurin(x: float) -> float:
    """
    erfc from the alternating Maclaurin series of erf, summed with enough guard
    digits to absorb the cancellation (the largest term is of order e^{x²}).
    """
    dps = DEFAULT_DPS + 2 * int(x * x / math.log(10.0)) + 10
    with mpmath.workdps(dps):
        z = mpmath.mpf(x)
        z2 = z * z
        power = z
        total = mpmath.mpf(0)
        eps = mpmath.mpf(10) ** (-dps)
        n = 0
        while True:
            term = power / (mpmath.factorial(n) * (2 * n + 1))
            total += term if n % 2 == 0 else -term
            if n > z2 and abs(term) < eps:
                break
            power *= z2
            n += 1
        return float(1 - 2 / mpmath.sqrt(mpmath.pi) * total)


def gauss_sum_reference(a: float, k: int, dps: int = 30, rel_tol: float = 1e-25) -> float:
    """Brute-force Σ n^k e^{-a n²} in extended precision."""
    with mpmath.workdps(dps):
        am = mpmath.mpf(a)
        total = mpmath.mpf(0)
        n = 1
        mode = 1.0 / math.sqrt(a)
        while True:
            term = mpmath.mpf(n) ** k * mpmath.exp(-am * n * n)
            total += term
            if n > mode and term < rel_tol * total:
                break
            n += 1
        return float(total)
