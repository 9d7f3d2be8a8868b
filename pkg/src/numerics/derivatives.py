from __future__ import annotations

import logging
import math
from typing import Callable

from src.core.exceptions import EvaluationFailure

logger = logging.getLogger(__name__)

_CBRT_EPS = 2.220446049250313e-16 ** (1.0 / 3.0)


def central_diff(f: Callable[[float], float], x: float, scale: float = 1.0) -> float:
    """
    Centered-difference derivative (f(x+h) - f(x-h)) / 2h.

    h = scale·max(|x|, 1)·ε^{1/3}, which balances the O(h²) truncation error
    against rounding for smooth f.
    """
    h = scale * max(abs(x), 1.0) * _CBRT_EPS
    # Representable step, so x+h and x-h are exactly 2h apart.
    h = (x + h) - x
    if h == 0.0:
        raise EvaluationFailure(f"finite-difference step underflowed at x={x!r}")
    f_plus = f(x + h)
    f_minus = f(x - h)
    if not (math.isfinite(f_plus) and math.isfinite(f_minus)):
        raise EvaluationFailure(f"function not finite at stencil x={x!r} ± {h!r}: {f_plus!r}, {f_minus!r}")
    logger.debug("central_diff at x=%.6e with h=%.3e", x, h)
    return (f_plus - f_minus) / (2.0 * h)
