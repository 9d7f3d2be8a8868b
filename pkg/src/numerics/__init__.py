from .derivatives import central_diff
from .series import ACCELERATION_THRESHOLD, BlockSums, SeriesResult, gauss_sum, sum_blocks
from .special import erf, erfc, erfc_array, erfcx

__all__ = [
    "central_diff",
    "ACCELERATION_THRESHOLD",
    "BlockSums",
    "SeriesResult",
    "gauss_sum",
    "sum_blocks",
    "erf",
    "erfc",
    "erfc_array",
    "erfcx",
]
