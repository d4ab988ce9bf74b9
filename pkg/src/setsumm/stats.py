"""Robust price-curve statistics for the introductory sentence.

Outliers are trimmed with the modified z-score |x - median| / (1.4826 * MAD)
at a configurable cutoff (default 3.5); the reported range is rounded
outward to multiples of 5 so it always contains every inlier price.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .errors import EmptyInputError

if TYPE_CHECKING:  # pragma: no cover
    from .ingest import ProductTable

MAD_SCALE = 1.4826  # consistency constant for normally distributed data
DEFAULT_CUTOFF = 3.5
ROUND_STEP = 5


def median(values: Sequence[float]) -> float:
    if not values:
        raise EmptyInputError("median of empty input")
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return float(ordered[mid])
    return (ordered[mid - 1] + ordered[mid]) / 2.0


def mad(values: Sequence[float]) -> float:
    """Median absolute deviation from the median."""
    if not values:
        raise EmptyInputError("mad of empty input")
    center = median(values)
    return median([abs(v - center) for v in values])


def detect_outliers(
    values: Sequence[float], cutoff: float = DEFAULT_CUTOFF
) -> tuple[bool, ...]:
    """Flag values whose modified z-score exceeds the cutoff.

    MAD = 0 (at least half the values identical) flags nothing, so constant
    inputs never divide by zero.
    """
    if not values:
        raise EmptyInputError("detect_outliers on empty input")
    center = median(values)
    spread = mad(values)
    if spread == 0:
        return tuple(False for _ in values)
    scale = MAD_SCALE * spread
    return tuple(abs(v - center) / scale > cutoff for v in values)


def round_down_to_step(value: float, step: int = ROUND_STEP) -> int:
    return int(math.floor(value / step) * step)


def round_up_to_step(value: float, step: int = ROUND_STEP) -> int:
    return int(math.ceil(value / step) * step)


def round_half_up_to_step(value: float, step: int = ROUND_STEP) -> int:
    return int(math.floor(value / step + 0.5) * step)


@dataclass(frozen=True)
class PriceCurve:
    """Price shape of a product set: outlier-trimmed range plus median.

    The bounds are directional (floor for lo, ceil for hi) so every inlier
    price lies inside [inlier_lo, inlier_hi]; the median of all prices is
    rounded half-up.  All three are multiples of 5.
    """

    total_count: int
    inlier_count: int
    inlier_lo: int
    inlier_hi: int
    median_rounded: int
    median_raw: float
    mad_raw: float

    def __post_init__(self) -> None:
        if not 0 < self.inlier_count <= self.total_count:
            raise ValueError("need 0 < inlier_count <= total_count")
        for bound in (self.inlier_lo, self.inlier_hi, self.median_rounded):
            if bound % ROUND_STEP:
                raise ValueError(f"{bound} is not a multiple of {ROUND_STEP}")
        if not self.inlier_lo <= self.median_rounded <= self.inlier_hi:
            raise ValueError("rounded median fell outside the inlier range")


def price_curve(table: "ProductTable", cutoff: float = DEFAULT_CUTOFF) -> PriceCurve:
    """Compute the price curve of a table's price column."""
    prices = list(table.prices)
    if not prices:
        raise EmptyInputError("table has no products")
    flags = detect_outliers(prices, cutoff)
    inliers = [p for p, flagged in zip(prices, flags) if not flagged]
    center = median(prices)
    return PriceCurve(
        total_count=len(prices),
        inlier_count=len(inliers),
        inlier_lo=round_down_to_step(min(inliers)),
        inlier_hi=round_up_to_step(max(inliers)),
        median_rounded=round_half_up_to_step(center),
        median_raw=center,
        mad_raw=mad(prices),
    )
