"""End-to-end summarization: table -> document -> text.

This is the single pipeline shared by the CLI and the HTTP service, so both
produce byte-identical summaries for the same table, mode, and config.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import analysis, stats
from .analysis import (
    DEFAULT_CONTRAST_DELTA,
    DEFAULT_DIRECTION_HIGH,
    DEFAULT_DIRECTION_LOW,
    DEFAULT_MIN_SUPPORT,
    DEFAULT_QUANTIFIER_THRESHOLDS,
    DEFAULT_TOP_K,
    Direction,
)
from .errors import InsufficientSupportError
from .ingest import ProductTable
from .realize import SummaryDocument, SummaryMode, render


@dataclass(frozen=True)
class SummaryConfig:
    """Tunable parameters of the summarization pipeline."""

    top_k: int = DEFAULT_TOP_K
    mad_cutoff: float = stats.DEFAULT_CUTOFF
    min_support: int = DEFAULT_MIN_SUPPORT
    quantifier_thresholds: tuple[float, float, float] = DEFAULT_QUANTIFIER_THRESHOLDS
    direction_high: float = DEFAULT_DIRECTION_HIGH
    direction_low: float = DEFAULT_DIRECTION_LOW
    contrast_delta: float = DEFAULT_CONTRAST_DELTA

    def __post_init__(self) -> None:
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.min_support < 1:
            raise ValueError("min_support must be >= 1")
        if self.mad_cutoff <= 0:
            raise ValueError("mad_cutoff must be positive")
        most, many, some = self.quantifier_thresholds
        if not 0 < some <= many <= most <= 1:
            raise ValueError("quantifier thresholds must descend within (0, 1]")
        if not self.direction_low <= 1 <= self.direction_high:
            raise ValueError("direction ratios must straddle 1")
        if not 0 < self.contrast_delta <= 1:
            raise ValueError("contrast_delta must be in (0, 1]")


DEFAULT_CONFIG = SummaryConfig()


def build_document(
    table: ProductTable,
    mode: SummaryMode,
    config: SummaryConfig = DEFAULT_CONFIG,
    superset: ProductTable | None = None,
) -> SummaryDocument:
    """Assemble the content plan for a table.

    Extended mode adds superset contrast (when a superset is given) and a
    price direction per impact feature; features without enough support on
    both sides of their partition simply get no direction sentence.
    """
    curve = stats.price_curve(table, config.mad_cutoff)
    if mode is SummaryMode.BASELINE:
        return SummaryDocument(table.category_name, curve, mode)

    common = tuple(
        analysis.common_features(table, config.top_k, config.quantifier_thresholds)
    )
    impact = tuple(analysis.price_impact(table, config.top_k, config.min_support))
    if mode is SummaryMode.FULL:
        return SummaryDocument(
            table.category_name, curve, mode, common=common, impact=impact
        )

    contrast = ()
    contrast_superset = None
    if superset is not None:
        contrast = tuple(
            analysis.superset_contrast(table, superset, config.contrast_delta)
        )
        contrast_superset = superset.category_name
    directions: list[tuple[str, Direction]] = []
    for profile in impact:
        try:
            direction = analysis.price_direction(
                table,
                profile.feature,
                config.min_support,
                config.direction_high,
                config.direction_low,
            )
        except InsufficientSupportError:
            continue
        directions.append((profile.feature, direction))
    by_feature = dict(directions)
    impact = tuple(
        replace(p, direction=by_feature.get(p.feature)) for p in impact
    )
    return SummaryDocument(
        table.category_name,
        curve,
        mode,
        common=common,
        impact=impact,
        contrast=contrast,
        contrast_superset=contrast_superset,
        directions=tuple(directions),
    )


def summarize(
    table: ProductTable,
    mode: SummaryMode,
    config: SummaryConfig = DEFAULT_CONFIG,
    superset: ProductTable | None = None,
) -> str:
    doc = build_document(table, mode, config, superset)
    return render(doc, quantifier_thresholds=config.quantifier_thresholds)
