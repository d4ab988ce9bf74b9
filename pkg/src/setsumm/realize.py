"""Template realization of summary documents into plain text.

Rendering is deterministic: a given document always produces the same bytes.
Slots are filled verbatim (no article insertion or number agreement), and no
arithmetic happens inside templates, so every number in the output is a
field of the input document.

Generated sentences end with a period by default.  The list paragraphs can
be rendered without the trailing period (``trailing_periods=False``) for
byte-compatibility with the historical summary texts the golden tests pin.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .analysis import (
    CommonFeature,
    ContrastEntry,
    DEFAULT_QUANTIFIER_THRESHOLDS,
    Direction,
    FeatureProfile,
    Quantifier,
    quantifier,
)
from .errors import EmptyListError, WrongModeError
from .ingest import Cell, format_number
from .stats import PriceCurve

INTRO_TEMPLATE = (
    "For {category}, the price of most products ({inliers} out of {total} "
    "models) falls in the range of {lo}-{hi} pounds with a median price of "
    "about {median} pounds."
)
COMMON_TEMPLATE = "Most {category} have following features: {items}"
IMPACT_TEMPLATE = (
    "The features that have a strong impact on the price of {category} "
    "are: {names}"
)
QUANTIFIED_TEMPLATE = "{quantifier} {category} in this category have {item}."
CONTRAST_TEMPLATE = (
    "{quantifier} {category} in this category have {item} compared to "
    "{superset}."
)
DIRECTION_TEMPLATE = "{category} with {feature} are {effect} in average."

QUANTIFIER_PHRASES = {
    Quantifier.MOST: "Most",
    Quantifier.MANY: "Many",
    Quantifier.SOME: "Some",
    Quantifier.ONLY_A_FEW: "Only a few",
}
DIRECTION_PHRASES = {
    Direction.MORE_EXPENSIVE: "more expensive",
    Direction.CHEAPER: "cheaper",
}


class SummaryMode(Enum):
    BASELINE = "baseline"
    FULL = "full"
    EXTENDED = "extended"


@dataclass(frozen=True)
class SummaryDocument:
    """Language-neutral content plan consumed by the renderer.

    Baseline documents carry only the category and price curve; full
    documents add the common-feature and impact lists; extended documents
    may also carry superset contrast entries and price directions.
    """

    category: str
    curve: PriceCurve
    mode: SummaryMode
    common: tuple[CommonFeature, ...] = ()
    impact: tuple[FeatureProfile, ...] = ()
    contrast: tuple[ContrastEntry, ...] = ()
    contrast_superset: str | None = None
    directions: tuple[tuple[str, Direction], ...] = ()

    def __post_init__(self) -> None:
        if self.mode is SummaryMode.BASELINE and (
            self.common or self.impact or self.contrast or self.directions
        ):
            raise WrongModeError("baseline documents carry only category and curve")
        if self.mode is not SummaryMode.EXTENDED and (
            self.contrast or self.directions
        ):
            raise WrongModeError(
                "contrast and directions belong to extended documents"
            )
        if self.contrast and self.contrast_superset is None:
            raise WrongModeError("contrast entries need the superset's name")


def join_items(items: Sequence[str]) -> str:
    """Join a list for prose: 'A', 'A and B', 'A, B, and C' (serial comma)."""
    if not items:
        raise EmptyListError("nothing to join")
    if len(items) == 1:
        return items[0]
    if len(items) == 2:
        return f"{items[0]} and {items[1]}"
    return ", ".join(items[:-1]) + f", and {items[-1]}"


def feature_value_phrase(feature: str, value: Cell) -> str:
    """Render a feature-value pair: bare feature name for Boolean true,
    '{value} {feature}' otherwise."""
    if value is None:
        raise ValueError(f"feature {feature!r} has no value to render")
    if value is True:
        return feature
    if value is False:
        return f"no {feature}"
    if isinstance(value, float):
        return f"{format_number(value)} {feature}"
    return f"{value} {feature}"


def render_intro(category: str, curve: PriceCurve) -> str:
    return INTRO_TEMPLATE.format(
        category=category,
        inliers=curve.inlier_count,
        total=curve.total_count,
        lo=curve.inlier_lo,
        hi=curve.inlier_hi,
        median=curve.median_rounded,
    )


def render_common(
    category: str,
    common: Sequence[CommonFeature],
    trailing_period: bool = True,
) -> str:
    if not common:
        raise EmptyListError("no common features to render")
    items = [feature_value_phrase(c.feature, c.value) for c in common]
    text = COMMON_TEMPLATE.format(category=category, items=join_items(items))
    return text + "." if trailing_period else text


def render_impact(
    category: str,
    impact: Sequence[FeatureProfile],
    trailing_period: bool = True,
) -> str:
    if not impact:
        raise EmptyListError("no impact features to render")
    text = IMPACT_TEMPLATE.format(
        category=category, names=join_items([p.feature for p in impact])
    )
    return text + "." if trailing_period else text


def render_extended(
    doc: SummaryDocument,
    thresholds: tuple[float, float, float] = DEFAULT_QUANTIFIER_THRESHOLDS,
) -> str:
    """Extended block: one quantified sentence per common/contrast feature
    and one price-direction sentence per direction entry (NoClearEffect
    entries are omitted).  Returns '' when there is nothing to add."""
    if doc.mode is not SummaryMode.EXTENDED:
        raise WrongModeError(f"document mode is {doc.mode.value}, not extended")
    quantified: list[str] = []
    for c in doc.common:
        quantified.append(
            QUANTIFIED_TEMPLATE.format(
                quantifier=QUANTIFIER_PHRASES[c.quantifier],
                category=doc.category,
                item=feature_value_phrase(c.feature, c.value),
            )
        )
    for entry in doc.contrast:
        quantified.append(
            CONTRAST_TEMPLATE.format(
                quantifier=QUANTIFIER_PHRASES[
                    quantifier(entry.target_prevalence, thresholds)
                ],
                category=doc.category,
                item=feature_value_phrase(entry.feature, entry.value),
                superset=doc.contrast_superset,
            )
        )
    directional = [
        DIRECTION_TEMPLATE.format(
            category=doc.category,
            feature=feature,
            effect=DIRECTION_PHRASES[direction],
        )
        for feature, direction in doc.directions
        if direction is not Direction.NO_CLEAR_EFFECT
    ]
    paragraphs = [" ".join(block) for block in (quantified, directional) if block]
    return "\n\n".join(paragraphs)


def render(
    doc: SummaryDocument,
    trailing_periods: bool = True,
    quantifier_thresholds: tuple[float, float, float] = DEFAULT_QUANTIFIER_THRESHOLDS,
) -> str:
    """Realize a document: paragraphs separated by exactly one blank line."""
    paragraphs = [render_intro(doc.category, doc.curve)]
    if doc.mode is not SummaryMode.BASELINE:
        if doc.common:
            paragraphs.append(
                render_common(doc.category, doc.common, trailing_periods)
            )
        if doc.impact:
            paragraphs.append(
                render_impact(doc.category, doc.impact, trailing_periods)
            )
    if doc.mode is SummaryMode.EXTENDED:
        extended = render_extended(doc, quantifier_thresholds)
        if extended:
            paragraphs.append(extended)
    return "\n\n".join(paragraphs)


def cell_to_json(cell: Cell):
    """JSON-friendly form of a cell (integral floats become ints)."""
    if isinstance(cell, float) and cell.is_integer():
        return int(cell)
    return cell


def document_to_dict(doc: SummaryDocument) -> dict:
    """Serialize a document to the JSON layout served by the HTTP API."""
    curve = doc.curve
    out: dict = {
        "category": doc.category,
        "mode": doc.mode.value,
        "curve": {
            "total_count": curve.total_count,
            "inlier_count": curve.inlier_count,
            "inlier_lo": curve.inlier_lo,
            "inlier_hi": curve.inlier_hi,
            "median_rounded": curve.median_rounded,
            "median_raw": curve.median_raw,
            "mad_raw": curve.mad_raw,
        },
        "common": [
            {
                "feature": c.feature,
                "value": cell_to_json(c.value),
                "prevalence": c.prevalence,
                "quantifier": c.quantifier.value,
            }
            for c in doc.common
        ],
        "impact": [
            {
                "feature": p.feature,
                "kind": p.kind.value,
                "modal_value": cell_to_json(p.modal_value),
                "prevalence": p.prevalence,
                "impact_score": p.impact_score,
                "groups": [
                    {
                        "value": cell_to_json(g.value),
                        "mean_price": g.mean_price,
                        "support": g.support,
                    }
                    for g in p.group_means
                ],
                "direction": p.direction.value if p.direction else None,
            }
            for p in doc.impact
        ],
    }
    if doc.mode is SummaryMode.EXTENDED:
        out["contrast"] = [
            {
                "feature": e.feature,
                "value": cell_to_json(e.value),
                "target_prevalence": e.target_prevalence,
                "superset_prevalence": e.superset_prevalence,
            }
            for e in doc.contrast
        ]
        out["contrast_superset"] = doc.contrast_superset
        out["directions"] = [
            {"feature": feature, "direction": direction.value}
            for feature, direction in doc.directions
        ]
    return out
