"""Feature analytics over product tables.

Two rankings drive the generated summaries: the most common feature-values
(by prevalence among non-missing cells) and the most price-influential
features (by the population standard deviation of per-value mean prices).
Extended summaries add prevalence contrast against a superset and a
per-feature price direction.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from statistics import fmean, pstdev
from typing import Sequence

from .errors import (
    EmptyInputError,
    FeatureMismatchError,
    InsufficientSupportError,
    OutOfRangeError,
)
from .ingest import Cell, FeatureColumn, FeatureKind, ProductTable

DEFAULT_TOP_K = 7
DEFAULT_MIN_SUPPORT = 5
# prevalence floors for Most / Many / Some; below the last is Only a few
DEFAULT_QUANTIFIER_THRESHOLDS = (0.75, 0.50, 0.25)
DEFAULT_CONTRAST_DELTA = 0.25
DEFAULT_DIRECTION_HIGH = 1.10
DEFAULT_DIRECTION_LOW = 0.90


class Quantifier(Enum):
    MOST = "most"
    MANY = "many"
    SOME = "some"
    ONLY_A_FEW = "only_a_few"


class Direction(Enum):
    MORE_EXPENSIVE = "more_expensive"
    CHEAPER = "cheaper"
    NO_CLEAR_EFFECT = "no_clear_effect"


@dataclass(frozen=True)
class CommonFeature:
    feature: str
    value: Cell
    prevalence: float
    quantifier: Quantifier


@dataclass(frozen=True)
class GroupMean:
    value: Cell
    mean_price: float
    support: int


@dataclass(frozen=True)
class FeatureProfile:
    """Per-feature price analysis: value groups, their mean prices, and the
    spread of those means (the impact score)."""

    feature: str
    kind: FeatureKind
    modal_value: Cell
    prevalence: float
    group_means: tuple[GroupMean, ...]
    impact_score: float
    direction: Direction | None = None


@dataclass(frozen=True)
class ContrastEntry:
    feature: str
    value: Cell
    target_prevalence: float
    superset_prevalence: float

    @property
    def difference(self) -> float:
        return self.target_prevalence - self.superset_prevalence


def quantifier(
    prevalence: float,
    thresholds: tuple[float, float, float] = DEFAULT_QUANTIFIER_THRESHOLDS,
) -> Quantifier:
    """Map a prevalence fraction to its quantifier band (inclusive floors)."""
    if not 0 < prevalence <= 1:
        raise OutOfRangeError(f"prevalence {prevalence} outside (0, 1]")
    most, many, some = thresholds
    if prevalence >= most:
        return Quantifier.MOST
    if prevalence >= many:
        return Quantifier.MANY
    if prevalence >= some:
        return Quantifier.SOME
    return Quantifier.ONLY_A_FEW


def _cell_sort_key(cell: Cell) -> tuple:
    # total order across the cell types that can share a column
    if isinstance(cell, bool):
        return (0, not cell)  # True sorts before False
    if isinstance(cell, float):
        return (1, cell)
    return (2, str(cell))


def _modal(column: FeatureColumn) -> tuple[Cell, int, int] | None:
    """Most frequent non-missing value: (value, count, non_missing_total).

    Ties prefer True for Boolean columns and the lexicographically smallest
    value otherwise, so the result is order-independent.
    """
    counts = Counter(v for v in column.values if v is not None)
    if not counts:
        return None
    value, count = min(
        counts.items(), key=lambda item: (-item[1], _cell_sort_key(item[0]))
    )
    return value, count, sum(counts.values())


def common_features(
    table: ProductTable,
    k: int = DEFAULT_TOP_K,
    thresholds: tuple[float, float, float] = DEFAULT_QUANTIFIER_THRESHOLDS,
) -> list[CommonFeature]:
    """Top-k most prevalent feature-values.

    Numeric features are excluded; Boolean features qualify only when their
    modal value is true.  Ranking is by prevalence descending, ties broken
    by feature name ascending.
    """
    if table.n_products == 0:
        raise EmptyInputError("table has no products")
    if k < 1:
        raise ValueError("k must be >= 1")
    found: list[CommonFeature] = []
    for column in table.columns:
        if column.name == table.price_feature:
            continue
        if column.kind is FeatureKind.NUMERIC:
            continue
        modal = _modal(column)
        if modal is None:
            continue
        value, count, total = modal
        if column.kind is FeatureKind.BOOLEAN and value is not True:
            continue
        prevalence = count / total
        found.append(
            CommonFeature(column.name, value, prevalence, quantifier(prevalence, thresholds))
        )
    found.sort(key=lambda c: (-c.prevalence, c.feature))
    return found[:k]


def _price_groups(
    column: FeatureColumn, prices: Sequence[float]
) -> dict[Cell, list[float]]:
    groups: dict[Cell, list[float]] = defaultdict(list)
    for cell, price in zip(column.values, prices):
        if cell is not None:
            groups[cell].append(price)
    return groups


def price_impact(
    table: ProductTable,
    k: int = DEFAULT_TOP_K,
    min_support: int = DEFAULT_MIN_SUPPORT,
) -> list[FeatureProfile]:
    """Top-k features by impact score.

    Products are grouped by distinct non-missing value; groups below
    min_support are dropped and a feature needs at least two surviving
    groups.  The impact score is the population SD of the group mean
    prices (the groups form the complete partition, not a sample).
    """
    if table.n_products == 0:
        raise EmptyInputError("table has no products")
    if k < 1:
        raise ValueError("k must be >= 1")
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    prices = table.prices
    profiles: list[FeatureProfile] = []
    for column in table.columns:
        if column.name == table.price_feature:
            continue
        groups = {
            value: members
            for value, members in _price_groups(column, prices).items()
            if len(members) >= min_support
        }
        if len(groups) < 2:
            continue
        group_means = tuple(
            GroupMean(value, fmean(members), len(members))
            for value, members in sorted(
                groups.items(), key=lambda item: _cell_sort_key(item[0])
            )
        )
        modal = _modal(column)
        assert modal is not None  # at least two non-empty groups exist
        value, count, total = modal
        profiles.append(
            FeatureProfile(
                feature=column.name,
                kind=column.kind,
                modal_value=value,
                prevalence=count / total,
                group_means=group_means,
                impact_score=pstdev([g.mean_price for g in group_means]),
            )
        )
    profiles.sort(key=lambda p: (-p.impact_score, p.feature))
    return profiles[:k]


def _prevalences(column: FeatureColumn) -> dict[Cell, float]:
    counts = Counter(v for v in column.values if v is not None)
    total = sum(counts.values())
    if total == 0:
        return {}
    return {value: count / total for value, count in counts.items()}


def superset_contrast(
    target: ProductTable,
    superset: ProductTable,
    delta: float = DEFAULT_CONTRAST_DELTA,
) -> list[ContrastEntry]:
    """Feature-values markedly more prevalent in the target than its superset.

    Considers Boolean true values and all categorical values; an entry is
    reported when target prevalence exceeds superset prevalence by at least
    delta.  Sorted by the difference, descending.
    """
    if target.n_products == 0 or superset.n_products == 0:
        raise EmptyInputError("both tables need at least one product")
    superset_names = set(superset.feature_names)
    missing = [n for n in target.feature_names if n not in superset_names]
    if missing:
        raise FeatureMismatchError(
            f"features absent from superset: {', '.join(sorted(missing))}"
        )
    entries: list[ContrastEntry] = []
    for column in target.columns:
        if column.name == target.price_feature:
            continue
        if column.kind is FeatureKind.NUMERIC:
            continue
        sup_column = superset.column(column.name)
        if sup_column.kind is not column.kind:
            raise FeatureMismatchError(
                f"feature {column.name!r} is {column.kind.value} in the target "
                f"but {sup_column.kind.value} in the superset"
            )
        sup_prev = _prevalences(sup_column)
        for value, prev in _prevalences(column).items():
            if column.kind is FeatureKind.BOOLEAN and value is not True:
                continue
            s_prev = sup_prev.get(value, 0.0)
            if prev - s_prev >= delta:
                entries.append(ContrastEntry(column.name, value, prev, s_prev))
    entries.sort(
        key=lambda e: (-e.difference, e.feature, _cell_sort_key(e.value))
    )
    return entries


def price_direction(
    table: ProductTable,
    feature: str,
    min_support: int = DEFAULT_MIN_SUPPORT,
    high: float = DEFAULT_DIRECTION_HIGH,
    low: float = DEFAULT_DIRECTION_LOW,
) -> Direction:
    """How carrying a feature moves the mean price.

    Boolean features partition on true/false; other kinds partition on
    has-modal-value vs the rest (missing cells join neither side).  Both
    partitions need min_support products.  Thresholds are inclusive:
    mean(with) >= high * mean(without) is MoreExpensive, <= low * is Cheaper.
    """
    column = table.column(feature)
    prices = table.prices
    if column.kind is FeatureKind.BOOLEAN:
        with_prices = [p for c, p in zip(column.values, prices) if c is True]
        without_prices = [p for c, p in zip(column.values, prices) if c is False]
    else:
        modal = _modal(column)
        if modal is None:
            raise InsufficientSupportError(f"feature {feature!r} has no values")
        value = modal[0]
        with_prices = [p for c, p in zip(column.values, prices) if c == value]
        without_prices = [
            p for c, p in zip(column.values, prices) if c is not None and c != value
        ]
    if len(with_prices) < min_support or len(without_prices) < min_support:
        raise InsufficientSupportError(
            f"feature {feature!r}: partitions have {len(with_prices)} and "
            f"{len(without_prices)} products, need {min_support} each"
        )
    mean_with = fmean(with_prices)
    mean_without = fmean(without_prices)
    if mean_without == 0:
        return Direction.MORE_EXPENSIVE if mean_with > 0 else Direction.NO_CLEAR_EFFECT
    if mean_with >= high * mean_without:
        return Direction.MORE_EXPENSIVE
    if mean_with <= low * mean_without:
        return Direction.CHEAPER
    return Direction.NO_CLEAR_EFFECT


__all__ = [
    "CommonFeature",
    "ContrastEntry",
    "Direction",
    "FeatureProfile",
    "GroupMean",
    "Quantifier",
    "common_features",
    "price_direction",
    "price_impact",
    "quantifier",
    "superset_contrast",
]
