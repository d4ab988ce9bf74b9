"""setsumm: natural-language overviews of product catalogs.

Pipeline: load a catalog (`load_table`), compute the robust price curve and
feature analytics, assemble a `SummaryDocument`, and `render` it.  The
`evalkit` module carries the set-similarity and Likert machinery used to
score such summaries against human choices.
"""

from .analysis import (
    CommonFeature,
    ContrastEntry,
    Direction,
    FeatureProfile,
    Quantifier,
    common_features,
    price_direction,
    price_impact,
    quantifier,
    superset_contrast,
)
from .errors import SetsummError
from .evalkit import (
    ChoiceRecord,
    EvaluationReport,
    LikertSummary,
    bonferroni,
    cosine_set_similarity,
    dice,
    evaluate,
    pooled_t_test,
)
from .ingest import (
    Cell,
    Equals,
    FeatureColumn,
    FeatureKind,
    FilterPredicate,
    HasFeature,
    InRange,
    Product,
    ProductTable,
    filter_table,
    infer_kind,
    load_table,
)
from .pipeline import SummaryConfig, build_document, summarize
from .realize import SummaryDocument, SummaryMode, render
from .stats import PriceCurve, detect_outliers, mad, median, price_curve

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "ChoiceRecord",
    "CommonFeature",
    "ContrastEntry",
    "Direction",
    "Equals",
    "EvaluationReport",
    "FeatureColumn",
    "FeatureKind",
    "FeatureProfile",
    "FilterPredicate",
    "HasFeature",
    "InRange",
    "LikertSummary",
    "PriceCurve",
    "Product",
    "ProductTable",
    "Quantifier",
    "SetsummError",
    "SummaryConfig",
    "SummaryDocument",
    "SummaryMode",
    "bonferroni",
    "build_document",
    "common_features",
    "cosine_set_similarity",
    "detect_outliers",
    "dice",
    "evaluate",
    "filter_table",
    "infer_kind",
    "load_table",
    "mad",
    "median",
    "pooled_t_test",
    "price_curve",
    "price_direction",
    "price_impact",
    "quantifier",
    "render",
    "summarize",
    "superset_contrast",
]
