"""Evaluation statistics for summary experiments.

Covers the set-similarity metrics (Dice and a cosine-based variant that
credits near-identical products), Likert aggregation with Student's
pooled-variance t-test and Bonferroni correction, and the file formats the
CLI ingests.  The t-distribution tail probability is computed from the
regularized incomplete beta function: for T ~ t(df),

    P(|T| > t) = I_x(df/2, 1/2)   with   x = df / (df + t^2)

evaluated by a modified Lentz continued fraction (no table lookups,
relative error well below 1e-9).
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from statistics import fmean, stdev
from typing import AbstractSet, Iterable, Sequence

from .errors import (
    DegenerateVarianceError,
    EmptySetError,
    InsufficientDataError,
    InvalidNError,
    OutOfRangeError,
    RecordFormatError,
)
from .ingest import FeatureKind, ProductTable

BONFERRONI_FAMILY = 4

_BETACF_MAX_ITER = 300
_BETACF_EPS = 1e-15
_BETACF_TINY = 1e-300


def dice(a: AbstractSet, b: AbstractSet) -> float:
    """Dice similarity 2|a∩b| / (|a|+|b|), in [0, 1]."""
    if not a or not b:
        raise EmptySetError("dice needs two non-empty sets")
    return 2 * len(a & b) / (len(a) + len(b))


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETACF_TINY:
        d = _BETACF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_TINY:
            d = _BETACF_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETACF_TINY:
            c = _BETACF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETACF_TINY:
            d = _BETACF_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETACF_TINY:
            c = _BETACF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise OutOfRangeError("beta parameters must be positive")
    if x < 0 or x > 1:
        raise OutOfRangeError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return float(x)
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # the continued fraction converges fast only on one side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_tailed_p(t: float, df: int) -> float:
    """Two-tailed tail probability of Student's t with df degrees of freedom."""
    if df < 1:
        raise InvalidNError("degrees of freedom must be >= 1")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p_two_tailed: float


def pooled_t_test(
    m1: float, s1: float, n1: int, m2: float, s2: float, n2: int
) -> TTestResult:
    """Student's two-sample pooled-variance t-test from summary statistics.

    Inputs are per-group sample means, sample SDs, and sizes; the result
    carries the t statistic, df = n1 + n2 - 2, and the two-tailed p-value.
    """
    if n1 < 2 or n2 < 2:
        raise InvalidNError("both groups need n >= 2")
    if s1 < 0 or s2 < 0:
        raise OutOfRangeError("standard deviations cannot be negative")
    if s1 == 0 and s2 == 0:
        raise DegenerateVarianceError("both groups have zero variance")
    df = n1 + n2 - 2
    pooled_var = ((n1 - 1) * s1 * s1 + (n2 - 1) * s2 * s2) / df
    t = (m1 - m2) / math.sqrt(pooled_var * (1.0 / n1 + 1.0 / n2))
    return TTestResult(t=t, df=df, p_two_tailed=t_two_tailed_p(t, df))


def bonferroni(p: float, m: int = BONFERRONI_FAMILY) -> float:
    """Family-wise corrected p-value: min(1, m * p)."""
    if not 0 <= p <= 1:
        raise OutOfRangeError(f"p-value {p} outside [0, 1]")
    if m < 1:
        raise OutOfRangeError("family size must be >= 1")
    return min(1.0, m * p)


# -- cosine set similarity ----------------------------------------------------


def _indicator_sets(
    table: ProductTable, ids: Iterable[int]
) -> list[frozenset[tuple[str, object]]]:
    """Encode products as sets of (feature, value) indicators over Boolean
    and Categorical features; missing cells contribute nothing."""
    encoded = []
    for pid in ids:
        product = table.product(pid)  # raises UnknownProductError
        indicators = set()
        for column in table.columns:
            if column.kind is FeatureKind.NUMERIC:
                continue
            value = product.values[column.name]
            if value is not None:
                indicators.add((column.name, value))
        encoded.append(frozenset(indicators))
    return encoded


def _cosine(x: frozenset, y: frozenset) -> float:
    if not x or not y:
        return 0.0  # an all-missing product is orthogonal to everything
    return len(x & y) / math.sqrt(len(x) * len(y))


def cosine_set_similarity(
    a: AbstractSet[int], b: AbstractSet[int], table: ProductTable
) -> float:
    """Symmetrized best-match cosine similarity between two product-ID sets.

    Each product becomes a binary feature-value vector; the score averages,
    both ways, each product's best cosine match in the other set.  Unlike
    Dice, two disjoint sets of near-identical products score close to 1.
    """
    if not a or not b:
        raise EmptySetError("cosine similarity needs two non-empty sets")
    vecs_a = _indicator_sets(table, sorted(a))
    vecs_b = _indicator_sets(table, sorted(b))
    forward = fmean(max(_cosine(x, y) for y in vecs_b) for x in vecs_a)
    backward = fmean(max(_cosine(x, y) for x in vecs_a) for y in vecs_b)
    return (forward + backward) / 2.0


# -- evaluation inputs and report ---------------------------------------------

CONDITION_BASELINE = "baseline"
CONDITION_FULL = "full"
_CONDITIONS = (CONDITION_BASELINE, CONDITION_FULL)
LIKERT_GROUPS = ("baseline", "exp")
CHOICE_COLUMNS = ("participant", "condition", "category", "role", "products")
LIKERT_COLUMNS = ("question", "group", "n", "mean", "sd")


@dataclass(frozen=True)
class ChoiceRecord:
    """One participant's product picks for one category: the speeded set
    (chosen quickly) and the gold-standard set (chosen at leisure)."""

    participant: str
    condition: str
    category: str
    speeded: frozenset[str]
    gold_standard: frozenset[str]

    def __post_init__(self) -> None:
        if self.condition not in _CONDITIONS:
            raise ValueError(f"condition must be one of {_CONDITIONS}")
        if not self.speeded or not self.gold_standard:
            raise EmptySetError("both product sets must be non-empty")


@dataclass(frozen=True)
class LikertSummary:
    """Per-question per-group Likert aggregate on the 1..5 agreement scale."""

    question: str
    group: str
    n: int
    mean: float
    sd: float

    def __post_init__(self) -> None:
        if self.group not in LIKERT_GROUPS:
            raise ValueError(f"group must be one of {LIKERT_GROUPS}")
        if not 1 <= self.mean <= 5:
            raise OutOfRangeError("Likert means live in [1, 5]")
        if self.n < 2:
            raise InvalidNError("need n >= 2 per group")
        if self.sd < 0:
            raise OutOfRangeError("sd cannot be negative")


@dataclass(frozen=True)
class QuestionResult:
    question: str
    n_baseline: int
    n_exp: int
    mean_baseline: float
    mean_exp: float
    sd_baseline: float
    sd_exp: float
    t: float
    df: int
    p_raw: float
    p_bonferroni: float


@dataclass(frozen=True)
class DiceComparison:
    n_baseline: int
    n_full: int
    mean_baseline: float
    mean_full: float
    sd_baseline: float
    sd_full: float
    t: float
    df: int
    p: float


@dataclass(frozen=True)
class EvaluationReport:
    """Structured mirror of the two result tables: per-question Likert tests
    and the between-condition Dice comparison."""

    likert: tuple[QuestionResult, ...]
    dice: DiceComparison

    def to_dict(self) -> dict:
        return {
            "likert": [asdict(q) for q in self.likert],
            "dice": asdict(self.dice),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationReport":
        return cls(
            likert=tuple(QuestionResult(**q) for q in data["likert"]),
            dice=DiceComparison(**data["dice"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "EvaluationReport":
        return cls.from_dict(json.loads(text))


def evaluate(
    records: Sequence[ChoiceRecord], likert: Sequence[LikertSummary]
) -> EvaluationReport:
    """Aggregate choice records and Likert summaries into the full report.

    Per condition: Dice(speeded, gold) mean and sample SD, then a pooled
    t-test between conditions.  Per question: pooled t-test between groups
    with Bonferroni correction over the question family.
    """
    by_condition: dict[str, list[float]] = defaultdict(list)
    for record in records:
        by_condition[record.condition].append(
            dice(record.speeded, record.gold_standard)
        )
    for condition in _CONDITIONS:
        if len(by_condition[condition]) < 2:
            raise InsufficientDataError(
                f"need >= 2 records in the {condition} condition, have "
                f"{len(by_condition[condition])}"
            )
    scores_b = by_condition[CONDITION_BASELINE]
    scores_f = by_condition[CONDITION_FULL]
    mean_b, sd_b = fmean(scores_b), stdev(scores_b)
    mean_f, sd_f = fmean(scores_f), stdev(scores_f)
    dice_test = pooled_t_test(
        mean_b, sd_b, len(scores_b), mean_f, sd_f, len(scores_f)
    )
    dice_row = DiceComparison(
        n_baseline=len(scores_b),
        n_full=len(scores_f),
        mean_baseline=mean_b,
        mean_full=mean_f,
        sd_baseline=sd_b,
        sd_full=sd_f,
        t=dice_test.t,
        df=dice_test.df,
        p=dice_test.p_two_tailed,
    )

    by_question: dict[str, dict[str, LikertSummary]] = defaultdict(dict)
    for summary in likert:
        if summary.group in by_question[summary.question]:
            raise InsufficientDataError(
                f"duplicate {summary.group} row for {summary.question}"
            )
        by_question[summary.question][summary.group] = summary
    if not by_question:
        raise InsufficientDataError("no Likert summaries given")
    family = len(by_question)
    rows: list[QuestionResult] = []
    for question in sorted(by_question):
        groups = by_question[question]
        if set(groups) != set(LIKERT_GROUPS):
            raise InsufficientDataError(
                f"{question} needs both {LIKERT_GROUPS} rows"
            )
        base, exp = groups["baseline"], groups["exp"]
        test = pooled_t_test(base.mean, base.sd, base.n, exp.mean, exp.sd, exp.n)
        rows.append(
            QuestionResult(
                question=question,
                n_baseline=base.n,
                n_exp=exp.n,
                mean_baseline=base.mean,
                mean_exp=exp.mean,
                sd_baseline=base.sd,
                sd_exp=exp.sd,
                t=test.t,
                df=test.df,
                p_raw=test.p_two_tailed,
                p_bonferroni=bonferroni(test.p_two_tailed, family),
            )
        )
    return EvaluationReport(likert=tuple(rows), dice=dice_row)


# -- file formats --------------------------------------------------------------


def _reader(text: str, expected: tuple[str, ...], what: str) -> Iterable[tuple[int, dict]]:
    rows = csv.DictReader(io.StringIO(text))
    if rows.fieldnames is None:
        raise RecordFormatError(f"{what} file has no header row")
    fieldnames = [f.strip() for f in rows.fieldnames]
    missing = [c for c in expected if c not in fieldnames]
    if missing:
        raise RecordFormatError(
            f"{what} file is missing columns: {', '.join(missing)}"
        )
    for i, row in enumerate(rows, start=2):
        yield i, {(k or "").strip(): (v or "").strip() for k, v in row.items()}


def read_choice_records(text: str) -> list[ChoiceRecord]:
    """Parse the choices CSV: columns participant, condition, category,
    role (speeded|gold), products (space-separated product IDs).  Each
    (participant, condition, category) needs exactly one row per role."""
    halves: dict[tuple[str, str, str], dict[str, frozenset[str]]] = defaultdict(dict)
    for line, row in _reader(text, CHOICE_COLUMNS, "choices"):
        condition = row["condition"].casefold()
        role = row["role"].casefold()
        if condition not in _CONDITIONS:
            raise RecordFormatError(
                f"choices row {line}: condition must be baseline or full, "
                f"got {row['condition']!r}"
            )
        if role not in ("speeded", "gold"):
            raise RecordFormatError(
                f"choices row {line}: role must be speeded or gold, got "
                f"{row['role']!r}"
            )
        products = frozenset(row["products"].split())
        if not products:
            raise RecordFormatError(f"choices row {line}: empty product list")
        key = (row["participant"], condition, row["category"])
        if role in halves[key]:
            raise RecordFormatError(
                f"choices row {line}: duplicate {role} row for {key}"
            )
        halves[key][role] = products
    records = []
    for (participant, condition, category), roles in halves.items():
        if set(roles) != {"speeded", "gold"}:
            raise RecordFormatError(
                f"participant {participant!r} ({condition}, {category}): "
                f"needs both a speeded and a gold row"
            )
        records.append(
            ChoiceRecord(participant, condition, category, roles["speeded"], roles["gold"])
        )
    return records


def read_likert_summaries(text: str) -> list[LikertSummary]:
    """Parse the Likert CSV: columns question, group (baseline|exp), n,
    mean, sd."""
    summaries = []
    for line, row in _reader(text, LIKERT_COLUMNS, "likert"):
        try:
            summaries.append(
                LikertSummary(
                    question=row["question"],
                    group=row["group"].casefold(),
                    n=int(row["n"]),
                    mean=float(row["mean"]),
                    sd=float(row["sd"]),
                )
            )
        except (ValueError, OutOfRangeError, InvalidNError) as exc:
            raise RecordFormatError(f"likert row {line}: {exc}") from exc
    return summaries
